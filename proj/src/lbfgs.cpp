#include "qcoh/detail/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace qcoh::detail {

LbfgsResult lbfgs_minimize(const ObjectiveFn& fg, Eigen::VectorXd x0,
                           const LbfgsOptions& opts) {
  using Eigen::VectorXd;
  const long n = x0.size();

  VectorXd x = std::move(x0);
  VectorXd g(n);
  double f = fg(x, &g);

  struct Pair {
    VectorXd s, y;
    double rho;
  };
  std::deque<Pair> history;

  LbfgsResult out;
  out.converged = false;

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    double gnorm = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
    if (gnorm <= opts.grad_tolerance) {
      out.converged = true;
      break;
    }

    // Two-loop recursion for the search direction.
    VectorXd q = g;
    std::vector<double> alpha(history.size());
    for (long i = static_cast<long>(history.size()) - 1; i >= 0; --i) {
      alpha[i] = history[i].rho * history[i].s.dot(q);
      q -= alpha[i] * history[i].y;
    }
    if (!history.empty()) {
      const Pair& last = history.back();
      double gamma = last.s.dot(last.y) / last.y.squaredNorm();
      q *= gamma;
    }
    for (size_t i = 0; i < history.size(); ++i) {
      double beta = history[i].rho * history[i].y.dot(q);
      q += (alpha[i] - beta) * history[i].s;
    }
    VectorXd dir = -q;

    double descent = g.dot(dir);
    if (descent >= 0.0) {  // lost curvature; restart from steepest descent
      history.clear();
      dir = -g;
      descent = -g.squaredNorm();
    }

    // Armijo backtracking.
    double step = history.empty() ? std::min(1.0, 1.0 / std::max(1.0, gnorm)) : 1.0;
    const double c1 = 1e-4;
    double f_new = f;
    VectorXd x_new;
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      x_new = x + step * dir;
      f_new = fg(x_new, nullptr);
      if (std::isfinite(f_new) && f_new <= f + c1 * step * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No decrease along the model direction at any step length: treat the
      // point as converged if the objective is already flat.
      out.converged = true;
      break;
    }

    VectorXd g_new(n);
    double f_check = fg(x_new, &g_new);
    (void)f_check;

    VectorXd s = x_new - x;
    VectorXd y = g_new - g;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      history.push_back(Pair{std::move(s), std::move(y), 1.0 / sy});
      if (static_cast<int>(history.size()) > opts.memory) history.pop_front();
    }

    double improvement = f - f_new;
    x = std::move(x_new);
    g = std::move(g_new);
    f = f_new;

    if (improvement <= opts.f_tolerance) {
      out.converged = true;
      ++iter;
      break;
    }
  }

  out.x = std::move(x);
  out.f = f;
  out.iterations = iter;
  return out;
}

}  // namespace qcoh::detail
