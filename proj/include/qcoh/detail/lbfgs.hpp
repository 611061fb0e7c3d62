// lbfgs.hpp — limited-memory BFGS with Armijo backtracking, the descent loop
// behind both constrained minimizations.  Deterministic given the start point.

#pragma once

#include <Eigen/Dense>

#include <functional>

namespace qcoh::detail {

struct LbfgsOptions {
  int max_iterations = 2000;
  double f_tolerance = 1e-9;    // stop on |f_k - f_{k+1}| below this
  double grad_tolerance = 1e-10;  // or on ||g||_inf below this
  int memory = 8;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// fg(x, grad): returns f(x); when grad != nullptr also fills the gradient.
using ObjectiveFn =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>;

LbfgsResult lbfgs_minimize(const ObjectiveFn& fg, Eigen::VectorXd x0,
                           const LbfgsOptions& opts);

}  // namespace qcoh::detail
