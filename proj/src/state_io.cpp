#include "qcoh/state_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcoh {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void save_state(std::ostream& os, const QuantumState& rho) {
  os << "{\n  \"dims\": [";
  for (size_t i = 0; i < rho.dims().size(); ++i)
    os << (i ? ", " : "") << rho.dims()[i];
  os << "],\n  \"matrix\": [\n";
  const Matrix& m = rho.matrix();
  for (long i = 0; i < m.rows(); ++i) {
    os << "    [";
    for (long j = 0; j < m.cols(); ++j) {
      const Complex& z = m(i, j);
      os << (j ? ", " : "") << '[' << fmt17(z.real()) << ", " << fmt17(z.imag())
         << ']';
    }
    os << (i + 1 < m.rows() ? "],\n" : "]\n");
  }
  os << "  ]\n}\n";
}

void save_state(const std::string& path, const QuantumState& rho) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  save_state(f, rho);
}

QuantumState load_state(std::istream& is) {
  nlohmann::json doc;
  try {
    is >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state file is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix"))
    throw std::invalid_argument("state file must have fields dims and matrix");
  std::vector<int> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer())
      throw std::invalid_argument("dims entries must be integers");
    dims.push_back(d.get<int>());
  }
  const auto& rows = doc["matrix"];
  long n = static_cast<long>(rows.size());
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (static_cast<long>(row.size()) != n)
      throw std::invalid_argument("matrix rows must all have equal length");
    for (long j = 0; j < n; ++j) {
      const auto& z = row[j];
      if (!z.is_array() || z.size() != 2)
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(i, j) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return QuantumState(std::move(dims), std::move(m));
}

QuantumState load_state(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open state file: " + path);
  return load_state(f);
}

}  // namespace qcoh
