#include "vogp/objectives.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vogp/error.hpp"

namespace vogp {

namespace {

void require_unit_box(const Eigen::VectorXd& x, Eigen::Index dim) {
  if (x.size() != dim) throw Error(ErrorCode::DimensionMismatch, "benchmark input dimension");
  if (!x.allFinite() || (x.array() < 0.0).any() || (x.array() > 1.0).any()) {
    throw Error(ErrorCode::OutOfDomain, "benchmark input outside [0,1]^D");
  }
}

}  // namespace

double branin(const Eigen::VectorXd& x) {
  require_unit_box(x, 2);
  constexpr double pi = std::numbers::pi;
  const double a = 15.0 * x[0] - 5.0;
  const double b = 15.0 * x[1];
  const double q = b - 5.1 / (4.0 * pi * pi) * a * a + 5.0 / pi * a - 6.0;
  return q * q + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(a) + 10.0;
}

double currin(const Eigen::VectorXd& x) {
  require_unit_box(x, 2);
  const double x1 = x[0];
  const double x2 = x[1];
  const double factor = x2 > 0.0 ? 1.0 - std::exp(-1.0 / (2.0 * x2)) : 1.0;
  const double num = 2300.0 * x1 * x1 * x1 + 1900.0 * x1 * x1 + 2092.0 * x1 + 60.0;
  const double den = 100.0 * x1 * x1 * x1 + 500.0 * x1 * x1 + 4.0 * x1 + 20.0;
  return factor * num / den;
}

Eigen::Vector2d zdt3(const Eigen::VectorXd& x) {
  if (x.size() < 2) throw Error(ErrorCode::DimensionMismatch, "ZDT3 needs at least two inputs");
  require_unit_box(x, x.size());
  const double f1 = x[0];
  const double g = 1.0 + 9.0 * x.tail(x.size() - 1).sum() / static_cast<double>(x.size() - 1);
  const double r = f1 / g;
  const double h = 1.0 - std::sqrt(r) - r * std::sin(10.0 * std::numbers::pi * f1);
  return {f1, g * h};
}

bool is_builtin_problem(std::string_view name) { return name == "BC" || name == "BCC" || name == "ZDT3"; }

Eigen::Index builtin_input_dim(std::string_view name) {
  if (!is_builtin_problem(name)) throw Error(ErrorCode::UnknownName, "unknown problem '" + std::string(name) + "'");
  return 2;
}

Eigen::Index builtin_output_dim(std::string_view name) { return builtin_input_dim(name); }

bool builtin_is_continuous(std::string_view name) {
  builtin_input_dim(name);
  return name != "BC";
}

Eigen::VectorXd builtin_objective(std::string_view name, const Eigen::VectorXd& x) {
  if (name == "BC" || name == "BCC") return -Eigen::Vector2d(branin(x), currin(x));
  if (name == "ZDT3") {
    require_unit_box(x, 2);
    return -zdt3(x);
  }
  throw Error(ErrorCode::UnknownName, "unknown problem '" + std::string(name) + "'");
}

}  // namespace vogp
