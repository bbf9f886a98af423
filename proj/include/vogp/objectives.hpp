#pragma once

#include <Eigen/Dense>
#include <string_view>

namespace vogp {

/// Raw Branin value at x in [0,1]^2, mapped to x1 in [-5,10], x2 in [0,15].
double branin(const Eigen::VectorXd& x);
/// Raw Currin exponential value at x in [0,1]^2.
double currin(const Eigen::VectorXd& x);
/// Raw ZDT3 pair (f1, f2) at x in [0,1]^D.
Eigen::Vector2d zdt3(const Eigen::VectorXd& x);

/// Named benchmark ("BC", "BCC", "ZDT3") oriented so that larger is
/// better: every raw minimization objective is negated.
/// Throws UnknownName or OutOfDomain.
Eigen::VectorXd builtin_objective(std::string_view name, const Eigen::VectorXd& x);

bool is_builtin_problem(std::string_view name);
Eigen::Index builtin_input_dim(std::string_view name);
Eigen::Index builtin_output_dim(std::string_view name);
/// True for the continuous-domain benchmarks.
bool builtin_is_continuous(std::string_view name);

}  // namespace vogp
