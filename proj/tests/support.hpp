#pragma once

#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "vogp/error.hpp"

/// Checks that `expr` throws vogp::Error carrying `expected`.
#define CHECK_ERROR_CODE(expr, expected)                     \
  do {                                                       \
    bool thrown_ = false;                                    \
    try {                                                    \
      (void)(expr);                                          \
    } catch (const vogp::Error& e_) {                        \
      thrown_ = true;                                        \
      CHECK(e_.code() == (expected));                        \
    }                                                        \
    CHECK_MESSAGE(thrown_, "expected vogp::Error: " #expr); \
  } while (0)

namespace testing {

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline Eigen::MatrixXd uniform_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double lo = 0.0,
                                      double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

}  // namespace testing
