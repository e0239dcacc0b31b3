#pragma once

#include "blis/error.hpp"
#include "blis/random.hpp"

#include <doctest.h>

#include <Eigen/Core>

#define CHECK_THROWS_CODE(expr, expected)                 \
  do {                                                    \
    bool thrown_ = false;                                 \
    try {                                                 \
      (void)(expr);                                       \
    } catch (const blis::Error& e) {                      \
      thrown_ = true;                                     \
      CHECK(e.code() == (expected));                      \
    }                                                     \
    CHECK_MESSAGE(thrown_, "expected blis::Error");       \
  } while (0)

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}
