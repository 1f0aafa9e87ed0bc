// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

// Thin wrappers over LAPACK's dense Hermitian eigensolvers. Matrices are
// taken by value because LAPACK overwrites its inputs.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

namespace capa::linalg {

struct Eigenpair {
  double value = 0.0;
  Eigen::VectorXcd vector;
};

namespace detail {

inline void check_square(const Eigen::MatrixXcd& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
  }
}

inline void check_info(lapack_int info, const char* who) {
  if (info != 0) throw std::runtime_error(std::string(who) + " failed, info = " + std::to_string(info));
}

}  // namespace detail

/// Largest eigenpair of the Hermitian-definite pencil a x = lambda b x.
/// Only the upper triangles are read; b must be positive definite. The
/// returned vector has unit Euclidean norm.
inline Eigenpair largest_generalized_eigenpair(Eigen::MatrixXcd a, Eigen::MatrixXcd b) {
  detail::check_square(a, "largest_generalized_eigenpair");
  if (b.rows() != a.rows() || b.cols() != a.cols()) {
    throw std::invalid_argument("largest_generalized_eigenpair: pencil dimensions differ");
  }
  const auto n = static_cast<lapack_int>(a.rows());
  lapack_int found = 0;
  std::vector<double> w(n);
  Eigen::VectorXcd z(n);
  std::vector<lapack_int> ifail(n);
  const lapack_int info =
      LAPACKE_zhegvx(LAPACK_COL_MAJOR, 1, 'V', 'I', 'U', n, a.data(), n, b.data(), n, 0.0, 0.0, n, n, 0.0,
                     &found, w.data(), z.data(), n, ifail.data());
  detail::check_info(info, "zhegvx");
  if (found != 1) throw std::runtime_error("zhegvx returned no eigenpair");
  return {w[0], z / z.norm()};
}

/// Largest eigenpair of a Hermitian matrix (upper triangle read).
inline Eigenpair largest_eigenpair(Eigen::MatrixXcd a) {
  detail::check_square(a, "largest_eigenpair");
  const auto n = static_cast<lapack_int>(a.rows());
  lapack_int found = 0;
  std::vector<double> w(n);
  Eigen::VectorXcd z(n);
  std::vector<lapack_int> ifail(n);
  const lapack_int info = LAPACKE_zheevx(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, n, n, 0.0,
                                         &found, w.data(), z.data(), n, ifail.data());
  detail::check_info(info, "zheevx");
  if (found != 1) throw std::runtime_error("zheevx returned no eigenpair");
  return {w[0], z / z.norm()};
}

/// Full spectrum of a Hermitian matrix, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd a) {
  detail::check_square(a, "hermitian_eigenvalues");
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n, w.data());
  detail::check_info(info, "zheevd");
  return w;
}

}  // namespace capa::linalg
