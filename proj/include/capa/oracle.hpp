// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

// Brute-force reference for the closed-form secrecy results.
//
// The aperture is sampled on a quadrature grid and the continuous operators
// become dense N x N matrices. Nothing here uses the closed forms; this header
// deliberately depends only on geometry, the channel response and LAPACK.
//
// Samples are scaled by sqrt(w_i), so the aperture integral of f^* g becomes
// the Euclidean product of the scaled vectors and the identity operator is
// exactly the identity matrix. A current sampled the same way is a vector u,
// and user k's received amplitude is h_k^T u (no conjugate), giving the
// quadratic form u^H conj(h_k) h_k^T u.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "capa/channel.hpp"
#include "capa/errors.hpp"
#include "capa/geometry.hpp"
#include "capa/linalg.hpp"
#include "capa/radio.hpp"

namespace capa::oracle {

/// sqrt(weight)-scaled samples of both users' responses on one grid.
struct DiscretizedField {
  Eigen::VectorXcd h_b;
  Eigen::VectorXcd h_e;
  QuadratureGrid grid;

  Eigen::Index size() const { return h_b.size(); }
};

inline DiscretizedField discretize(const ChannelParams& params, const UserGeometry& bob, const UserGeometry& eve,
                                   const QuadratureGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("discretize: empty grid");
  DiscretizedField f;
  f.grid = grid;
  const auto n = static_cast<Eigen::Index>(grid.size());
  f.h_b.resize(n);
  f.h_e.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [x, z] = grid.points[i];
    const double sw = std::sqrt(grid.weights[i]);
    f.h_b[i] = sw * los_response(params, bob, x, z);
    f.h_e[i] = sw * los_response(params, eve, x, z);
  }
  return f;
}

/// The pair (A_b, A_e), A_k = I + gamma_bar_k conj(h_k) h_k^T. Kept as
/// vectors plus scalars; dense matrices are built on request.
struct OperatorPencil {
  Eigen::VectorXcd h_b;
  Eigen::VectorXcd h_e;
  double gamma_bar_b = 0.0;
  double gamma_bar_e = 0.0;

  OperatorPencil(const DiscretizedField& field, const RadioConfig& radio)
      : h_b(field.h_b), h_e(field.h_e), gamma_bar_b(radio.gamma_bar_b()), gamma_bar_e(radio.gamma_bar_e()) {}

  Eigen::MatrixXcd bob_operator() const { return dense(h_b, gamma_bar_b); }
  Eigen::MatrixXcd eve_operator() const { return dense(h_e, gamma_bar_e); }

  /// u^H A_b u / u^H A_e u.
  double quotient(const Eigen::VectorXcd& u) const {
    const double uu = u.squaredNorm();
    const double num = uu + gamma_bar_b * std::norm(h_b.cwiseProduct(u).sum());
    const double den = uu + gamma_bar_e * std::norm(h_e.cwiseProduct(u).sum());
    return num / den;
  }

 private:
  static Eigen::MatrixXcd dense(const Eigen::VectorXcd& h, double gamma) {
    Eigen::MatrixXcd m = gamma * (h.conjugate() * h.transpose());
    m.diagonal().array() += 1.0;
    return m;
  }
};

/// A metric value and the sampled current (unit norm) that attains it.
struct OracleResult {
  double value = 0.0;
  double eigenvalue = 0.0;
  Eigen::VectorXcd eigvec;
};

/// Maximum secrecy rate as log2 of the largest generalized eigenvalue of
/// (A_b, A_e), by dense solve.
inline OracleResult oracle_msr(const DiscretizedField& field, const RadioConfig& radio) {
  radio.validate();
  if (field.size() < 2) throw std::invalid_argument("oracle_msr needs at least 2 samples");
  const OperatorPencil pencil(field, radio);
  auto pair = linalg::largest_generalized_eigenpair(pencil.bob_operator(), pencil.eve_operator());
  return {std::log2(pair.value), pair.value, std::move(pair.vector)};
}

/// D = cb conj(h_b) h_b^T - 2^r0 ce conj(h_e) h_e^T, the power operator.
inline Eigen::MatrixXcd power_operator(const DiscretizedField& field, const NoiseGeometry& noise, double r0) {
  const double cb = noise.scale_b();
  const double ce = std::exp2(r0) * noise.scale_e();
  return cb * (field.h_b.conjugate() * field.h_b.transpose()) - ce * (field.h_e.conjugate() * field.h_e.transpose());
}

/// Minimum required power (2^r0 - 1) / lambda_max(D), by dense solve.
inline OracleResult oracle_mrp(const DiscretizedField& field, const NoiseGeometry& noise, double r0) {
  noise.validate();
  if (!(r0 > 0.0)) throw std::invalid_argument("oracle_mrp needs a positive target rate");
  auto pair = linalg::largest_eigenpair(power_operator(field, noise, r0));
  // Eigenvalues at roundoff level relative to the trace norm of D count as 0.
  const double scale = noise.scale_b() * field.h_b.squaredNorm() +
                       std::exp2(r0) * noise.scale_e() * field.h_e.squaredNorm();
  if (!(pair.value > 1e-12 * scale)) {
    throw InfeasibleTarget("oracle_mrp: power operator has no positive eigenvalue", std::nan(""));
  }
  return {std::expm1(r0 * std::numbers::ln2) / pair.value, pair.value, std::move(pair.vector)};
}

struct ConvergenceRow {
  int n = 0;  // points per axis
  double oracle = 0.0;
  double reference = 0.0;
  double rel_delta = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  bool strictly_decreasing() const {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (!(rows[i].rel_delta < rows[i - 1].rel_delta)) return false;
    }
    return true;
  }

  double final_delta() const { return rows.empty() ? std::nan("") : rows.back().rel_delta; }
};

/// Evaluates `oracle_at(n)` at each per-axis resolution and tabulates the
/// relative distance to `reference`.
inline ConvergenceTable convergence_sweep(const std::function<double(int)>& oracle_at, double reference,
                                          std::span<const int> resolutions) {
  ConvergenceTable t;
  int prev = 0;
  for (int n : resolutions) {
    if (n <= prev) throw std::invalid_argument("convergence_sweep: resolutions must increase");
    prev = n;
    const double v = oracle_at(n);
    t.rows.push_back({n, v, reference, std::abs(v - reference) / std::abs(reference)});
  }
  return t;
}

}  // namespace capa::oracle
