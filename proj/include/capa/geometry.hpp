// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace capa {

/// Point on the aperture plane. The aperture lies in the x-z plane, centred
/// at the origin, with normal (0, 1, 0).
struct Point2 {
  double x = 0.0;
  double z = 0.0;
};

enum class ApertureKind { PlanarCapa, PlanarSpda };

/// Rectangular transmit aperture.
///
/// A planar CAPA is described by its side lengths only. A planar SPDA is an
/// odd Mx x Mz grid of square elements of area `element_area` on pitch
/// `spacing`; its side lengths are Mx*d and Mz*d.
struct ApertureSpec {
  ApertureKind kind = ApertureKind::PlanarCapa;
  double lx = 0.0;
  double lz = 0.0;
  double element_area = 0.0;  // SPDA only
  double spacing = 0.0;       // SPDA only
  int mx = 0;                 // SPDA only
  int mz = 0;                 // SPDA only

  static ApertureSpec planar_capa(double lx, double lz) {
    ApertureSpec a;
    a.kind = ApertureKind::PlanarCapa;
    a.lx = lx;
    a.lz = lz;
    a.validate();
    return a;
  }

  static ApertureSpec planar_spda(int mx, int mz, double spacing, double element_area) {
    ApertureSpec a;
    a.kind = ApertureKind::PlanarSpda;
    a.mx = mx;
    a.mz = mz;
    a.spacing = spacing;
    a.element_area = element_area;
    a.lx = mx * spacing;
    a.lz = mz * spacing;
    a.validate();
    return a;
  }

  double area() const { return lx * lz; }

  /// A_s / d^2, the fraction of the aperture covered by elements. 1 for a CAPA.
  double occupation_ratio() const {
    return kind == ApertureKind::PlanarCapa ? 1.0 : element_area / (spacing * spacing);
  }

  void validate() const {
    if (!(lx > 0.0) || !(lz > 0.0) || !std::isfinite(lx) || !std::isfinite(lz)) {
      throw std::invalid_argument("aperture side lengths must be positive and finite");
    }
    if (kind == ApertureKind::PlanarCapa) return;
    if (mx < 1 || mz < 1 || mx % 2 == 0 || mz % 2 == 0) {
      throw std::invalid_argument("SPDA element counts must be odd and positive, got " +
                                  std::to_string(mx) + "x" + std::to_string(mz));
    }
    if (!(spacing > 0.0) || !(element_area > 0.0)) {
      throw std::invalid_argument("SPDA spacing and element area must be positive");
    }
    // Elements must not overlap: sqrt(A_s) <= d, with a little slack for
    // the zeta_oc = 1 case built as A_s = d*d.
    if (std::sqrt(element_area) > spacing * (1.0 + 1e-12)) {
      throw std::invalid_argument("SPDA elements overlap: sqrt(element_area) > spacing");
    }
    constexpr double tol = 1e-6;
    if (std::abs(lx - mx * spacing) > tol * lx || std::abs(lz - mz * spacing) > tol * lz) {
      throw std::invalid_argument("SPDA side lengths must equal element count times spacing");
    }
  }
};

/// Polar placement of a receiver relative to the aperture centre.
///
/// `theta` is the elevation angle measured from +z and `phi` the azimuth in
/// the x-y plane; both in [0, pi]. The receiver sits at r * (ux, uy, uz).
struct UserGeometry {
  double r = 1.0;
  double theta = std::numbers::pi / 2;
  double phi = std::numbers::pi / 2;

  static UserGeometry polar(double r, double theta, double phi) {
    UserGeometry u{r, theta, phi};
    u.validate();
    return u;
  }

  double ux() const { return std::cos(phi) * std::sin(theta); }
  double uy() const { return std::sin(phi) * std::sin(theta); }
  double uz() const { return std::cos(theta); }

  void validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("user distance must be positive and finite");
    }
    constexpr double pi = std::numbers::pi;
    if (!(theta >= 0.0 && theta <= pi) || !(phi >= 0.0 && phi <= pi)) {
      throw std::invalid_argument("user angles must lie in [0, pi]");
    }
    if (!(uy() > 0.0)) {
      throw std::invalid_argument("user must be in front of the aperture (sin(phi)sin(theta) > 0)");
    }
  }
};

enum class QuadratureRule { Midpoint, GaussLegendreTensor, ChebyshevGaussTensor };

inline const char* to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::Midpoint: return "midpoint";
    case QuadratureRule::GaussLegendreTensor: return "gauss-legendre";
    case QuadratureRule::ChebyshevGaussTensor: return "chebyshev-gauss";
  }
  return "?";
}

/// Tensor-product sample layout over the aperture. Points are stored row-major
/// by z then x: index = iz * nx + ix.
struct QuadratureGrid {
  std::vector<Point2> points;
  std::vector<double> weights;
  QuadratureRule rule = QuadratureRule::Midpoint;
  int nx = 0;
  int nz = 0;

  std::size_t size() const { return points.size(); }

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

namespace detail {

struct Rule1d {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // for integrating over [-1, 1]
};

inline Rule1d midpoint_rule(int n) {
  Rule1d r;
  r.nodes.resize(n);
  r.weights.assign(n, 2.0 / n);
  for (int i = 0; i < n; ++i) r.nodes[i] = -1.0 + (2.0 * i + 1.0) / n;
  return r;
}

// Newton iteration on P_n from the usual cos((i + 3/4)pi/(n + 1/2)) guesses.
inline Rule1d gauss_legendre_rule(int n) {
  Rule1d r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * x * p2 - (k - 1.0) * p3) / k;
      }
      dp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

// First-kind Chebyshev-Gauss nodes psi_t = cos((2t-1)pi/(2T)), with the
// sqrt(1 - psi^2) factor folded into the weight so the rule integrates plain f.
inline Rule1d chebyshev_gauss_rule(int n) {
  Rule1d r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int t = 1; t <= n; ++t) {
    const double psi = std::cos((2.0 * t - 1.0) * std::numbers::pi / (2.0 * n));
    r.nodes[t - 1] = psi;
    r.weights[t - 1] = std::numbers::pi / n * std::sqrt(1.0 - psi * psi);
  }
  return r;
}

inline Rule1d rule_1d(QuadratureRule rule, int n) {
  switch (rule) {
    case QuadratureRule::Midpoint: return midpoint_rule(n);
    case QuadratureRule::GaussLegendreTensor: return gauss_legendre_rule(n);
    case QuadratureRule::ChebyshevGaussTensor: return chebyshev_gauss_rule(n);
  }
  throw std::invalid_argument("unknown quadrature rule");
}

}  // namespace detail

/// Tensor quadrature grid over a planar CAPA.
inline QuadratureGrid make_grid(const ApertureSpec& aperture, QuadratureRule rule, int nx, int nz) {
  aperture.validate();
  if (aperture.kind != ApertureKind::PlanarCapa) {
    throw std::invalid_argument("make_grid requires a planar CAPA aperture");
  }
  if (nx < 2 || nz < 2) throw std::invalid_argument("quadrature grid needs at least 2 points per axis");

  const auto rx = detail::rule_1d(rule, nx);
  const auto rz = detail::rule_1d(rule, nz);
  const double hx = aperture.lx / 2.0;
  const double hz = aperture.lz / 2.0;

  QuadratureGrid g;
  g.rule = rule;
  g.nx = nx;
  g.nz = nz;
  g.points.reserve(static_cast<std::size_t>(nx) * nz);
  g.weights.reserve(static_cast<std::size_t>(nx) * nz);
  for (int iz = 0; iz < nz; ++iz) {
    for (int ix = 0; ix < nx; ++ix) {
      g.points.push_back({hx * rx.nodes[ix], hz * rz.nodes[iz]});
      g.weights.push_back(hx * rx.weights[ix] * hz * rz.weights[iz]);
    }
  }
  return g;
}

/// Element centres (m_x d, m_z d) of a planar SPDA, row-major by m_z then m_x,
/// each index running from -(M-1)/2 to (M-1)/2.
inline std::vector<Point2> spda_element_centers(const ApertureSpec& aperture) {
  if (aperture.kind != ApertureKind::PlanarSpda) {
    throw std::invalid_argument("spda_element_centers requires a planar SPDA aperture");
  }
  aperture.validate();
  const int hx = (aperture.mx - 1) / 2;
  const int hz = (aperture.mz - 1) / 2;
  std::vector<Point2> centers;
  centers.reserve(static_cast<std::size_t>(aperture.mx) * aperture.mz);
  for (int mz = -hz; mz <= hz; ++mz) {
    for (int mx = -hx; mx <= hx; ++mx) {
      centers.push_back({mx * aperture.spacing, mz * aperture.spacing});
    }
  }
  return centers;
}

}  // namespace capa
