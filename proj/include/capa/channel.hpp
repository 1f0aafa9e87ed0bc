// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "capa/errors.hpp"
#include "capa/geometry.hpp"

namespace capa {

using cdouble = std::complex<double>;

/// Free-space propagation constants.
struct ChannelParams {
  double wavelength = 0.125;
  double impedance = 120.0 * std::numbers::pi;

  static ChannelParams from_wavelength(double wavelength) {
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
      throw std::invalid_argument("wavelength must be positive and finite");
    }
    return ChannelParams{wavelength, 120.0 * std::numbers::pi};
  }

  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

  /// k0^2 eta^2 / 2: the gain of an infinitely large planar aperture.
  double gain_limit() const {
    const double k0 = wavenumber();
    return 0.5 * k0 * k0 * impedance * impedance;
  }
};

/// Everything the secrecy formulas need from the channel.
///
/// `rho` is the overlap integral of h_b(s) h_e^*(s) over the aperture, and
/// rho_bar = |rho|^2 / (g_b g_e).
struct LinkStatistics {
  double g_b = 0.0;
  double g_e = 0.0;
  cdouble rho{0.0, 0.0};
  double rho_bar = 0.0;

  static LinkStatistics from(double g_b, double g_e, cdouble rho) {
    if (!(g_b > 0.0) || !(g_e > 0.0) || !std::isfinite(g_b) || !std::isfinite(g_e)) {
      throw DegenerateGeometry("channel gains must be positive and finite to normalise rho");
    }
    return LinkStatistics{g_b, g_e, rho, std::norm(rho) / (g_b * g_e)};
  }
};

/// Line-of-sight response h_k(x, z) from aperture point (x, 0, z) to user k.
inline cdouble los_response(const ChannelParams& params, const UserGeometry& user, double x, double z) {
  const double r = user.r;
  const double d2 = x * x + z * z - 2.0 * r * (user.ux() * x + user.uz() * z) + r * r;
  if (!(d2 > 0.0) || !std::isfinite(d2)) {
    throw DegenerateGeometry("user coincides with an aperture point");
  }
  const double k0 = params.wavenumber();
  const double dist = std::sqrt(d2);
  const double mag = k0 * params.impedance * std::sqrt(r * user.uy()) /
                     (std::sqrt(4.0 * std::numbers::pi) * dist * std::sqrt(dist));
  // j * exp(-j k0 D)
  return mag * cdouble(std::sin(k0 * dist), std::cos(k0 * dist));
}

/// Exact gain of a planar CAPA, the solid-angle sum of four arctan terms.
inline double capa_gain_closed(const ChannelParams& params, const UserGeometry& user,
                               const ApertureSpec& aperture) {
  if (aperture.kind != ApertureKind::PlanarCapa) {
    throw std::invalid_argument("capa_gain_closed requires a planar CAPA aperture");
  }
  aperture.validate();
  user.validate();
  const double psi = user.uy();
  const double hx = aperture.lx / (2.0 * user.r);
  const double hz = aperture.lz / (2.0 * user.r);
  const double xs[2] = {hx + user.ux(), hx - user.ux()};
  const double zs[2] = {hz + user.uz(), hz - user.uz()};
  double sum = 0.0;
  for (double x : xs) {
    for (double z : zs) {
      sum += std::atan(x * z / (psi * std::sqrt(psi * psi + x * x + z * z)));
    }
  }
  const double k0 = params.wavenumber();
  return k0 * k0 * params.impedance * params.impedance / (4.0 * std::numbers::pi) * sum;
}

/// sum_i w_i |h_k(p_i)|^2.
inline double capa_gain_numeric(const ChannelParams& params, const UserGeometry& user,
                                const QuadratureGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("empty quadrature grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sum += grid.weights[i] * std::norm(los_response(params, user, grid.points[i].x, grid.points[i].z));
  }
  return sum;
}

/// sum_i w_i h_b^*(p_i) h_e(p_i). Note this is conj(LinkStatistics::rho).
inline cdouble correlation_numeric(const ChannelParams& params, const UserGeometry& bob,
                                   const UserGeometry& eve, const QuadratureGrid& grid) {
  cdouble sum{0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [x, z] = grid.points[i];
    sum += grid.weights[i] * std::conj(los_response(params, bob, x, z)) * los_response(params, eve, x, z);
  }
  return sum;
}

/// Chebyshev-Gauss approximation of the integral of h_b^* h_e over a planar
/// CAPA with T nodes per axis. Returns conj(LinkStatistics::rho).
inline cdouble correlation_chebyshev(const ChannelParams& params, const UserGeometry& bob,
                                     const UserGeometry& eve, const ApertureSpec& aperture, int t) {
  if (t < 1) throw std::invalid_argument("Chebyshev node count must be at least 1");
  aperture.validate();
  const auto rule = detail::chebyshev_gauss_rule(t);
  const double hx = aperture.lx / 2.0;
  const double hz = aperture.lz / 2.0;
  cdouble sum{0.0, 0.0};
  for (int iz = 0; iz < t; ++iz) {
    for (int ix = 0; ix < t; ++ix) {
      const double x = hx * rule.nodes[ix];
      const double z = hz * rule.nodes[iz];
      sum += rule.weights[ix] * rule.weights[iz] *
             (std::conj(los_response(params, bob, x, z)) * los_response(params, eve, x, z));
    }
  }
  return hx * hz * sum;
}

/// SPDA channel statistics: exact discrete sums over the element centres plus
/// the occupation-ratio-scaled CAPA gains.
struct SpdaLinkStatistics {
  LinkStatistics discrete;
  double g_b_closed = 0.0;
  double g_e_closed = 0.0;
  double occupation_ratio = 0.0;
};

inline SpdaLinkStatistics spda_link_stats(const ChannelParams& params, const UserGeometry& bob,
                                          const UserGeometry& eve, const ApertureSpec& aperture) {
  const auto centers = spda_element_centers(aperture);
  double gb = 0.0;
  double ge = 0.0;
  cdouble overlap{0.0, 0.0};  // sum h_b h_e^*
  for (const auto& c : centers) {
    const cdouble hb = los_response(params, bob, c.x, c.z);
    const cdouble he = los_response(params, eve, c.x, c.z);
    gb += std::norm(hb);
    ge += std::norm(he);
    overlap += hb * std::conj(he);
  }
  const double as = aperture.element_area;
  const double zeta = aperture.occupation_ratio();
  const auto full = ApertureSpec::planar_capa(aperture.lx, aperture.lz);

  SpdaLinkStatistics out;
  out.discrete = LinkStatistics::from(as * gb, as * ge, as * overlap);
  out.occupation_ratio = zeta;
  out.g_b_closed = zeta * capa_gain_closed(params, bob, full);
  out.g_e_closed = zeta * capa_gain_closed(params, eve, full);
  return out;
}

enum class LinkMethod { ClosedForm, Numeric };

/// Resolution knobs for `link_stats`. `chebyshev_t` drives the closed-form
/// correlation; `rule`/`n` the all-numeric CAPA route (n x n points).
struct LinkResolution {
  int chebyshev_t = 100;
  QuadratureRule rule = QuadratureRule::Midpoint;
  int n = 128;
};

/// Assemble (g_b, g_e, rho, rho_bar).
///
/// CAPA, ClosedForm: arctan gains, Chebyshev correlation.
/// CAPA, Numeric:    gains and correlation on one shared quadrature grid.
/// SPDA, ClosedForm: zeta_oc-scaled CAPA gains and correlation (the same
///                   Riemann-sum reduction applied to both).
/// SPDA, Numeric:    exact sums over element centres.
inline LinkStatistics link_stats(const ChannelParams& params, const UserGeometry& bob, const UserGeometry& eve,
                                 const ApertureSpec& aperture, LinkMethod method,
                                 const LinkResolution& res = {}) {
  if (aperture.kind == ApertureKind::PlanarSpda) {
    if (method == LinkMethod::Numeric) return spda_link_stats(params, bob, eve, aperture).discrete;
    const double zeta = aperture.occupation_ratio();
    const auto full = ApertureSpec::planar_capa(aperture.lx, aperture.lz);
    return LinkStatistics::from(zeta * capa_gain_closed(params, bob, full),
                                zeta * capa_gain_closed(params, eve, full),
                                zeta * std::conj(correlation_chebyshev(params, bob, eve, full, res.chebyshev_t)));
  }
  if (method == LinkMethod::ClosedForm) {
    return LinkStatistics::from(capa_gain_closed(params, bob, aperture), capa_gain_closed(params, eve, aperture),
                                std::conj(correlation_chebyshev(params, bob, eve, aperture, res.chebyshev_t)));
  }
  const auto grid = make_grid(aperture, res.rule, res.n, res.n);
  return LinkStatistics::from(capa_gain_numeric(params, bob, grid), capa_gain_numeric(params, eve, grid),
                              std::conj(correlation_numeric(params, bob, eve, grid)));
}

}  // namespace capa
