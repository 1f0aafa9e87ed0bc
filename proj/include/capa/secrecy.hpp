// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "capa/channel.hpp"
#include "capa/errors.hpp"
#include "capa/radio.hpp"

// Closed-form secrecy limits of a CAPA wiretap link.
//
// Every result here depends on the channel only through LinkStatistics: the
// optimal currents are known to lie in span{h_b^*, h_e^*}, so every inner
// product of a beamformer with a user's response reduces to (g_b, g_e, rho).
// No quadrature happens in this header.

namespace capa {

/// Current j(s) = c (a h_b^*(s) + b h_e^*(s)), with c fixed by the integral of
/// |j|^2 being `power`.
struct BeamformerCoeffs {
  cdouble a{1.0, 0.0};
  cdouble b{0.0, 0.0};
  double power = 0.0;

  /// Integral of |a h_b^* + b h_e^*|^2 over the aperture.
  double unnormalized_norm2(const LinkStatistics& link) const {
    return std::norm(a) * link.g_b + std::norm(b) * link.g_e + 2.0 * std::real(std::conj(a) * b * link.rho);
  }

  /// b / a, the quantity whose low/high-SNR limits identify MRT and ZF.
  cdouble ratio() const { return b / a; }
};

enum class SolutionKind { Msr, Mrp, MrtRate, ZfRate, MrtPower, ZfPower };

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Msr: return "msr";
    case SolutionKind::Mrp: return "mrp";
    case SolutionKind::MrtRate: return "mrt_rate";
    case SolutionKind::ZfRate: return "zf_rate";
    case SolutionKind::MrtPower: return "mrt_power";
    case SolutionKind::ZfPower: return "zf_power";
  }
  return "?";
}

/// A rate (bits per channel use) or power (W) together with the current that
/// achieves it.
struct SecrecySolution {
  double value = 0.0;
  BeamformerCoeffs beamformer;
  SolutionKind kind = SolutionKind::Msr;
  /// Set when rho vanished and the scheme fell back to the MRT current.
  bool degenerate_to_mrt = false;
};

namespace detail {

inline void require_not_parallel(const LinkStatistics& link, const char* who) {
  if (!(link.rho_bar < 1.0)) {
    throw DegenerateGeometry(std::string(who) + ": Bob and Eve responses are parallel (rho_bar >= 1)");
  }
}

// |rho| below this fraction of sqrt(g_b g_e) counts as orthogonal channels.
inline bool rho_negligible(const LinkStatistics& link) {
  return std::abs(link.rho) < 1e-12 * std::sqrt(link.g_b * link.g_e);
}

inline double log2_ratio(double num_snr, double den_snr) {
  return (std::log1p(num_snr) - std::log1p(den_snr)) / std::numbers::ln2;
}

inline void require_target(double r0) {
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw std::invalid_argument("target rate must be finite and >= 0");
}

}  // namespace detail

/// Principal generalized eigenvalue of the (A_b, A_e) pencil, 2^MSR.
///
/// lambda - 1 is the larger root of
///   (1 + x_e) mu^2 - Xi mu - x_b x_e (1 - rho_bar) = 0,
///   Xi = x_b - x_e + x_b x_e (1 - rho_bar),
/// with x_k = gamma_bar_k g_k.
inline double principal_eigenvalue(const LinkStatistics& link, const RadioConfig& radio) {
  const double xb = radio.gamma_bar_b() * link.g_b;
  const double xe = radio.gamma_bar_e() * link.g_e;
  const double c = xb * xe * (1.0 - link.rho_bar);
  const double xi = xb - xe + c;
  const double root = std::sqrt(xi * xi + 4.0 * (1.0 + xe) * c);
  const double mu = xi >= 0.0 ? (xi + root) / (2.0 * (1.0 + xe)) : 2.0 * c / (root - xi);
  return 1.0 + mu;
}

/// 1 + x_b (1 + x_e (1 - rho_bar)) / (1 + x_e), the commonly quoted closed
/// form. It equals principal_eigenvalue only when rho_bar = 0 and otherwise
/// overestimates it slightly (not an achievable rate).
inline double simplified_principal_eigenvalue(const LinkStatistics& link, const RadioConfig& radio) {
  const double xb = radio.gamma_bar_b() * link.g_b;
  const double xe = radio.gamma_bar_e() * link.g_e;
  return 1.0 + xb * (1.0 + xe * (1.0 - link.rho_bar)) / (1.0 + xe);
}

/// Larger root xi_1 of the quadratic that gives the eigenvalues of the
/// two-dimensional reduced operator at a trial eigenvalue `lambda`.
inline double principal_root(const LinkStatistics& link, const RadioConfig& radio, double lambda) {
  const double xb = radio.gamma_bar_b() * link.g_b;
  const double xe = radio.gamma_bar_e() * link.g_e;
  const double delta = xb - lambda * xe;
  const double c = lambda * xb * xe * (1.0 - link.rho_bar);
  const double root = std::sqrt(delta * delta + 4.0 * c);
  // (delta + root) / 2, written without cancellation when delta < 0.
  return delta >= 0.0 ? 0.5 * (delta + root) : 2.0 * c / (root - delta);
}

inline SecrecySolution msr(const LinkStatistics& link, const RadioConfig& radio) {
  radio.validate();
  detail::require_not_parallel(link, "msr");
  const double lambda = principal_eigenvalue(link, radio);
  const double xb = radio.gamma_bar_b() * link.g_b;

  SecrecySolution sol;
  sol.kind = SolutionKind::Msr;
  sol.value = std::log1p(lambda - 1.0) / std::numbers::ln2;
  sol.beamformer.power = radio.power;
  if (detail::rho_negligible(link)) {
    sol.degenerate_to_mrt = true;
  } else {
    const double xi1 = principal_root(link, radio, lambda);
    sol.beamformer.b = (xi1 - xb) / (radio.gamma_bar_b() * link.rho);
  }
  return sol;
}

/// Inner products of user responses with the unnormalised current
/// a h_b^* + b h_e^*: first Bob's, then Eve's.
inline std::pair<cdouble, cdouble> received_amplitudes(const LinkStatistics& link, const BeamformerCoeffs& bf) {
  return {bf.a * link.g_b + bf.b * link.rho, bf.a * std::conj(link.rho) + bf.b * link.g_e};
}

/// Secrecy rate max{log2((1 + gamma_b)/(1 + gamma_e)), 0} of an arbitrary
/// current in span{h_b^*, h_e^*}, transmitted at `bf.power`.
inline double rate_of_beamformer(const LinkStatistics& link, const NoiseGeometry& noise, const BeamformerCoeffs& bf) {
  const double norm2 = bf.unnormalized_norm2(link);
  if (!(norm2 > 0.0)) throw std::invalid_argument("beamformer has zero norm");
  const auto [yb, ye] = received_amplitudes(link, bf);
  const double gb = bf.power * noise.scale_b() * std::norm(yb) / norm2;
  const double ge = bf.power * noise.scale_e() * std::norm(ye) / norm2;
  return std::max(detail::log2_ratio(gb, ge), 0.0);
}

inline SecrecySolution mrt_rate(const LinkStatistics& link, const RadioConfig& radio) {
  radio.validate();
  if (!(link.g_b > 0.0)) throw DegenerateGeometry("mrt_rate: Bob's channel gain is zero");
  SecrecySolution sol;
  sol.kind = SolutionKind::MrtRate;
  sol.beamformer = {1.0, 0.0, radio.power};
  sol.value = std::max(
      detail::log2_ratio(radio.gamma_bar_b() * link.g_b, radio.gamma_bar_e() * link.g_e * link.rho_bar), 0.0);
  return sol;
}

/// Zero-forcing current h_b^* - (g_b rho_bar / rho) h_e^*. Eve receives
/// nothing, so the rate is log2(1 + gamma_bar_b g_b (1 - rho_bar)).
inline SecrecySolution zf_rate(const LinkStatistics& link, const RadioConfig& radio) {
  radio.validate();
  detail::require_not_parallel(link, "zf_rate");
  SecrecySolution sol;
  sol.kind = SolutionKind::ZfRate;
  sol.beamformer.power = radio.power;
  if (detail::rho_negligible(link)) {
    sol.degenerate_to_mrt = true;
  } else {
    // g_b rho_bar / rho == conj(rho) / g_e; this form makes Eve's amplitude
    // a conj(rho) + b g_e cancel exactly.
    sol.beamformer.b = -std::conj(link.rho) / link.g_e;
  }
  sol.value = std::log1p(radio.gamma_bar_b() * link.g_b * (1.0 - link.rho_bar)) / std::numbers::ln2;
  return sol;
}

/// High-SNR approximation log2(gamma_bar_b g_b (1 - rho_bar)) of the ZF rate.
inline double zf_rate_asymptote(const LinkStatistics& link, const RadioConfig& radio) {
  return std::log2(radio.gamma_bar_b() * link.g_b * (1.0 - link.rho_bar));
}

/// Minimum power reaching secrecy rate `r0`, and its current h_b^* - tau h_e^*.
inline SecrecySolution mrp(const LinkStatistics& link, const NoiseGeometry& noise, double r0) {
  noise.validate();
  detail::require_target(r0);
  const double cb = noise.scale_b();
  const double ce = noise.scale_e();
  const double k = std::exp2(r0);
  const double alpha = cb * link.g_b - k * ce * link.g_e;
  const double beta = 4.0 * k * cb * ce * link.g_b * link.g_e * (1.0 - link.rho_bar);
  const double root = std::sqrt(alpha * alpha + beta);
  // alpha + root, stable for alpha < 0 via (root^2 - alpha^2) = beta.
  const double denom = alpha >= 0.0 ? alpha + root : beta / (root - alpha);
  if (!(denom > 0.0)) {
    throw InfeasibleTarget("mrp: target rate unreachable with parallel Bob/Eve responses",
                           std::log2(cb * link.g_b / (ce * link.g_e)));
  }

  SecrecySolution sol;
  sol.kind = SolutionKind::Mrp;
  sol.value = 2.0 * std::expm1(r0 * std::numbers::ln2) / denom;
  sol.beamformer.power = sol.value;
  if (detail::rho_negligible(link)) {
    sol.degenerate_to_mrt = true;
  } else {
    // tau = (S - root) / (2 cb rho) with S = cb g_b + k ce g_e; S^2 - root^2
    // = 4 k cb ce g_b g_e rho_bar removes the cancellation.
    const double s = cb * link.g_b + k * ce * link.g_e;
    const cdouble tau = 2.0 * k * ce * link.g_b * link.g_e * link.rho_bar / ((s + root) * link.rho);
    sol.beamformer.b = -tau;
  }
  return sol;
}

/// Power MRT needs for rate `r0`. Throws InfeasibleTarget carrying MRT's rate
/// ceiling log2(cb g_b / (ce g_e rho_bar)) when r0 is at or above it.
inline SecrecySolution mrt_power(const LinkStatistics& link, const NoiseGeometry& noise, double r0) {
  noise.validate();
  detail::require_target(r0);
  const double cb = noise.scale_b();
  const double ce = noise.scale_e();
  const double k = std::exp2(r0);
  const double denom = cb * link.g_b - k * ce * link.g_e * link.rho_bar;
  if (!(denom > 0.0)) {
    throw InfeasibleTarget("mrt_power: target rate exceeds the MRT ceiling",
                           std::log2(cb * link.g_b / (ce * link.g_e * link.rho_bar)));
  }
  SecrecySolution sol;
  sol.kind = SolutionKind::MrtPower;
  sol.value = std::expm1(r0 * std::numbers::ln2) / denom;
  sol.beamformer = {1.0, 0.0, sol.value};
  return sol;
}

/// ZF required power 2^r0 / (cb g_b (1 - rho_bar)), the high-rate form that
/// the optimal power approaches as r0 grows.
inline SecrecySolution zf_power(const LinkStatistics& link, const NoiseGeometry& noise, double r0) {
  noise.validate();
  detail::require_target(r0);
  detail::require_not_parallel(link, "zf_power");
  SecrecySolution sol;
  sol.kind = SolutionKind::ZfPower;
  sol.value = std::exp2(r0) / (noise.scale_b() * link.g_b * (1.0 - link.rho_bar));
  sol.beamformer.power = sol.value;
  if (detail::rho_negligible(link)) {
    sol.degenerate_to_mrt = true;
  } else {
    sol.beamformer.b = -std::conj(link.rho) / link.g_e;
  }
  return sol;
}

/// Infinite-aperture limits of MSR and MRP for planar CAPA and SPDA.
struct AsymptoticLimits {
  double msr_capa = 0.0;
  double msr_spda = 0.0;
  double mrp_capa = 0.0;
  double mrp_spda = 0.0;
};

inline AsymptoticLimits asymptotic_limits(const ChannelParams& params, const RadioConfig& radio, double zeta_oc,
                                          double r0) {
  radio.validate();
  detail::require_target(r0);
  if (!(zeta_oc > 0.0 && zeta_oc <= 1.0)) throw std::invalid_argument("occupation ratio must lie in (0, 1]");
  const double gmax = params.gain_limit();
  AsymptoticLimits out;
  out.msr_capa = std::log1p(radio.gamma_bar_b() * gmax) / std::numbers::ln2;
  out.msr_spda = std::log1p(radio.gamma_bar_b() * gmax * zeta_oc) / std::numbers::ln2;
  out.mrp_capa = std::expm1(r0 * std::numbers::ln2) / (gmax * radio.noise.scale_b());
  out.mrp_spda = out.mrp_capa / zeta_oc;
  return out;
}

}  // namespace capa
