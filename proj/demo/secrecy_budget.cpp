// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

// Secrecy rate of the optimal, MRT and ZF currents across a range of
// transmit powers, and the power each one needs for a 2-bit target.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "capa/channel.hpp"
#include "capa/secrecy.hpp"

int main() {
  using std::numbers::pi;
  const auto params = capa::ChannelParams::from_wavelength(0.125);
  const auto bob = capa::UserGeometry::polar(10.0, pi / 6, pi / 6);
  const auto eve = capa::UserGeometry::polar(20.0, pi / 3, pi / 3);
  const auto aperture = capa::ApertureSpec::planar_capa(0.5, 0.5);
  const auto link = capa::link_stats(params, bob, eve, aperture, capa::LinkMethod::ClosedForm);

  const double area = params.wavelength * params.wavelength / (4.0 * pi);
  const capa::NoiseGeometry noise{1.0, 1.0, area, area};

  std::printf("g_b = %.6g  g_e = %.6g  rho_bar = %.6g\n\n", link.g_b, link.g_e, link.rho_bar);
  std::printf("%8s %10s %10s %10s\n", "P [dB]", "optimal", "mrt", "zf");
  for (double db = -10.0; db <= 40.0; db += 10.0) {
    const capa::RadioConfig radio{std::pow(10.0, db / 10.0), noise};
    std::printf("%8.1f %10.4f %10.4f %10.4f\n", db, capa::msr(link, radio).value, capa::mrt_rate(link, radio).value,
                capa::zf_rate(link, radio).value);
  }

  const double r0 = 2.0;
  std::printf("\npower for %.1f bits: optimal %.4g W, mrt %.4g W, zf %.4g W\n", r0, capa::mrp(link, noise, r0).value,
              capa::mrt_power(link, noise, r0).value, capa::zf_power(link, noise, r0).value);
  try {
    capa::mrt_power(link, noise, 6.0);
  } catch (const capa::InfeasibleTarget& e) {
    std::printf("mrt cannot reach 6 bits at any power; its ceiling is %.4f bits\n", e.ceiling());
  }
}
