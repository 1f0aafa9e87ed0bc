// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

// Closed-form MSR against the dense discretized eigenproblem as the grid is
// refined.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "capa/oracle.hpp"
#include "capa/secrecy.hpp"

int main() {
  using std::numbers::pi;
  const auto params = capa::ChannelParams::from_wavelength(0.125);
  const auto bob = capa::UserGeometry::polar(10.0, pi / 6, pi / 6);
  const auto eve = capa::UserGeometry::polar(20.0, pi / 3, pi / 3);
  const auto aperture = capa::ApertureSpec::planar_capa(0.5, 0.5);
  const double area = params.wavelength * params.wavelength / (4.0 * pi);
  const capa::RadioConfig radio{10.0, {1.0, 1.0, area, area}};

  const auto link = capa::link_stats(params, bob, eve, aperture, capa::LinkMethod::ClosedForm);
  const double closed = capa::msr(link, radio).value;
  std::printf("closed form MSR: %.10f bits\n", closed);
  for (int n : {8, 16, 32}) {
    const auto grid = capa::make_grid(aperture, capa::QuadratureRule::Midpoint, n, n);
    const auto field = capa::oracle::discretize(params, bob, eve, grid);
    const double v = capa::oracle::oracle_msr(field, radio).value;
    std::printf("  %3dx%-3d oracle %.10f  rel. delta %.2e\n", n, n, v, std::abs(v - closed) / closed);
  }
}
