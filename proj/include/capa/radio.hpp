// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

#include <cmath>
#include <stdexcept>

namespace capa {

/// Receive-side constants: noise powers and receive aperture areas.
struct NoiseGeometry {
  double sigma2_b = 1.0;
  double sigma2_e = 1.0;
  double area_b = 1.0;
  double area_e = 1.0;

  /// |A_k| / sigma_k^2: SNR per unit transmit power per unit channel gain.
  double scale_b() const { return area_b / sigma2_b; }
  double scale_e() const { return area_e / sigma2_e; }

  void validate() const {
    if (!(sigma2_b > 0.0) || !(sigma2_e > 0.0) || !(area_b > 0.0) || !(area_e > 0.0)) {
      throw std::invalid_argument("noise powers and receive areas must be positive");
    }
  }
};

/// Power budget plus receive-side constants.
struct RadioConfig {
  double power = 1.0;
  NoiseGeometry noise;

  double gamma_bar_b() const { return power * noise.scale_b(); }
  double gamma_bar_e() const { return power * noise.scale_e(); }

  void validate() const {
    noise.validate();
    if (!(power > 0.0) || !std::isfinite(power)) throw std::invalid_argument("power budget must be positive");
  }
};

}  // namespace capa
