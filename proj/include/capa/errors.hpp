// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

#include <stdexcept>
#include <string>

namespace capa {

/// Geometry for which a quantity is undefined: coincident points, zero gains,
/// or parallel Bob/Eve responses where a formula needs rho_bar < 1.
class DegenerateGeometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A target secrecy rate the chosen scheme cannot reach at any power.
/// `ceiling()` is the largest rate the scheme supports (bits per channel use),
/// or NaN when no finite ceiling applies.
class InfeasibleTarget : public std::domain_error {
 public:
  InfeasibleTarget(const std::string& what, double ceiling)
      : std::domain_error(what), ceiling_(ceiling) {}

  double ceiling() const noexcept { return ceiling_; }

 private:
  double ceiling_;
};

}  // namespace capa
