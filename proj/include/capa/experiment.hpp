// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

#pragma once

// Configuration-driven experiments: parameter sweeps written as CSV and the
// oracle verification harness.
//
// Configuration is a flat map of "section.key" -> text. Every key has a
// default; overrides must name a known key. Angles accept plain radians or
// the forms "pi", "pi/6", "2*pi/3".

#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capa/channel.hpp"
#include "capa/errors.hpp"
#include "capa/geometry.hpp"
#include "capa/oracle.hpp"
#include "capa/radio.hpp"
#include "capa/secrecy.hpp"

namespace capa::experiment {

using Settings = std::map<std::string, std::string>;

/// Bad key, unparsable value, or inconsistent configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest text that parses back to the same double: 17 significant digits.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  if (used != t.size()) throw ConfigError(key + ": trailing characters in '" + text + "'");
  return v;
}

// "[k*]pi[/m]" or a plain number.
inline double parse_angle(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  const auto p = t.find("pi");
  if (p == std::string::npos) return parse_double(key, t);
  double scale = 1.0;
  if (p > 0) {
    std::string head = t.substr(0, p);
    if (head.empty() || head.back() != '*') throw ConfigError(key + ": expected k*pi, got '" + text + "'");
    head.pop_back();
    scale = parse_double(key, head);
  }
  std::string tail = t.substr(p + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError(key + ": expected pi/m, got '" + text + "'");
    const double d = parse_double(key, tail.substr(1));
    if (d == 0.0) throw ConfigError(key + ": division by zero");
    scale /= d;
  }
  return scale * std::numbers::pi;
}

inline int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + text + "'");
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

enum class SweepVariable { PowerDb, ApertureArea, Aor, TargetRate };
enum class Scheme { Optimal, Mrt, Zf };

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::PowerDb: return "power_dB";
    case SweepVariable::ApertureArea: return "aperture_area";
    case SweepVariable::Aor: return "aor";
    case SweepVariable::TargetRate: return "target_rate";
  }
  return "?";
}

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Optimal: return "optimal";
    case Scheme::Mrt: return "mrt";
    case Scheme::Zf: return "zf";
  }
  return "?";
}

/// Canonical evaluation scenario. Receive areas of "auto" resolve to
/// lambda^2 / (4 pi).
inline Settings default_settings() {
  return {
      {"scenario.wavelength", "0.125"},
      {"scenario.bob_r", "10"},
      {"scenario.bob_theta", "pi/6"},
      {"scenario.bob_phi", "pi/6"},
      {"scenario.eve_r", "20"},
      {"scenario.eve_theta", "pi/3"},
      {"scenario.eve_phi", "pi/3"},
      {"scenario.power_db", "10"},
      {"scenario.sigma2_b", "1"},
      {"scenario.sigma2_e", "1"},
      {"scenario.area_b", "auto"},
      {"scenario.area_e", "auto"},
      {"aperture.array", "capa"},
      {"aperture.lx", "0.5"},
      {"aperture.lz", "0.5"},
      {"aperture.mx", "9"},
      {"aperture.mz", "9"},
      {"aperture.aor", "1"},
      {"aperture.method", "closed"},
      {"aperture.chebyshev_t", "100"},
      {"aperture.numeric_n", "128"},
      {"target.rate", "2"},
      {"query.scheme", "optimal"},
      {"sweep.variable", "power_dB"},
      {"sweep.from", "-10"},
      {"sweep.to", "40"},
      {"sweep.steps", "11"},
      {"sweep.log_scale", "false"},
      {"sweep.schemes", "optimal,mrt,zf"},
      {"verify.resolutions", "16,32,64"},
      {"verify.tolerance", "1e-3"},
      {"verify.corrupt_gain", "1"},
  };
}

/// Applies `overrides` on top of `base`, rejecting unknown keys.
inline Settings merge_settings(Settings base, const Settings& overrides) {
  for (const auto& [k, v] : overrides) {
    auto it = base.find(k);
    if (it == base.end()) throw ConfigError("unknown configuration key '" + k + "'");
    it->second = detail::trim(v);
  }
  return base;
}

/// Parses "key=value" into the pair, for command-line overrides.
inline std::pair<std::string, std::string> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + text + "'");
  return {detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1))};
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::PowerDb;
  double from = -10.0;
  double to = 40.0;
  int steps = 11;
  bool log_scale = false;
  std::vector<Scheme> schemes{Scheme::Optimal, Scheme::Mrt, Scheme::Zf};

  std::vector<double> points() const {
    std::vector<double> xs(steps);
    for (int i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) / (steps - 1);
      xs[i] = log_scale ? from * std::pow(to / from, t) : from + (to - from) * t;
    }
    xs.back() = to;
    return xs;
  }
};

struct ExperimentConfig {
  ChannelParams params;
  UserGeometry bob;
  UserGeometry eve;
  double power_db = 10.0;
  NoiseGeometry noise;
  ApertureKind array = ApertureKind::PlanarCapa;
  double lx = 0.5;
  double lz = 0.5;
  int mx = 9;
  int mz = 9;
  double aor = 1.0;
  LinkMethod method = LinkMethod::ClosedForm;
  LinkResolution resolution;
  double target_rate = 2.0;
  Scheme query_scheme = Scheme::Optimal;
  SweepSpec sweep;
  std::vector<int> verify_resolutions{16, 32, 64};
  double verify_tolerance = 1e-3;
  double verify_corrupt_gain = 1.0;

  RadioConfig radio() const { return radio_at(power_db); }
  RadioConfig radio_at(double db) const { return RadioConfig{std::pow(10.0, db / 10.0), noise}; }

  /// The transmit aperture with side lengths (lx, lz) and occupation `zeta`.
  ApertureSpec aperture(double lx_, double lz_, double zeta) const {
    if (array == ApertureKind::PlanarCapa) return ApertureSpec::planar_capa(lx_, lz_);
    const double d = lx_ / mx;
    if (std::abs(lz_ / mz - d) > 1e-9 * d) {
      throw ConfigError("SPDA needs equal pitch on both axes: lx/mx must equal lz/mz");
    }
    return ApertureSpec::planar_spda(mx, mz, d, zeta * d * d);
  }
  ApertureSpec aperture() const { return aperture(lx, lz, aor); }

  LinkStatistics link(const ApertureSpec& a) const { return link_stats(params, bob, eve, a, method, resolution); }
  LinkStatistics link() const { return link(aperture()); }

  static ExperimentConfig from_settings(const Settings& overrides);
  Settings to_settings() const;
};

inline ExperimentConfig ExperimentConfig::from_settings(const Settings& overrides) {
  using namespace detail;
  const Settings s = merge_settings(default_settings(), overrides);
  auto num = [&](const char* k) { return parse_double(k, s.at(k)); };
  auto ang = [&](const char* k) { return parse_angle(k, s.at(k)); };
  auto integer = [&](const char* k) { return parse_int(k, s.at(k)); };

  ExperimentConfig c;
  try {
    c.params = ChannelParams::from_wavelength(num("scenario.wavelength"));
    c.bob = UserGeometry::polar(num("scenario.bob_r"), ang("scenario.bob_theta"), ang("scenario.bob_phi"));
    c.eve = UserGeometry::polar(num("scenario.eve_r"), ang("scenario.eve_theta"), ang("scenario.eve_phi"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  c.power_db = num("scenario.power_db");
  const double auto_area = c.params.wavelength * c.params.wavelength / (4.0 * std::numbers::pi);
  auto area = [&](const char* k) { return s.at(k) == "auto" ? auto_area : num(k); };
  c.noise = NoiseGeometry{num("scenario.sigma2_b"), num("scenario.sigma2_e"), area("scenario.area_b"),
                          area("scenario.area_e")};

  const std::string& array = s.at("aperture.array");
  if (array == "capa") {
    c.array = ApertureKind::PlanarCapa;
  } else if (array == "spda") {
    c.array = ApertureKind::PlanarSpda;
  } else {
    throw ConfigError("aperture.array: expected capa or spda, got '" + array + "'");
  }
  c.lx = num("aperture.lx");
  c.lz = num("aperture.lz");
  c.mx = integer("aperture.mx");
  c.mz = integer("aperture.mz");
  c.aor = num("aperture.aor");
  const std::string& method = s.at("aperture.method");
  if (method == "closed") {
    c.method = LinkMethod::ClosedForm;
  } else if (method == "numeric") {
    c.method = LinkMethod::Numeric;
  } else {
    throw ConfigError("aperture.method: expected closed or numeric, got '" + method + "'");
  }
  c.resolution.chebyshev_t = integer("aperture.chebyshev_t");
  c.resolution.n = integer("aperture.numeric_n");
  if (c.resolution.chebyshev_t < 1) throw ConfigError("aperture.chebyshev_t must be >= 1");
  if (c.resolution.n < 2) throw ConfigError("aperture.numeric_n must be >= 2");
  if (!(c.aor > 0.0 && c.aor <= 1.0)) throw ConfigError("aperture.aor must lie in (0, 1]");

  c.target_rate = num("target.rate");
  if (!(c.target_rate >= 0.0)) throw ConfigError("target.rate must be >= 0");

  auto scheme_of = [](const std::string& k, const std::string& name) {
    if (name == "optimal") return Scheme::Optimal;
    if (name == "mrt") return Scheme::Mrt;
    if (name == "zf") return Scheme::Zf;
    throw ConfigError(k + ": unknown scheme '" + name + "'");
  };
  c.query_scheme = scheme_of("query.scheme", s.at("query.scheme"));

  const std::string& var = s.at("sweep.variable");
  if (var == "power_dB") {
    c.sweep.variable = SweepVariable::PowerDb;
  } else if (var == "aperture_area") {
    c.sweep.variable = SweepVariable::ApertureArea;
  } else if (var == "aor") {
    c.sweep.variable = SweepVariable::Aor;
  } else if (var == "target_rate") {
    c.sweep.variable = SweepVariable::TargetRate;
  } else {
    throw ConfigError("sweep.variable: expected power_dB, aperture_area, aor or target_rate, got '" + var + "'");
  }
  c.sweep.from = num("sweep.from");
  c.sweep.to = num("sweep.to");
  c.sweep.steps = integer("sweep.steps");
  c.sweep.log_scale = parse_bool("sweep.log_scale", s.at("sweep.log_scale"));
  c.sweep.schemes.clear();
  for (const auto& name : split_list(s.at("sweep.schemes"))) c.sweep.schemes.push_back(scheme_of("sweep.schemes", name));
  if (c.sweep.steps < 2) throw ConfigError("sweep.steps must be >= 2");
  if (!(c.sweep.from < c.sweep.to)) throw ConfigError("sweep.from must be < sweep.to");
  if (c.sweep.schemes.empty()) throw ConfigError("sweep.schemes must name at least one scheme");
  if (c.sweep.log_scale && !(c.sweep.from > 0.0)) throw ConfigError("log-scale sweeps need sweep.from > 0");

  c.verify_resolutions.clear();
  for (const auto& item : split_list(s.at("verify.resolutions"))) {
    c.verify_resolutions.push_back(parse_int("verify.resolutions", item));
  }
  if (c.verify_resolutions.empty()) throw ConfigError("verify.resolutions must be nonempty");
  for (std::size_t i = 0; i < c.verify_resolutions.size(); ++i) {
    if (c.verify_resolutions[i] < 2 || (i > 0 && c.verify_resolutions[i] <= c.verify_resolutions[i - 1])) {
      throw ConfigError("verify.resolutions must be increasing and >= 2");
    }
  }
  c.verify_tolerance = num("verify.tolerance");
  c.verify_corrupt_gain = num("verify.corrupt_gain");

  try {
    c.noise.validate();
    c.aperture();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

inline Settings ExperimentConfig::to_settings() const {
  const auto f = format_number;
  std::string resolutions;
  for (int n : verify_resolutions) resolutions += (resolutions.empty() ? "" : ",") + std::to_string(n);
  std::string schemes;
  for (auto sc : sweep.schemes) schemes += (schemes.empty() ? "" : ",") + std::string(to_string(sc));
  return {
      {"scenario.wavelength", f(params.wavelength)},
      {"scenario.bob_r", f(bob.r)},
      {"scenario.bob_theta", f(bob.theta)},
      {"scenario.bob_phi", f(bob.phi)},
      {"scenario.eve_r", f(eve.r)},
      {"scenario.eve_theta", f(eve.theta)},
      {"scenario.eve_phi", f(eve.phi)},
      {"scenario.power_db", f(power_db)},
      {"scenario.sigma2_b", f(noise.sigma2_b)},
      {"scenario.sigma2_e", f(noise.sigma2_e)},
      {"scenario.area_b", f(noise.area_b)},
      {"scenario.area_e", f(noise.area_e)},
      {"aperture.array", array == ApertureKind::PlanarCapa ? "capa" : "spda"},
      {"aperture.lx", f(lx)},
      {"aperture.lz", f(lz)},
      {"aperture.mx", std::to_string(mx)},
      {"aperture.mz", std::to_string(mz)},
      {"aperture.aor", f(aor)},
      {"aperture.method", method == LinkMethod::ClosedForm ? "closed" : "numeric"},
      {"aperture.chebyshev_t", std::to_string(resolution.chebyshev_t)},
      {"aperture.numeric_n", std::to_string(resolution.n)},
      {"target.rate", f(target_rate)},
      {"query.scheme", to_string(query_scheme)},
      {"sweep.variable", to_string(sweep.variable)},
      {"sweep.from", f(sweep.from)},
      {"sweep.to", f(sweep.to)},
      {"sweep.steps", std::to_string(sweep.steps)},
      {"sweep.log_scale", sweep.log_scale ? "true" : "false"},
      {"sweep.schemes", schemes},
      {"verify.resolutions", resolutions},
      {"verify.tolerance", f(verify_tolerance)},
      {"verify.corrupt_gain", f(verify_corrupt_gain)},
  };
}

/// Rate of `scheme` at the configured power.
inline double scheme_rate(Scheme scheme, const LinkStatistics& link, const RadioConfig& radio) {
  switch (scheme) {
    case Scheme::Optimal: return msr(link, radio).value;
    case Scheme::Mrt: return mrt_rate(link, radio).value;
    case Scheme::Zf: return zf_rate(link, radio).value;
  }
  return std::nan("");
}

/// Power `scheme` needs for rate `r0`; +inf when the scheme cannot reach it.
inline double scheme_power(Scheme scheme, const LinkStatistics& link, const NoiseGeometry& noise, double r0) {
  try {
    switch (scheme) {
      case Scheme::Optimal: return mrp(link, noise, r0).value;
      case Scheme::Mrt: return mrt_power(link, noise, r0).value;
      case Scheme::Zf: return zf_power(link, noise, r0).value;
    }
  } catch (const InfeasibleTarget&) {
    return std::numeric_limits<double>::infinity();
  }
  return std::nan("");
}

/// One sweep as a table: column names and rows of numbers.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw std::out_of_range("no column '" + name + "'");
  }
};

namespace detail {

// Evaluates f, mapping degenerate geometry to NaN so one bad point does not
// abort the sweep.
inline double guarded(const std::function<double()>& f) {
  try {
    return f();
  } catch (const DegenerateGeometry&) {
    return std::nan("");
  }
}

}  // namespace detail

inline SweepTable compute_sweep(const ExperimentConfig& c) {
  SweepTable t;
  const auto& sw = c.sweep;
  t.columns.push_back("x");
  const bool spda = c.array == ApertureKind::PlanarSpda;

  switch (sw.variable) {
    case SweepVariable::PowerDb:
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_rate");
      break;
    case SweepVariable::TargetRate:
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_power");
      break;
    case SweepVariable::ApertureArea:
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_rate");
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_power");
      t.columns.push_back("asymptote_msr_capa");
      t.columns.push_back("asymptote_mrp_capa");
      if (spda) {
        t.columns.push_back("asymptote_msr_spda");
        t.columns.push_back("asymptote_mrp_spda");
      }
      break;
    case SweepVariable::Aor:
      if (!spda) throw ConfigError("an aor sweep needs aperture.array = spda");
      if (!(sw.from > 0.0 && sw.to <= 1.0)) throw ConfigError("an aor sweep must stay within (0, 1]");
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_rate");
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_power");
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_rate_capa");
      for (auto s : sw.schemes) t.columns.push_back(std::string(to_string(s)) + "_power_capa");
      t.columns.push_back("asymptote_msr_capa");
      t.columns.push_back("asymptote_mrp_capa");
      t.columns.push_back("asymptote_msr_spda");
      t.columns.push_back("asymptote_mrp_spda");
      break;
  }

  const RadioConfig radio = c.radio();
  const double r0 = c.target_rate;
  // Computed once for sweeps whose channel does not depend on x.
  auto fixed_link = [&]() { return c.link(); };

  for (double x : sw.points()) {
    std::vector<double> row{x};
    switch (sw.variable) {
      case SweepVariable::PowerDb: {
        const auto link = fixed_link();
        const auto r = c.radio_at(x);
        for (auto s : sw.schemes) row.push_back(detail::guarded([&] { return scheme_rate(s, link, r); }));
        break;
      }
      case SweepVariable::TargetRate: {
        const auto link = fixed_link();
        for (auto s : sw.schemes) row.push_back(detail::guarded([&] { return scheme_power(s, link, c.noise, x); }));
        break;
      }
      case SweepVariable::ApertureArea: {
        const double side = std::sqrt(x);
        const auto link = c.link(c.aperture(side, side, c.aor));
        for (auto s : sw.schemes) row.push_back(detail::guarded([&] { return scheme_rate(s, link, radio); }));
        for (auto s : sw.schemes) row.push_back(detail::guarded([&] { return scheme_power(s, link, c.noise, r0); }));
        const auto lim = asymptotic_limits(c.params, radio, spda ? c.aor : 1.0, r0);
        row.push_back(lim.msr_capa);
        row.push_back(lim.mrp_capa);
        if (spda) {
          row.push_back(lim.msr_spda);
          row.push_back(lim.mrp_spda);
        }
        break;
      }
      case SweepVariable::Aor: {
        const auto link = c.link(c.aperture(c.lx, c.lz, x));
        const auto capa_link = link_stats(c.params, c.bob, c.eve, ApertureSpec::planar_capa(c.lx, c.lz),
                                          c.method, c.resolution);
        for (auto s : sw.schemes) row.push_back(detail::guarded([&] { return scheme_rate(s, link, radio); }));
        for (auto s : sw.schemes) row.push_back(detail::guarded([&] { return scheme_power(s, link, c.noise, r0); }));
        for (auto s : sw.schemes) row.push_back(detail::guarded([&] { return scheme_rate(s, capa_link, radio); }));
        for (auto s : sw.schemes) {
          row.push_back(detail::guarded([&] { return scheme_power(s, capa_link, c.noise, r0); }));
        }
        const auto lim = asymptotic_limits(c.params, radio, x, r0);
        row.push_back(lim.msr_capa);
        row.push_back(lim.mrp_capa);
        row.push_back(lim.msr_spda);
        row.push_back(lim.mrp_spda);
        break;
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// "# capa-secrecy <what> key=value key=value ..." over the resolved config.
inline std::string provenance_line(const ExperimentConfig& c, const std::string& what) {
  std::string line = "# capa-secrecy " + what;
  for (const auto& [k, v] : c.to_settings()) line += " " + k + "=" + v;
  return line;
}

inline void write_csv(std::ostream& os, const ExperimentConfig& c, const SweepTable& t) {
  os << provenance_line(c, "sweep") << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

inline void run_sweep(const ExperimentConfig& c, std::ostream& os) { write_csv(os, c, compute_sweep(c)); }

/// One oracle-versus-closed-form comparison at one resolution.
struct VerifyCheck {
  std::string name;
  int n = 0;
  double oracle = 0.0;
  double closed = 0.0;
  double rel_delta = 0.0;
  bool final_resolution = false;
  bool passed = true;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double tolerance = 1e-3;

  /// True iff every final-resolution check is within tolerance.
  bool passed() const {
    for (const auto& c : checks) {
      if (c.final_resolution && !c.passed) return false;
    }
    return !checks.empty();
  }

  void write(std::ostream& os) const {
    for (const auto& c : checks) {
      os << "check=" << c.name << " n=" << c.n << "x" << c.n << " oracle=" << format_number(c.oracle)
         << " closed=" << format_number(c.closed) << " rel_delta=" << format_number(c.rel_delta);
      if (c.final_resolution) os << (c.passed ? " PASS" : " FAIL");
      os << '\n';
    }
    os << (passed() ? "verify: PASS" : "verify: FAIL") << '\n';
  }
};

/// Dense-oracle cross-checks of gains, correlation, MSR and MRP at each
/// configured resolution on a planar CAPA. `verify.corrupt_gain` scales the
/// closed-form g_b before comparison, for exercising the failure path.
inline VerifyReport run_verify(const ExperimentConfig& c, std::ostream* progress = nullptr) {
  if (c.array != ApertureKind::PlanarCapa) throw ConfigError("verify runs on a planar CAPA (aperture.array = capa)");
  const auto aperture = ApertureSpec::planar_capa(c.lx, c.lz);
  LinkStatistics closed = link_stats(c.params, c.bob, c.eve, aperture, LinkMethod::ClosedForm, c.resolution);
  closed = LinkStatistics::from(closed.g_b * c.verify_corrupt_gain, closed.g_e, closed.rho);
  const RadioConfig radio = c.radio();
  const double msr_closed = msr(closed, radio).value;
  const bool do_mrp = c.target_rate > 0.0;
  const double mrp_closed = do_mrp ? mrp(closed, c.noise, c.target_rate).value : 0.0;

  VerifyReport report;
  report.tolerance = c.verify_tolerance;
  auto add = [&](const std::string& name, int n, double o, double cl, double delta, bool last) {
    report.checks.push_back({name, n, o, cl, delta, last, delta < c.verify_tolerance});
    if (progress) {
      *progress << "  " << name << " n=" << n << "x" << n << " rel_delta=" << format_number(delta) << std::endl;
    }
  };

  for (std::size_t i = 0; i < c.verify_resolutions.size(); ++i) {
    const int n = c.verify_resolutions[i];
    const bool last = i + 1 == c.verify_resolutions.size();
    const auto field = oracle::discretize(c.params, c.bob, c.eve, make_grid(aperture, QuadratureRule::Midpoint, n, n));
    const double gb = field.h_b.squaredNorm();
    const double ge = field.h_e.squaredNorm();
    const cdouble rho = field.h_e.dot(field.h_b);  // sum h_b conj(h_e)
    add("gain_b", n, gb, closed.g_b, std::abs(gb - closed.g_b) / closed.g_b, last);
    add("gain_e", n, ge, closed.g_e, std::abs(ge - closed.g_e) / closed.g_e, last);
    add("rho", n, std::abs(rho), std::abs(closed.rho), std::abs(rho - closed.rho) / std::abs(closed.rho), last);
    const double m = oracle::oracle_msr(field, radio).value;
    add("msr", n, m, msr_closed, std::abs(m - msr_closed) / msr_closed, last);
    if (do_mrp) {
      const double p = oracle::oracle_mrp(field, c.noise, c.target_rate).value;
      add("mrp", n, p, mrp_closed, std::abs(p - mrp_closed) / mrp_closed, last);
    }
  }
  return report;
}

}  // namespace capa::experiment
