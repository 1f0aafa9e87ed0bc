// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The capa-secrecy Authors

// capa-secrecy <subcommand> [--config PATH] [--set k=v]... [--out PATH]
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 infeasible standalone query.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "capa/experiment.hpp"

namespace {

namespace ex = capa::experiment;
using capa::experiment::format_number;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;
constexpr int kInfeasible = 3;

struct CommonOptions {
  std::string config_path;
  std::string scenario;
  std::vector<std::string> sets;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "INI file with [scenario], [aperture], [sweep], ... sections");
  cmd->add_option("--scenario", o.scenario, "Named scenario to start from (only 'default')");
  cmd->add_option("--set", o.sets, "Override one key, e.g. --set scenario.power_db=20")->take_all();
  cmd->add_option("--out", o.out_path, "Write output here instead of stdout");
}

// INI sections become "section.key".
ex::Settings read_ini(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ex::ConfigError(e.what());
  }
  ex::Settings out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ex::ConfigError(path + ": key '" + section + "' outside any section");
    for (const auto& [key, value] : body) out[section + "." + key] = value.data();
  }
  return out;
}

ex::ExperimentConfig resolve(const CommonOptions& o) {
  if (!o.scenario.empty() && o.scenario != "default") {
    throw ex::ConfigError("unknown scenario '" + o.scenario + "' (available: default)");
  }
  ex::Settings overrides;
  if (!o.config_path.empty()) overrides = read_ini(o.config_path);
  for (const auto& s : o.sets) {
    auto [k, v] = ex::parse_assignment(s);
    overrides[k] = v;
  }
  return ex::ExperimentConfig::from_settings(overrides);
}

// Runs `body` against the chosen output stream.
template <typename F>
int with_output(const CommonOptions& o, F body) {
  if (o.out_path.empty()) return body(std::cout);
  std::ofstream file(o.out_path);
  if (!file) {
    std::cerr << "error: cannot open " << o.out_path << " for writing\n";
    return kUsage;
  }
  return body(file);
}

void print_link(std::ostream& os, const capa::LinkStatistics& l) {
  os << "g_b=" << format_number(l.g_b) << "\n"
     << "g_e=" << format_number(l.g_e) << "\n"
     << "rho=" << format_number(l.rho.real()) << (l.rho.imag() < 0 ? "" : "+") << format_number(l.rho.imag())
     << "j\n"
     << "rho_bar=" << format_number(l.rho_bar) << "\n";
}

void print_solution(std::ostream& os, const capa::SecrecySolution& s, const char* unit) {
  os << "kind=" << capa::to_string(s.kind) << "\n"
     << "value=" << format_number(s.value) << "\n"
     << "unit=" << unit << "\n"
     << "a=" << format_number(s.beamformer.a.real()) << "\n"
     << "b=" << format_number(s.beamformer.b.real()) << (s.beamformer.b.imag() < 0 ? "" : "+")
     << format_number(s.beamformer.b.imag()) << "j\n"
     << "power=" << format_number(s.beamformer.power) << "\n"
     << "degenerate_to_mrt=" << (s.degenerate_to_mrt ? "true" : "false") << "\n";
}

int cmd_msr(const ex::ExperimentConfig& c, std::ostream& os) {
  const auto link = c.link();
  const auto radio = c.radio();
  capa::SecrecySolution s;
  switch (c.query_scheme) {
    case ex::Scheme::Optimal: s = capa::msr(link, radio); break;
    case ex::Scheme::Mrt: s = capa::mrt_rate(link, radio); break;
    case ex::Scheme::Zf: s = capa::zf_rate(link, radio); break;
  }
  os << ex::provenance_line(c, "msr") << "\n";
  print_link(os, link);
  print_solution(os, s, "bits/channel-use");
  return kOk;
}

int cmd_mrp(const ex::ExperimentConfig& c, std::ostream& os) {
  const auto link = c.link();
  capa::SecrecySolution s;
  try {
    switch (c.query_scheme) {
      case ex::Scheme::Optimal: s = capa::mrp(link, c.noise, c.target_rate); break;
      case ex::Scheme::Mrt: s = capa::mrt_power(link, c.noise, c.target_rate); break;
      case ex::Scheme::Zf: s = capa::zf_power(link, c.noise, c.target_rate); break;
    }
  } catch (const capa::InfeasibleTarget& e) {
    std::cerr << "infeasible: " << e.what() << " (rate ceiling " << format_number(e.ceiling()) << " bits)\n";
    return kInfeasible;
  }
  os << ex::provenance_line(c, "mrp") << "\n";
  print_link(os, link);
  print_solution(os, s, "W");
  return kOk;
}

int cmd_limits(const ex::ExperimentConfig& c, std::ostream& os) {
  const double zeta = c.array == capa::ApertureKind::PlanarSpda ? c.aor : 1.0;
  const auto lim = capa::asymptotic_limits(c.params, c.radio(), zeta, c.target_rate);
  os << ex::provenance_line(c, "limits") << "\n"
     << "gain_limit=" << format_number(c.params.gain_limit()) << "\n"
     << "msr_capa=" << format_number(lim.msr_capa) << "\n"
     << "msr_spda=" << format_number(lim.msr_spda) << "\n"
     << "mrp_capa=" << format_number(lim.mrp_capa) << "\n"
     << "mrp_spda=" << format_number(lim.mrp_spda) << "\n";
  return kOk;
}

int cmd_verify(const ex::ExperimentConfig& c, std::ostream& os) {
  const auto report = ex::run_verify(c, &std::cerr);
  os << ex::provenance_line(c, "verify") << "\n";
  report.write(os);
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy rate and power limits of continuous-aperture arrays"};
  app.require_subcommand(1);

  CommonOptions opts;
  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const ex::ExperimentConfig&, std::ostream&);
  };
  const Entry entries[] = {
      {"msr", "Maximum secrecy rate at the configured power (query.scheme picks optimal, mrt or zf)", cmd_msr},
      {"mrp", "Minimum power for target.rate (query.scheme picks optimal, mrt or zf)", cmd_mrp},
      {"sweep", "Parameter sweep written as CSV",
       [](const ex::ExperimentConfig& c, std::ostream& os) {
         ex::run_sweep(c, os);
         return kOk;
       }},
      {"verify", "Cross-check closed forms against the dense oracle", cmd_verify},
      {"limits", "Infinite-aperture MSR and MRP limits", cmd_limits},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* cmd = app.add_subcommand(e.name, e.help);
    add_common(cmd, opts);
    subs.emplace_back(cmd, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  for (const auto& [cmd, entry] : subs) {
    if (!cmd->parsed()) continue;
    try {
      const auto config = resolve(opts);
      return with_output(opts, [&](std::ostream& os) { return entry->run(config, os); });
    } catch (const ex::ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const capa::DegenerateGeometry& e) {
      std::cerr << "error: degenerate geometry: " << e.what() << "\n";
      return kInfeasible;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return kUsage;
}
