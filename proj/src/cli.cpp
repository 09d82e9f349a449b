// Copyright 2026 The fdccr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fdccr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fdccr/config.hpp"
#include "fdccr/dualsolver.hpp"
#include "fdccr/experiments.hpp"
#include "fdccr/fd.hpp"
#include "fdccr/hd.hpp"
#include "json.hpp"

namespace fdccr {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInfeasible = 2;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool print_default = false;
};

json vec_json(const CVec& v) {
  auto arr = json::array();
  for (const cplx& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

CVec vec_from(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array of [re, im] pairs");
  CVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    if (e.is_number()) {
      v[i] = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      v[i] = cplx(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ConfigError(field, "entries must be numbers or [re, im] pairs");
    }
  }
  return v;
}

double number_from(const json& j, const char* field, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(field)) {
    if (fallback) return *fallback;
    throw ConfigError(field, "missing");
  }
  if (!j.at(field).is_number()) throw ConfigError(field, "expected a number");
  return j.at(field).get<double>();
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << body;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Configuration file");
  cmd->add_option("--out", flags.out_path, "Output path (stdout when omitted)");
  cmd->add_option("--seed", flags.seed, "Base seed");
  cmd->add_option("--trials", flags.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_flag("--print-default-config", flags.print_default, "Print the default configuration and exit");
}

const std::vector<double> kPowerGrid{0, 5, 10, 15, 20, 25, 30};

struct SweepCommand {
  std::string name;
  std::string help;
  SweepSpec spec;
  std::optional<double> r0_override;
};

std::vector<SweepCommand> sweep_commands() {
  using S = Scheme;
  std::vector<SweepCommand> cmds;

  SweepSpec region;
  region.metric = Metric::kRateRegion;
  region.variable = SweepVariable::kPcDb;
  region.schemes = {S::kHdAf, S::kHdDf, S::kHdAfSameRf, S::kHdDfSameRf, S::kFdAf, S::kFdDf};
  region.n_trials = 1;
  cmds.push_back({"rate-region", "Trace rate regions on one channel draw", region, std::nullopt});

  SweepSpec power;
  power.variable = SweepVariable::kPcDb;
  power.values = kPowerGrid;
  power.schemes = {S::kHdAf,     S::kHdDf,     S::kFdAf,   S::kFdDf,   S::kHybridAf,
                   S::kHybridDf, S::kBestAf,   S::kBestDf, S::kOrthogonal};
  power.n_trials = 1000;
  cmds.push_back({"sweep-power", "Mean CU rate against CBS power", power, std::nullopt});

  SweepSpec noise;
  noise.variable = SweepVariable::kEps2;
  noise.values = {1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  noise.schemes = {S::kHdAf, S::kHdDf, S::kFdAf, S::kFdDf, S::kHybridAf, S::kHybridDf};
  noise.n_trials = 1000;
  cmds.push_back({"sweep-noise", "Mean CU rate against the transmit-noise factor", noise, std::nullopt});

  SweepSpec outage;
  outage.variable = SweepVariable::kPcDb;
  outage.values = {0, 5, 10, 15, 20, 25};
  outage.schemes = {S::kHdAf, S::kHdDf, S::kFdAf, S::kFdDf, S::kHybridAf, S::kHybridDf, S::kDirect};
  outage.metric = Metric::kPuOutage;
  outage.n_trials = 10000;
  cmds.push_back({"outage", "PU outage against CBS power", outage, 3.0});

  SweepSpec antennas;
  antennas.variable = SweepVariable::kAntennaSplit;
  antennas.values = {5, 4, 3, 2};
  antennas.schemes = {S::kFdAf, S::kFdDf};
  antennas.n_trials = 1000;
  cmds.push_back({"antenna-config", "FD mean CU rate against the transmit/receive split", antennas, std::nullopt});
  return cmds;
}

int run_sweep_command(const SweepCommand& cmd, const CommonFlags& flags, std::ostream& out) {
  SystemConfig sys;
  if (cmd.r0_override) sys.r0 = *cmd.r0_override;
  SweepSpec spec = cmd.spec;
  if (spec.values.empty()) spec.values = {sys.pc_db};
  if (flags.print_default) {
    out << format_config(sys, spec);
    return kExitOk;
  }
  if (!flags.config_path.empty()) {
    const double pc_before = sys.pc_db;
    load_config(flags.config_path, sys, spec);
    // A rate region follows the configured power unless values were given.
    if (spec.metric == Metric::kRateRegion && spec.values == std::vector<double>{pc_before} &&
        spec.variable == SweepVariable::kPcDb) {
      spec.values = {sys.pc_db};
    }
  }
  if (flags.seed) spec.seed = *flags.seed;
  if (flags.trials) spec.n_trials = *flags.trials;
  spec.validate();
  const ResultTable t = run_sweep(sys, spec);
  if (flags.out_path.empty()) {
    out << format_csv(t);
  } else {
    emit_table(t, flags.out_path);
  }
  return kExitOk;
}

int run_solve_canonical(const CommonFlags& flags, std::ostream& out) {
  if (flags.print_default) {
    const json example{{"h1", json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0})})},
                       {"h2", json::array({json::array({0.0, 0.0}), json::array({1.0, 0.0})})},
                       {"c", 1.0},
                       {"gamma1", 0.0},
                       {"p_total", 10.0}};
    out << example.dump(2) << "\n";
    return kExitOk;
  }
  if (flags.config_path.empty()) throw ConfigError("config", "solve-canonical needs --config <problem.json>");
  const json j = read_json_file(flags.config_path);
  CanonicalProblem p;
  p.h1 = vec_from(j.at("h1"), "h1");
  p.h2 = vec_from(j.at("h2"), "h2");
  p.c = number_from(j, "c", 1.0);
  p.gamma1 = number_from(j, "gamma1");
  p.p_total = number_from(j, "p_total");
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("problem", e.what());
  }
  const CanonicalResult res = solve_canonical(p);
  if (const auto* inf = std::get_if<CanonicalInfeasible>(&res)) {
    const json diag{{"feasible", false},
                    {"reason", inf->reason},
                    {"min_power_gamma1", inf->min_power_gamma1},
                    {"p_total", inf->p_total}};
    write_text(flags.out_path, diag.dump(2) + "\n", out);
    return kExitInfeasible;
  }
  const auto& s = std::get<DualSolution>(res);
  const json body{{"feasible", true},     {"lambda1", s.lambda1}, {"lambda2", s.lambda2},
                  {"gamma2", s.gamma2},   {"w1", vec_json(s.w1)}, {"w2", vec_json(s.w2)},
                  {"p_used", s.p_used},   {"from_oracle", s.from_oracle}};
  write_text(flags.out_path, body.dump(2) + "\n", out);
  return kExitOk;
}

int run_solve_instance(const CommonFlags& flags, const std::string& scheme_name, const std::string& channels_path,
                       std::ostream& out) {
  SystemConfig sys;
  SweepSpec spec;
  spec.values = {sys.pc_db};
  spec.schemes = {Scheme::kFdDf};
  if (flags.print_default) {
    out << format_config(sys, spec);
    return kExitOk;
  }
  if (!flags.config_path.empty()) load_config(flags.config_path, sys, spec);
  const Scheme scheme = parse_scheme(scheme_name);
  const std::uint64_t seed = flags.seed.value_or(spec.seed);
  ChannelSet ch;
  if (channels_path.empty()) {
    ch = sample_network(sys, seed);
  } else {
    try {
      ch = read_json_file(channels_path).get<ChannelSet>();
    } catch (const json::exception& e) {
      throw ConfigError("channels", channels_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("channels", channels_path + ": " + e.what());
    }
  }

  json body{{"scheme", to_string(scheme)}, {"seed", seed}, {"system", sys}, {"channels", ch}};
  bool feasible = false;
  std::optional<LinkSolution> link;
  switch (scheme) {
    case Scheme::kHdAf:
    case Scheme::kHdDf:
      link = solve_hd(ch, sys, scheme == Scheme::kHdAf ? Protocol::kAF : Protocol::kDF);
      break;
    case Scheme::kFdAf:
    case Scheme::kFdDf:
      link = solve_fd(ch, sys, scheme == Scheme::kFdAf ? Protocol::kAF : Protocol::kDF);
      break;
    default:
      break;
  }
  if (link) {
    feasible = link->feasible;
    body["feasible"] = feasible;
    body["r_pu"] = link->r_pu;
    body["r_cu"] = link->r_cu;
    body["sinr_cu"] = link->sinr_cu;
    body["w_c"] = vec_json(link->w_c);
    body["w_relay"] = vec_json(link->w_relay);
    body["pt_effective"] = link->pt_effective;
    body["power_used"] = link->power_used;
    if (!feasible) body["reason"] = link->reason;
  } else {
    const SchemeOutcome o = evaluate_scheme(ch, sys, scheme, spec.direct_prelog);
    feasible = o.feasible;
    body["feasible"] = feasible;
    body["r_pu"] = o.r_pu;
    body["r_cu"] = o.r_cu;
  }
  write_text(flags.out_path, body.dump(2) + "\n", out);
  return feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cooperative cognitive relay beamforming simulator"};
  app.name("fdccr");
  app.require_subcommand(1);

  CommonFlags flags;
  const std::vector<SweepCommand> sweeps = sweep_commands();
  std::vector<CLI::App*> sweep_apps;
  for (const auto& c : sweeps) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, flags);
    sweep_apps.push_back(sub);
  }
  CLI::App* canonical = app.add_subcommand("solve-canonical", "Solve one canonical problem given as JSON");
  add_common(canonical, flags);
  std::string scheme_name = "FD-DF";
  std::string channels_path;
  CLI::App* instance = app.add_subcommand("solve-instance", "Solve one channel draw with one scheme");
  add_common(instance, flags);
  instance->add_option("--scheme", scheme_name, "Scheme tag, e.g. HD-AF or FD-DF");
  instance->add_option("--channels", channels_path, "ChannelSet JSON instead of a sampled draw");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      if (sweep_apps[i]->parsed()) return run_sweep_command(sweeps[i], flags, out);
    }
    if (canonical->parsed()) return run_solve_canonical(flags, out);
    if (instance->parsed()) return run_solve_instance(flags, scheme_name, channels_path, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace fdccr
