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

#include "fdccr/config.hpp"

#include <fmt/core.h>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace fdccr {
namespace {

namespace pt = boost::property_tree;

double parse_double(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw ConfigError(key, "expected a number, got '" + s + "'");
  return v;
}

long long parse_integer(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw ConfigError(key, "expected an integer, got '" + s + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  boost::split(parts, s, boost::is_any_of(","));
  std::vector<std::string> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;

void apply_section(const pt::ptree& section, const std::string& name, const std::map<std::string, Setter>& setters) {
  for (const auto& [key, node] : section) {
    if (!node.empty()) throw ConfigError(key, "nested keys are not allowed in [" + name + "]");
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, "unknown key in [" + name + "]");
    it->second(key, boost::trim_copy(node.data()));
  }
}

void apply_tree(const pt::ptree& tree, SystemConfig& sys, SweepSpec& sweep) {
  const auto dbl = [](double& field) {
    return Setter([&field](const std::string& k, const std::string& v) { field = parse_double(k, v); });
  };
  const auto integer = [](int& field) {
    return Setter([&field](const std::string& k, const std::string& v) {
      field = static_cast<int>(parse_integer(k, v));
    });
  };

  const std::map<std::string, Setter> system_keys{
      {"n_total", integer(sys.n_total)},
      {"n_tx_fd", integer(sys.n_tx_fd)},
      {"n_rx_fd", integer(sys.n_rx_fd)},
      {"p0_db", dbl(sys.p0_db)},
      {"pc_db", dbl(sys.pc_db)},
      {"r0", dbl(sys.r0)},
      {"eps2", dbl(sys.eps2)},
      {"pt_mode", [&](const std::string&, const std::string& v) { sys.pt_mode = parse_pt_mode(v); }},
      {"pt_fixed", dbl(sys.pt_fixed)},
      {"pathloss_exp", dbl(sys.pathloss_exp)},
      {"d_pbs_pu", dbl(sys.d_pbs_pu)},
      {"d_pbs_cu", dbl(sys.d_pbs_cu)},
      {"d_cbs_pbs", dbl(sys.d_cbs_pbs)},
      {"d_cbs_pu", dbl(sys.d_cbs_pu)},
      {"d_cbs_cu", dbl(sys.d_cbs_cu)},
      {"hd_antenna_policy",
       [&](const std::string&, const std::string& v) { sys.hd_antenna_policy = parse_hd_antenna_policy(v); }},
      {"fd_power_share", dbl(sys.fd_power_share)},
  };

  const std::map<std::string, Setter> sweep_keys{
      {"variable", [&](const std::string&, const std::string& v) { sweep.variable = parse_sweep_variable(v); }},
      {"values",
       [&](const std::string& k, const std::string& v) {
         sweep.values.clear();
         for (const auto& x : split_list(v)) sweep.values.push_back(parse_double(k, x));
       }},
      {"schemes",
       [&](const std::string&, const std::string& v) {
         sweep.schemes.clear();
         for (const auto& x : split_list(v)) sweep.schemes.push_back(parse_scheme(x));
       }},
      {"n_trials", integer(sweep.n_trials)},
      {"seed",
       [&](const std::string& k, const std::string& v) {
         const long long s = parse_integer(k, v);
         if (s < 0) throw ConfigError(k, "must be >= 0");
         sweep.seed = static_cast<std::uint64_t>(s);
       }},
      {"metric", [&](const std::string&, const std::string& v) { sweep.metric = parse_metric(v); }},
      {"direct_prelog",
       [&](const std::string&, const std::string& v) { sweep.direct_prelog = parse_direct_prelog(v); }},
      {"region_points", integer(sweep.region_points)},
      {"threads", integer(sweep.threads)},
  };

  for (const auto& [name, section] : tree) {
    if (name == "system") {
      apply_section(section, name, system_keys);
    } else if (name == "sweep") {
      apply_section(section, name, sweep_keys);
    } else {
      throw ConfigError(name, "unknown section");
    }
  }
  sys.validate();
  sweep.validate();
}

}  // namespace

void load_config_text(const std::string& text, SystemConfig& system, SweepSpec& sweep) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", fmt::format("line {}: {}", e.line(), e.message()));
  }
  apply_tree(tree, system, sweep);
}

void load_config(const std::string& path, SystemConfig& system, SweepSpec& sweep) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream body;
  body << f.rdbuf();
  try {
    load_config_text(body.str(), system, sweep);
  } catch (const ConfigError& e) {
    if (e.field() == "config") throw ConfigError("config", path + ": " + e.what());
    throw;
  }
}

std::string format_config(const SystemConfig& s, const SweepSpec& w) {
  const auto num = [](double x) { return fmt::format("{:.10g}", x); };
  const auto join_values = [&] {
    std::string out;
    for (double v : w.values) out += (out.empty() ? "" : ", ") + num(v);
    return out;
  };
  const auto join_schemes = [&] {
    std::string out;
    for (Scheme x : w.schemes) out += (out.empty() ? "" : ", ") + to_string(x);
    return out;
  };
  std::string out = "[system]\n";
  out += fmt::format("n_total = {}\nn_tx_fd = {}\nn_rx_fd = {}\n", s.n_total, s.n_tx_fd, s.n_rx_fd);
  out += fmt::format("p0_db = {}\npc_db = {}\nr0 = {}\neps2 = {}\n", num(s.p0_db), num(s.pc_db), num(s.r0),
                     num(s.eps2));
  out += fmt::format("pt_mode = {}\npt_fixed = {}\npathloss_exp = {}\n", to_string(s.pt_mode), num(s.pt_fixed),
                     num(s.pathloss_exp));
  out += fmt::format("d_pbs_pu = {}\nd_pbs_cu = {}\nd_cbs_pbs = {}\nd_cbs_pu = {}\nd_cbs_cu = {}\n",
                     num(s.d_pbs_pu), num(s.d_pbs_cu), num(s.d_cbs_pbs), num(s.d_cbs_pu), num(s.d_cbs_cu));
  out += fmt::format("hd_antenna_policy = {}\nfd_power_share = {}\n", to_string(s.hd_antenna_policy),
                     num(s.fd_power_share));
  out += "\n[sweep]\n";
  out += fmt::format("variable = {}\nvalues = {}\nschemes = {}\n", to_string(w.variable), join_values(),
                     join_schemes());
  out += fmt::format("n_trials = {}\nseed = {}\nmetric = {}\ndirect_prelog = {}\nregion_points = {}\n", w.n_trials,
                     w.seed, to_string(w.metric), to_string(w.direct_prelog), w.region_points);
  return out;
}

}  // namespace fdccr
