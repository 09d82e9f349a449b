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

#include "fdccr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fdccr {
namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be a finite positive number");
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json vec_to_json(const CVec& v) {
  auto arr = nlohmann::json::array();
  for (const cplx& z : v) arr.push_back(complex_to_json(z));
  return arr;
}

CVec vec_from_json(const nlohmann::json& j) {
  CVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

}  // namespace

double SystemConfig::p0() const { return db_to_linear(p0_db); }
double SystemConfig::pc() const { return db_to_linear(pc_db); }

void SystemConfig::validate() const {
  if (n_tx_fd < 1) throw ConfigError("n_tx_fd", "must be >= 1");
  if (n_rx_fd < 1) throw ConfigError("n_rx_fd", "must be >= 1");
  if (n_total != n_tx_fd + n_rx_fd) throw ConfigError("n_total", "must equal n_tx_fd + n_rx_fd");
  if (!std::isfinite(p0_db)) throw ConfigError("p0_db", "must be finite");
  if (!std::isfinite(pc_db)) throw ConfigError("pc_db", "must be finite");
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw ConfigError("r0", "must be a finite non-negative rate");
  if (!(eps2 >= 0.0) || !std::isfinite(eps2)) throw ConfigError("eps2", "must be >= 0");
  if (!(pt_fixed >= 0.0) || !std::isfinite(pt_fixed)) throw ConfigError("pt_fixed", "must be >= 0");
  if (!(pathloss_exp >= 0.0) || !std::isfinite(pathloss_exp)) {
    throw ConfigError("pathloss_exp", "must be >= 0");
  }
  require_positive(d_pbs_pu, "d_pbs_pu");
  require_positive(d_pbs_cu, "d_pbs_cu");
  require_positive(d_cbs_pbs, "d_cbs_pbs");
  require_positive(d_cbs_pu, "d_cbs_pu");
  require_positive(d_cbs_cu, "d_cbs_cu");
  require_positive(fd_power_share, "fd_power_share");
}

std::string to_string(PtMode m) { return m == PtMode::kFixed ? "fixed" : "scalable"; }

std::string to_string(HdAntennaPolicy p) { return p == HdAntennaPolicy::kFull ? "full" : "same_rf"; }

PtMode parse_pt_mode(const std::string& s) {
  if (s == "fixed") return PtMode::kFixed;
  if (s == "scalable") return PtMode::kScalable;
  throw ConfigError("pt_mode", "expected 'fixed' or 'scalable', got '" + s + "'");
}

HdAntennaPolicy parse_hd_antenna_policy(const std::string& s) {
  if (s == "full") return HdAntennaPolicy::kFull;
  if (s == "same_rf") return HdAntennaPolicy::kSameRf;
  throw ConfigError("hd_antenna_policy", "expected 'full' or 'same_rf', got '" + s + "'");
}

void to_json(nlohmann::json& j, const SystemConfig& c) {
  j = nlohmann::json{
      {"n_total", c.n_total},
      {"n_tx_fd", c.n_tx_fd},
      {"n_rx_fd", c.n_rx_fd},
      {"p0_db", c.p0_db},
      {"pc_db", c.pc_db},
      {"r0", c.r0},
      {"eps2", c.eps2},
      {"pt_mode", to_string(c.pt_mode)},
      {"pt_fixed", c.pt_fixed},
      {"pathloss_exp", c.pathloss_exp},
      {"d_pbs_pu", c.d_pbs_pu},
      {"d_pbs_cu", c.d_pbs_cu},
      {"d_cbs_pbs", c.d_cbs_pbs},
      {"d_cbs_pu", c.d_cbs_pu},
      {"d_cbs_cu", c.d_cbs_cu},
      {"hd_antenna_policy", to_string(c.hd_antenna_policy)},
      {"fd_power_share", c.fd_power_share},
  };
}

void from_json(const nlohmann::json& j, SystemConfig& c) {
  c.n_total = j.at("n_total").get<int>();
  c.n_tx_fd = j.at("n_tx_fd").get<int>();
  c.n_rx_fd = j.at("n_rx_fd").get<int>();
  c.p0_db = j.at("p0_db").get<double>();
  c.pc_db = j.at("pc_db").get<double>();
  c.r0 = j.at("r0").get<double>();
  c.eps2 = j.at("eps2").get<double>();
  c.pt_mode = parse_pt_mode(j.at("pt_mode").get<std::string>());
  c.pt_fixed = j.at("pt_fixed").get<double>();
  c.pathloss_exp = j.at("pathloss_exp").get<double>();
  c.d_pbs_pu = j.at("d_pbs_pu").get<double>();
  c.d_pbs_cu = j.at("d_pbs_cu").get<double>();
  c.d_cbs_pbs = j.at("d_cbs_pbs").get<double>();
  c.d_cbs_pu = j.at("d_cbs_pu").get<double>();
  c.d_cbs_cu = j.at("d_cbs_cu").get<double>();
  c.hd_antenna_policy = parse_hd_antenna_policy(j.at("hd_antenna_policy").get<std::string>());
  c.fd_power_share = j.value("fd_power_share", 0.5);
}

void to_json(nlohmann::json& j, const ChannelSet& ch) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < ch.h_loop.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < ch.h_loop.cols(); ++c) row.push_back(complex_to_json(ch.h_loop(r, c)));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{
      {"h0", complex_to_json(ch.h0)},
      {"h0c", complex_to_json(ch.h0c)},
      {"g", vec_to_json(ch.g)},
      {"h_c0", vec_to_json(ch.h_c0)},
      {"h_c", vec_to_json(ch.h_c)},
      {"h_loop", std::move(rows)},
  };
}

void from_json(const nlohmann::json& j, ChannelSet& ch) {
  ch.h0 = complex_from_json(j.at("h0"));
  ch.h0c = complex_from_json(j.at("h0c"));
  ch.g = vec_from_json(j.at("g"));
  ch.h_c0 = vec_from_json(j.at("h_c0"));
  ch.h_c = vec_from_json(j.at("h_c"));
  const auto& rows = j.at("h_loop");
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows[0].size();
  ch.h_loop = CMat(n_rows, n_cols);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (rows[r].size() != n_cols) throw std::invalid_argument("h_loop rows must have equal length");
    for (std::size_t c = 0; c < n_cols; ++c) ch.h_loop(r, c) = complex_from_json(rows[r][c]);
  }
  if (ch.h_c0.size() != ch.g.size() || ch.h_c.size() != ch.g.size()) {
    throw std::invalid_argument("g, h_c0 and h_c must share one length");
  }
  if (n_rows > ch.g.size() || n_cols > ch.g.size()) {
    throw std::invalid_argument("h_loop is larger than the antenna array");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::phase() { return 2.0 * std::numbers::pi * uniform(); }

cplx Rng::complex_normal() {
  // |z|^2 ~ Exp(1) with uniform phase is exactly CN(0, 1).
  const double u = 1.0 - uniform();  // (0, 1]
  const double r = std::sqrt(-std::log(u));
  return std::polar(r, phase());
}

ChannelSet sample_network(const SystemConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  const auto amp = [&](double d) { return std::pow(d, -cfg.pathloss_exp / 2.0); };
  const auto draw_vec = [&](std::size_t n, double a) {
    CVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(a, rng.phase());
    return v;
  };
  const auto n = static_cast<std::size_t>(cfg.n_total);

  ChannelSet ch;
  ch.h0 = std::polar(amp(cfg.d_pbs_pu), rng.phase());
  ch.h0c = std::polar(amp(cfg.d_pbs_cu), rng.phase());
  ch.g = draw_vec(n, amp(cfg.d_cbs_pbs));
  ch.h_c0 = draw_vec(n, amp(cfg.d_cbs_pu));
  ch.h_c = draw_vec(n, amp(cfg.d_cbs_cu));
  ch.h_loop = CMat(static_cast<std::size_t>(cfg.n_rx_fd), static_cast<std::size_t>(cfg.n_tx_fd));
  for (std::size_t r = 0; r < ch.h_loop.rows(); ++r) {
    for (std::size_t c = 0; c < ch.h_loop.cols(); ++c) ch.h_loop(r, c) = rng.complex_normal();
  }
  return ch;
}

double correlation(const CVec& a, const CVec& b) {
  const double na = a.norm_sq();
  const double nb = b.norm_sq();
  if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("correlation: zero vector");
  const double r = std::norm(herm_inner(a, b)) / (na * nb);
  return std::clamp(r, 0.0, 1.0);
}

}  // namespace fdccr
