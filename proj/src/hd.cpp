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

#include "fdccr/hd.hpp"

#include <algorithm>
#include <cmath>

namespace fdccr {
namespace {

double half_rate(double sinr) { return 0.5 * std::log2(1.0 + std::max(sinr, 0.0)); }

// Smallest margin by which AF relaying must beat the PU requirement.
constexpr double kAfMargin = 1e-12;

}  // namespace

std::string to_string(DuplexMode m) { return m == DuplexMode::kHD ? "HD" : "FD"; }
std::string to_string(Protocol p) { return p == Protocol::kAF ? "AF" : "DF"; }

HdChannels hd_view(const ChannelSet& ch, const SystemConfig& cfg) {
  if (cfg.hd_antenna_policy == HdAntennaPolicy::kFull) return {ch.h0, ch.h0c, ch.g, ch.h_c0, ch.h_c};
  const auto n_rx = static_cast<std::size_t>(cfg.n_rx_fd);
  const auto n_tx = static_cast<std::size_t>(cfg.n_tx_fd);
  return {ch.h0, ch.h0c, ch.g.head(n_rx), ch.h_c0.head(n_tx), ch.h_c.head(n_tx)};
}

double hd_pt(const SystemConfig& cfg) {
  return cfg.pt_mode == PtMode::kFixed ? cfg.pt_fixed : cfg.eps2 * cfg.pc();
}

HdMapping map_hd_to_canonical(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol) {
  const HdChannels v = hd_view(ch, cfg);
  const double p0 = cfg.p0();
  const double pt = hd_pt(cfg);
  const double gain_g = v.g.norm_sq();
  const double direct = p0 * std::norm(v.h0);
  const double target = std::exp2(2.0 * cfg.r0) - 1.0;

  HdMapping m;
  const double sigma1 = std::sqrt(1.0 + pt * v.h_c0.norm_sq());
  const double sigma2 = std::sqrt(1.0 + pt * v.h_c.norm_sq());
  m.problem.h1 = v.h_c0 * cplx(1.0 / sigma1, 0.0);
  m.problem.h2 = v.h_c * cplx(1.0 / sigma2, 0.0);
  m.problem.c = 1.0;
  m.problem.p_total = cfg.pc();

  if (protocol == Protocol::kDF) {
    m.gamma_prime = target - direct;
    if (p0 * gain_g < m.gamma_prime) {
      m.reason = "PBS-CBS link cannot support the PU rate";
      return m;
    }
    m.problem.gamma1 = std::max(m.gamma_prime, 0.0);
    m.feasible = true;
    return m;
  }

  m.gamma_prime = target / p0 - std::norm(v.h0);
  const double g4 = gain_g * gain_g;
  m.relay_cost = p0 * g4 + gain_g;
  if (m.gamma_prime <= 0.0) {
    m.problem.gamma1 = 0.0;
  } else {
    const double headroom = g4 - m.gamma_prime * gain_g;
    if (!(headroom > kAfMargin)) {
      m.reason = "amplified PBS signal cannot support the PU rate";
      return m;
    }
    m.problem.gamma1 = m.relay_cost * m.gamma_prime / headroom;
  }
  m.relay_scale = 1.0 / std::sqrt(m.relay_cost);
  m.feasible = true;
  return m;
}

RatePair hd_rates(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol, const CVec& w_c,
                  const CVec& w_relay) {
  const HdChannels v = hd_view(ch, cfg);
  const double p0 = cfg.p0();
  const double pt = hd_pt(cfg);
  const double gain_g = v.g.norm_sq();
  const double noise_pu = pt * v.h_c0.norm_sq() + 1.0;
  const double noise_cu = pt * v.h_c.norm_sq() + 1.0;
  const double pu_from_c = std::norm(herm_inner(v.h_c0, w_c));
  const double pu_from_r = std::norm(herm_inner(v.h_c0, w_relay));
  const double cu_from_c = std::norm(herm_inner(v.h_c, w_c));
  const double cu_from_r = std::norm(herm_inner(v.h_c, w_relay));

  RatePair out;
  double relayed = 0.0;
  if (protocol == Protocol::kAF) {
    relayed = p0 * pu_from_r * gain_g * gain_g / (pu_from_c + pu_from_r * gain_g + noise_pu);
    out.sinr_cu = cu_from_c / (cu_from_r * (p0 * gain_g * gain_g + gain_g) + noise_cu);
  } else {
    relayed = std::min(p0 * gain_g, pu_from_r / (pu_from_c + noise_pu));
    out.sinr_cu = cu_from_c / (cu_from_r + noise_cu);
  }
  out.sinr_pu = p0 * std::norm(v.h0) + relayed;
  out.r_pu = half_rate(out.sinr_pu);
  out.r_cu = half_rate(out.sinr_cu);
  return out;
}

LinkSolution solve_hd(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol) {
  cfg.validate();
  LinkSolution s;
  s.mode = DuplexMode::kHD;
  s.protocol = protocol;
  s.pt_effective = hd_pt(cfg);

  const HdMapping m = map_hd_to_canonical(ch, cfg, protocol);
  if (!m.feasible) {
    s.reason = m.reason;
    return s;
  }
  const CanonicalResult res = solve_canonical(m.problem);
  if (const auto* inf = std::get_if<CanonicalInfeasible>(&res)) {
    s.reason = inf->reason;
    return s;
  }
  const auto& dual = std::get<DualSolution>(res);
  s.feasible = true;
  s.from_oracle = dual.from_oracle;
  s.w_relay = dual.w1 * cplx(m.relay_scale, 0.0);
  s.w_c = dual.w2;
  s.power_used = s.w_c.norm_sq() + m.relay_cost * s.w_relay.norm_sq();
  const RatePair r = hd_rates(ch, cfg, protocol, s.w_c, s.w_relay);
  s.r_pu = r.r_pu;
  s.sinr_cu = dual.gamma2;
  s.r_cu = half_rate(dual.gamma2);
  return s;
}

}  // namespace fdccr
