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

#include "fdccr/fd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fdccr {
namespace {

double full_rate(double sinr) { return std::log2(1.0 + std::max(sinr, 0.0)); }

constexpr int kPhiGridPoints = 64;
constexpr int kGoldenIterations = 60;

struct LoopGains {
  double g;       // |g_FD|^2
  double g_loop;  // |g_FD^H H|^2
  double loop;    // |H|_F^2
};

LoopGains loop_gains(const ChannelSet& ch) {
  const CVec g = ch.g_fd();
  return {g.norm_sq(), adjoint_times(g, ch.h_loop).norm_sq(), ch.h_loop.frobenius_sq()};
}

FdMapping base_mapping(const ChannelSet& ch, const FdDerived& d, double pt, double p_total) {
  FdMapping m;
  m.pt = pt;
  m.problem.h1 = ch.h_c0_fd() * cplx(1.0 / std::sqrt(d.sigma1_sq), 0.0);
  m.problem.h2 = ch.h_c_fd() * cplx(1.0 / std::sqrt(d.sigma2_sq), 0.0);
  m.problem.c = 1.0;
  m.problem.p_total = p_total;
  return m;
}

LinkSolution solve_mapping(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol, const FdMapping& m) {
  LinkSolution s;
  s.mode = DuplexMode::kFD;
  s.protocol = protocol;
  s.pt_effective = m.pt;
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
  s.r_pu = fd_rates(ch, cfg, protocol, s.w_c, s.w_relay, m.pt).r_pu;
  s.sinr_cu = dual.gamma2;
  s.r_cu = full_rate(dual.gamma2);
  return s;
}

}  // namespace

FdDerived fd_derived(const ChannelSet& ch, const SystemConfig& cfg, double pt) {
  const LoopGains lg = loop_gains(ch);
  const double p0 = cfg.p0_fd();
  FdDerived d;
  d.kappa_fd = p0 * lg.g * lg.g + lg.g + pt * lg.g_loop;
  d.sigma1_sq = 1.0 + pt * ch.h_c0_fd().norm_sq() + p0 * std::norm(ch.h0);
  d.sigma2_sq = 1.0 + pt * ch.h_c_fd().norm_sq() + p0 * std::norm(ch.h0c);
  d.gamma0_fd = std::exp2(cfg.r0) - 1.0;
  d.pbar_c_fd = fd_df_power_cap(ch, cfg);
  return d;
}

double fd_df_power_cap(const ChannelSet& ch, const SystemConfig& cfg) {
  const LoopGains lg = loop_gains(ch);
  const double budget = cfg.pc_fd();
  const double gamma0 = std::exp2(cfg.r0) - 1.0;
  const double received = cfg.p0_fd() * lg.g;
  if (gamma0 <= 0.0) return budget;
  const double loop_scale = cfg.eps2 * lg.loop;
  if (loop_scale <= 0.0) return received >= gamma0 ? budget : 0.0;
  return std::min(budget, std::max(0.0, (received / gamma0 - 1.0) / loop_scale));
}

FdMapping map_fd_af_to_canonical(const ChannelSet& ch, const SystemConfig& cfg, double pt, double p_total) {
  const FdDerived d = fd_derived(ch, cfg, pt);
  const LoopGains lg = loop_gains(ch);
  FdMapping m = base_mapping(ch, d, pt, p_total);
  m.relay_cost = d.kappa_fd;
  if (d.gamma0_fd <= 0.0) {
    m.problem.gamma1 = 0.0;
  } else {
    const double headroom = cfg.p0_fd() * lg.g * lg.g - d.gamma0_fd * (lg.g + pt * lg.g_loop);
    if (!(headroom > 0.0)) {
      m.reason = "amplified PBS signal cannot support the PU rate";
      return m;
    }
    m.problem.gamma1 = d.kappa_fd * d.gamma0_fd / headroom;
  }
  if (!(d.kappa_fd > 0.0)) {
    m.reason = "no PBS-CBS gain";
    return m;
  }
  m.relay_scale = 1.0 / std::sqrt(d.kappa_fd);
  m.feasible = true;
  return m;
}

FdMapping map_fd_df_to_canonical(const ChannelSet& ch, const SystemConfig& cfg, double pt, double p_total) {
  const FdDerived d = fd_derived(ch, cfg, pt);
  const LoopGains lg = loop_gains(ch);
  FdMapping m = base_mapping(ch, d, pt, p_total);
  const double decode_sinr = cfg.p0_fd() * lg.g / (pt * lg.loop + 1.0);
  if (decode_sinr < d.gamma0_fd) {
    m.reason = "CBS cannot decode the PU message";
    return m;
  }
  m.problem.gamma1 = std::max(d.gamma0_fd, 0.0);
  m.feasible = true;
  return m;
}

LinkSolution solve_fd_fixed(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol) {
  cfg.validate();
  const double pt = cfg.pt_fixed;
  const FdMapping m = protocol == Protocol::kAF ? map_fd_af_to_canonical(ch, cfg, pt, cfg.pc_fd())
                                                : map_fd_df_to_canonical(ch, cfg, pt, cfg.pc_fd());
  return solve_mapping(ch, cfg, protocol, m);
}

double fd_af_phi(const ChannelSet& ch, const SystemConfig& cfg, double p) {
  if (!(p > 0.0)) return 0.0;
  const FdMapping m = map_fd_af_to_canonical(ch, cfg, cfg.eps2 * p, p);
  if (!m.feasible) return 0.0;
  const CanonicalResult res = solve_canonical(m.problem);
  if (const auto* dual = std::get_if<DualSolution>(&res)) return dual->gamma2;
  return 0.0;
}

LinkSolution solve_fd_scalable(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol) {
  cfg.validate();
  if (protocol == Protocol::kDF) {
    const double cap = fd_df_power_cap(ch, cfg);
    if (!(cap > 0.0)) {
      LinkSolution s;
      s.mode = DuplexMode::kFD;
      s.protocol = protocol;
      s.reason = "transmit noise leaves no usable DF power";
      return s;
    }
    return solve_mapping(ch, cfg, protocol, map_fd_df_to_canonical(ch, cfg, cfg.eps2 * cap, cap));
  }

  // Phi is not known to be unimodal: coarse grid, then golden section on the
  // two cells around the best grid point.
  const double top = cfg.pc_fd();
  std::vector<double> grid(kPhiGridPoints);
  std::vector<double> phi(kPhiGridPoints);
  int best = 0;
  for (int i = 0; i < kPhiGridPoints; ++i) {
    grid[i] = top * i / (kPhiGridPoints - 1);
    phi[i] = fd_af_phi(ch, cfg, grid[i]);
    if (phi[i] > phi[best]) best = i;
  }
  double best_p = grid[best];
  double best_phi = phi[best];
  if (best_phi > 0.0) {
    double lo = grid[std::max(best - 1, 0)];
    double hi = grid[std::min(best + 1, kPhiGridPoints - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = fd_af_phi(ch, cfg, x1);
    double f2 = fd_af_phi(ch, cfg, x2);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = fd_af_phi(ch, cfg, x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = fd_af_phi(ch, cfg, x1);
      }
    }
    if (f1 > best_phi) best_phi = f1, best_p = x1;
    if (f2 > best_phi) best_phi = f2, best_p = x2;
  }
  if (!(best_phi > 0.0)) {
    // Either nothing is feasible or only gamma2 = 0 is reachable.
    const FdMapping at_top = map_fd_af_to_canonical(ch, cfg, cfg.eps2 * top, top);
    return solve_mapping(ch, cfg, protocol, at_top);
  }
  return solve_mapping(ch, cfg, protocol, map_fd_af_to_canonical(ch, cfg, cfg.eps2 * best_p, best_p));
}

LinkSolution solve_fd(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol) {
  return cfg.pt_mode == PtMode::kFixed ? solve_fd_fixed(ch, cfg, protocol) : solve_fd_scalable(ch, cfg, protocol);
}

RatePair fd_rates(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol, const CVec& w_c,
                  const CVec& w_relay, double pt) {
  const LoopGains lg = loop_gains(ch);
  const CVec h_c0 = ch.h_c0_fd();
  const CVec h_c = ch.h_c_fd();
  const double p0 = cfg.p0_fd();
  const double pu_floor = p0 * std::norm(ch.h0) + pt * h_c0.norm_sq() + 1.0;
  const double cu_floor = p0 * std::norm(ch.h0c) + pt * h_c.norm_sq() + 1.0;
  const double pu_from_c = std::norm(herm_inner(h_c0, w_c));
  const double pu_from_r = std::norm(herm_inner(h_c0, w_relay));
  const double cu_from_c = std::norm(herm_inner(h_c, w_c));
  const double cu_from_r = std::norm(herm_inner(h_c, w_relay));

  RatePair out;
  if (protocol == Protocol::kAF) {
    out.sinr_pu = p0 * pu_from_r * lg.g * lg.g / (pu_from_r * (lg.g + pt * lg.g_loop) + pu_from_c + pu_floor);
    out.sinr_cu = cu_from_c / (cu_from_r * (p0 * lg.g * lg.g + lg.g + pt * lg.g_loop) + cu_floor);
  } else {
    const double decode = p0 * lg.g / (pt * lg.loop + 1.0);
    out.sinr_pu = std::min(decode, pu_from_r / (pu_from_c + pu_floor));
    out.sinr_cu = cu_from_c / (cu_from_r + cu_floor);
  }
  out.r_pu = full_rate(out.sinr_pu);
  out.r_cu = full_rate(out.sinr_cu);
  return out;
}

}  // namespace fdccr
