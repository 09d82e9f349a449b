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

#ifndef FDCCR_FD_HPP_
#define FDCCR_FD_HPP_

#include "fdccr/channel.hpp"
#include "fdccr/dualsolver.hpp"
#include "fdccr/hd.hpp"

namespace fdccr {

// Scalars of the FD instance at transmit-noise power pt.
struct FdDerived {
  double kappa_fd = 0.0;   // AF relay power per unit |w_a|^2
  double sigma1_sq = 0.0;  // PU noise plus interference floor
  double sigma2_sq = 0.0;  // CU noise plus interference floor
  double gamma0_fd = 0.0;  // 2^r0 - 1
  double pbar_c_fd = 0.0;  // DF scalable-noise power cap
};

FdDerived fd_derived(const ChannelSet& ch, const SystemConfig& cfg, double pt);

// Largest DF budget for which the relay still decodes when pt = eps2 * P.
double fd_df_power_cap(const ChannelSet& ch, const SystemConfig& cfg);

struct FdMapping {
  bool feasible = false;
  std::string reason;
  CanonicalProblem problem;
  double relay_scale = 1.0;  // w_relay = relay_scale * w1
  double relay_cost = 1.0;
  double pt = 0.0;
};

// AF instance with noise power pt and CBS budget p_total.
FdMapping map_fd_af_to_canonical(const ChannelSet& ch, const SystemConfig& cfg, double pt, double p_total);

// DF instance; the relay decoding check uses pt.
FdMapping map_fd_df_to_canonical(const ChannelSet& ch, const SystemConfig& cfg, double pt, double p_total);

LinkSolution solve_fd_fixed(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol);

// Best CU SINR of the AF instance with budget P and pt = eps2 * P; 0 when
// infeasible.
double fd_af_phi(const ChannelSet& ch, const SystemConfig& cfg, double p);

LinkSolution solve_fd_scalable(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol);

// Dispatches on cfg.pt_mode.
LinkSolution solve_fd(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol);

RatePair fd_rates(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol, const CVec& w_c,
                  const CVec& w_relay, double pt);

}  // namespace fdccr

#endif  // FDCCR_FD_HPP_
