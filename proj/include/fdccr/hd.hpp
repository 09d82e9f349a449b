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

#ifndef FDCCR_HD_HPP_
#define FDCCR_HD_HPP_

#include <string>

#include "fdccr/channel.hpp"
#include "fdccr/dualsolver.hpp"

namespace fdccr {

enum class DuplexMode { kHD, kFD };
enum class Protocol { kAF, kDF };

std::string to_string(DuplexMode m);
std::string to_string(Protocol p);

// Outcome of one relay solve. w_relay is w_0 (DF) or w_a (AF), where the AF
// relay matrix is the outer product w_a g^H.
struct LinkSolution {
  DuplexMode mode = DuplexMode::kHD;
  Protocol protocol = Protocol::kDF;
  bool feasible = false;
  double r_pu = 0.0;
  double r_cu = 0.0;
  double sinr_cu = 0.0;
  CVec w_c;
  CVec w_relay;
  double pt_effective = 0.0;
  double power_used = 0.0;
  bool from_oracle = false;
  std::string reason;  // why the instance is infeasible
};

struct RatePair {
  double r_pu = 0.0;
  double r_cu = 0.0;
  double sinr_pu = 0.0;  // total PU SINR after combining
  double sinr_cu = 0.0;
};

// Channels the HD relay sees under cfg.hd_antenna_policy.
struct HdChannels {
  cplx h0;
  cplx h0c;
  CVec g;
  CVec h_c0;
  CVec h_c;
};

HdChannels hd_view(const ChannelSet& ch, const SystemConfig& cfg);

// Transmit-noise power of a full-power HD relay.
double hd_pt(const SystemConfig& cfg);

struct HdMapping {
  bool feasible = false;
  std::string reason;
  CanonicalProblem problem;
  // w_relay = relay_scale * w1, w_c = w2.
  double relay_scale = 1.0;
  // Relay power per unit |w_relay|^2 (kappa for AF, 1 for DF).
  double relay_cost = 1.0;
  double gamma_prime = 0.0;  // unclamped PU requirement on the relayed path
};

HdMapping map_hd_to_canonical(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol);

LinkSolution solve_hd(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol);

// Plug-in rates for HD beamformers sized to hd_view(ch, cfg).
RatePair hd_rates(const ChannelSet& ch, const SystemConfig& cfg, Protocol protocol, const CVec& w_c,
                  const CVec& w_relay);

}  // namespace fdccr

#endif  // FDCCR_HD_HPP_
