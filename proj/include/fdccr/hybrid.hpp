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

#ifndef FDCCR_HYBRID_HPP_
#define FDCCR_HYBRID_HPP_

#include <optional>

#include "fdccr/channel.hpp"
#include "fdccr/hd.hpp"

namespace fdccr {

// Zero-forcing DF rates. Each is a restriction of the matching optimal
// solver, so never above it.
double zf_rate_hd_df(const ChannelSet& ch, const SystemConfig& cfg);
double zf_rate_fd_df(const ChannelSet& ch, const SystemConfig& cfg);

struct ModeDecision {
  DuplexMode chosen = DuplexMode::kHD;
  double r_zf_hd = 0.0;
  double r_zf_fd = 0.0;
  double eps2_max_hd = 0.0;
  double eps2_max_fd = 0.0;
};

// FD iff its ZF rate is strictly larger.
ModeDecision select_mode(const ChannelSet& ch, const SystemConfig& cfg);

// Largest eps2 with a positive approximate ZF rate, PBS links ignored.
// The finite-power pair assumes HD and FD share the N_t transmit antennas;
// the high-power pair uses each mode's own antennas and needs r0 > 1.
struct NoiseThresholds {
  double eps2_hd = 0.0;
  double eps2_fd = 0.0;
  std::optional<double> eps2_hd_asymptotic;
  std::optional<double> eps2_fd_asymptotic;
  // (eps2_fd - eps2_hd) / eps2_hd in its closed form.
  double relative_gap = 0.0;
};

NoiseThresholds tolerable_noise_thresholds(const ChannelSet& ch, const SystemConfig& cfg);

// Shared-antenna approximations whose zero crossings in eps2 define
// eps2_hd / eps2_fd. Scalable transmit noise, PBS links ignored.
double approx_rate_hd_same_rf(const ChannelSet& ch, const SystemConfig& cfg);
double approx_rate_fd_same_rf(const ChannelSet& ch, const SystemConfig& cfg);

// CBS serves only the CU, nulling the PU with full-power ZF.
double orthogonal_rate(const ChannelSet& ch, const SystemConfig& cfg);

}  // namespace fdccr

#endif  // FDCCR_HYBRID_HPP_
