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

#ifndef FDCCR_CHANNEL_HPP_
#define FDCCR_CHANNEL_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "fdccr/numerics.hpp"
#include "json.hpp"

namespace fdccr {

enum class PtMode { kFixed, kScalable };

// Antennas the HD baseline may use: all N in both phases, or the FD split
// (N_r receive in phase I, N_t transmit in phase II).
enum class HdAntennaPolicy { kFull, kSameRf };

// Raised by validate() and by config parsing; names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Scenario scalars. Powers are transmit SNRs in dB over unit receiver noise.
struct SystemConfig {
  int n_total = 6;
  int n_tx_fd = 4;
  int n_rx_fd = 2;
  double p0_db = 10.0;
  double pc_db = 20.0;
  double r0 = 2.0;  // PU target, bits per channel use
  double eps2 = 1e-4;
  PtMode pt_mode = PtMode::kScalable;
  double pt_fixed = 1e-3;
  double pathloss_exp = 3.5;
  double d_pbs_pu = 2.0;
  double d_pbs_cu = 2.0;
  double d_cbs_pbs = 1.0;
  double d_cbs_pu = 1.0;
  double d_cbs_cu = 1.0;
  HdAntennaPolicy hd_antenna_policy = HdAntennaPolicy::kFull;
  // Fraction of the HD powers granted to FD (equal energy: 1/2).
  double fd_power_share = 0.5;

  double p0() const;
  double pc() const;
  double p0_fd() const { return fd_power_share * p0(); }
  double pc_fd() const { return fd_power_share * pc(); }

  // Throws ConfigError.
  void validate() const;
};

std::string to_string(PtMode m);
std::string to_string(HdAntennaPolicy p);
PtMode parse_pt_mode(const std::string& s);
HdAntennaPolicy parse_hd_antenna_policy(const std::string& s);

void to_json(nlohmann::json& j, const SystemConfig& cfg);
void from_json(const nlohmann::json& j, SystemConfig& cfg);

// One realization of every link. FD views are prefixes of the HD vectors:
// g_fd() the first N_r entries of g, h_c0_fd()/h_c_fd() the first N_t.
struct ChannelSet {
  cplx h0;    // PBS -> PU
  cplx h0c;   // PBS -> CU
  CVec g;     // PBS -> CBS, length N
  CVec h_c0;  // CBS -> PU, length N
  CVec h_c;   // CBS -> CU, length N
  CMat h_loop;  // residual loop channel, N_r x N_t

  std::size_t n_rx_fd() const { return h_loop.rows(); }
  std::size_t n_tx_fd() const { return h_loop.cols(); }
  CVec g_fd() const { return g.head(n_rx_fd()); }
  CVec h_c0_fd() const { return h_c0.head(n_tx_fd()); }
  CVec h_c_fd() const { return h_c.head(n_tx_fd()); }

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;
};

void to_json(nlohmann::json& j, const ChannelSet& ch);
void from_json(const nlohmann::json& j, ChannelSet& ch);

// Portable seeded generator. Distributions are written out by hand because
// the standard library ones are not bit-reproducible across vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  double uniform();  // [0, 1)
  double phase();    // [0, 2 pi)
  cplx complex_normal();  // CN(0, 1)

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Per-trial seed; depends only on (base, index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Geometry links get |entry| = d^{-c/2} with uniform phase, H_loop is i.i.d.
// CN(0,1). Bit-identical for identical (cfg, seed).
ChannelSet sample_network(const SystemConfig& cfg, std::uint64_t seed);

// Normalized squared inner product |a^H b|^2 / (|a|^2 |b|^2), in [0, 1].
double correlation(const CVec& a, const CVec& b);

}  // namespace fdccr

#endif  // FDCCR_CHANNEL_HPP_
