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

#ifndef FDCCR_EXPERIMENTS_HPP_
#define FDCCR_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fdccr/channel.hpp"
#include "fdccr/hd.hpp"
#include "json.hpp"

namespace fdccr {

enum class Scheme {
  kHdAf,
  kHdDf,
  kHdAfSameRf,
  kHdDfSameRf,
  kFdAf,
  kFdDf,
  kHybridAf,
  kHybridDf,
  kBestAf,
  kBestDf,
  kOrthogonal,
  kDirect,
};

enum class Metric { kMeanCuRate, kPuOutage, kRateRegion };
enum class SweepVariable { kPcDb, kEps2, kR0, kAntennaSplit };

// Prelog of the unassisted PU link: full band, or one of two HD phases.
enum class DirectPrelog { kFull, kHalf };

std::string to_string(Scheme s);
std::string to_string(Metric m);
std::string to_string(SweepVariable v);
std::string to_string(DirectPrelog p);
Scheme parse_scheme(const std::string& s);
Metric parse_metric(const std::string& s);
SweepVariable parse_sweep_variable(const std::string& s);
DirectPrelog parse_direct_prelog(const std::string& s);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kPcDb;
  std::vector<double> values;
  std::vector<Scheme> schemes;
  int n_trials = 1000;
  std::uint64_t seed = 1;
  Metric metric = Metric::kMeanCuRate;
  DirectPrelog direct_prelog = DirectPrelog::kFull;
  int region_points = 32;  // rate_region only
  int threads = 0;         // 0: one per hardware thread

  // Throws ConfigError.
  void validate() const;
};

void to_json(nlohmann::json& j, const SweepSpec& s);
void from_json(const nlohmann::json& j, SweepSpec& s);

// cfg with one sweep coordinate overridden; antenna_split sets N_t.
SystemConfig apply_variable(SystemConfig cfg, SweepVariable v, double value);

struct SchemeOutcome {
  bool feasible = false;
  double r_pu = 0.0;
  double r_cu = 0.0;
};

double direct_rate(const ChannelSet& ch, const SystemConfig& cfg, DirectPrelog prelog);

SchemeOutcome evaluate_scheme(const ChannelSet& ch, const SystemConfig& cfg, Scheme scheme,
                              DirectPrelog prelog = DirectPrelog::kFull);

struct RegionPoint {
  double r_pu = 0.0;
  double r_cu = 0.0;
};

// Pareto boundary of (PU rate, CU rate) for one draw, sorted by r_pu.
std::vector<RegionPoint> trace_rate_region(const ChannelSet& ch, const SystemConfig& cfg, Scheme scheme,
                                           int n_points);

// Largest r0 the scheme supports on this draw.
double max_supported_r0(const ChannelSet& ch, const SystemConfig& cfg, Scheme scheme);

struct ResultRow {
  std::string variable;
  double value = 0.0;
  std::string scheme;
  std::string metric;
  double mean = 0.0;
  double stderr_mean = 0.0;
  int n_trials = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  SystemConfig config;
  SweepSpec spec;
};

// Deterministic in (cfg, spec) regardless of thread count. Rate-region
// tables hold one row per boundary point: variable "r_pu", mean = CU rate.
ResultTable run_sweep(const SystemConfig& cfg, const SweepSpec& spec);

double pu_outage(const SystemConfig& cfg, Scheme scheme, int n_trials, std::uint64_t seed,
                 DirectPrelog prelog = DirectPrelog::kFull);

std::string format_csv(const ResultTable& t);

// Writes <path> and <path>.meta.json. Throws std::runtime_error naming the
// path on I/O failure.
void emit_table(const ResultTable& t, const std::string& path);

ResultTable read_table(const std::string& path);

}  // namespace fdccr

#endif  // FDCCR_EXPERIMENTS_HPP_
