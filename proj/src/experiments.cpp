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

#include "fdccr/experiments.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fdccr/fd.hpp"
#include "fdccr/hybrid.hpp"

namespace fdccr {
namespace {

constexpr std::array<std::pair<Scheme, const char*>, 12> kSchemeNames{{
    {Scheme::kHdAf, "HD-AF"},
    {Scheme::kHdDf, "HD-DF"},
    {Scheme::kHdAfSameRf, "HD-AF-sameRF"},
    {Scheme::kHdDfSameRf, "HD-DF-sameRF"},
    {Scheme::kFdAf, "FD-AF"},
    {Scheme::kFdDf, "FD-DF"},
    {Scheme::kHybridAf, "HYBRID-AF"},
    {Scheme::kHybridDf, "HYBRID-DF"},
    {Scheme::kBestAf, "BEST-AF"},
    {Scheme::kBestDf, "BEST-DF"},
    {Scheme::kOrthogonal, "ORTHOGONAL"},
    {Scheme::kDirect, "DIRECT"},
}};

constexpr std::array<std::pair<Metric, const char*>, 3> kMetricNames{{
    {Metric::kMeanCuRate, "mean_cu_rate"},
    {Metric::kPuOutage, "pu_outage"},
    {Metric::kRateRegion, "rate_region"},
}};

constexpr std::array<std::pair<SweepVariable, const char*>, 4> kVariableNames{{
    {SweepVariable::kPcDb, "pc_db"},
    {SweepVariable::kEps2, "eps2"},
    {SweepVariable::kR0, "r0"},
    {SweepVariable::kAntennaSplit, "antenna_split"},
}};

template <typename E, std::size_t N>
std::string name_of(const std::array<std::pair<E, const char*>, N>& table, E e) {
  for (const auto& [k, v] : table) {
    if (k == e) return v;
  }
  throw std::logic_error("unnamed enumerator");
}

template <typename E, std::size_t N>
E parse_name(const std::array<std::pair<E, const char*>, N>& table, const std::string& s, const char* field) {
  for (const auto& [k, v] : table) {
    if (s == v) return k;
  }
  throw ConfigError(field, "unknown value '" + s + "'");
}

Protocol protocol_of(Scheme s) {
  switch (s) {
    case Scheme::kHdAf:
    case Scheme::kHdAfSameRf:
    case Scheme::kFdAf:
    case Scheme::kHybridAf:
    case Scheme::kBestAf:
      return Protocol::kAF;
    default:
      return Protocol::kDF;
  }
}

SchemeOutcome from_link(const LinkSolution& s) {
  if (!s.feasible) return {};
  return {true, s.r_pu, s.r_cu};
}

SystemConfig with_policy(SystemConfig cfg, HdAntennaPolicy p) {
  cfg.hd_antenna_policy = p;
  return cfg;
}

std::string fmt_num(double x) { return fmt::format("{:.10g}", x); }

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double stderr_mean() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1));
    return std::sqrt(var / n);
  }
};

int worker_count(int requested, int jobs) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(n, 1, std::max(jobs, 1));
}

// Runs body(i) for i in [0, jobs) on a small pool; body writes only slot i.
template <typename F>
void parallel_for(int jobs, int requested_threads, F&& body) {
  const int n_workers = worker_count(requested_threads, jobs);
  if (n_workers == 1) {
    for (int i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < jobs && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

constexpr const char* kCsvHeader = "variable,value,scheme,metric,mean,stderr,n_trials,seed";

}  // namespace

std::string to_string(Scheme s) { return name_of(kSchemeNames, s); }
std::string to_string(Metric m) { return name_of(kMetricNames, m); }
std::string to_string(SweepVariable v) { return name_of(kVariableNames, v); }
std::string to_string(DirectPrelog p) { return p == DirectPrelog::kFull ? "full" : "half"; }
Scheme parse_scheme(const std::string& s) { return parse_name(kSchemeNames, s, "schemes"); }
Metric parse_metric(const std::string& s) { return parse_name(kMetricNames, s, "metric"); }
SweepVariable parse_sweep_variable(const std::string& s) { return parse_name(kVariableNames, s, "variable"); }

DirectPrelog parse_direct_prelog(const std::string& s) {
  if (s == "full") return DirectPrelog::kFull;
  if (s == "half") return DirectPrelog::kHalf;
  throw ConfigError("direct_prelog", "expected 'full' or 'half', got '" + s + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("values", "must not be empty");
  if (schemes.empty()) throw ConfigError("schemes", "must not be empty");
  if (n_trials < 1) throw ConfigError("n_trials", "must be >= 1");
  if (metric == Metric::kRateRegion) {
    if (values.size() != 1) throw ConfigError("values", "rate_region takes exactly one value");
    if (region_points < 2) throw ConfigError("region_points", "must be >= 2");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigError("values", "must be finite");
  }
}

void to_json(nlohmann::json& j, const SweepSpec& s) {
  auto schemes = nlohmann::json::array();
  for (Scheme x : s.schemes) schemes.push_back(to_string(x));
  j = nlohmann::json{
      {"variable", to_string(s.variable)},
      {"values", s.values},
      {"schemes", std::move(schemes)},
      {"n_trials", s.n_trials},
      {"seed", s.seed},
      {"metric", to_string(s.metric)},
      {"direct_prelog", to_string(s.direct_prelog)},
      {"region_points", s.region_points},
  };
}

void from_json(const nlohmann::json& j, SweepSpec& s) {
  s.variable = parse_sweep_variable(j.at("variable").get<std::string>());
  s.values = j.at("values").get<std::vector<double>>();
  s.schemes.clear();
  for (const auto& x : j.at("schemes")) s.schemes.push_back(parse_scheme(x.get<std::string>()));
  s.n_trials = j.at("n_trials").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.metric = parse_metric(j.at("metric").get<std::string>());
  s.direct_prelog = parse_direct_prelog(j.value("direct_prelog", std::string("full")));
  s.region_points = j.value("region_points", 32);
}

SystemConfig apply_variable(SystemConfig cfg, SweepVariable v, double value) {
  switch (v) {
    case SweepVariable::kPcDb:
      cfg.pc_db = value;
      break;
    case SweepVariable::kEps2:
      cfg.eps2 = value;
      break;
    case SweepVariable::kR0:
      cfg.r0 = value;
      break;
    case SweepVariable::kAntennaSplit: {
      const double n_tx = std::round(value);
      if (n_tx != value) throw ConfigError("values", "antenna_split values must be integers");
      cfg.n_tx_fd = static_cast<int>(n_tx);
      cfg.n_rx_fd = cfg.n_total - cfg.n_tx_fd;
      break;
    }
  }
  cfg.validate();
  return cfg;
}

double direct_rate(const ChannelSet& ch, const SystemConfig& cfg, DirectPrelog prelog) {
  const double r = std::log2(1.0 + cfg.p0() * std::norm(ch.h0));
  return prelog == DirectPrelog::kFull ? r : 0.5 * r;
}

SchemeOutcome evaluate_scheme(const ChannelSet& ch, const SystemConfig& cfg, Scheme scheme, DirectPrelog prelog) {
  const Protocol proto = protocol_of(scheme);
  switch (scheme) {
    case Scheme::kHdAf:
    case Scheme::kHdDf:
      return from_link(solve_hd(ch, cfg, proto));
    case Scheme::kHdAfSameRf:
    case Scheme::kHdDfSameRf:
      return from_link(solve_hd(ch, with_policy(cfg, HdAntennaPolicy::kSameRf), proto));
    case Scheme::kFdAf:
    case Scheme::kFdDf:
      return from_link(solve_fd(ch, cfg, proto));
    case Scheme::kHybridAf:
    case Scheme::kHybridDf: {
      const ModeDecision d = select_mode(ch, cfg);
      return from_link(d.chosen == DuplexMode::kFD ? solve_fd(ch, cfg, proto) : solve_hd(ch, cfg, proto));
    }
    case Scheme::kBestAf:
    case Scheme::kBestDf: {
      const SchemeOutcome hd = from_link(solve_hd(ch, cfg, proto));
      const SchemeOutcome fd = from_link(solve_fd(ch, cfg, proto));
      if (!hd.feasible) return fd;
      if (!fd.feasible) return hd;
      return fd.r_cu > hd.r_cu ? fd : hd;
    }
    case Scheme::kOrthogonal: {
      const double r = direct_rate(ch, cfg, prelog);
      return {r >= cfg.r0, r, orthogonal_rate(ch, cfg)};
    }
    case Scheme::kDirect: {
      const double r = direct_rate(ch, cfg, prelog);
      return {r >= cfg.r0, r, 0.0};
    }
  }
  throw std::logic_error("unhandled scheme");
}

double max_supported_r0(const ChannelSet& ch, const SystemConfig& cfg, Scheme scheme) {
  const auto feasible_at = [&](double r0) {
    SystemConfig c = cfg;
    c.r0 = r0;
    return evaluate_scheme(ch, c, scheme).feasible;
  };
  if (!feasible_at(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (feasible_at(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1024.0) return lo;
  }
  for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible_at(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<RegionPoint> trace_rate_region(const ChannelSet& ch, const SystemConfig& cfg, Scheme scheme,
                                           int n_points) {
  if (n_points < 2) throw std::invalid_argument("trace_rate_region: n_points must be >= 2");
  const double r_max = max_supported_r0(ch, cfg, scheme);
  std::vector<RegionPoint> pts;
  for (int i = 0; i < n_points; ++i) {
    SystemConfig c = cfg;
    c.r0 = r_max * i / (n_points - 1);
    const SchemeOutcome o = evaluate_scheme(ch, c, scheme);
    if (o.feasible) pts.push_back({std::max(o.r_pu, c.r0), o.r_cu});
  }
  std::sort(pts.begin(), pts.end(), [](const RegionPoint& a, const RegionPoint& b) {
    return a.r_pu != b.r_pu ? a.r_pu > b.r_pu : a.r_cu > b.r_cu;
  });
  // Sweep from the largest PU rate down, keeping strict CU improvements.
  std::vector<RegionPoint> front;
  for (const RegionPoint& p : pts) {
    if (front.empty() || p.r_cu > front.back().r_cu) front.push_back(p);
  }
  std::reverse(front.begin(), front.end());
  return front;
}

ResultTable run_sweep(const SystemConfig& cfg, const SweepSpec& spec) {
  cfg.validate();
  spec.validate();
  ResultTable t;
  t.config = cfg;
  t.spec = spec;

  if (spec.metric == Metric::kRateRegion) {
    const SystemConfig c = apply_variable(cfg, spec.variable, spec.values.front());
    const ChannelSet ch = sample_network(c, spec.seed);
    for (Scheme s : spec.schemes) {
      for (const RegionPoint& p : trace_rate_region(ch, c, s, spec.region_points)) {
        t.rows.push_back({"r_pu", p.r_pu, to_string(s), to_string(spec.metric), p.r_cu, 0.0, 1, spec.seed});
      }
    }
    return t;
  }

  const std::size_t n_schemes = spec.schemes.size();
  for (double value : spec.values) {
    const SystemConfig c = apply_variable(cfg, spec.variable, value);
    std::vector<double> samples(static_cast<std::size_t>(spec.n_trials) * n_schemes);
    parallel_for(spec.n_trials, spec.threads, [&](int trial) {
      const ChannelSet ch = sample_network(c, derive_seed(spec.seed, static_cast<std::uint64_t>(trial)));
      for (std::size_t k = 0; k < n_schemes; ++k) {
        const SchemeOutcome o = evaluate_scheme(ch, c, spec.schemes[k], spec.direct_prelog);
        samples[static_cast<std::size_t>(trial) * n_schemes + k] =
            spec.metric == Metric::kPuOutage ? (o.feasible ? 0.0 : 1.0) : o.r_cu;
      }
    });
    for (std::size_t k = 0; k < n_schemes; ++k) {
      Accumulator acc;
      for (int trial = 0; trial < spec.n_trials; ++trial) {
        acc.add(samples[static_cast<std::size_t>(trial) * n_schemes + k]);
      }
      t.rows.push_back({to_string(spec.variable), value, to_string(spec.schemes[k]), to_string(spec.metric),
                        acc.mean(), acc.stderr_mean(), spec.n_trials, spec.seed});
    }
  }
  return t;
}

double pu_outage(const SystemConfig& cfg, Scheme scheme, int n_trials, std::uint64_t seed, DirectPrelog prelog) {
  SweepSpec spec;
  spec.variable = SweepVariable::kPcDb;
  spec.values = {cfg.pc_db};
  spec.schemes = {scheme};
  spec.n_trials = n_trials;
  spec.seed = seed;
  spec.metric = Metric::kPuOutage;
  spec.direct_prelog = prelog;
  return run_sweep(cfg, spec).rows.front().mean;
}

std::string format_csv(const ResultTable& t) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ResultRow& r : t.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.variable, fmt_num(r.value), r.scheme, r.metric,
                       fmt_num(r.mean), fmt_num(r.stderr_mean), r.n_trials, r.seed);
  }
  return out;
}

void emit_table(const ResultTable& t, const std::string& path) {
  const auto write = [](const std::string& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + p + "' for writing");
    f << body;
    f.close();
    if (!f) throw std::runtime_error("write to '" + p + "' failed");
  };
  write(path, format_csv(t));
  const nlohmann::json meta{{"system", t.config}, {"sweep", t.spec}};
  write(path + ".meta.json", meta.dump(2) + "\n");
}

ResultTable read_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  ResultTable t;
  std::string line;
  if (!std::getline(f, line) || line != kCsvHeader) throw std::runtime_error("'" + path + "': bad CSV header");
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) throw std::runtime_error("'" + path + "': malformed row: " + line);
    ResultRow r;
    r.variable = fields[0];
    r.value = std::stod(fields[1]);
    r.scheme = fields[2];
    r.metric = fields[3];
    r.mean = std::stod(fields[4]);
    r.stderr_mean = std::stod(fields[5]);
    r.n_trials = std::stoi(fields[6]);
    r.seed = std::stoull(fields[7]);
    t.rows.push_back(std::move(r));
  }
  std::ifstream meta_file(path + ".meta.json");
  if (!meta_file) throw std::runtime_error("cannot open '" + path + ".meta.json'");
  const nlohmann::json meta = nlohmann::json::parse(meta_file);
  t.config = meta.at("system").get<SystemConfig>();
  t.spec = meta.at("sweep").get<SweepSpec>();
  return t;
}

}  // namespace fdccr
