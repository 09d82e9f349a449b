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

#include "fdccr/dualsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fdccr/channel.hpp"

namespace fdccr {
namespace {

CVec zeros_like(const CVec& v) { return CVec(v.size()); }

CVec unit(const CVec& v) {
  const double n = v.norm();
  if (!(n > 0.0)) return zeros_like(v);
  return v * cplx(1.0 / n, 0.0);
}

// 1 - rho^2 for the pair, 1 when either channel vanishes.
double decorrelation(const CVec& h1, const CVec& h2) {
  if (!(h1.norm_sq() > 0.0) || !(h2.norm_sq() > 0.0)) return 1.0;
  return 1.0 - correlation(h1, h2);
}

DualSolution mrt_solution(const CanonicalProblem& p) {
  DualSolution s;
  s.lambda1 = 0.0;
  s.lambda2 = p.p_total;
  const double b = p.h2.norm_sq();
  s.gamma2 = p.p_total * b / p.c;
  s.w1 = zeros_like(p.h1);
  if (b > 0.0) {
    s.w2 = unit(p.h2) * cplx(std::sqrt(p.p_total / p.c), 0.0);
    s.p_used = p.p_total;
  } else {
    s.w2 = zeros_like(p.h2);
  }
  return s;
}

}  // namespace

void CanonicalProblem::validate() const {
  if (h1.size() != h2.size()) throw std::invalid_argument("CanonicalProblem: h1 and h2 differ in length");
  if (h1.empty()) throw std::invalid_argument("CanonicalProblem: empty channels");
  if (!h1.is_finite() || !h2.is_finite()) throw std::invalid_argument("CanonicalProblem: non-finite channel");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("CanonicalProblem: c must be > 0");
  if (!(gamma1 >= 0.0) || !std::isfinite(gamma1)) {
    throw std::invalid_argument("CanonicalProblem: gamma1 must be >= 0");
  }
  if (!(p_total >= 0.0) || !std::isfinite(p_total)) {
    throw std::invalid_argument("CanonicalProblem: p_total must be >= 0");
  }
}

double canonical_sinr1(const CanonicalProblem& p, const CVec& w1, const CVec& w2) {
  return std::norm(herm_inner(p.h1, w1)) / (1.0 + p.c * std::norm(herm_inner(p.h1, w2)));
}

double canonical_sinr2(const CanonicalProblem& p, const CVec& w1, const CVec& w2) {
  return std::norm(herm_inner(p.h2, w2)) / (1.0 + std::norm(herm_inner(p.h2, w1)));
}

double canonical_power(const CanonicalProblem& p, const CVec& w1, const CVec& w2) {
  return w1.norm_sq() + p.c * w2.norm_sq();
}

// The weight c is absorbed by u2 = sqrt(c) w2: the unit-weight problem keeps
// gamma1 and returns c times the user-2 SINR.
double dual_gamma2(const CanonicalProblem& p, double lambda1, double lambda2) {
  const double a = p.h1.norm_sq();
  const double b = p.h2.norm_sq();
  if (!(b > 0.0)) return 0.0;
  const double s = decorrelation(p.h1, p.h2);
  return lambda2 * b * (1.0 + lambda1 * a * s) / (1.0 + lambda1 * a) / p.c;
}

Beamformers recover_beamformers(const CanonicalProblem& p, double lambda1, double lambda2) {
  p.validate();
  if (lambda1 < 0.0 || lambda2 < 0.0) throw std::invalid_argument("recover_beamformers: negative dual variable");
  if (p.gamma1 == 0.0) {
    DualSolution mrt = mrt_solution(p);
    return {std::move(mrt.w1), std::move(mrt.w2)};
  }
  const double gamma2_unit = p.c * dual_gamma2(p, lambda1, lambda2);

  const CVec u1 = unit(rank1_inverse_apply(p.h2, lambda2, p.h1));
  const CVec u2 = unit(rank1_inverse_apply(p.h1, lambda1, p.h2));

  const double a1 = std::norm(herm_inner(p.h1, u1));
  const double a12 = std::norm(herm_inner(p.h1, u2));
  const double b2 = std::norm(herm_inner(p.h2, u2));
  const double b21 = std::norm(herm_inner(p.h2, u1));

  // [a1, -g1 a12; -g2 b21, b2] [q1; q2] = [g1; g2]
  const double det = a1 * b2 - p.gamma1 * gamma2_unit * a12 * b21;
  if (gamma2_unit == 0.0) {
    if (!(a1 > 0.0)) throw RecoveryError("recover_beamformers: user-1 direction carries no gain");
    return {u1 * cplx(std::sqrt(p.gamma1 / a1), 0.0), zeros_like(p.h2)};
  }
  if (!(det > 1e-12 * a1 * b2)) throw RecoveryError("recover_beamformers: singular power system");
  const double q1 = p.gamma1 * (b2 + a12 * gamma2_unit) / det;
  const double q2 = gamma2_unit * (a1 + b21 * p.gamma1) / det;
  if (!(q1 >= 0.0) || !(q2 >= 0.0)) throw RecoveryError("recover_beamformers: negative power");
  return {u1 * cplx(std::sqrt(q1), 0.0), u2 * cplx(std::sqrt(q2 / p.c), 0.0)};
}

CanonicalResult solve_canonical(const CanonicalProblem& p) {
  p.validate();
  const double a = p.h1.norm_sq();
  const double b = p.h2.norm_sq();
  const double budget = p.p_total;

  if (p.gamma1 == 0.0) return mrt_solution(p);

  if (!(a > 0.0)) {
    return CanonicalInfeasible{std::numeric_limits<double>::infinity(), budget, "user-1 channel is zero"};
  }
  const double min_power = p.gamma1 / a;
  // f(P) = gamma1 - a P, so the smaller root lies inside [0, P] iff this holds.
  if (min_power > budget) {
    return CanonicalInfeasible{min_power, budget, "gamma1 needs more than the power budget"};
  }

  const double coupling = a * b * decorrelation(p.h1, p.h2);  // A
  const QuadraticCoeffs q{coupling, -(b * p.gamma1 + budget * coupling + a), (budget * b + 1.0) * p.gamma1};
  double lambda1 = 0.0;
  if (coupling <= 1e-13 * a * std::max(b, 1.0)) {
    lambda1 = q.c / -q.b;  // collinear channels: f is linear
  } else {
    try {
      lambda1 = min_positive_root(q);
    } catch (const std::domain_error& e) {
      return CanonicalInfeasible{min_power, budget, e.what()};
    }
  }
  lambda1 = std::min(lambda1, budget);

  DualSolution s;
  s.lambda1 = lambda1;
  s.lambda2 = budget - lambda1;
  s.gamma2 = dual_gamma2(p, s.lambda1, s.lambda2);
  try {
    Beamformers bf = recover_beamformers(p, s.lambda1, s.lambda2);
    s.w1 = std::move(bf.w1);
    s.w2 = std::move(bf.w2);
  } catch (const RecoveryError&) {
    OracleResult o = oracle_search(p, 32);
    s.gamma2 = o.gamma2;
    s.w1 = std::move(o.w1);
    s.w2 = std::move(o.w2);
    s.from_oracle = true;
  }
  s.p_used = canonical_power(p, s.w1, s.w2);
  return s;
}

namespace {

struct Direction {
  double theta;
  double phi;
  cplx x;  // coefficient on e1
  cplx y;  // coefficient on e2
};

Direction make_direction(double theta, double phi) {
  return {theta, phi, cplx(std::cos(theta), 0.0), std::polar(std::sin(theta), phi)};
}

// Per-direction gains against the two channels in (e1, e2) coordinates.
struct Gains {
  double to_h1;
  double to_h2;
};

class SpanSearch {
 public:
  SpanSearch(const CanonicalProblem& p, cplx h1x, cplx h2x, cplx h2y)
      : p_(p), h1x_(h1x), h2x_(h2x), h2y_(h2y) {}

  Gains gains(const Direction& d) const {
    const cplx on_h1 = std::conj(h1x_) * d.x;
    const cplx on_h2 = std::conj(h2x_) * d.x + std::conj(h2y_) * d.y;
    return {std::norm(on_h1), std::norm(on_h2)};
  }

  // Best gamma2 for fixed directions: SINR1 tight, full budget. Negative when
  // the directions cannot reach gamma1.
  double value(const Gains& g1, const Gains& g2, double* q1_out = nullptr, double* q2_out = nullptr) const {
    double q1 = 0.0;
    if (p_.gamma1 > 0.0) {
      const double denom = g1.to_h1 + p_.gamma1 * g2.to_h1;
      if (!(denom > 0.0)) return -1.0;
      q1 = p_.gamma1 * (1.0 + p_.p_total * g2.to_h1) / denom;
      if (q1 > p_.p_total) return -1.0;
    }
    const double q2 = (p_.p_total - q1) / p_.c;
    if (q1_out) *q1_out = q1;
    if (q2_out) *q2_out = q2;
    return q2 * g2.to_h2 / (1.0 + q1 * g1.to_h2);
  }

 private:
  const CanonicalProblem& p_;
  cplx h1x_;
  cplx h2x_;
  cplx h2y_;
};

struct Candidate {
  double value = -1.0;
  Direction d1{};
  Direction d2{};
};

Candidate grid_pass(const SpanSearch& search, const std::vector<Direction>& dirs1,
                    const std::vector<Direction>& dirs2) {
  std::vector<Gains> g1(dirs1.size());
  std::vector<Gains> g2(dirs2.size());
  for (std::size_t i = 0; i < dirs1.size(); ++i) g1[i] = search.gains(dirs1[i]);
  for (std::size_t i = 0; i < dirs2.size(); ++i) g2[i] = search.gains(dirs2[i]);
  Candidate best;
  for (std::size_t i = 0; i < dirs1.size(); ++i) {
    for (std::size_t k = 0; k < dirs2.size(); ++k) {
      const double v = search.value(g1[i], g2[k]);
      if (v > best.value) best = {v, dirs1[i], dirs2[k]};
    }
  }
  return best;
}

std::vector<Direction> direction_grid(double theta_lo, double theta_hi, double phi_lo, double phi_hi, int n,
                                      bool phi_periodic, bool planar) {
  std::vector<Direction> out;
  const int n_theta = planar ? n : 1;
  const int n_phi = planar ? n : 1;
  for (int i = 0; i < n_theta; ++i) {
    const double t = n_theta == 1 ? theta_lo : theta_lo + (theta_hi - theta_lo) * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double f = phi_periodic ? phi_lo + (phi_hi - phi_lo) * j / n_phi
                                    : (n_phi == 1 ? phi_lo : phi_lo + (phi_hi - phi_lo) * j / (n_phi - 1));
      out.push_back(make_direction(std::clamp(t, 0.0, std::numbers::pi / 2), f));
    }
  }
  return out;
}

}  // namespace

OracleResult oracle_search(const CanonicalProblem& p, int resolution) {
  p.validate();
  const int n = std::max(resolution, 4);
  const std::size_t dim = p.h1.size();
  OracleResult out;
  out.w1 = zeros_like(p.h1);
  out.w2 = zeros_like(p.h2);

  const double norm1 = p.h1.norm();
  if (!(norm1 > 0.0)) {
    if (p.gamma1 > 0.0) return out;
    DualSolution mrt = mrt_solution(p);
    return {mrt.gamma2, true, std::move(mrt.w1), std::move(mrt.w2)};
  }

  // Orthonormal basis of span{h1, h2}.
  const CVec e1 = p.h1 * cplx(1.0 / norm1, 0.0);
  const cplx h2x = herm_inner(e1, p.h2);
  CVec rest = p.h2 - e1 * h2x;
  double beta = rest.norm();
  CVec e2(dim);
  bool planar = dim >= 2;
  if (beta > 1e-12 * std::max(p.h2.norm(), 1e-300)) {
    e2 = rest * cplx(1.0 / beta, 0.0);
  } else {
    beta = 0.0;
    if (planar) {
      // Any unit vector orthogonal to e1 completes the basis.
      std::size_t k_best = 0;
      double best = -1.0;
      for (std::size_t k = 0; k < dim; ++k) {
        CVec ek(dim);
        ek[k] = 1.0;
        const double r = project_orthogonal(ek, e1).norm_sq();
        if (r > best) best = r, k_best = k;
      }
      CVec ek(dim);
      ek[k_best] = 1.0;
      e2 = unit(project_orthogonal(ek, e1));
    }
  }

  const SpanSearch search(p, cplx(norm1, 0.0), h2x, cplx(beta, 0.0));
  const double half_pi = std::numbers::pi / 2;
  const double two_pi = 2 * std::numbers::pi;
  const std::vector<Direction> coarse = direction_grid(0.0, half_pi, 0.0, two_pi, n, true, planar);
  Candidate best = grid_pass(search, coarse, coarse);
  if (best.value < 0.0) return out;

  // One zoomed pass spanning a coarse cell either side of the best point.
  if (planar) {
    const double dt = half_pi / (n - 1);
    const double dp = two_pi / n;
    const auto local = [&](const Direction& d) {
      return direction_grid(std::max(0.0, d.theta - dt), std::min(half_pi, d.theta + dt), d.phi - dp, d.phi + dp,
                            n, false, true);
    };
    const Candidate fine = grid_pass(search, local(best.d1), local(best.d2));
    if (fine.value > best.value) best = fine;
  }

  double q1 = 0.0;
  double q2 = 0.0;
  const Gains g1 = search.gains(best.d1);
  const Gains g2 = search.gains(best.d2);
  out.gamma2 = std::max(0.0, search.value(g1, g2, &q1, &q2));
  out.feasible = true;
  const auto to_vec = [&](const Direction& d, double power) {
    CVec v = e1 * d.x;
    if (planar) v += e2 * d.y;
    return v * cplx(std::sqrt(std::max(power, 0.0)), 0.0);
  };
  out.w1 = to_vec(best.d1, q1);
  out.w2 = to_vec(best.d2, q2);
  return out;
}

double oracle_canonical(const CanonicalProblem& p, int resolution) { return oracle_search(p, resolution).gamma2; }

}  // namespace fdccr
