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

#ifndef FDCCR_DUALSOLVER_HPP_
#define FDCCR_DUALSOLVER_HPP_

#include <stdexcept>
#include <string>
#include <variant>

#include "fdccr/numerics.hpp"

namespace fdccr {

// Two-user MISO instance with unit noise:
//
//   max  |h2^H w2|^2 / (1 + |h2^H w1|^2)
//   s.t. |h1^H w1|^2 / (1 + c |h1^H w2|^2) >= gamma1,
//        |w1|^2 + c |w2|^2 <= p_total.
//
// Every relay problem in this library is reduced to this form.
struct CanonicalProblem {
  CVec h1;
  CVec h2;
  double c = 1.0;
  double gamma1 = 0.0;
  double p_total = 0.0;

  void validate() const;  // throws std::invalid_argument
};

struct DualSolution {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gamma2 = 0.0;
  CVec w1;
  CVec w2;
  double p_used = 0.0;
  // Set when the 2x2 power system was singular and the brute-force
  // beamformers were substituted.
  bool from_oracle = false;
};

// gamma1 cannot be met within p_total.
struct CanonicalInfeasible {
  double min_power_gamma1 = 0.0;  // gamma1 / |h1|^2, the single-user MRT cost
  double p_total = 0.0;
  std::string reason;
};

using CanonicalResult = std::variant<DualSolution, CanonicalInfeasible>;

CanonicalResult solve_canonical(const CanonicalProblem& p);

// Thrown by recover_beamformers when the tight-constraint power system has no
// unique solution.
class RecoveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Beamformers {
  CVec w1;
  CVec w2;
};

// Directions from the dual (MMSE-type) receivers, powers from the 2x2 linear
// system that makes both SINR constraints tight.
Beamformers recover_beamformers(const CanonicalProblem& p, double lambda1, double lambda2);

// gamma2 implied by the dual variables.
double dual_gamma2(const CanonicalProblem& p, double lambda1, double lambda2);

// Plug-in evaluation.
double canonical_sinr1(const CanonicalProblem& p, const CVec& w1, const CVec& w2);
double canonical_sinr2(const CanonicalProblem& p, const CVec& w1, const CVec& w2);
double canonical_power(const CanonicalProblem& p, const CVec& w1, const CVec& w2);

struct OracleResult {
  double gamma2 = 0.0;  // 0 when gamma1 is unreachable
  bool feasible = false;
  CVec w1;
  CVec w2;
};

// Brute force over beamformer directions in span{h1, h2}. Any component
// orthogonal to both channels changes no SINR term and only costs power.
OracleResult oracle_search(const CanonicalProblem& p, int resolution);

// gamma2 of oracle_search.
double oracle_canonical(const CanonicalProblem& p, int resolution);

}  // namespace fdccr

#endif  // FDCCR_DUALSOLVER_HPP_
