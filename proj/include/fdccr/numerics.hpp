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

#ifndef FDCCR_NUMERICS_HPP_
#define FDCCR_NUMERICS_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fdccr {

using cplx = std::complex<double>;

// Shared tolerances for the property checks.
inline constexpr double kEpsOrtho = 1e-12;
inline constexpr double kEpsResidual = 1e-9;

// Dense complex column vector. Holds every channel and beamformer.
class CVec {
 public:
  CVec() = default;
  explicit CVec(std::size_t n) : v_(n) {}
  CVec(std::initializer_list<cplx> init) : v_(init) {}
  explicit CVec(std::vector<cplx> v) : v_(std::move(v)) {}

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }

  auto begin() { return v_.begin(); }
  auto end() { return v_.end(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  std::span<const cplx> view() const { return v_; }
  const std::vector<cplx>& values() const { return v_; }

  double norm_sq() const;
  double norm() const;
  bool is_finite() const;

  // First n entries.
  CVec head(std::size_t n) const;

  CVec& operator+=(const CVec& o);
  CVec& operator-=(const CVec& o);
  CVec& operator*=(cplx s);

  friend bool operator==(const CVec&, const CVec&) = default;

 private:
  std::vector<cplx> v_;
};

CVec operator+(CVec a, const CVec& b);
CVec operator-(CVec a, const CVec& b);
CVec operator*(cplx s, CVec a);
CVec operator*(CVec a, cplx s);

// Row-major complex matrix; only what the loop-interference terms need.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  double frobenius_sq() const;

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

// a^H b. Throws std::invalid_argument on dimension mismatch.
cplx herm_inner(const CVec& a, const CVec& b);

// The row vector g^H M, returned as a length-cols vector of its entries.
CVec adjoint_times(const CVec& g, const CMat& m);

// M x.
CVec times(const CMat& m, const CVec& x);

// (I - v v^H / |v|^2) x. Throws on v == 0.
CVec project_orthogonal(const CVec& x, const CVec& v);

// (I + lambda h h^H)^{-1} x through the Sherman-Morrison identity.
CVec rank1_inverse_apply(const CVec& h, double lambda, const CVec& x);

// Coefficients of a lambda^2 + b lambda + c.
struct QuadraticCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// Smaller of the two positive roots. Requires a > 0, c > 0, b < 0; the larger
// root is formed first and the smaller recovered as c / (a * r_large).
// Throws std::invalid_argument on bad signs and std::domain_error on a
// negative discriminant.
double min_positive_root(const QuadraticCoeffs& q);

}  // namespace fdccr

#endif  // FDCCR_NUMERICS_HPP_
