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

#include "fdccr/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdccr {
namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

double CVec::norm_sq() const {
  double s = 0.0;
  for (const cplx& z : v_) s += std::norm(z);
  return s;
}

double CVec::norm() const { return std::sqrt(norm_sq()); }

bool CVec::is_finite() const {
  for (const cplx& z : v_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

CVec CVec::head(std::size_t n) const {
  if (n > v_.size()) throw std::invalid_argument("CVec::head: slice longer than vector");
  return CVec(std::vector<cplx>(v_.begin(), v_.begin() + static_cast<std::ptrdiff_t>(n)));
}

CVec& CVec::operator+=(const CVec& o) {
  require_same_size(size(), o.size(), "CVec::operator+=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

CVec& CVec::operator-=(const CVec& o) {
  require_same_size(size(), o.size(), "CVec::operator-=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

CVec& CVec::operator*=(cplx s) {
  for (cplx& z : v_) z *= s;
  return *this;
}

CVec operator+(CVec a, const CVec& b) { return a += b; }
CVec operator-(CVec a, const CVec& b) { return a -= b; }
CVec operator*(cplx s, CVec a) { return a *= s; }
CVec operator*(CVec a, cplx s) { return a *= s; }

double CMat::frobenius_sq() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return s;
}

cplx herm_inner(const CVec& a, const CVec& b) {
  require_same_size(a.size(), b.size(), "herm_inner");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVec adjoint_times(const CVec& g, const CMat& m) {
  require_same_size(g.size(), m.rows(), "adjoint_times");
  CVec out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const cplx gc = std::conj(g[r]);
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += gc * m(r, c);
  }
  return out;
}

CVec times(const CMat& m, const CVec& x) {
  require_same_size(m.cols(), x.size(), "times");
  CVec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    cplx s{0.0, 0.0};
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * x[c];
    out[r] = s;
  }
  return out;
}

CVec project_orthogonal(const CVec& x, const CVec& v) {
  const double vv = v.norm_sq();
  if (!(vv > 0.0)) throw std::invalid_argument("project_orthogonal: zero direction vector");
  const cplx coef = herm_inner(v, x) / vv;
  CVec out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coef * v[i];
  // Second pass removes the rounding residue along v.
  const cplx again = herm_inner(v, out) / vv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= again * v[i];
  return out;
}

CVec rank1_inverse_apply(const CVec& h, double lambda, const CVec& x) {
  if (lambda < 0.0) throw std::invalid_argument("rank1_inverse_apply: negative lambda");
  require_same_size(h.size(), x.size(), "rank1_inverse_apply");
  if (lambda == 0.0) return x;
  const cplx coef = lambda * herm_inner(h, x) / (1.0 + lambda * h.norm_sq());
  CVec out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coef * h[i];
  return out;
}

double min_positive_root(const QuadraticCoeffs& q) {
  if (!(q.a > 0.0) || !(q.c > 0.0) || !(q.b < 0.0)) {
    throw std::invalid_argument("min_positive_root: requires a > 0, c > 0, b < 0");
  }
  double disc = q.b * q.b - 4.0 * q.a * q.c;
  if (disc < 0.0) {
    // Double roots land a few ulps either side of zero.
    if (disc < -1e-14 * q.b * q.b) {
      throw std::domain_error("min_positive_root: negative discriminant " + std::to_string(disc));
    }
    disc = 0.0;
  }
  const double big = (-q.b + std::sqrt(disc)) / 2.0;  // a * r_large
  return q.c / big;
}

}  // namespace fdccr
