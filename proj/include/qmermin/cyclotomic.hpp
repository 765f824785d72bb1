// Copyright 2026 The qmermin Authors
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

// Exact arithmetic in the cyclotomic integers Z[alpha], alpha = exp(2 pi i / m)
// with m = d * d for an odd prime d. Elements are kept in canonical form:
// integer coefficients of 1, alpha, ..., alpha^(phi(m) - 1), reduced modulo
// the cyclotomic polynomial Phi_m(x) = sum_{j<d} x^{j d}. Canonical form makes
// is_zero() and operator== exact.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmermin/errors.hpp"

namespace qmermin {

inline constexpr int kMaxDim = 7;
inline constexpr int kMaxPhi = kMaxDim * (kMaxDim - 1);
inline constexpr int kWideLen = 2 * kMaxDim * kMaxDim;

// Local dimensions for which Phi_{d^2}(x) = Phi_d(x^d) holds and which fit the
// inline coefficient storage.
constexpr bool is_supported_dim(int d) { return d == 3 || d == 5 || d == 7; }

inline void require_supported_dim(int d) {
  if (!is_supported_dim(d)) {
    throw std::invalid_argument("local dimension d=" + std::to_string(d) +
                                " unsupported (expected odd prime 3, 5 or 7)");
  }
}

// Returns d with m = d * d, or throws InvalidOrderError.
inline int dimension_of_order(int m) {
  for (int d = 3; d <= kMaxDim; d += 2) {
    if (d * d == m && is_supported_dim(d)) return d;
  }
  throw InvalidOrderError("cyclotomic order m=" + std::to_string(m) +
                          " is not d^2 for d in {3, 5, 7}");
}

constexpr int mod_floor(std::int64_t a, int m) {
  auto r = static_cast<int>(a % m);
  return r < 0 ? r + m : r;
}

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw CoefficientOverflowError("cyclotomic coefficient overflow (add)");
  }
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw CoefficientOverflowError("cyclotomic coefficient overflow (sub)");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw CoefficientOverflowError("cyclotomic coefficient overflow (mul)");
  }
  return r;
}

// Powers alpha^j, j < phi(d^2), as complex doubles.
inline const std::array<std::complex<double>, kMaxPhi>& power_table(int d) {
  static const auto tables = [] {
    std::array<std::array<std::complex<double>, kMaxPhi>, kMaxDim + 1> t{};
    for (int dd = 3; dd <= kMaxDim; dd += 2) {
      const int m = dd * dd;
      for (int j = 0; j < dd * (dd - 1); ++j) {
        t[dd][j] = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
      }
    }
    return t;
  }();
  return tables[d];
}

}  // namespace detail

// Root of unity alpha^exponent in compact form.
struct PhaseExponent {
  int order = 9;
  int exponent = 0;

  PhaseExponent() = default;
  PhaseExponent(int order_, std::int64_t e) : order(order_), exponent(mod_floor(e, order_)) {}

  friend PhaseExponent operator*(PhaseExponent a, PhaseExponent b) {
    if (a.order != b.order) throw OrderMismatchError("phase orders differ");
    return {a.order, static_cast<std::int64_t>(a.exponent) + b.exponent};
  }
  PhaseExponent inverse() const { return {order, -static_cast<std::int64_t>(exponent)}; }
  friend bool operator==(const PhaseExponent&, const PhaseExponent&) = default;
};

class CycInt {
 public:
  // Zero of order 0; a placeholder that must be assigned before use.
  CycInt() = default;

  explicit CycInt(int order) : order_(order), dim_(dimension_of_order(order)) {}

  static CycInt from_integer(std::int64_t value, int order) {
    CycInt r(order);
    r.coeffs_[0] = value;
    return r;
  }

  static CycInt from_coefficients(const std::vector<std::int64_t>& coeffs, int order) {
    CycInt r(order);
    if (static_cast<int>(coeffs.size()) > r.phi()) {
      throw std::invalid_argument("too many coefficients for canonical form");
    }
    std::copy(coeffs.begin(), coeffs.end(), r.coeffs_.begin());
    return r;
  }

  // alpha^j for any integer j.
  static CycInt root_of_unity(std::int64_t j, int order) {
    CycInt r(order);
    r.add_monomial(mod_floor(j, order), 1);
    return r;
  }

  static CycInt root_of_unity(PhaseExponent p) { return root_of_unity(p.exponent, p.order); }

  int order() const { return order_; }
  int dim() const { return dim_; }
  int phi() const { return dim_ * (dim_ - 1); }

  std::int64_t coeff(int j) const { return coeffs_[j]; }
  std::vector<std::int64_t> coefficients() const {
    return {coeffs_.begin(), coeffs_.begin() + phi()};
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.begin() + phi(),
                       [](std::int64_t c) { return c == 0; });
  }

  // Integer value if this element lies in Z.
  bool is_integer() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.begin() + phi(),
                       [](std::int64_t c) { return c == 0; });
  }
  std::int64_t integer_part() const { return coeffs_[0]; }

  std::complex<double> to_complex() const {
    const auto& table = detail::power_table(dim_);
    std::complex<double> z{0.0, 0.0};
    for (int j = 0; j < phi(); ++j) {
      if (coeffs_[j] != 0) z += static_cast<double>(coeffs_[j]) * table[j];
    }
    return z;
  }

  double magnitude() const { return std::abs(to_complex()); }

  // alpha^j -> alpha^(m - j).
  CycInt conjugate() const {
    CycInt r(order_);
    for (int j = 0; j < phi(); ++j) {
      if (coeffs_[j] != 0) r.add_monomial(mod_floor(-j, order_), coeffs_[j]);
    }
    return r;
  }

  // |a|^2 = a * conj(a), an element of the real subfield.
  CycInt norm_squared() const { return *this * conjugate(); }

  CycInt& operator+=(const CycInt& b) {
    check_same_order(b);
    for (int j = 0; j < phi(); ++j) coeffs_[j] = detail::checked_add(coeffs_[j], b.coeffs_[j]);
    return *this;
  }

  CycInt& operator-=(const CycInt& b) {
    check_same_order(b);
    for (int j = 0; j < phi(); ++j) coeffs_[j] = detail::checked_sub(coeffs_[j], b.coeffs_[j]);
    return *this;
  }

  CycInt& operator*=(std::int64_t k) {
    for (int j = 0; j < phi(); ++j) coeffs_[j] = detail::checked_mul(coeffs_[j], k);
    return *this;
  }

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, std::int64_t k) { return a *= k; }
  friend CycInt operator*(std::int64_t k, CycInt a) { return a *= k; }

  CycInt operator-() const {
    CycInt r(*this);
    for (int j = 0; j < phi(); ++j) r.coeffs_[j] = detail::checked_sub(0, coeffs_[j]);
    return r;
  }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    a.check_same_order(b);
    const int n = a.phi();
    std::array<std::int64_t, kWideLen> wide{};
    for (int i = 0; i < n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (b.coeffs_[j] == 0) continue;
        wide[i + j] = detail::checked_add(wide[i + j], detail::checked_mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    CycInt r(a.order_);
    r.reduce_into(wide, 2 * n - 1);
    return r;
  }

  CycInt& operator*=(const CycInt& b) { return *this = *this * b; }

  // Multiplication by alpha^e (a rotation of coefficients followed by reduction).
  CycInt times_root(std::int64_t e) const {
    const int s = mod_floor(e, order_);
    std::array<std::int64_t, kWideLen> wide{};
    for (int j = 0; j < phi(); ++j) wide[s + j] = coeffs_[j];
    CycInt r(order_);
    r.reduce_into(wide, phi() + s);
    return r;
  }

  // Divides every coefficient by k; throws if the element is not divisible.
  CycInt divide_exact(std::int64_t k) const {
    if (k == 0) throw std::domain_error("division by zero");
    CycInt r(*this);
    for (int j = 0; j < phi(); ++j) {
      if (coeffs_[j] % k != 0) {
        throw Error("cyclotomic element not divisible by " + std::to_string(k));
      }
      r.coeffs_[j] = coeffs_[j] / k;
    }
    return r;
  }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  // Human-readable polynomial in "a" (alpha), e.g. "-1 - a^3".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < phi(); ++j) {
      const std::int64_t c = coeffs_[j];
      if (c == 0) continue;
      const std::int64_t mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (j == 0) {
        os << mag;
      } else {
        if (mag != 1) os << mag;
        os << 'a';
        if (j > 1) os << '^' << j;
      }
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const CycInt& a) { return os << a.to_string(); }

 private:
  void check_same_order(const CycInt& b) const {
    if (order_ != b.order_) {
      throw OrderMismatchError("cyclotomic orders differ: " + std::to_string(order_) + " vs " +
                               std::to_string(b.order_));
    }
  }

  // Adds c * alpha^e for 0 <= e < m. alpha^phi = -sum_{j<d-1} alpha^{j d}.
  void add_monomial(int e, std::int64_t c) {
    const int n = phi();
    if (e < n) {
      coeffs_[e] = detail::checked_add(coeffs_[e], c);
      return;
    }
    for (int j = 0; j + 1 < dim_; ++j) {
      coeffs_[e - n + j * dim_] = detail::checked_sub(coeffs_[e - n + j * dim_], c);
    }
  }

  // Reduces wide[0..len) modulo Phi_m and stores the canonical result.
  void reduce_into(std::array<std::int64_t, kWideLen>& wide, int len) {
    const int n = phi();
    for (int e = len - 1; e >= n; --e) {
      const std::int64_t c = wide[e];
      if (c == 0) continue;
      wide[e] = 0;
      for (int j = 0; j + 1 < dim_; ++j) {
        wide[e - n + j * dim_] = detail::checked_sub(wide[e - n + j * dim_], c);
      }
    }
    std::copy(wide.begin(), wide.begin() + n, coeffs_.begin());
  }

  int order_ = 0;
  int dim_ = 0;
  std::array<std::int64_t, kMaxPhi> coeffs_{};
};

inline CycInt root_of_unity(std::int64_t j, int order) { return CycInt::root_of_unity(j, order); }

// omega = alpha^d, the primitive d-th root of unity inside Z[alpha].
inline CycInt omega_power(std::int64_t t, int d) {
  return CycInt::root_of_unity(static_cast<std::int64_t>(d) * t, d * d);
}

}  // namespace qmermin
