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

// Local observables, tensor-product setting words and GHZ states for odd
// local dimension d. Every observable here is a monomial map
// |n> -> alpha^{p(n)} |n+1 mod d>, so words act on basis states by a digit
// shift plus a phase, and states are sparse maps of exact amplitudes.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmermin/cyclotomic.hpp"

namespace qmermin {

constexpr int half_width(int d) { return (d - 1) / 2; }

// Letter index (digit in [0, d)) <-> rotation index j in [-(d-1)/2, (d-1)/2].
// For d = 3: 0 = X (j=0), 1 = Y (j=+1), 2 = V (j=-1).
constexpr int letter_of_rotation(int j, int d) { return mod_floor(j, d); }
constexpr int rotation_of_letter(int letter, int d) {
  return letter <= half_width(d) ? letter : letter - d;
}

inline std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = detail::checked_mul(r, base);
  return r;
}

class LocalObservable {
 public:
  // W_j = Z^{j/d} X Z^{-j/d}: phase exponents j (1 - d delta_{n,d-1}) mod d^2.
  static LocalObservable rotated(int d, int j) {
    require_supported_dim(d);
    if (j < -half_width(d) || j > half_width(d)) {
      throw std::invalid_argument("rotation index out of range for d=" + std::to_string(d));
    }
    std::vector<int> phases(d);
    for (int n = 0; n < d; ++n) {
      phases[n] = mod_floor(static_cast<std::int64_t>(j) * (n == d - 1 ? 1 - d : 1), d * d);
    }
    return LocalObservable(d, j, std::move(phases));
  }

  // Arbitrary phase table, e.g. for negative controls.
  static LocalObservable from_phase_table(int d, int j, std::vector<int> phases) {
    require_supported_dim(d);
    if (static_cast<int>(phases.size()) != d) {
      throw DimensionMismatchError("phase table length must equal d");
    }
    for (auto& p : phases) p = mod_floor(p, d * d);
    return LocalObservable(d, j, std::move(phases));
  }

  int dim() const { return d_; }
  int rotation() const { return j_; }
  int order() const { return d_ * d_; }
  const std::vector<int>& phase_table() const { return phases_; }
  PhaseExponent phase(int n) const { return {order(), phases_[n]}; }

  // Row-major d x d matrix with exact entries.
  std::vector<CycInt> dense() const {
    std::vector<CycInt> m(static_cast<std::size_t>(d_ * d_), CycInt(order()));
    for (int n = 0; n < d_; ++n) {
      m[static_cast<std::size_t>(((n + 1) % d_) * d_ + n)] = root_of_unity(phases_[n], order());
    }
    return m;
  }

  friend bool operator==(const LocalObservable&, const LocalObservable&) = default;

 private:
  LocalObservable(int d, int j, std::vector<int> phases) : d_(d), j_(j), phases_(std::move(phases)) {}

  int d_;
  int j_;
  std::vector<int> phases_;
};

inline LocalObservable qutrit_x() { return LocalObservable::rotated(3, 0); }
inline LocalObservable qutrit_y() { return LocalObservable::rotated(3, 1); }
inline LocalObservable qutrit_v() { return LocalObservable::rotated(3, -1); }

// Tensor product of rotated observables, one rotation index per site (site 1
// first).
struct SettingWord {
  int d = 3;
  std::vector<int> rotations;

  int size() const { return static_cast<int>(rotations.size()); }

  // Net rotation on the circle, (sum of j_i) mod d^2.
  int position() const {
    std::int64_t sum = 0;
    for (int j : rotations) sum += j;
    return mod_floor(sum, d * d);
  }

  // "XYV" for d = 3; "[0,+1,-2]" otherwise.
  std::string to_string() const {
    std::string s;
    if (d == 3) {
      for (int j : rotations) s += j == 0 ? 'X' : (j == 1 ? 'Y' : 'V');
      return s;
    }
    s = "[";
    for (std::size_t i = 0; i < rotations.size(); ++i) {
      if (i) s += ',';
      if (rotations[i] > 0) s += '+';
      s += std::to_string(rotations[i]);
    }
    return s + "]";
  }

  friend bool operator==(const SettingWord&, const SettingWord&) = default;
};

inline SettingWord parse_qutrit_word(std::string_view letters) {
  SettingWord w{3, {}};
  for (char c : letters) {
    switch (c) {
      case 'X': case 'x': w.rotations.push_back(0); break;
      case 'Y': case 'y': w.rotations.push_back(1); break;
      case 'V': case 'v': w.rotations.push_back(-1); break;
      default: throw std::invalid_argument(std::string("unknown setting letter '") + c + "'");
    }
  }
  return w;
}

inline int word_position(const SettingWord& w) { return w.position(); }

// Word with letter digits taken from the base-d digits of index, site 1 most
// significant; index 0 is X...X.
inline SettingWord word_from_index(std::uint64_t index, int d, int n) {
  SettingWord w{d, std::vector<int>(static_cast<std::size_t>(n))};
  for (int i = n - 1; i >= 0; --i) {
    w.rotations[static_cast<std::size_t>(i)] = rotation_of_letter(static_cast<int>(index % d), d);
    index /= static_cast<std::uint64_t>(d);
  }
  return w;
}

// Unnormalized state over d^N basis labels (base-d digits, site 1 least
// significant).
class StateVector {
 public:
  StateVector(int d, int n) : d_(d), n_(n) {
    require_supported_dim(d);
    if (n < 1) throw std::invalid_argument("particle count must be >= 1");
    checked_pow(d, n);
  }

  int dim() const { return d_; }
  int sites() const { return n_; }
  int order() const { return d_ * d_; }
  const std::map<std::uint64_t, CycInt>& amplitudes() const { return amps_; }

  CycInt amplitude(std::uint64_t label) const {
    auto it = amps_.find(label);
    return it == amps_.end() ? CycInt(order()) : it->second;
  }

  void add(std::uint64_t label, const CycInt& amp) {
    auto [it, inserted] = amps_.try_emplace(label, amp);
    if (!inserted) it->second += amp;
    if (it->second.is_zero()) amps_.erase(it);
  }

  std::uint64_t label_of(const std::vector<int>& digits) const {
    std::uint64_t label = 0;
    for (int i = n_ - 1; i >= 0; --i) label = label * d_ + static_cast<std::uint64_t>(digits[i]);
    return label;
  }

  std::vector<int> digits_of(std::uint64_t label) const {
    std::vector<int> digits(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(label % d_);
      label /= static_cast<std::uint64_t>(d_);
    }
    return digits;
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  int d_;
  int n_;
  std::map<std::uint64_t, CycInt> amps_;
};

// sum_r alpha^{k r} |r r ... r>, without the 1/sqrt(d).
inline StateVector ghz_state(std::int64_t k, int d, int n) {
  StateVector s(d, n);
  const int m = d * d;
  for (int r = 0; r < d; ++r) {
    s.add(s.label_of(std::vector<int>(static_cast<std::size_t>(n), r)), root_of_unity(k * r, m));
  }
  return s;
}

inline StateVector apply(const SettingWord& word, const StateVector& s) {
  if (word.d != s.dim() || word.size() != s.sites()) {
    throw DimensionMismatchError("word " + word.to_string() + " does not match state (d=" +
                                 std::to_string(s.dim()) + ", N=" + std::to_string(s.sites()) + ")");
  }
  const int d = s.dim();
  std::vector<LocalObservable> obs;
  obs.reserve(word.rotations.size());
  for (int j : word.rotations) obs.push_back(LocalObservable::rotated(d, j));

  StateVector out(d, s.sites());
  for (const auto& [label, amp] : s.amplitudes()) {
    auto digits = s.digits_of(label);
    std::int64_t phase = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      phase += obs[i].phase_table()[static_cast<std::size_t>(digits[i])];
      digits[i] = (digits[i] + 1) % d;
    }
    out.add(s.label_of(digits), amp.times_root(phase));
  }
  return out;
}

// lambda with result = lambda * target, if it exists. The first nonzero
// amplitude of target must be a root of unity (true for GHZ states).
inline std::optional<CycInt> proportionality_factor(const StateVector& result,
                                                    const StateVector& target) {
  if (result.dim() != target.dim() || result.sites() != target.sites()) {
    throw DimensionMismatchError("states differ in shape");
  }
  if (target.amplitudes().empty()) return std::nullopt;
  const auto& [label0, amp0] = *target.amplitudes().begin();
  const int m = target.order();
  std::optional<int> unit_exp;
  for (int e = 0; e < m; ++e) {
    if (amp0 == root_of_unity(e, m)) {
      unit_exp = e;
      break;
    }
  }
  if (!unit_exp) throw std::invalid_argument("target leading amplitude is not a root of unity");
  CycInt lambda = result.amplitude(label0).times_root(-*unit_exp);

  for (const auto& [label, amp] : target.amplitudes()) {
    if (!(result.amplitude(label) == lambda * amp)) return std::nullopt;
  }
  for (const auto& [label, amp] : result.amplitudes()) {
    if (!target.amplitudes().contains(label)) return std::nullopt;
  }
  return lambda;
}

// Eigenphase alpha^{k-c} of a word on GHZ state c. Raises NotEigenoperatorError
// when position k is not congruent to c mod d.
inline PhaseExponent ghz_eigenphase(const SettingWord& word, int c) {
  const int d = word.d;
  const int k = word.position();
  if (mod_floor(k - c, d) != 0) {
    throw NotEigenoperatorError("word " + word.to_string() + " at position " + std::to_string(k) +
                                " is not an eigenoperator of GHZ state " + std::to_string(c));
  }
  return {d * d, static_cast<std::int64_t>(k) - c};
}

namespace detail {

inline std::vector<CycInt> matmul(const std::vector<CycInt>& a, const std::vector<CycInt>& b, int d) {
  std::vector<CycInt> r(a.size(), CycInt(a.front().order()));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) r[i * d + j] += a[i * d + k] * b[k * d + j];
  return r;
}

inline std::vector<CycInt> diagonal(int d, std::int64_t step) {
  std::vector<CycInt> r(static_cast<std::size_t>(d * d), CycInt(d * d));
  for (int n = 0; n < d; ++n) r[n * d + n] = root_of_unity(step * n, d * d);
  return r;
}

}  // namespace detail

// Exact check of the rotational Bloch theorem for an observable claiming
// rotation index j: it must equal Z^{j/d} X Z^{-j/d}, and Z W Z^{-1} = omega W.
inline bool bloch_check(const LocalObservable& w) {
  const int d = w.dim();
  const int j = w.rotation();
  const auto wm = w.dense();

  const auto x = LocalObservable::rotated(d, 0).dense();
  const auto rotated = detail::matmul(detail::matmul(detail::diagonal(d, j), x, d),
                                      detail::diagonal(d, -j), d);
  if (rotated != wm) return false;

  // Z = diag(omega^n) = diag(alpha^{d n}).
  const auto conj = detail::matmul(detail::matmul(detail::diagonal(d, d), wm, d),
                                   detail::diagonal(d, -d), d);
  for (std::size_t i = 0; i < wm.size(); ++i) {
    if (!(conj[i] == wm[i].times_root(d))) return false;
  }
  return true;
}

}  // namespace qmermin
