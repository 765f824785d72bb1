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

// Local hidden-variable values of the Mermin operator M_0.
//
// A hidden-variable model gives every local observable W_j at site i a value
// omega^{e_ij}. Writing M_0 in product form,
//
//   d * M_0 = sum_t prod_i ( sum_j omega^{t j} alpha^{(d-1) j} W_j ),
//
// the value is v = (1/d) sum_t prod_i F_t(site i), and |v| depends only on
// the ratios v(W_j) / v(W_0). For d = 3 the per-site factors are named
//   B = F_0,  C = F_1,  A = F_2
// which at the uniform point evaluate to A ~ 2.532, B ~ 1.347, -C ~ -0.879.
//
// Searches enumerate assignments in lexicographic order of their encoding
// (site 1 first, ratios ordered j = +1, -1, +2, -2, ..., values
// 1 < omega < omega^2) and report the smallest maximizing encoding, so
// results do not depend on the worker count.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qmermin/cyclotomic.hpp"
#include "qmermin/mermin.hpp"
#include "qmermin/qudit_ops.hpp"

namespace qmermin {

// Ratio slot r <-> rotation index j: 0 -> +1, 1 -> -1, 2 -> +2, 3 -> -2, ...
constexpr int rotation_of_ratio_slot(int r) { return r % 2 == 0 ? r / 2 + 1 : -(r / 2 + 1); }
constexpr int ratio_slot_of_rotation(int j) { return j > 0 ? 2 * (j - 1) : 2 * (-j - 1) + 1; }

// Per-site values v(W_j) = omega^{values[i][letter]}, letter = j mod d.
struct FullAssignment {
  int d = 3;
  std::vector<std::vector<int>> values;

  int sites() const { return static_cast<int>(values.size()); }
  static FullAssignment uniform(int d, int n) {
    return {d, std::vector<std::vector<int>>(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(d), 0))};
  }
};

// Per-site ratios v(W_j) / v(W_0) = omega^{ratios[i][slot]}. For d = 3,
// slot 0 is R = v(Y)/v(X) and slot 1 is S = v(V)/v(X).
struct RatioAssignment {
  int d = 3;
  std::vector<std::vector<int>> ratios;

  int sites() const { return static_cast<int>(ratios.size()); }
  int ratio(int site, int j) const {
    return j == 0 ? 0 : ratios[static_cast<std::size_t>(site)][static_cast<std::size_t>(ratio_slot_of_rotation(j))];
  }
  static RatioAssignment uniform(int d, int n) {
    return {d, std::vector<std::vector<int>>(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(d - 1), 0))};
  }
  friend bool operator==(const RatioAssignment&, const RatioAssignment&) = default;
};

inline RatioAssignment reduce_to_ratios(const FullAssignment& a) {
  const int d = a.d;
  RatioAssignment r{d, {}};
  for (const auto& site : a.values) {
    std::vector<int> slots(static_cast<std::size_t>(d - 1));
    for (int s = 0; s < d - 1; ++s) {
      const int letter = letter_of_rotation(rotation_of_ratio_slot(s), d);
      slots[static_cast<std::size_t>(s)] = mod_floor(site[static_cast<std::size_t>(letter)] - site[0], d);
    }
    r.ratios.push_back(std::move(slots));
  }
  return r;
}

// Sum over terms of weight * prod_i v(letter_i at site i).
inline CycInt hv_value_direct(const FullAssignment& a, const MerminOperator& op) {
  if (a.d != op.d || a.sites() != op.sites) {
    throw DimensionMismatchError("assignment does not match Mermin operator shape");
  }
  const int d = op.d;
  const int m = op.order();
  std::vector<std::int64_t> histogram(static_cast<std::size_t>(m), 0);
  for (const auto& term : op.terms) {
    std::int64_t e = term.weight_phase.exponent;
    for (int i = 0; i < op.sites; ++i) {
      e += static_cast<std::int64_t>(d) *
           a.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(letter_of_rotation(term.word.rotations[static_cast<std::size_t>(i)], d))];
    }
    ++histogram[static_cast<std::size_t>(mod_floor(e, m))];
  }
  CycInt v(m);
  for (int e = 0; e < m; ++e) {
    if (histogram[static_cast<std::size_t>(e)] != 0) v += root_of_unity(e, m) * histogram[static_cast<std::size_t>(e)];
  }
  return v;
}

// F_t for t = 0..d-1 at one site with the given ratio exponents (slot order).
inline std::vector<CycInt> site_factors(int d, const std::vector<int>& ratio_exps) {
  require_supported_dim(d);
  if (static_cast<int>(ratio_exps.size()) != d - 1) {
    throw DimensionMismatchError("expected d - 1 ratios per site");
  }
  const int m = d * d;
  std::vector<CycInt> f;
  f.reserve(static_cast<std::size_t>(d));
  for (int t = 0; t < d; ++t) {
    CycInt sum = CycInt::from_integer(1, m);
    for (int s = 0; s < d - 1; ++s) {
      const int j = rotation_of_ratio_slot(s);
      const auto p = mixing_phase(d, t, j);
      sum += root_of_unity(static_cast<std::int64_t>(p.exponent) + static_cast<std::int64_t>(d) * ratio_exps[static_cast<std::size_t>(s)], m);
    }
    f.push_back(sum);
  }
  return f;
}

// v = (1/d) sum_t prod_i F_t(R_i, S_i, ...), exact.
inline CycInt hv_value_product_exact(const RatioAssignment& a) {
  const int d = a.d;
  const int m = d * d;
  std::vector<CycInt> prods(static_cast<std::size_t>(d), CycInt::from_integer(1, m));
  for (const auto& site : a.ratios) {
    const auto f = site_factors(d, site);
    for (int t = 0; t < d; ++t) prods[static_cast<std::size_t>(t)] = prods[static_cast<std::size_t>(t)] * f[static_cast<std::size_t>(t)];
  }
  CycInt sum(m);
  for (const auto& p : prods) sum += p;
  return sum.divide_exact(d);
}

inline double hv_value_product(const RatioAssignment& a) { return hv_value_product_exact(a).magnitude(); }

// Qutrit convenience: R_i, S_i as omega exponents.
inline double hv_value_product(const std::vector<int>& r, const std::vector<int>& s) {
  if (r.size() != s.size()) throw DimensionMismatchError("R and S differ in length");
  RatioAssignment a{3, {}};
  for (std::size_t i = 0; i < r.size(); ++i) a.ratios.push_back({mod_floor(r[i], 3), mod_floor(s[i], 3)});
  return hv_value_product(a);
}

// ---------------------------------------------------------------------------
// Qutrit factor table

struct FactorTriple {
  CycInt a;  // F_2
  CycInt b;  // F_0
  CycInt c;  // F_1
};

inline FactorTriple qutrit_factors(int r_exp, int s_exp) {
  const auto f = site_factors(3, {mod_floor(r_exp, 3), mod_floor(s_exp, 3)});
  return {f[2], f[0], f[1]};
}

// The uniform-point magnitudes A, B, C as exact squared norms.
struct QutritConstants {
  CycInt a, b, c;  // A, B, -C (real elements)
  CycInt a2, b2, c2;

  static const QutritConstants& get() {
    static const QutritConstants k = [] {
      const auto u = qutrit_factors(0, 0);
      return QutritConstants{u.a, u.b, -u.c, u.a.norm_squared(), u.b.norm_squared(), u.c.norm_squared()};
    }();
    return k;
  }
};

// 'A', 'B', 'C' if |z| equals one of the constants exactly, '?' otherwise.
inline char magnitude_label(const CycInt& z) {
  const auto& k = QutritConstants::get();
  const CycInt n = z.norm_squared();
  if (n == k.a2) return 'A';
  if (n == k.b2) return 'B';
  if (n == k.c2) return 'C';
  return '?';
}

struct FactorEntry {
  char label = '?';
  double magnitude = 0.0;
  double phase_deg = 0.0;  // in (-180, 180]

  // "A", "-C", "B(80)", "C(-20)".
  std::string to_string() const {
    const double rounded = std::round(phase_deg * 1e6) / 1e6;
    if (rounded == 0.0) return std::string(1, label);
    if (rounded == 180.0) return std::string("-") + label;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c(%g)", label, rounded);
    return buf;
  }
};

inline FactorEntry describe_factor(const CycInt& z) {
  const auto c = z.to_complex();
  double deg = std::atan2(c.imag(), c.real()) * 180.0 / std::numbers::pi;
  if (deg <= -180.0 + 1e-9) deg += 360.0;
  return {magnitude_label(z), std::abs(c), deg};
}

struct FactorRow {
  int r_exp = 0;
  int s_exp = 0;
  FactorTriple exact;
  std::array<FactorEntry, 3> entries;  // A-factor, B-factor, C-factor
};

// Rows in the conventional order: (1,1), (w,1), (1,w^2), (w,w^2), (w^2,w),
// (w^2,1), (1,w), (w,w), (w^2,w^2).
inline std::vector<FactorRow> factor_table() {
  static constexpr std::array<std::array<int, 2>, 9> kRows{
      {{0, 0}, {1, 0}, {0, 2}, {1, 2}, {2, 1}, {2, 0}, {0, 1}, {1, 1}, {2, 2}}};
  std::vector<FactorRow> rows;
  for (const auto& [r, s] : kRows) {
    FactorTriple t = qutrit_factors(r, s);
    rows.push_back({r, s, t, {describe_factor(t.a), describe_factor(t.b), describe_factor(t.c)}});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Uniform point

// p_N = A^N + B^N + (-C)^N via Newton's identities on x^3 - 3x^2 + 3.
inline std::int64_t power_sum(int n) {
  if (n < 0) throw std::invalid_argument("power_sum: N must be >= 0");
  std::array<std::int64_t, 3> p{3, 3, 9};
  if (n < 3) return p[static_cast<std::size_t>(n)];
  for (int k = 3; k <= n; ++k) {
    const std::int64_t next = detail::checked_sub(detail::checked_mul(3, p[2]), detail::checked_mul(3, p[0]));
    p = {p[1], p[2], next};
  }
  return p[2];
}

// |v(M_0)| at R_i = S_i = 1, exactly (d = 3).
inline std::int64_t uniform_value(int n) {
  require_sites(n);
  const std::int64_t p = power_sum(n);
  if (p % 3 != 0) throw Error("power sum not divisible by 3");
  return p / 3;
}

// (1/d) sum_t F_t^N at the uniform point, exact, any supported d.
inline CycInt uniform_value_exact(int d, int n) {
  require_supported_dim(d);
  require_sites(n);
  return hv_value_product_exact(RatioAssignment::uniform(d, n));
}

inline std::int64_t quantum_value(int d, int n) { return checked_pow(d, n - 1); }

inline double violation_ratio(int n) {
  return static_cast<double>(quantum_value(3, n)) / static_cast<double>(uniform_value(n));
}

// Number of words at positions 3 and 6; equals (2/3)(M_Q - M_C).
inline std::int64_t ghz_contradiction_count(int n) {
  const auto pc = counts_by_position(3, n);
  const auto count = static_cast<std::int64_t>(pc.at(3) + pc.at(6));
  const std::int64_t gap = quantum_value(3, n) - uniform_value(n);
  if (2 * gap != 3 * count) {
    throw Error("GHZ contradiction count disagrees with (2/3)(M_Q - M_C) at N=" + std::to_string(n));
  }
  return count;
}

struct ContradictionWitness {
  SettingWord word;
  int position = 0;
  CycInt quantum_value;  // eigenvalue of the word on GHZ state 0
  CycInt hv_value;       // uniform hidden-variable prediction
  bool contradiction = false;
};

inline ContradictionWitness contradiction_witness(const SettingWord& word) {
  if (word.d != 3) throw std::invalid_argument("contradiction witnesses are defined for qutrits");
  const int k = word.position();
  if (k != 3 && k != 6) {
    throw std::invalid_argument("word " + word.to_string() + " is at position " + std::to_string(k) +
                                ", not 3 or 6");
  }
  const StateVector psi0 = ghz_state(0, 3, word.size());
  auto lambda = proportionality_factor(apply(word, psi0), psi0);
  if (!lambda) throw NotEigenstateError("word " + word.to_string() + " does not stabilize GHZ state 0");

  MerminOperator single{3, word.size(), 0, {{word, k, PhaseExponent{9, 0}, CycInt::from_integer(1, 9)}}};
  const CycInt hv = hv_value_direct(FullAssignment::uniform(3, word.size()), single);
  return {word, k, *lambda, hv, !(*lambda == hv)};
}

// All contradiction witnesses for N qutrits, in word order.
inline std::vector<ContradictionWitness> contradiction_witnesses(int n) {
  require_sites(n);
  const auto total = static_cast<std::uint64_t>(checked_pow(3, n));
  if (total > 3'000'000) throw SearchCapExceededError("witness listing capped at 3^N <= 3e6");
  std::vector<ContradictionWitness> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    SettingWord w = word_from_index(idx, 3, n);
    const int k = w.position();
    if (k == 3 || k == 6) out.push_back(contradiction_witness(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive search

enum class SearchMode { ratio, full };

inline const char* to_string(SearchMode m) { return m == SearchMode::ratio ? "ratio" : "full"; }

struct SearchOptions {
  int workers = 1;
  // Caps on the number of scanned assignments.
  std::uint64_t ratio_cap = 1'000'000'000;
  std::uint64_t full_cap = 100'000'000;
};

// How often each uniform-point magnitude occurs among the sites of one
// product term. Labels are 'A','B','C' for d = 3; slot d counts sites whose
// factor magnitude is not one of the uniform magnitudes.
struct FactorProfile {
  int mixing_index = 0;
  std::vector<std::uint64_t> counts;
};

struct SearchResult {
  int d = 3;
  int sites = 0;
  SearchMode mode = SearchMode::ratio;
  double max_magnitude = 0.0;
  CycInt max_norm_squared;
  RatioAssignment argmax;
  std::optional<FullAssignment> argmax_full;
  std::uint64_t num_maximizers = 0;
  std::uint64_t assignments_scanned = 0;
  bool uniform_is_maximizer = false;
  std::vector<FactorProfile> argmax_profile;
  // Full mode only: assignments whose direct value was checked against the
  // ratio reduction, and how many disagreed.
  std::uint64_t reduction_checked = 0;
  std::uint64_t reduction_mismatches = 0;
};

namespace detail {

struct Best {
  bool valid = false;
  CycInt norm;
  double norm_f = 0.0;
  std::uint64_t index = 0;
  std::uint64_t count = 0;
  std::uint64_t scanned = 0;
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
};

// Sign of (a - b) for real elements, exact at ties.
inline int compare_norms(const CycInt& a, double af, const CycInt& b, double bf) {
  const double tol = 1e-9 * std::max(1.0, std::max(std::abs(af), std::abs(bf)));
  if (af - bf > tol) return 1;
  if (bf - af > tol) return -1;
  const CycInt diff = a - b;
  if (diff.is_zero()) return 0;
  const double df = diff.to_complex().real();
  return df > 0 ? 1 : (df < 0 ? -1 : 0);
}

inline void offer(Best& best, const CycInt& norm, double norm_f, std::uint64_t index) {
  if (!best.valid) {
    best.valid = true;
    best.norm = norm;
    best.norm_f = norm_f;
    best.index = index;
    best.count = 1;
    return;
  }
  // Cheap rejection before the exact comparison.
  if (norm_f < best.norm_f - 1e-6 * std::max(1.0, best.norm_f)) return;
  const int c = compare_norms(norm, norm_f, best.norm, best.norm_f);
  if (c > 0) {
    best.norm = norm;
    best.norm_f = norm_f;
    best.index = index;
    best.count = 1;
  } else if (c == 0) {
    ++best.count;
    best.index = std::min(best.index, index);
  }
}

// Merges b (covering later indices) into a.
inline void merge(Best& a, const Best& b) {
  a.scanned += b.scanned;
  a.checked += b.checked;
  a.mismatches += b.mismatches;
  if (!b.valid) return;
  if (!a.valid) {
    const auto scanned = a.scanned, checked = a.checked, mismatches = a.mismatches;
    a = b;
    a.scanned = scanned;
    a.checked = checked;
    a.mismatches = mismatches;
    return;
  }
  const int c = compare_norms(b.norm, b.norm_f, a.norm, a.norm_f);
  if (c > 0) {
    a.valid = true;
    a.norm = b.norm;
    a.norm_f = b.norm_f;
    a.index = b.index;
    a.count = b.count;
  } else if (c == 0) {
    a.count += b.count;
    a.index = std::min(a.index, b.index);
  }
}

// Runs fn(block) for every block on `workers` threads and merges the per-block
// results in block order.
template <class BlockFn>
Best scan_blocks(std::uint64_t blocks, int workers, BlockFn fn) {
  std::vector<Best> results(blocks);
  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(workers, 1)));
  auto run = [&](std::size_t slot) {
    try {
      for (;;) {
        const std::uint64_t b = next.fetch_add(1);
        if (b >= blocks) break;
        results[b] = fn(b);
      }
    } catch (...) {
      errors[slot] = std::current_exception();
      next.store(blocks);
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, static_cast<std::size_t>(w));
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Best total;
  for (const auto& r : results) merge(total, r);
  return total;
}

inline std::uint64_t checked_upow(std::uint64_t base, int exp, std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / base) {
      throw SearchCapExceededError(std::string(what) + ": search space exceeds cap of " + std::to_string(cap));
    }
    r *= base;
  }
  return r;
}

inline int split_depth(std::uint64_t choices, int n) {
  int p = 0;
  std::uint64_t blocks = 1;
  while (p < n && blocks < 256) {
    blocks *= choices;
    ++p;
  }
  return p;
}

inline std::vector<int> digits_of(std::uint64_t index, std::uint64_t base, int count) {
  std::vector<int> digits(static_cast<std::size_t>(count));
  for (int i = count - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(index % base);
    index /= base;
  }
  return digits;
}

// Per-site ratio choice c in [0, d^{d-1}), slot 0 most significant.
inline std::vector<int> ratio_choice_exponents(std::uint64_t choice, int d) {
  return digits_of(choice, static_cast<std::uint64_t>(d), d - 1);
}

inline RatioAssignment ratio_assignment_from_index(std::uint64_t index, int d, int n) {
  const auto choices = static_cast<std::uint64_t>(checked_pow(d, d - 1));
  RatioAssignment a{d, {}};
  for (int c : digits_of(index, choices, n)) a.ratios.push_back(ratio_choice_exponents(static_cast<std::uint64_t>(c), d));
  return a;
}

inline FullAssignment full_assignment_from_index(std::uint64_t index, int d, int n) {
  const auto choices = static_cast<std::uint64_t>(checked_pow(d, d));
  FullAssignment a{d, {}};
  for (int c : digits_of(index, choices, n)) a.values.push_back(digits_of(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(d), d));
  return a;
}

// Depth-first scan of ratio space below a fixed prefix with running products.
class RatioScanner {
 public:
  RatioScanner(int d, int n) : d_(d), n_(n), m_(d * d) {
    choices_ = static_cast<std::uint64_t>(checked_pow(d, d - 1));
    for (std::uint64_t c = 0; c < choices_; ++c) factors_.push_back(site_factors(d, ratio_choice_exponents(c, d)));
  }

  std::uint64_t choices() const { return choices_; }

  Best scan_block(std::uint64_t block, int prefix_sites) const {
    std::vector<std::vector<CycInt>> stack(static_cast<std::size_t>(n_ + 1),
                                           std::vector<CycInt>(static_cast<std::size_t>(d_), CycInt::from_integer(1, m_)));
    const auto prefix = digits_of(block, choices_, prefix_sites);
    for (int i = 0; i < prefix_sites; ++i) push(stack, i, static_cast<std::uint64_t>(prefix[static_cast<std::size_t>(i)]));
    std::uint64_t leaf_span = 1;
    for (int i = prefix_sites; i < n_; ++i) leaf_span *= choices_;
    Best best;
    std::uint64_t index = block * leaf_span;
    descend(stack, prefix_sites, index, best);
    return best;
  }

  // Exact |v|^2 at the leaf whose running products are `prods`.
  CycInt leaf_norm(const std::vector<CycInt>& prods) const {
    CycInt sum(m_);
    for (const auto& p : prods) sum += p;
    return sum.divide_exact(d_).norm_squared();
  }

 private:
  void push(std::vector<std::vector<CycInt>>& stack, int depth, std::uint64_t choice) const {
    const auto& f = factors_[choice];
    for (int t = 0; t < d_; ++t) {
      stack[static_cast<std::size_t>(depth + 1)][static_cast<std::size_t>(t)] =
          stack[static_cast<std::size_t>(depth)][static_cast<std::size_t>(t)] * f[static_cast<std::size_t>(t)];
    }
  }

  void descend(std::vector<std::vector<CycInt>>& stack, int depth, std::uint64_t& index, Best& best) const {
    if (depth == n_) {
      const CycInt norm = leaf_norm(stack[static_cast<std::size_t>(n_)]);
      offer(best, norm, norm.to_complex().real(), index);
      ++best.scanned;
      ++index;
      return;
    }
    for (std::uint64_t c = 0; c < choices_; ++c) {
      push(stack, depth, c);
      descend(stack, depth + 1, index, best);
    }
  }

  int d_, n_, m_;
  std::uint64_t choices_;
  std::vector<std::vector<CycInt>> factors_;
};

inline std::vector<FactorProfile> factor_profile(const RatioAssignment& a) {
  const int d = a.d;
  std::vector<CycInt> uniform_norms;
  for (const auto& f : site_factors(d, std::vector<int>(static_cast<std::size_t>(d - 1), 0))) uniform_norms.push_back(f.norm_squared());
  // Order magnitudes descending so slot 0 is the largest (A for d = 3).
  std::vector<std::size_t> order(uniform_norms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return uniform_norms[x].to_complex().real() > uniform_norms[y].to_complex().real();
  });

  std::vector<FactorProfile> out;
  for (int t = 0; t < d; ++t) out.push_back({t, std::vector<std::uint64_t>(static_cast<std::size_t>(d + 1), 0)});
  for (const auto& site : a.ratios) {
    const auto f = site_factors(d, site);
    for (int t = 0; t < d; ++t) {
      const CycInt n = f[static_cast<std::size_t>(t)].norm_squared();
      std::size_t slot = static_cast<std::size_t>(d);
      for (std::size_t r = 0; r < order.size(); ++r) {
        if (n == uniform_norms[order[r]]) {
          slot = r;
          break;
        }
      }
      ++out[static_cast<std::size_t>(t)].counts[slot];
    }
  }
  return out;
}

}  // namespace detail

// Exhaustive maximum of |v(M_0)| over ratio space, any supported d.
inline SearchResult ratio_space_search(int d, int n, const SearchOptions& opts = {}) {
  require_supported_dim(d);
  require_sites(n);
  const auto choices = static_cast<std::uint64_t>(checked_pow(d, d - 1));
  const std::uint64_t total = detail::checked_upow(choices, n, opts.ratio_cap, "ratio mode");

  const detail::RatioScanner scanner(d, n);
  const int p = detail::split_depth(choices, n);
  const std::uint64_t blocks = detail::checked_upow(choices, p, total, "ratio mode");
  const detail::Best best = detail::scan_blocks(blocks, opts.workers, [&](std::uint64_t b) { return scanner.scan_block(b, p); });

  SearchResult r;
  r.d = d;
  r.sites = n;
  r.mode = SearchMode::ratio;
  r.max_norm_squared = best.norm;
  r.max_magnitude = std::sqrt(best.norm_f);
  r.argmax = detail::ratio_assignment_from_index(best.index, d, n);
  r.num_maximizers = best.count;
  r.assignments_scanned = best.scanned;
  const CycInt uniform_norm = uniform_value_exact(d, n).norm_squared();
  r.uniform_is_maximizer = detail::compare_norms(uniform_norm, uniform_norm.to_complex().real(), best.norm, best.norm_f) == 0;
  r.argmax_profile = detail::factor_profile(r.argmax);
  if (r.assignments_scanned != total) throw Error("ratio search scanned an unexpected number of assignments");
  return r;
}

// Full-space scan: every value of every local observable. Each assignment's
// direct term-sum value is checked exactly against omega^{sum_i e_i(X)} times
// the product-form value of its ratio reduction.
inline SearchResult full_space_search(int d, int n, const SearchOptions& opts = {}) {
  require_supported_dim(d);
  require_sites(n);
  const auto choices = static_cast<std::uint64_t>(checked_pow(d, d));
  const std::uint64_t total = detail::checked_upow(choices, n, opts.full_cap, "full mode");
  const MerminOperator op = build_mermin(d, n, 0);

  const int p = detail::split_depth(choices, n);
  const std::uint64_t blocks = detail::checked_upow(choices, p, total, "full mode");
  std::uint64_t span = 1;
  for (int i = p; i < n; ++i) span *= choices;

  const detail::Best best = detail::scan_blocks(blocks, opts.workers, [&](std::uint64_t b) {
    detail::Best local;
    for (std::uint64_t idx = b * span; idx < (b + 1) * span; ++idx) {
      const FullAssignment a = detail::full_assignment_from_index(idx, d, n);
      const CycInt direct = hv_value_direct(a, op);
      const CycInt reduced = hv_value_product_exact(reduce_to_ratios(a));
      std::int64_t x_phase = 0;
      for (const auto& site : a.values) x_phase += site[0];
      ++local.checked;
      const bool exact_ok = direct == reduced.times_root(static_cast<std::int64_t>(d) * x_phase);
      const bool magnitude_ok = std::abs(direct.magnitude() - reduced.magnitude()) <= 1e-9;
      if (!exact_ok || !magnitude_ok) ++local.mismatches;
      const CycInt norm = direct.norm_squared();
      detail::offer(local, norm, norm.to_complex().real(), idx);
      ++local.scanned;
    }
    return local;
  });

  SearchResult r;
  r.d = d;
  r.sites = n;
  r.mode = SearchMode::full;
  r.max_norm_squared = best.norm;
  r.max_magnitude = std::sqrt(best.norm_f);
  r.argmax_full = detail::full_assignment_from_index(best.index, d, n);
  r.argmax = reduce_to_ratios(*r.argmax_full);
  r.num_maximizers = best.count;
  r.assignments_scanned = best.scanned;
  r.reduction_checked = best.checked;
  r.reduction_mismatches = best.mismatches;
  const CycInt uniform_norm = hv_value_direct(FullAssignment::uniform(d, n), op).norm_squared();
  r.uniform_is_maximizer = detail::compare_norms(uniform_norm, uniform_norm.to_complex().real(), best.norm, best.norm_f) == 0;
  r.argmax_profile = detail::factor_profile(r.argmax);
  return r;
}

// Qutrit search in the requested mode. Ratio mode: 9^N <= cap (N <= 9);
// full mode: 27^N <= cap (N <= 5).
inline SearchResult exhaustive_search(int n, SearchMode mode, const SearchOptions& opts = {}) {
  return mode == SearchMode::ratio ? ratio_space_search(3, n, opts) : full_space_search(3, n, opts);
}

// ---------------------------------------------------------------------------
// Pure-permutation assignments

struct PermutationClassReport {
  int sites = 0;
  // Largest |v| attained with the permutation rows (w, w^2) / (w^2, w) on a
  // proper nonempty subset of sites.
  double max_magnitude = 0.0;
  CycInt max_norm_squared;
  RatioAssignment argmax;
  // Largest (1/3)(|prod A| + |prod B| + |prod C|) over the same class: the
  // triangle-inequality bound on every value in the class.
  double max_bound = 0.0;
  RatioAssignment bound_argmax;
  // All sites permuted identically.
  double full_permutation_value = 0.0;
  std::uint64_t assignments = 0;
};

inline PermutationClassReport permutation_class_max(int n = 3) {
  if (n < 2 || n > 12) throw std::invalid_argument("permutation_class_max: N must lie in [2, 12]");
  static constexpr std::array<std::array<int, 2>, 3> kChoices{{{0, 0}, {1, 2}, {2, 1}}};
  const auto total = static_cast<std::uint64_t>(checked_pow(3, n));
  PermutationClassReport rep;
  rep.sites = n;
  detail::Best best;
  double best_bound = -1.0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const auto digits = detail::digits_of(idx, 3, n);
    const auto permuted = std::count_if(digits.begin(), digits.end(), [](int c) { return c != 0; });
    if (permuted == 0 || permuted == n) continue;
    RatioAssignment a{3, {}};
    for (int c : digits) a.ratios.push_back({kChoices[static_cast<std::size_t>(c)][0], kChoices[static_cast<std::size_t>(c)][1]});

    const CycInt v = hv_value_product_exact(a);
    const CycInt norm = v.norm_squared();
    detail::offer(best, norm, norm.to_complex().real(), idx);

    std::array<CycInt, 3> prods{CycInt::from_integer(1, 9), CycInt::from_integer(1, 9), CycInt::from_integer(1, 9)};
    for (const auto& site : a.ratios) {
      const auto f = site_factors(3, site);
      for (std::size_t t = 0; t < 3; ++t) prods[t] = prods[t] * f[t];
    }
    const double bound = (prods[0].magnitude() + prods[1].magnitude() + prods[2].magnitude()) / 3.0;
    if (bound > best_bound + 1e-12) {
      best_bound = bound;
      rep.bound_argmax = a;
    }
    ++rep.assignments;
  }
  rep.max_norm_squared = best.norm;
  rep.max_magnitude = std::sqrt(best.norm_f);
  {
    const auto digits = detail::digits_of(best.index, 3, n);
    rep.argmax = {3, {}};
    for (int c : digits) rep.argmax.ratios.push_back({kChoices[static_cast<std::size_t>(c)][0], kChoices[static_cast<std::size_t>(c)][1]});
  }
  rep.max_bound = best_bound;
  RatioAssignment all{3, std::vector<std::vector<int>>(static_cast<std::size_t>(n), std::vector<int>{1, 2})};
  rep.full_permutation_value = hv_value_product(all);
  return rep;
}

}  // namespace qmermin
