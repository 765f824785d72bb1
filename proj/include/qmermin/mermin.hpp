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

// The Mermin operator for GHZ state c: every word whose circle position k is
// congruent to c mod d, weighted by omega^{-(k-c)/d} so that each term has
// eigenvalue +1 on that state.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmermin/cyclotomic.hpp"
#include "qmermin/qudit_ops.hpp"

namespace qmermin {

struct MerminTerm {
  SettingWord word;
  int position = 0;
  PhaseExponent weight_phase;
  CycInt weight;
};

struct MerminOperator {
  int d = 3;
  int sites = 0;
  int variant = 0;
  std::vector<MerminTerm> terms;

  int order() const { return d * d; }
};

inline void require_sites(int n) {
  if (n < 1) throw std::invalid_argument("particle count N must be >= 1");
}

// Enumerates all d^N words (site 1 most significant, letters in rotation
// order 0, +1, ..., -1) and keeps those at positions c, c + d, c + 2d, ...
inline MerminOperator build_mermin(int d, int n, int variant) {
  require_supported_dim(d);
  require_sites(n);
  if (variant < 0 || variant >= d) {
    throw std::invalid_argument("variant c must lie in [0, d)");
  }
  const std::uint64_t total = static_cast<std::uint64_t>(checked_pow(d, n));
  const int m = d * d;
  MerminOperator op{d, n, variant, {}};
  op.terms.reserve(static_cast<std::size_t>(total / static_cast<std::uint64_t>(d)));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    SettingWord w = word_from_index(idx, d, n);
    const int k = w.position();
    if (mod_floor(k - variant, d) != 0) continue;
    // omega^{-(k-c)/d} = alpha^{-(k-c)}
    PhaseExponent phase{m, -static_cast<std::int64_t>(k - variant)};
    op.terms.push_back({std::move(w), k, phase, CycInt::root_of_unity(phase)});
  }
  return op;
}

// Exact eigenvalue of the operator on GHZ state c (its variant). Throws
// NotEigenstateError when the result is not proportional to the state.
inline CycInt verify_eigenvalue(const MerminOperator& op) {
  const StateVector target = ghz_state(op.variant, op.d, op.sites);
  StateVector sum(op.d, op.sites);
  for (const auto& term : op.terms) {
    StateVector image = apply(term.word, target);
    for (const auto& [label, amp] : image.amplitudes()) {
      sum.add(label, amp.times_root(term.weight_phase.exponent));
    }
  }
  auto lambda = proportionality_factor(sum, target);
  if (!lambda) {
    throw NotEigenstateError("Mermin operator image is not proportional to GHZ state " +
                             std::to_string(op.variant));
  }
  return *lambda;
}

struct PositionCounts {
  int d = 3;
  std::vector<std::uint64_t> counts;  // indexed by circle position k in [0, d^2)

  std::uint64_t at(int k) const { return counts[static_cast<std::size_t>(mod_floor(k, d * d))]; }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
};

namespace detail {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    unsigned __int128 t = static_cast<unsigned __int128>(r) * static_cast<unsigned>(n - k + i);
    r = static_cast<std::uint64_t>(t / static_cast<unsigned>(i));
  }
  return r;
}

inline void visit_compositions(int d, int remaining, int letter, std::vector<int>& parts,
                               const std::function<void(const std::vector<int>&)>& fn) {
  if (letter == d - 1) {
    parts[static_cast<std::size_t>(letter)] = remaining;
    fn(parts);
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    parts[static_cast<std::size_t>(letter)] = c;
    visit_compositions(d, remaining - c, letter + 1, parts, fn);
  }
}

}  // namespace detail

// counts[k] = sum over letter multiplicities (n_j), sum n_j = N and
// sum j n_j = k mod d^2, of the multinomial N! / prod n_j!.
inline PositionCounts counts_by_position(int d, int n) {
  require_supported_dim(d);
  require_sites(n);
  checked_pow(d, n);
  PositionCounts pc{d, std::vector<std::uint64_t>(static_cast<std::size_t>(d * d), 0)};
  std::vector<int> parts(static_cast<std::size_t>(d), 0);
  detail::visit_compositions(d, n, 0, parts, [&](const std::vector<int>& p) {
    std::uint64_t multinomial = 1;
    int left = n;
    std::int64_t k = 0;
    for (int letter = 0; letter < d; ++letter) {
      const int c = p[static_cast<std::size_t>(letter)];
      multinomial *= detail::binomial(left, c);
      left -= c;
      k += static_cast<std::int64_t>(rotation_of_letter(letter, d)) * c;
    }
    pc.counts[static_cast<std::size_t>(mod_floor(k, d * d))] += multinomial;
  });
  return pc;
}

struct IdentityTerm {
  SettingWord word;
  CycInt coefficient;  // coefficient of the word in d * M_0 from the product form
  bool survives = false;
  bool matches = false;
};

struct IdentityReport {
  int d = 3;
  int sites = 0;
  std::uint64_t words = 0;
  std::uint64_t vanished = 0;
  std::uint64_t survived = 0;
  std::uint64_t mismatches = 0;
  std::vector<IdentityTerm> terms;

  bool ok() const { return mismatches == 0; }
};

// Coefficient of W_j in the t-th per-site factor: omega^{t j} alpha^{(d-1) j}.
inline PhaseExponent mixing_phase(int d, int t, int j) {
  return {d * d, static_cast<std::int64_t>(d) * t * j + static_cast<std::int64_t>(d - 1) * j};
}

// Expands sum_t prod_i (sum_j omega^{t j} alpha^{(d-1) j} W_j) symbolically,
// i.e. d * M_0, and compares every word's coefficient against build_mermin.
inline IdentityReport expand_identity(int d, int n) {
  require_supported_dim(d);
  require_sites(n);
  const std::uint64_t total = static_cast<std::uint64_t>(checked_pow(d, n));
  if (total > 1'000'000) throw std::invalid_argument("expand_identity: d^N too large");
  const int m = d * d;

  const MerminOperator op = build_mermin(d, n, 0);
  std::vector<const MerminTerm*> by_index(total, nullptr);
  {
    std::uint64_t idx = 0;
    std::size_t t = 0;
    for (; idx < total && t < op.terms.size(); ++idx) {
      if (word_from_index(idx, d, n) == op.terms[t].word) by_index[idx] = &op.terms[t++];
    }
  }

  IdentityReport rep{d, n, total, 0, 0, 0, {}};
  rep.terms.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    SettingWord w = word_from_index(idx, d, n);
    CycInt coeff(m);
    for (int t = 0; t < d; ++t) {
      CycInt prod = CycInt::from_integer(1, m);
      for (int j : w.rotations) prod = prod * CycInt::root_of_unity(mixing_phase(d, t, j));
      coeff += prod;
    }
    IdentityTerm it{std::move(w), coeff, !coeff.is_zero(), false};
    if (it.survives) {
      ++rep.survived;
      it.matches = by_index[idx] != nullptr && coeff == by_index[idx]->weight * d;
    } else {
      ++rep.vanished;
      it.matches = by_index[idx] == nullptr;
    }
    if (!it.matches) ++rep.mismatches;
    rep.terms.push_back(std::move(it));
  }
  if (rep.survived != op.terms.size()) ++rep.mismatches;
  return rep;
}

}  // namespace qmermin
