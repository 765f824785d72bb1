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

// Odd local dimension d with s = d settings W_j, j in [-(d-1)/2, (d-1)/2].
// The construction mirrors the qutrit case: Mermin terms are the words at
// positions k = 0 mod d with weights omega^{-k/d}, and the product form mixes
// sites with the discrete Fourier coefficients omega^{t j} alpha^{(d-1) j}.
// For d > 3 this is an extrapolation of the qutrit construction.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qmermin/hidden_variables.hpp"
#include "qmermin/mermin.hpp"

namespace qmermin {

struct GeneralConfig {
  int d = 3;
  int settings = 3;
  int sites = 1;

  static GeneralConfig make(int d, int n) { return {d, d, n}; }

  void validate() const {
    require_supported_dim(d);
    require_sites(sites);
    if (settings != d) throw std::invalid_argument("the construction requires s = d settings");
  }
};

inline MerminOperator build_general_mermin(const GeneralConfig& cfg) {
  cfg.validate();
  if (checked_pow(cfg.d, cfg.sites - 1) > 10'000'000) {
    throw SearchCapExceededError("build_general_mermin: d^(N-1) exceeds 1e7 terms");
  }
  return build_mermin(cfg.d, cfg.sites, 0);
}

inline CycInt verify_general_eigenvalue(const GeneralConfig& cfg) {
  cfg.validate();
  if (checked_pow(cfg.d, cfg.sites) > 1'000'000) {
    throw SearchCapExceededError("verify_general_eigenvalue: d^N exceeds 1e6");
  }
  return verify_eigenvalue(build_mermin(cfg.d, cfg.sites, 0));
}

struct UniformFactor {
  int mixing_index = 0;  // t in F_t
  double value = 0.0;    // F_t is real at the uniform point
  double magnitude = 0.0;
  CycInt exact;
};

// The d per-site factors at the uniform point, sorted by magnitude
// (largest first). For d = 3 these are A, B, -C.
inline std::vector<UniformFactor> uniform_factors(int d) {
  require_supported_dim(d);
  const auto f = site_factors(d, std::vector<int>(static_cast<std::size_t>(d - 1), 0));
  std::vector<UniformFactor> out;
  for (int t = 0; t < d; ++t) {
    const auto z = f[static_cast<std::size_t>(t)].to_complex();
    out.push_back({t, z.real(), std::abs(z), f[static_cast<std::size_t>(t)]});
  }
  std::stable_sort(out.begin(), out.end(), [](const UniformFactor& a, const UniformFactor& b) { return a.magnitude > b.magnitude; });
  return out;
}

struct ConjectureReport {
  int d = 5;
  int sites = 2;
  double uniform_value = 0.0;
  CycInt uniform_exact;
  SearchResult search;
  bool uniform_optimal = false;
  double gap = 0.0;  // max - uniform value, >= 0
};

// Exhaustive ratio-space maximum compared with the uniform point. Records
// whether the uniform assignment is optimal without presupposing it.
inline ConjectureReport conjecture_search(int d, int n, const SearchOptions& opts = {}) {
  require_supported_dim(d);
  require_sites(n);
  SearchOptions capped = opts;
  capped.ratio_cap = std::min<std::uint64_t>(opts.ratio_cap, 100'000'000);
  ConjectureReport rep;
  rep.d = d;
  rep.sites = n;
  rep.uniform_exact = uniform_value_exact(d, n);
  rep.uniform_value = rep.uniform_exact.magnitude();
  rep.search = ratio_space_search(d, n, capped);
  rep.uniform_optimal = rep.search.uniform_is_maximizer;
  rep.gap = rep.uniform_optimal ? 0.0 : rep.search.max_magnitude - rep.uniform_value;
  return rep;
}

}  // namespace qmermin
