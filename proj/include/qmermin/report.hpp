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

// Command implementations behind the qmermin CLI. Each command returns a
// RunReport whose payload (command, parameters, results, status) is a pure
// function of the parameters; wall time and worker count are kept apart so
// that payloads are byte-identical across runs and thread counts.

#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmermin/generalized_d.hpp"
#include "qmermin/hidden_variables.hpp"
#include "qmermin/mermin.hpp"
#include "qmermin/qudit_ops.hpp"

namespace qmermin {

inline constexpr const char* kVersion = "0.1.0";

using ordered_json = nlohmann::ordered_json;

// Locale-independent shortest form with at most `sig` significant digits.
inline std::string format_sig(double v, int sig = 6) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, sig);
  return std::string(buf, res.ptr);
}

// Ratio column: 3 significant digits, integers shown as "1.0".
inline std::string format_ratio(double v) {
  std::string s = format_sig(v, 3);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

struct RunReport {
  std::string command;
  ordered_json parameters = ordered_json::object();
  ordered_json results = ordered_json::object();
  std::vector<std::string> mismatches;

  // Tabular view for human and CSV output.
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> summary;

  double elapsed_ms = 0.0;
  int workers = 1;
  std::string version = kVersion;

  bool passed() const { return mismatches.empty(); }

  void check(bool ok, const std::string& what) {
    if (!ok) mismatches.push_back(what);
  }

  ordered_json to_json(bool include_run_info = false) const {
    ordered_json j;
    j["command"] = command;
    j["version"] = version;
    j["parameters"] = parameters;
    j["results"] = results;
    j["status"] = passed() ? "pass" : "mismatch";
    j["mismatches"] = mismatches;
    if (include_run_info) j["run"] = {{"workers", workers}, {"elapsed_ms", elapsed_ms}};
    return j;
  }

  std::string to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return os.str();
  }

  std::string to_human() const {
    std::ostringstream os;
    for (const auto& line : summary) os << line << '\n';
    if (!columns.empty()) {
      std::vector<std::size_t> width(columns.size());
      for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
      for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
      auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          os << (i ? "  " : "") << std::string(width[i] - cells[i].size(), ' ') << cells[i];
        }
        os << '\n';
      };
      emit(columns);
      for (const auto& row : rows) emit(row);
    }
    os << (passed() ? "PASS" : "MISMATCH") << '\n';
    return os.str();
  }
};

inline ordered_json to_json(const CycInt& z) {
  return {{"coefficients", z.coefficients()}, {"text", z.to_string()}, {"re", z.to_complex().real()}, {"im", z.to_complex().imag()}};
}

inline ordered_json to_json(const RatioAssignment& a) {
  ordered_json sites = ordered_json::array();
  for (const auto& s : a.ratios) sites.push_back(s);
  return sites;
}

namespace detail {

template <class Fn>
RunReport timed(Fn fn) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport r = fn();
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline void require_range(int v, int lo, int hi, const char* name) {
  if (v < lo || v > hi) {
    throw std::invalid_argument(std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Published reference rows for N = 3..7: M_Q, M_C, ratio, N_GHZ.
struct ReferenceRow {
  int n;
  std::int64_t mq, mc;
  double ratio;
  std::int64_t nghz;
};
inline constexpr std::array<ReferenceRow, 5> kTable1{{
    {3, 9, 6, 1.5, 2}, {4, 27, 15, 1.8, 8}, {5, 81, 36, 2.25, 30}, {6, 243, 90, 2.70, 102}, {7, 729, 225, 3.24, 336}}};

inline std::string ratio_label(int r, int s) {
  static const char* kNames[] = {"1", "w", "w^2"};
  return std::string(kNames[r]) + "," + kNames[s];
}

// Uniform-point value from the closed form (1/3)(A^N + B^N +- C^N) in doubles.
inline double uniform_value_float(int n) {
  const double a = 1 + 2 * std::cos(2 * std::numbers::pi / 9);
  const double b = 1 + 2 * std::cos(4 * std::numbers::pi / 9);
  const double c = -(1 + 2 * std::cos(8 * std::numbers::pi / 9));
  return (std::pow(a, n) + std::pow(b, n) + (n % 2 ? -1.0 : 1.0) * std::pow(c, n)) / 3.0;
}

}  // namespace detail

inline RunReport cmd_table1(int n_min, int n_max, bool with_search = false, const SearchOptions& opts = {}) {
  detail::require_range(n_min, 1, 12, "n-min");
  detail::require_range(n_max, n_min, 12, "n-max");
  return detail::timed([&] {
    RunReport r;
    r.command = "table1";
    r.parameters = {{"n_min", n_min}, {"n_max", n_max}, {"search", with_search}};
    r.columns = {"N", "M_Q", "M_C", "R", "N_GHZ"};
    if (with_search) r.columns.push_back("M_C_search");
    ordered_json rows = ordered_json::array();
    for (int n = n_min; n <= n_max; ++n) {
      const std::int64_t mq = quantum_value(3, n);
      const std::int64_t mc = uniform_value(n);
      const double ratio = violation_ratio(n);
      const std::int64_t nghz = ghz_contradiction_count(n);
      const auto pc = counts_by_position(3, n);
      r.check(static_cast<std::int64_t>(pc.at(0)) - static_cast<std::int64_t>(pc.at(3)) == mc,
              "N=" + std::to_string(n) + ": counts[0] - counts[3] != M_C");
      r.check(std::abs(detail::uniform_value_float(n) - static_cast<double>(mc)) < 1e-6,
              "N=" + std::to_string(n) + ": recurrence disagrees with closed form");
      for (const auto& ref : detail::kTable1) {
        if (ref.n != n) continue;
        r.check(ref.mq == mq && ref.mc == mc && ref.nghz == nghz && std::abs(ref.ratio - ratio) <= 0.005,
                "N=" + std::to_string(n) + ": differs from published table");
      }
      ordered_json row = {{"N", n}, {"M_Q", mq}, {"M_C", mc}, {"R", ratio}, {"R_printed", format_ratio(ratio)}, {"N_GHZ", nghz}};
      std::vector<std::string> cells = {std::to_string(n), std::to_string(mq), std::to_string(mc), format_ratio(ratio), std::to_string(nghz)};
      if (with_search) {
        if (n <= 7) {
          const auto s = exhaustive_search(n, SearchMode::ratio, opts);
          const bool ok = s.max_norm_squared == CycInt::from_integer(mc * mc, 9);
          r.check(ok, "N=" + std::to_string(n) + ": search maximum differs from M_C");
          row["M_C_search"] = s.max_magnitude;
          cells.push_back(format_sig(s.max_magnitude));
        } else {
          row["M_C_search"] = nullptr;
          cells.push_back("-");
        }
      }
      rows.push_back(row);
      r.rows.push_back(cells);
    }
    r.results["rows"] = rows;
    return r;
  });
}

// Published factor table: label and phase (degrees, 180 = negative real).
inline const std::array<std::array<std::pair<char, double>, 3>, 9>& reference_factor_table() {
  static const std::array<std::array<std::pair<char, double>, 3>, 9> kRef{{
      {{{'A', 0}, {'B', 0}, {'C', 180}}},
      {{{'A', 40}, {'B', -80}, {'C', -20}}},
      {{{'A', -40}, {'B', 80}, {'C', 20}}},
      {{{'B', 0}, {'C', 180}, {'A', 0}}},
      {{{'C', 180}, {'A', 0}, {'B', 0}}},
      {{{'C', 20}, {'A', -40}, {'B', 80}}},
      {{{'C', -20}, {'A', 40}, {'B', -80}}},
      {{{'B', 80}, {'C', 20}, {'A', -40}}},
      {{{'B', -80}, {'C', -20}, {'A', 40}}},
  }};
  return kRef;
}

inline RunReport cmd_table2() {
  return detail::timed([] {
    RunReport r;
    r.command = "table2";
    r.columns = {"R", "S", "A(R,S)", "B(R,S)", "C(R,S)"};
    const auto table = factor_table();
    const auto& ref = reference_factor_table();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& row = table[i];
      static const char* kNames[] = {"1", "w", "w^2"};
      std::vector<std::string> cells = {kNames[row.r_exp], kNames[row.s_exp]};
      ordered_json factors = ordered_json::array();
      for (std::size_t f = 0; f < 3; ++f) {
        const auto& e = row.entries[f];
        cells.push_back(e.to_string());
        factors.push_back({{"label", std::string(1, e.label)}, {"magnitude", e.magnitude}, {"phase_deg", e.phase_deg}, {"text", e.to_string()}});
        r.check(e.label == ref[i][f].first && std::abs(e.phase_deg - ref[i][f].second) <= 1e-9,
                "row " + detail::ratio_label(row.r_exp, row.s_exp) + " factor " + std::to_string(f) + " differs from published table");
      }
      rows.push_back({{"R", kNames[row.r_exp]}, {"S", kNames[row.s_exp]}, {"factors", factors}});
      r.rows.push_back(cells);
    }
    const auto& k = QutritConstants::get();
    r.results["constants"] = {{"A", k.a.to_complex().real()}, {"B", k.b.to_complex().real()}, {"C", k.c.to_complex().real()}};
    r.results["rows"] = rows;
    r.summary.push_back("A = " + format_sig(k.a.to_complex().real()) + ", B = " + format_sig(k.b.to_complex().real()) +
                        ", C = " + format_sig(k.c.to_complex().real()));
    return r;
  });
}

inline RunReport cmd_verify(int n, int variant = 0, int d = 3) {
  require_supported_dim(d);
  detail::require_range(n, 1, d == 3 ? 12 : (d == 5 ? 8 : 7), "n");
  detail::require_range(variant, 0, d - 1, "variant");
  return detail::timed([&] {
    RunReport r;
    r.command = "verify";
    r.parameters = {{"d", d}, {"n", n}, {"variant", variant}};
    const MerminOperator op = build_mermin(d, n, variant);
    const CycInt lambda = verify_eigenvalue(op);
    const std::int64_t expected = quantum_value(d, n);
    const bool ok = lambda == CycInt::from_integer(expected, d * d);
    r.check(ok, "eigenvalue " + lambda.to_string() + " != " + std::to_string(expected));
    r.results = {{"terms", op.terms.size()}, {"eigenvalue", to_json(lambda)}, {"expected", expected}};
    r.summary.push_back("eigenvalue " + lambda.to_string() + " = " + std::to_string(d) + "^" + std::to_string(n - 1) +
                        (ok ? ", PASS" : ", MISMATCH"));
    r.columns = {"d", "N", "variant", "terms", "eigenvalue", "expected"};
    r.rows.push_back({std::to_string(d), std::to_string(n), std::to_string(variant), std::to_string(op.terms.size()),
                      lambda.to_string(), std::to_string(expected)});
    return r;
  });
}

inline RunReport cmd_identity(int n, int d = 3) {
  require_supported_dim(d);
  detail::require_range(n, 1, d == 3 ? 8 : (d == 5 ? 5 : 4), "n");
  return detail::timed([&] {
    RunReport r;
    r.command = "identity";
    r.parameters = {{"d", d}, {"n", n}};
    const IdentityReport rep = expand_identity(d, n);
    r.check(rep.ok(), std::to_string(rep.mismatches) + " word coefficients disagree with the Mermin operator");
    ordered_json surviving = ordered_json::array();
    for (const auto& t : rep.terms) {
      if (t.survives) surviving.push_back({{"word", t.word.to_string()}, {"position", t.word.position()}, {"coefficient", t.coefficient.to_string()}});
    }
    r.results = {{"words", rep.words}, {"vanished", rep.vanished}, {"survived", rep.survived}, {"mismatches", rep.mismatches}, {"surviving_terms", surviving}};
    r.summary.push_back(std::to_string(rep.words) + " words: " + std::to_string(rep.vanished) + " vanish, " +
                        std::to_string(rep.survived) + " survive with Mermin weights (" + std::to_string(rep.mismatches) + " mismatches)");
    r.columns = {"words", "vanished", "survived", "mismatches"};
    r.rows.push_back({std::to_string(rep.words), std::to_string(rep.vanished), std::to_string(rep.survived), std::to_string(rep.mismatches)});
    return r;
  });
}

inline ordered_json profile_json(const SearchResult& s) {
  ordered_json out = ordered_json::array();
  static const char* kQutritTerm[] = {"B", "C", "A"};
  for (const auto& p : s.argmax_profile) {
    ordered_json e;
    if (s.d == 3) {
      e["term"] = kQutritTerm[p.mixing_index];
      e["A"] = p.counts[0];
      e["B"] = p.counts[1];
      e["C"] = p.counts[2];
      e["other"] = p.counts[3];
    } else {
      e["term"] = p.mixing_index;
      e["rank_counts"] = p.counts;
    }
    out.push_back(e);
  }
  return out;
}

inline ordered_json search_json(const SearchResult& s) {
  ordered_json j = {{"d", s.d},
                    {"n", s.sites},
                    {"mode", to_string(s.mode)},
                    {"max_magnitude", s.max_magnitude},
                    {"max_norm_squared", to_json(s.max_norm_squared)},
                    {"argmax_ratios", to_json(s.argmax)},
                    {"num_maximizers", s.num_maximizers},
                    {"assignments_scanned", s.assignments_scanned},
                    {"uniform_is_maximizer", s.uniform_is_maximizer},
                    {"argmax_factor_profile", profile_json(s)}};
  if (s.argmax_full) {
    ordered_json full = ordered_json::array();
    for (const auto& v : s.argmax_full->values) full.push_back(v);
    j["argmax_values"] = full;
    j["reduction_checked"] = s.reduction_checked;
    j["reduction_mismatches"] = s.reduction_mismatches;
  }
  return j;
}

inline RunReport cmd_search(int n, SearchMode mode, const SearchOptions& opts = {}) {
  detail::require_range(n, 1, mode == SearchMode::ratio ? 9 : 5, "n");
  return detail::timed([&] {
    RunReport r;
    r.command = "search";
    r.workers = opts.workers;
    r.parameters = {{"n", n}, {"mode", to_string(mode)}};
    const SearchResult s = exhaustive_search(n, mode, opts);
    const std::int64_t mc = uniform_value(n);
    r.check(s.max_norm_squared == CycInt::from_integer(mc * mc, 9),
            "search maximum " + format_sig(s.max_magnitude) + " != uniform value " + std::to_string(mc));
    r.check(s.uniform_is_maximizer, "uniform assignment is not a maximizer");
    if (mode == SearchMode::full) {
      r.check(s.reduction_mismatches == 0, std::to_string(s.reduction_mismatches) + " assignments disagree with their ratio reduction");
    }
    r.results = search_json(s);
    r.results["uniform_value"] = mc;
    std::string line = "max " + format_sig(s.max_magnitude) + " (uniform value " + std::to_string(mc) + "), " +
                       std::to_string(s.num_maximizers) + " maximizers over " + std::to_string(s.assignments_scanned) + " assignments";
    if (mode == SearchMode::full) {
      line += "; ratio-reduction validated over " + std::to_string(s.reduction_checked) + " assignments (" +
              std::to_string(s.reduction_mismatches) + " mismatches)";
    }
    r.summary.push_back(line);
    r.columns = {"N", "mode", "max", "uniform", "maximizers", "scanned"};
    r.rows.push_back({std::to_string(n), to_string(mode), format_sig(s.max_magnitude), std::to_string(mc),
                      std::to_string(s.num_maximizers), std::to_string(s.assignments_scanned)});
    return r;
  });
}

inline RunReport cmd_witness(int n) {
  detail::require_range(n, 1, 9, "n");
  return detail::timed([&] {
    RunReport r;
    r.command = "witness";
    r.parameters = {{"n", n}};
    const auto ws = contradiction_witnesses(n);
    const std::int64_t expected = ghz_contradiction_count(n);
    r.check(static_cast<std::int64_t>(ws.size()) == expected, "witness count differs from N_GHZ");
    ordered_json list = ordered_json::array();
    r.columns = {"word", "position", "quantum", "hv_uniform", "contradiction"};
    for (const auto& w : ws) {
      r.check(w.contradiction, "word " + w.word.to_string() + " is not a contradiction");
      list.push_back({{"word", w.word.to_string()}, {"position", w.position}, {"quantum", w.quantum_value.to_string()},
                      {"hv_uniform", w.hv_value.to_string()}, {"contradiction", w.contradiction}});
      r.rows.push_back({w.word.to_string(), std::to_string(w.position), w.quantum_value.to_string(), w.hv_value.to_string(),
                        w.contradiction ? "yes" : "no"});
    }
    r.results = {{"count", ws.size()}, {"n_ghz", expected}, {"witnesses", list}};
    r.summary.push_back(std::to_string(ws.size()) + " contradictions (N_GHZ = " + std::to_string(expected) + "); a = exp(2 pi i/9), w = a^3");
    return r;
  });
}

inline RunReport cmd_general(int d, int n, const SearchOptions& opts = {}) {
  const GeneralConfig cfg = GeneralConfig::make(d, n);
  cfg.validate();
  return detail::timed([&] {
    RunReport r;
    r.command = "general";
    r.workers = opts.workers;
    r.parameters = {{"d", d}, {"n", n}};
    const CycInt lambda = verify_general_eigenvalue(cfg);
    const std::int64_t expected = quantum_value(d, n);
    r.check(lambda == CycInt::from_integer(expected, d * d), "eigenvalue " + lambda.to_string() + " != " + std::to_string(expected));

    ordered_json factors = ordered_json::array();
    for (const auto& f : uniform_factors(d)) factors.push_back({{"mixing_index", f.mixing_index}, {"value", f.value}, {"magnitude", f.magnitude}});
    const CycInt uniform = uniform_value_exact(d, n);
    r.results = {{"eigenvalue", to_json(lambda)}, {"expected", expected}, {"uniform_factors", factors}, {"uniform_value", uniform.magnitude()},
                 {"uniform_value_exact", to_json(uniform)}, {"asymptotic_ratio", static_cast<double>(d) / uniform_factors(d).front().magnitude}};
    r.summary.push_back("eigenvalue " + lambda.to_string() + " = " + std::to_string(d) + "^" + std::to_string(n - 1));
    r.summary.push_back("largest uniform factor " + format_sig(uniform_factors(d).front().magnitude) + ", uniform value " +
                        format_sig(uniform.magnitude()));

    if (checked_pow(d, n) <= 100'000) {
      const auto id = expand_identity(d, n);
      r.check(id.ok(), "product-form identity fails");
      r.results["identity"] = {{"words", id.words}, {"survived", id.survived}, {"mismatches", id.mismatches}};
    }

    const std::uint64_t space = [&] {
      std::uint64_t s = 1;
      for (int i = 0; i < (d - 1) * n; ++i) {
        if (s > 100'000'000 / static_cast<std::uint64_t>(d)) return std::uint64_t{0};
        s *= static_cast<std::uint64_t>(d);
      }
      return s;
    }();
    if (space != 0 && space <= 100'000'000) {
      const auto cj = conjecture_search(d, n, opts);
      r.check(cj.search.max_magnitude >= cj.uniform_value - 1e-9, "search maximum below uniform value");
      r.results["conjecture"] = {{"search", search_json(cj.search)}, {"uniform_optimal", cj.uniform_optimal}, {"gap", cj.gap}};
      r.summary.push_back("conjecture search over " + std::to_string(cj.search.assignments_scanned) + " assignments: max " +
                          format_sig(cj.search.max_magnitude) + (cj.uniform_optimal ? ", uniform point optimal" : ", uniform point NOT optimal"));
    } else {
      r.results["conjecture"] = nullptr;
      r.summary.push_back("conjecture search skipped: ratio space exceeds 1e8");
    }
    r.columns = {"d", "N", "eigenvalue", "uniform_value"};
    r.rows.push_back({std::to_string(d), std::to_string(n), lambda.to_string(), format_sig(uniform.magnitude())});
    return r;
  });
}

inline RunReport cmd_scaling(int n_max) {
  detail::require_range(n_max, 1, 39, "n-max");
  return detail::timed([&] {
    RunReport r;
    r.command = "scaling";
    r.parameters = {{"n_max", n_max}};
    r.columns = {"N", "M_Q", "M_C", "ratio", "ratio_prior", "M_Q_prior", "N_GHZ_over_M_Q", "asymptote_3_settings", "asymptote_2_settings"};
    ordered_json rows = ordered_json::array();
    for (int n = 1; n <= n_max; ++n) {
      const std::int64_t mq = quantum_value(3, n);
      const std::int64_t mc = uniform_value(n);
      const double ratio = static_cast<double>(mq) / static_cast<double>(mc);
      // Two-setting qutrit reference M_Q = 2^N / 3.
      const double prior_mq = std::ldexp(1.0, n) / 3.0;
      const double ratio_prior = static_cast<double>(mq) / prior_mq;
      // (2/3)(M_Q - M_C) / M_Q
      const double ghz_frac = 2.0 * static_cast<double>(mq - mc) / (3.0 * static_cast<double>(mq));
      const double asym3 = std::pow(1.185, n);
      const double asym2 = std::pow(1.064, n);
      rows.push_back({{"N", n}, {"M_Q", mq}, {"M_C", mc}, {"ratio", ratio}, {"ratio_prior", ratio_prior}, {"M_Q_prior", prior_mq},
                      {"N_GHZ_over_M_Q", ghz_frac}, {"asymptote_3_settings", asym3}, {"asymptote_2_settings", asym2}});
      r.rows.push_back({std::to_string(n), std::to_string(mq), std::to_string(mc), n <= 7 ? format_ratio(ratio) : format_sig(ratio),
                        format_sig(ratio_prior), format_sig(prior_mq), format_sig(ghz_frac), format_sig(asym3), format_sig(asym2)});
    }
    r.results["rows"] = rows;
    r.results["reference"] = "M_Q_prior = 2^N/3 is the published two-setting qutrit value (prior work)";
    if (n_max >= 2) {
      r.results["successive_ratio"] = violation_ratio(n_max) / violation_ratio(n_max - 1);
      r.results["limit_3_over_A"] = 3.0 / QutritConstants::get().a.to_complex().real();
    }
    return r;
  });
}

}  // namespace qmermin
