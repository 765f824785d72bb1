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

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <set>
#include <vector>

#include "qmermin/qudit_ops.hpp"

namespace qmermin {
namespace {

using cd = std::complex<double>;

// Dense complex d x d matrix of W_j written out from its definition
// sum_n |n+1> alpha^{j (1 - d delta_{n,d-1})} <n|.
std::vector<cd> dense_float(int d, int j) {
  std::vector<cd> m(static_cast<std::size_t>(d * d), 0.0);
  for (int n = 0; n < d; ++n) {
    const double e = j * (1.0 - d * (n == d - 1 ? 1.0 : 0.0));
    m[static_cast<std::size_t>(((n + 1) % d) * d + n)] = std::polar(1.0, 2 * std::numbers::pi * e / (d * d));
  }
  return m;
}

std::vector<cd> kron(const std::vector<cd>& a, int da, const std::vector<cd>& b, int db) {
  std::vector<cd> r(static_cast<std::size_t>(da * db * da * db));
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) r[static_cast<std::size_t>((i * db + k) * da * db + j * db + l)] = a[static_cast<std::size_t>(i * da + j)] * b[static_cast<std::size_t>(k * db + l)];
  return r;
}

// Dense vector in the library's label order (site 1 least significant), so
// the Kronecker product runs from site N down to site 1.
std::vector<cd> to_dense(const StateVector& s) {
  std::size_t dim = 1;
  for (int i = 0; i < s.sites(); ++i) dim *= static_cast<std::size_t>(s.dim());
  std::vector<cd> v(dim, 0.0);
  for (const auto& [label, amp] : s.amplitudes()) v[label] = amp.to_complex();
  return v;
}

std::vector<cd> dense_word(const SettingWord& w) {
  std::vector<cd> m = dense_float(w.d, w.rotations.back());
  int dim = w.d;
  for (int i = w.size() - 2; i >= 0; --i) {
    m = kron(m, dim, dense_float(w.d, w.rotations[static_cast<std::size_t>(i)]), w.d);
    dim *= w.d;
  }
  return m;
}

TEST_CASE("observable phase tables", "[qudit_ops]") {
  CHECK(qutrit_x().phase_table() == std::vector<int>{0, 0, 0});
  CHECK(qutrit_y().phase_table() == std::vector<int>{1, 1, 7});  // (1, 1, -2) mod 9
  CHECK(qutrit_v().phase_table() == std::vector<int>{8, 8, 2});  // negated Y
  CHECK_THROWS_AS(LocalObservable::rotated(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(LocalObservable::rotated(4, 0), std::invalid_argument);
}

TEST_CASE("GHZ states", "[qudit_ops]") {
  const StateVector g0 = ghz_state(0, 3, 3);
  REQUIRE(g0.amplitudes().size() == 3);
  for (int r = 0; r < 3; ++r) CHECK(g0.amplitude(g0.label_of({r, r, r})) == CycInt::from_integer(1, 9));

  const StateVector g3 = ghz_state(3, 3, 2);
  CHECK(g3.amplitude(g3.label_of({0, 0})) == CycInt::from_integer(1, 9));
  CHECK(g3.amplitude(g3.label_of({1, 1})) == omega_power(1, 3));
  CHECK(g3.amplitude(g3.label_of({2, 2})) == omega_power(2, 3));

  CHECK(ghz_state(9, 3, 3) == ghz_state(0, 3, 3));
  CHECK(ghz_state(5, 5, 2).amplitudes().size() == 5);
}

TEST_CASE("word application", "[qudit_ops]") {
  StateVector zero(3, 3);
  zero.add(0, CycInt::from_integer(1, 9));
  const StateVector out = apply(parse_qutrit_word("YYY"), zero);
  REQUIRE(out.amplitudes().size() == 1);
  CHECK(out.amplitude(out.label_of({1, 1, 1})) == root_of_unity(3, 9));

  const StateVector g0 = ghz_state(0, 3, 3);
  const auto lambda = proportionality_factor(apply(parse_qutrit_word("YYY"), g0), g0);
  REQUIRE(lambda);
  CHECK(*lambda == omega_power(1, 3));

  StateVector s12(3, 2);
  s12.add(s12.label_of({1, 2}), CycInt::from_integer(1, 9));
  const StateVector xx = apply(parse_qutrit_word("XX"), s12);
  CHECK(xx.amplitude(xx.label_of({2, 0})) == CycInt::from_integer(1, 9));
  CHECK(xx.amplitudes().size() == 1);

  CHECK_THROWS_AS(apply(parse_qutrit_word("XY"), g0), DimensionMismatchError);
  CHECK_THROWS_AS(parse_qutrit_word("XQ"), std::invalid_argument);
}

TEST_CASE("word positions", "[qudit_ops]") {
  CHECK(word_position(parse_qutrit_word("XYV")) == 0);
  CHECK(word_position(parse_qutrit_word("YYY")) == 3);
  CHECK(word_position(parse_qutrit_word("VVVV")) == 5);
  CHECK(word_position(parse_qutrit_word("VVV")) == 6);
}

TEST_CASE("rotational Bloch theorem", "[qudit_ops]") {
  CHECK(bloch_check(qutrit_x()));
  CHECK(bloch_check(qutrit_y()));
  CHECK(bloch_check(qutrit_v()));
  for (int d : {5, 7}) {
    for (int j = -half_width(d); j <= half_width(d); ++j) CHECK(bloch_check(LocalObservable::rotated(d, j)));
  }
  // Corrupted phase: the last entry of Y no longer closes the rotation.
  CHECK_FALSE(bloch_check(LocalObservable::from_phase_table(3, 1, {1, 1, 1})));
  // Correct table claimed under the wrong rotation index.
  CHECK_FALSE(bloch_check(LocalObservable::from_phase_table(3, -1, {1, 1, -2})));
}

TEST_CASE("matches a dense float oracle", "[qudit_ops][oracle]") {
  for (int d : {3, 5}) {
    const int n = d == 3 ? 3 : 2;
    std::uint64_t words = 1;
    for (int i = 0; i < n; ++i) words *= static_cast<std::uint64_t>(d);
    for (std::uint64_t idx = 0; idx < words; ++idx) {
      const SettingWord w = word_from_index(idx, d, n);
      const auto mat = dense_word(w);
      for (int c = 0; c < d; ++c) {
        const StateVector g = ghz_state(c, d, n);
        const auto in = to_dense(g);
        const auto out = to_dense(apply(w, g));
        for (std::size_t row = 0; row < in.size(); ++row) {
          cd expect = 0;
          for (std::size_t col = 0; col < in.size(); ++col) expect += mat[row * in.size() + col] * in[col];
          REQUIRE(std::abs(expect - out[row]) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("eigenphase law on GHZ states", "[qudit_ops][property]") {
  for (int d : {3, 5}) {
    const int n = d == 3 ? 4 : 3;
    const std::uint64_t words = static_cast<std::uint64_t>(checked_pow(d, n));
    for (int c = 0; c < d; ++c) {
      const StateVector g = ghz_state(c, d, n);
      for (std::uint64_t idx = 0; idx < words; ++idx) {
        const SettingWord w = word_from_index(idx, d, n);
        const auto lambda = proportionality_factor(apply(w, g), g);
        if (mod_floor(w.position() - c, d) == 0) {
          REQUIRE(lambda);
          REQUIRE(*lambda == CycInt::root_of_unity(ghz_eigenphase(w, c)));
        } else {
          REQUIRE_FALSE(lambda);
          REQUIRE_THROWS_AS(ghz_eigenphase(w, c), NotEigenoperatorError);
        }
      }
    }
  }
  // Positions 0, 3, 6 on GHZ state 0 give 1, omega, omega^2.
  CHECK(ghz_eigenphase(parse_qutrit_word("XYV"), 0) == PhaseExponent(9, 0));
  CHECK(ghz_eigenphase(parse_qutrit_word("YYY"), 0) == PhaseExponent(9, 3));
  CHECK(ghz_eigenphase(parse_qutrit_word("VVV"), 0) == PhaseExponent(9, 6));
}

TEST_CASE("rotation covariance of positions", "[qudit_ops][property]") {
  for (int d : {3, 5, 7}) {
    const int n = 4;
    const int h = half_width(d);
    // Words over letters -h .. h-1, each of which can be rotated one step.
    const auto span = static_cast<std::uint64_t>(2 * h);
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= span;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      SettingWord w{d, {}};
      std::uint64_t rest = idx;
      for (int i = 0; i < n; ++i) {
        w.rotations.push_back(static_cast<int>(rest % span) - h);
        rest /= span;
      }
      SettingWord rotated = w;
      for (auto& j : rotated.rotations) ++j;
      REQUIRE(rotated.position() == mod_floor(w.position() + n, d * d));
    }
  }
}

TEST_CASE("words act as monomial bijections", "[qudit_ops][property]") {
  const int d = 3, n = 3;
  StateVector all(d, n);
  for (std::uint64_t label = 0; label < 27; ++label) all.add(label, root_of_unity(static_cast<std::int64_t>(label), 9));
  for (std::uint64_t idx = 0; idx < 27; ++idx) {
    const SettingWord w = word_from_index(idx, d, n);
    const StateVector image = apply(w, all);
    REQUIRE(image.amplitudes().size() == 27);
    for (const auto& [label, amp] : image.amplitudes()) REQUIRE(std::abs(amp.magnitude() - 1.0) < 1e-12);

    // d applications return every basis state to itself up to a root of unity.
    for (std::uint64_t label = 0; label < 27; ++label) {
      StateVector basis(d, n);
      basis.add(label, CycInt::from_integer(1, 9));
      StateVector cur = basis;
      for (int k = 0; k < d; ++k) cur = apply(w, cur);
      REQUIRE(proportionality_factor(cur, basis));
    }
  }
}

}  // namespace
}  // namespace qmermin
