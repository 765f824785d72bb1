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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qmermin/generalized_d.hpp"

namespace qmermin {
namespace {

using Catch::Matchers::WithinAbs;
using cd = std::complex<double>;

// Uniform-point per-site factors F_t = sum_j e^{2 pi i j (d t + d - 1) / d^2},
// evaluated in doubles.
std::vector<cd> float_factors(int d) {
  std::vector<cd> f;
  for (int t = 0; t < d; ++t) {
    cd sum = 0;
    for (int j = -(d - 1) / 2; j <= (d - 1) / 2; ++j) sum += std::polar(1.0, 2 * std::numbers::pi * j * (d * t + d - 1) / (d * d));
    f.push_back(sum);
  }
  return f;
}

double float_uniform_value(int d, int n) {
  cd sum = 0;
  for (const cd& f : float_factors(d)) sum += std::pow(f, n);
  return std::abs(sum) / d;
}

TEST_CASE("configuration validation", "[generalized_d]") {
  CHECK_NOTHROW(GeneralConfig::make(5, 2).validate());
  CHECK_THROWS_AS(GeneralConfig::make(4, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GeneralConfig::make(9, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS((GeneralConfig{5, 3, 2}).validate(), std::invalid_argument);
}

TEST_CASE("general Mermin operator", "[generalized_d]") {
  for (int n = 1; n <= 5; ++n) {
    const auto general = build_general_mermin(GeneralConfig::make(3, n));
    const auto qutrit = build_mermin(3, n, 0);
    REQUIRE(general.terms.size() == qutrit.terms.size());
    for (std::size_t i = 0; i < general.terms.size(); ++i) {
      REQUIRE(general.terms[i].word == qutrit.terms[i].word);
      REQUIRE(general.terms[i].weight == qutrit.terms[i].weight);
    }
  }
  const auto d5n2 = build_general_mermin(GeneralConfig::make(5, 2));
  CHECK(d5n2.terms.size() == 5);
  for (const auto& t : d5n2.terms) CHECK(t.position == 0);
  CHECK(build_general_mermin(GeneralConfig::make(5, 3)).terms.size() == 25);
  for (int d : {5, 7}) {
    for (int n = 1; n <= 4; ++n) REQUIRE(build_general_mermin(GeneralConfig::make(d, n)).terms.size() == static_cast<std::size_t>(checked_pow(d, n - 1)));
  }
}

TEST_CASE("general eigenvalue", "[generalized_d]") {
  CHECK(verify_general_eigenvalue(GeneralConfig::make(5, 2)) == CycInt::from_integer(5, 25));
  CHECK(verify_general_eigenvalue(GeneralConfig::make(5, 3)) == CycInt::from_integer(25, 25));
  CHECK(verify_general_eigenvalue(GeneralConfig::make(3, 4)) == CycInt::from_integer(27, 9));
  CHECK(verify_general_eigenvalue(GeneralConfig::make(7, 3)) == CycInt::from_integer(49, 49));
  CHECK_THROWS_AS(verify_general_eigenvalue(GeneralConfig::make(5, 9)), SearchCapExceededError);
}

TEST_CASE("general terms each have eigenvalue one", "[generalized_d][property]") {
  for (int d : {5, 7}) {
    const int n = 3;
    const auto op = build_general_mermin(GeneralConfig::make(d, n));
    const StateVector g = ghz_state(0, d, n);
    for (const auto& t : op.terms) {
      StateVector image = apply(t.word, g);
      StateVector weighted(d, n);
      for (const auto& [label, amp] : image.amplitudes()) weighted.add(label, amp * t.weight);
      REQUIRE(weighted == g);
    }
  }
}

TEST_CASE("product-form survival for larger d", "[generalized_d]") {
  for (auto [d, n] : {std::pair{5, 2}, std::pair{5, 3}, std::pair{7, 2}}) {
    const auto rep = expand_identity(d, n);
    REQUIRE(rep.ok());
    REQUIRE(rep.survived == static_cast<std::uint64_t>(checked_pow(d, n - 1)));
    for (const auto& t : rep.terms) REQUIRE(t.survives == (t.word.position() % d == 0));
  }
}

TEST_CASE("uniform factors", "[generalized_d]") {
  const auto f3 = uniform_factors(3);
  REQUIRE(f3.size() == 3);
  CHECK_THAT(f3[0].magnitude, WithinAbs(2.532, 1e-3));
  CHECK_THAT(f3[1].magnitude, WithinAbs(1.347, 1e-3));
  CHECK_THAT(f3[2].magnitude, WithinAbs(0.879, 1e-3));
  CHECK(f3[2].value < 0);
  CHECK(f3[0].exact == QutritConstants::get().a);

  const auto f5 = uniform_factors(5);
  CHECK_THAT(f5[0].magnitude, WithinAbs(4.6898, 1e-3));
  for (int d : {3, 5, 7}) {
    // Parseval: sum_t |F_t|^2 = d^2. Checked numerically, then exactly.
    const auto fl = float_factors(d);
    double sq = 0;
    for (const auto& f : fl) sq += std::norm(f);
    REQUIRE_THAT(sq, WithinAbs(d * d, 1e-6));
    CycInt exact(d * d);
    for (const auto& f : uniform_factors(d)) exact += f.exact.norm_squared();
    REQUIRE(exact == CycInt::from_integer(d * d, d * d));
    for (const auto& f : uniform_factors(d)) REQUIRE_THAT(std::abs(f.exact.to_complex().imag()), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("uniform value in general d", "[generalized_d]") {
  for (int d : {3, 5, 7}) {
    for (int n = 1; n <= 5; ++n) REQUIRE_THAT(uniform_value_exact(d, n).magnitude(), WithinAbs(float_uniform_value(d, n), 1e-9));
  }
  CHECK(uniform_value_exact(5, 2) == CycInt::from_integer(5, 25));
  CHECK_THAT(uniform_value_exact(5, 3).magnitude(), WithinAbs(20.854101966, 1e-6));
}

TEST_CASE("conjecture search", "[generalized_d]") {
  const auto q = conjecture_search(3, 3);
  CHECK_THAT(q.search.max_magnitude, WithinAbs(6.0, 1e-9));
  CHECK(q.uniform_optimal);
  CHECK(q.gap == 0.0);

  const auto c = conjecture_search(5, 2, {2});
  CHECK(c.search.assignments_scanned == 390625);
  CHECK_THAT(c.uniform_value, WithinAbs(float_uniform_value(5, 2), 1e-9));
  CHECK(c.search.max_magnitude >= c.uniform_value - 1e-9);
  CHECK(c.gap >= 0.0);
  // Outcome is recorded, not asserted.
  INFO("uniform optimal at d=5, N=2: " << c.uniform_optimal);

  CHECK_THROWS_AS(conjecture_search(5, 3), SearchCapExceededError);
}

}  // namespace
}  // namespace qmermin
