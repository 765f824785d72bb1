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

#include <string>

#include "qmermin/report.hpp"

namespace qmermin {
namespace {

TEST_CASE("number formatting", "[report]") {
  CHECK(format_ratio(1.5) == "1.5");
  CHECK(format_ratio(1.8) == "1.8");
  CHECK(format_ratio(2.25) == "2.25");
  CHECK(format_ratio(3.24) == "3.24");
  CHECK(format_ratio(1.0) == "1.0");
  CHECK(format_sig(4.689779682344989) == "4.68978");
  CHECK(format_sig(123456789.0) == "1.23457e+08");
}

TEST_CASE("table1", "[report]") {
  const auto r = cmd_table1(3, 7);
  CHECK(r.passed());
  REQUIRE(r.rows.size() == 5);
  CHECK(r.rows[0] == std::vector<std::string>{"3", "9", "6", "1.5", "2"});
  CHECK(r.rows[4] == std::vector<std::string>{"7", "729", "225", "3.24", "336"});

  const auto small = cmd_table1(1, 2);
  CHECK(small.to_csv() == "N,M_Q,M_C,R,N_GHZ\n1,1,1,1.0,0\n2,3,3,1.0,0\n");

  const auto j = r.to_json();
  CHECK(j["results"]["rows"][4]["M_C"] == 225);
  CHECK(j["results"]["rows"][2]["N_GHZ"] == 30);
  CHECK(j["status"] == "pass");
  CHECK_FALSE(j.contains("run"));
  CHECK(r.to_json(true)["run"].contains("workers"));

  CHECK_THROWS_AS(cmd_table1(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(cmd_table1(3, 13), std::invalid_argument);
}

TEST_CASE("table1 with search column", "[report]") {
  const auto r = cmd_table1(3, 5, true, {2});
  CHECK(r.passed());
  CHECK(r.rows[2].back() == "36");
}

TEST_CASE("table2", "[report]") {
  const auto r = cmd_table2();
  CHECK(r.passed());
  REQUIRE(r.rows.size() == 9);
  CHECK(r.rows[0] == std::vector<std::string>{"1", "1", "A", "B", "-C"});
  CHECK(r.rows[3] == std::vector<std::string>{"w", "w^2", "B", "-C", "A"});
  CHECK(r.rows[1] == std::vector<std::string>{"w", "1", "A(40)", "B(-80)", "C(-20)"});
}

TEST_CASE("verify and identity", "[report]") {
  const auto v = cmd_verify(5);
  CHECK(v.passed());
  CHECK(v.summary.front() == "eigenvalue 81 = 3^4, PASS");
  CHECK(cmd_verify(3, 2).passed());
  CHECK(cmd_verify(3, 0, 5).passed());
  CHECK_THROWS_AS(cmd_verify(3, 3), std::invalid_argument);

  const auto id = cmd_identity(3);
  CHECK(id.passed());
  CHECK(id.results["vanished"] == 18);
}

TEST_CASE("search payload is independent of the worker count", "[report]") {
  const auto base = cmd_search(4, SearchMode::ratio, {1}).to_json().dump(2);
  for (int w : {2, 8}) CHECK(cmd_search(4, SearchMode::ratio, {w}).to_json().dump(2) == base);

  const auto full = cmd_search(3, SearchMode::full);
  CHECK(full.passed());
  CHECK(full.summary.front().find("ratio-reduction validated over 19683 assignments") != std::string::npos);
  CHECK(full.results["reduction_mismatches"] == 0);
  CHECK_THROWS_AS(cmd_search(6, SearchMode::full), std::invalid_argument);
}

TEST_CASE("witness and general", "[report]") {
  const auto w = cmd_witness(4);
  CHECK(w.passed());
  CHECK(w.results["count"] == 8);

  const auto g = cmd_general(5, 2);
  CHECK(g.passed());
  CHECK(g.results["expected"] == 5);
  CHECK(g.results["conjecture"]["search"]["assignments_scanned"] == 390625);

  const auto g7 = cmd_general(7, 2);
  CHECK(g7.passed());
  CHECK(g7.results["conjecture"].is_null());
}

TEST_CASE("scaling", "[report]") {
  const auto s = cmd_scaling(12);
  CHECK(s.passed());
  REQUIRE(s.rows.size() == 12);
  CHECK(s.columns[0] == "N");
  CHECK(s.columns[3] == "ratio");
  CHECK(s.columns[4] == "ratio_prior");
  CHECK(s.rows[6][3] == "3.24");
  // ratio_prior = 3^(N-1) / (2^N / 3) = (3/2)^N at N = 7.
  CHECK(s.results["rows"][6]["ratio_prior"].get<double>() == Catch::Approx(17.0859375));
  CHECK(s.to_csv().rfind("N,M_Q,M_C,ratio,ratio_prior", 0) == 0);
}

}  // namespace
}  // namespace qmermin
