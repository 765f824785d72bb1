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

// qmermin: command-line front end. Exit codes: 0 all checks pass,
// 1 verification mismatch, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "qmermin/report.hpp"

namespace {

int default_workers() {
  if (const char* env = std::getenv("QMERMIN_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid QMERMIN_WORKERS='" << env << "'\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Many-qutrit Mermin inequality verification"};
  app.require_subcommand(1);

  std::string format = "human";
  int workers = 0;
  std::string out_path;
  bool run_info = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--workers", workers, "Worker threads (default: QMERMIN_WORKERS or hardware concurrency)")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_flag("--run-info", run_info, "Include worker count and timing in JSON output");

  int n_min = 3, n_max = 7;
  bool with_search = false;
  auto* table1 = app.add_subcommand("table1", "Quantum and classical values, violation ratio, GHZ contradictions");
  table1->add_option("--n-min", n_min);
  table1->add_option("--n-max", n_max);
  table1->add_flag("--search", with_search, "Add an exhaustive-search column (N <= 7)");

  auto* table2 = app.add_subcommand("table2", "Single-qutrit factor table");

  int n = 3, variant = 0, d = 3;
  auto* verify = app.add_subcommand("verify", "Exact Mermin eigenvalue on the GHZ state");
  verify->add_option("--n", n)->required();
  verify->add_option("--variant", variant, "GHZ state index c");
  verify->add_option("--d", d, "Local dimension (3, 5, 7)");

  auto* identity = app.add_subcommand("identity", "Symbolic check of the product-form identity");
  identity->add_option("--n", n)->required();
  identity->add_option("--d", d);

  std::string mode = "ratio";
  auto* search = app.add_subcommand("search", "Exhaustive hidden-variable maximum");
  search->add_option("--n", n)->required();
  search->add_option("--mode", mode)->check(CLI::IsMember({"ratio", "full"}));

  auto* witness = app.add_subcommand("witness", "GHZ contradiction witnesses at positions 3 and 6");
  witness->add_option("--n", n)->required();

  auto* general = app.add_subcommand("general", "Odd-d generalization");
  general->add_option("--d", d)->required();
  general->add_option("--n", n)->required();

  int scaling_n_max = 12;
  auto* scaling = app.add_subcommand("scaling", "Plot-ready scaling data");
  scaling->add_option("--n-max", scaling_n_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  qmermin::SearchOptions opts;
  opts.workers = workers > 0 ? workers : default_workers();

  qmermin::RunReport report;
  try {
    if (*table1) report = qmermin::cmd_table1(n_min, n_max, with_search, opts);
    else if (*table2) report = qmermin::cmd_table2();
    else if (*verify) report = qmermin::cmd_verify(n, variant, d);
    else if (*identity) report = qmermin::cmd_identity(n, d);
    else if (*search) report = qmermin::cmd_search(n, mode == "full" ? qmermin::SearchMode::full : qmermin::SearchMode::ratio, opts);
    else if (*witness) report = qmermin::cmd_witness(n);
    else if (*general) report = qmermin::cmd_general(d, n, opts);
    else if (*scaling) report = qmermin::cmd_scaling(scaling_n_max);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const qmermin::SearchCapExceededError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification error: " << e.what() << '\n';
    return 1;
  }
  report.workers = opts.workers;

  std::string payload;
  if (format == "json") payload = report.to_json(run_info).dump(2) + "\n";
  else if (format == "csv") payload = report.to_csv();
  else payload = report.to_human();

  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << '\n';
      return 2;
    }
    f << payload;
  }
  if (format == "human" || run_info) {
    std::cerr << report.command << ": " << report.workers << " worker(s), " << qmermin::format_sig(report.elapsed_ms, 4) << " ms\n";
  }

  for (const auto& m : report.mismatches) std::cerr << "mismatch: " << m << '\n';
  return report.passed() ? 0 : 1;
}
