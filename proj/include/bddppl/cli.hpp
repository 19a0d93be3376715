// Copyright 2026 The bddppl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bddppl/compiler.hpp"

namespace bddppl {

enum class QueryKind { Distribution, Marginals, Accepting };
enum class OutputFormat { Table, Json };

const char* query_kind_name(QueryKind q);

struct RunConfig {
  std::string input_path;
  CompileMode mode = CompileMode::Modular;
  OutputFormat output = OutputFormat::Table;
  QueryKind query = QueryKind::Distribution;
  std::optional<std::string> dot_path;
  bool oracle_check = false;
  std::vector<std::string> order;
};

struct InferReport {
  double accepting = 0.0;
  QueryKind query = QueryKind::Distribution;
  CompileMode mode = CompileMode::Modular;
  std::vector<std::pair<std::string, double>> results;
  std::size_t flips = 0;
  std::size_t nodes = 0;
  double compile_ms = 0.0;
  double query_ms = 0.0;
  std::optional<bool> oracle_match;
  double oracle_max_error = 0.0;
  std::string dot;
};

inline constexpr double kOracleTolerance = 1e-9;

/// Runs the whole pipeline on program text. Throws `Error`.
InferReport infer_source(const std::string& text, const std::string& file, const RunConfig& config);

std::string format_table(const InferReport& r);
/// Keys: accepting, query, results, flips, nodes, compile_ms, query_ms, and
/// mode; oracle when checked.
std::string format_json(const InferReport& r);

// The run_* drivers print to `out`/`err` and return the process exit code:
// 0 on success, 1 on user errors, 2 on internal failures and oracle
// mismatches.
int run_infer(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_translate(const std::string& bif_path, const std::string& query, const std::string& out_path,
                  std::ostream& out, std::ostream& err);
int run_bench(const std::string& suite, int max_n, const std::string& csv_path, std::ostream& out,
              std::ostream& err);

/// Names of the scaling suites: chained, diamond, ladder, caesar.
const std::vector<std::string>& bench_suites();
/// Program text of `suite` at size `n`. Throws on an unknown suite.
std::string bench_program(const std::string& suite, int n);
/// 1, 2, 4, ... up to and including `max_n`.
std::vector<int> bench_grid(int max_n);

}  // namespace bddppl
