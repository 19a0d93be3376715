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

#include "support/pipeline_checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "bddppl/desugar.hpp"
#include "bddppl/errors.hpp"
#include "bddppl/infer.hpp"
#include "bddppl/oracle.hpp"
#include "support/random_programs.hpp"

namespace bddppl::testing {
namespace {

bool mentions(const Program& p, ExprKind kind) {
  std::function<bool(const Expr&)> walk = [&](const Expr& e) {
    if (e.kind == kind) return true;
    return std::any_of(e.kids.begin(), e.kids.end(), [&](const ExprPtr& k) { return walk(*k); });
  };
  if (walk(*p.main)) return true;
  return std::any_of(p.functions.begin(), p.functions.end(), [&](const FuncDef& f) { return walk(*f.body); });
}

}  // namespace

std::vector<double> compiled_distribution(const Program& parsed, CompileMode mode) {
  LoweredProgram l = lower_program(parsed);
  CompiledProgram c = compile_program(l.core, mode);
  Inference inf(*c.manager, c.expr);
  std::vector<double> out;
  for (const auto& [v, p] : inf.full_distribution(l.surface_type)) out.push_back(p);
  out.push_back(inf.accepting_probability());
  return out;
}

OracleComparison compare_with_oracle(const Program& parsed) {
  LoweredProgram l = lower_program(parsed);
  OracleResult want = eval_program(l.core);
  OracleComparison r;
  r.accepting_positive = want.accepting > 0;
  std::vector<std::vector<double>> per_mode;
  for (CompileMode mode : {CompileMode::Modular, CompileMode::Inline}) {
    CompiledProgram c = compile_program(l.core, mode);
    Inference inf(*c.manager, c.expr);
    const double z = inf.accepting_probability();
    std::vector<double> got{z};
    r.max_error = std::max(r.max_error, std::abs(z - want.accepting));
    double mass = 0.0;
    for (const Value& v : inhabitants(l.core_type)) {
      const double p = inf.prob_of_value(v);
      got.push_back(p);
      mass += p * z;
      r.max_error = std::max(r.max_error, std::abs(p - mass_of(want.distribution, v)));
    }
    r.partition_error = std::max(r.partition_error, std::abs(mass - z));
    per_mode.push_back(std::move(got));
  }
  for (std::size_t i = 0; i < per_mode[0].size(); ++i) {
    r.mode_difference = std::max(r.mode_difference, std::abs(per_mode[0][i] - per_mode[1][i]));
  }
  return r;
}

SuiteComparison compare_random_programs(std::uint64_t first_seed, int count) {
  SuiteComparison s;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < count; ++i) {
    Program p = random_program(first_seed + static_cast<std::uint64_t>(i));
    OracleComparison c = compare_with_oracle(p);
    ++s.programs;
    if (mentions(p, ExprKind::Observe)) ++s.with_observe;
    if (mentions(p, ExprKind::Call) || mentions(p, ExprKind::Iterate)) ++s.with_calls;
    s.worst.max_error = std::max(s.worst.max_error, c.max_error);
    s.worst.mode_difference = std::max(s.worst.mode_difference, c.mode_difference);
    s.worst.partition_error = std::max(s.worst.partition_error, c.partition_error);
  }
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string read_benchmark(const std::string& name) {
  std::ifstream in(std::string(BDDPPL_SOURCE_DIR) + "/benchmarks/" + name);
  if (!in) throw Error(ErrorKind::Internal, "missing benchmark " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bddppl::testing
