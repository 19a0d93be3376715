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

#include <gtest/gtest.h>

#include <chrono>

#include "bddppl/bif.hpp"
#include "bddppl/desugar.hpp"
#include "bddppl/errors.hpp"
#include "bddppl/infer.hpp"
#include "bddppl/parser.hpp"
#include "support/pipeline_checks.hpp"
#include "support/random_programs.hpp"

namespace bddppl {
namespace {

std::vector<double> infer_marginal(const BayesNet& net, const std::string& query) {
  Program p = net_to_program(net, query);
  // The emitted program must survive a print/parse round trip.
  Program reparsed = parse_program(pretty_print(p));
  LoweredProgram l = lower_program(reparsed);
  CompiledProgram c = compile_program(l.core, CompileMode::Modular);
  Inference inf(*c.manager, c.expr);
  std::vector<double> out;
  const int n = static_cast<int>(net.variables[*net.index_of(query)].states.size());
  for (int s = 0; s < n; ++s) out.push_back(inf.prob_of_value(one_hot_value(n, s)));
  return out;
}

ErrorKind bif_error(const std::string& text) {
  try {
    parse_bif(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

const char* kTwoVars =
    "network t { }\n"
    "variable A { type discrete [ 2 ] { yes, no }; }\n"
    "variable B { type discrete [ 2 ] { yes, no }; }\n";

TEST(Bif, CancerNetwork) {
  auto start = std::chrono::steady_clock::now();
  BayesNet net = parse_bif(testing::read_benchmark("cancer.bif"));
  EXPECT_EQ(net.name, "cancer");
  EXPECT_EQ(net.variables.size(), 5u);
  EXPECT_EQ(net.free_parameter_count(), 10u);
  for (std::size_t v = 0; v < net.variables.size(); ++v) {
    std::vector<double> got = infer_marginal(net, net.variables[v].name);
    std::vector<double> want = testing::joint_marginal(net, v);
    for (std::size_t s = 0; s < want.size(); ++s) EXPECT_NEAR(got[s], want[s], 1e-9);
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 1.0);
}

TEST(Bif, CptRowsAreMixedRadix) {
  BayesNet net = parse_bif(testing::read_benchmark("cancer.bif"));
  std::size_t cancer = *net.index_of("Cancer");
  ASSERT_EQ(net.parents[cancer].size(), 2u);
  EXPECT_EQ(net.row_count(cancer), 4u);
  // (high, True): Pollution index 1 is the most significant digit.
  EXPECT_DOUBLE_EQ(net.cpts[cancer][1 * 2 + 0][0], 0.05);
  EXPECT_DOUBLE_EQ(net.cpts[cancer][0 * 2 + 1][0], 0.001);
}

TEST(Bif, MalformedTables) {
  std::string base = kTwoVars;
  EXPECT_EQ(bif_error(base + "probability ( A ) { table 0.5, 0.4; }\n"
                             "probability ( B | A ) { (yes) 0.5, 0.5; (no) 0.5, 0.5; }"),
            ErrorKind::MalformedCpt);
  EXPECT_EQ(bif_error(base + "probability ( A ) { table 0.5, 0.5; }\n"
                             "probability ( B | A ) { (yes) 0.5, 0.5; (yes) 0.5, 0.5; }"),
            ErrorKind::MalformedCpt);
  EXPECT_EQ(bif_error(base + "probability ( A ) { table 0.5, 0.5; }\n"
                             "probability ( B | A ) { (yes) 0.5, 0.5; }"),
            ErrorKind::MalformedCpt);
  EXPECT_EQ(bif_error(base + "probability ( A ) { table 0.5, 0.5, 0.0; }\n"
                             "probability ( B | A ) { (yes) 0.5, 0.5; (no) 0.5, 0.5; }"),
            ErrorKind::MalformedCpt);
  EXPECT_EQ(bif_error(base + "probability ( A ) { table 0.5, 0.5; }"), ErrorKind::MalformedCpt);
}

TEST(Bif, CyclesAndUnsupportedSyntax) {
  std::string base = kTwoVars;
  EXPECT_EQ(bif_error(base + "probability ( A | B ) { (yes) 0.5, 0.5; (no) 0.5, 0.5; }\n"
                             "probability ( B | A ) { (yes) 0.5, 0.5; (no) 0.5, 0.5; }"),
            ErrorKind::CyclicNetwork);
  EXPECT_EQ(bif_error("network t { property author = x; }\n"
                      "variable A { type discrete [ 2 ] { yes, no }; }\n"
                      "probability ( A ) { table 0.5, 0.5; }"),
            ErrorKind::BifParse);
  EXPECT_EQ(bif_error("network t { }\nvariable A { type continuous; }\n"), ErrorKind::BifParse);
  EXPECT_EQ(bif_error(base + "probability ( A ) { table 0.5, 0.5; }\n"
                             "probability ( B | A ) { default 0.5, 0.5; }"),
            ErrorKind::BifParse);
  EXPECT_EQ(bif_error(base + "probability ( A ) { table 0.5, 0.5; }\n"
                             "probability ( B | A ) { (maybe) 0.5, 0.5; (no) 0.5, 0.5; }"),
            ErrorKind::MalformedCpt);
}

TEST(Bif, SingleVariable) {
  BayesNet net = parse_bif(
      "network one { }\nvariable X { type discrete [ 3 ] { a, b, c }; }\n"
      "probability ( X ) { table 0.2, 0.3, 0.5; }");
  std::vector<double> m = infer_marginal(net, "X");
  EXPECT_NEAR(m[0], 0.2, 1e-12);
  EXPECT_NEAR(m[1], 0.3, 1e-12);
  EXPECT_NEAR(m[2], 0.5, 1e-12);
  try {
    net_to_program(net, "Y");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownQueryVariable);
  }
}

TEST(Bif, DeterministicChain) {
  BayesNet net = parse_bif(std::string(kTwoVars) +
                           "probability ( A ) { table 0.35, 0.65; }\n"
                           "probability ( B | A ) { (yes) 0.0, 1.0; (no) 1.0, 0.0; }");
  std::vector<double> m = infer_marginal(net, "B");
  EXPECT_NEAR(m[0], 0.65, 1e-12);
  EXPECT_NEAR(m[1], 0.35, 1e-12);
}

TEST(Bif, Identifiers) {
  BayesNet net = parse_bif(
      "network n { }\n"
      "variable if { type discrete [ 2 ] { a, b }; }\n"
      "variable 3rd { type discrete [ 2 ] { a, b }; }\n"
      "variable a-b { type discrete [ 2 ] { a, b }; }\n"
      "variable a_b { type discrete [ 2 ] { a, b }; }\n"
      "probability ( if ) { table 0.5, 0.5; }\n"
      "probability ( 3rd ) { table 0.5, 0.5; }\n"
      "probability ( a-b ) { table 0.5, 0.5; }\n"
      "probability ( a_b ) { table 0.5, 0.5; }");
  EXPECT_EQ(program_name(net, 0), "v_if");
  EXPECT_EQ(program_name(net, 1), "v_3rd");
  EXPECT_EQ(program_name(net, 2), "a_b_2");
  EXPECT_EQ(program_name(net, 3), "a_b_3");
  EXPECT_NO_THROW(infer_marginal(net, "a-b"));
}

TEST(Bif, RandomNetworksMatchJointTable) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    BayesNet net = testing::random_network(seed);
    for (std::size_t v = 0; v < net.variables.size(); ++v) {
      std::vector<double> got = infer_marginal(net, net.variables[v].name);
      std::vector<double> want = testing::joint_marginal(net, v);
      for (std::size_t s = 0; s < want.size(); ++s) ASSERT_NEAR(got[s], want[s], 1e-9) << "seed " << seed;
    }
  }
}

TEST(Bif, TranslationSizeIsLinearInTableSize) {
  // Chains of binary variables: k variables, 2 + 4(k - 1) table entries.
  double ratio_min = 1e9, ratio_max = 0;
  for (int k : {5, 10, 20, 40, 80}) {
    std::string text = "network chain { }\n";
    for (int i = 0; i < k; ++i) text += "variable X" + std::to_string(i) + " { type discrete [ 2 ] { t, f }; }\n";
    text += "probability ( X0 ) { table 0.3, 0.7; }\n";
    for (int i = 1; i < k; ++i) {
      text += "probability ( X" + std::to_string(i) + " | X" + std::to_string(i - 1) +
              " ) { (t) 0.9, 0.1; (f) 0.2, 0.8; }\n";
    }
    BayesNet net = parse_bif(text);
    Program p = net_to_program(net, "X" + std::to_string(k - 1));
    double entries = 2 + 4.0 * (k - 1);
    double ratio = static_cast<double>(expr_size(*p.main)) / entries;
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
  }
  EXPECT_LT(ratio_max / ratio_min, 1.5);
}

}  // namespace
}  // namespace bddppl
