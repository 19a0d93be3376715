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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "bddppl/bif.hpp"
#include "bddppl/cli.hpp"
#include "bddppl/desugar.hpp"
#include "bddppl/errors.hpp"
#include "bddppl/infer.hpp"
#include "bddppl/oracle.hpp"
#include "bddppl/parser.hpp"
#include "support/bdd_properties.hpp"
#include "support/pipeline_checks.hpp"
#include "support/random_programs.hpp"

namespace bddppl {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<std::string> kBenchmarks = {
    "chained_flips.dice",     "exlet.dice",         "obsprog.dice",   "obs_f.dice",     "obs_g.dice",
    "diamond3.dice",  "caesar_mini.dice",   "ladder.dice",    "tuple_csi.dice", "multiroot.dice",
    "grass.dice",     "burglar_alarm.dice", "coin_bias.dice", "noisy_or.dice",  "evidence1.dice",
    "evidence2.dice", "murder_mystery.dice"};

struct Compiled {
  explicit Compiled(const std::string& src, CompileMode mode = CompileMode::Modular)
      : lowered(lower_program(parse_program(src))), program(compile_program(lowered.core, mode)) {}
  BddManager& mgr() { return *program.manager; }
  LoweredProgram lowered;
  CompiledProgram program;
};

NodeRef node_with_var(BddManager& mgr, NodeRef root, const std::string& name) {
  std::vector<NodeRef> stack{root};
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (mgr.is_terminal(n)) continue;
    if (mgr.label(mgr.var_of(n)).name == name) return n;
    stack.push_back(mgr.high(n));
    stack.push_back(mgr.low(n));
  }
  throw Error(ErrorKind::Internal, "no node labelled " + name);
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
}

Outcome chained_flips_example() {
  auto start = Clock::now();
  Compiled c(testing::read_benchmark("chained_flips.dice"));
  Inference inf(c.mgr(), c.program.expr);
  const double p = inf.prob_of_value(Value::boolean(true));
  NodeRef root = c.program.expr.formula.node();
  auto values = c.mgr().wmc_values(root, c.program.expr.weights);
  const double f2 = values.at(node_with_var(c.mgr(), root, "f2"));
  const double f3 = values.at(node_with_var(c.mgr(), root, "f3"));
  const double ms = seconds_since(start) * 1e3;
  bool ok = std::abs(p - 0.471) < 1e-9 && std::abs(f2 - 0.48) < 1e-9 && std::abs(f3 - 0.47) < 1e-9 && ms < 100;
  return {ok, "P(z)=" + fmt("%.12g", p) + " f2=" + fmt("%.12g", f2) + " f3=" + fmt("%.12g", f3) +
                  " time=" + fmt("%.2f ms", ms)};
}

Outcome exlet() {
  Compiled c(testing::read_benchmark("exlet.dice"));
  const double p = Inference(c.mgr(), c.program.expr).prob_of_value(Value::boolean(true));
  return {std::abs(p - 0.46) <= 1e-12, "P(true)=" + fmt("%.15g", p)};
}

Outcome obsprog() {
  Compiled c(testing::read_benchmark("obsprog.dice"));
  Inference inf(c.mgr(), c.program.expr);
  const double z = inf.accepting_probability();
  const double t = inf.prob_of_value(Value::boolean(true)), f = inf.prob_of_value(Value::boolean(false));
  bool ok = std::abs(z - 0.72) <= 1e-12 && std::abs(t - 0.6 / 0.72) <= 1e-12 && std::abs(f - 0.12 / 0.72) <= 1e-12;
  return {ok, "accepting=" + fmt("%.15g", z) + " true=" + fmt("%.15g", t) + " false=" + fmt("%.15g", f)};
}

Outcome observing_functions() {
  Compiled f(testing::read_benchmark("obs_f.dice"));
  Compiled g(testing::read_benchmark("obs_g.dice"));
  const double pf = Inference(f.mgr(), f.program.expr).prob_of_value(Value::boolean(true));
  const double pg = Inference(g.mgr(), g.program.expr).prob_of_value(Value::boolean(true));
  bool ok = std::abs(pf - 0.1 / 0.55) <= 1e-12 && std::abs(pg - 0.1) <= 1e-12;
  return {ok, "with f=" + fmt("%.15g", pf) + " with g=" + fmt("%.15g", pg)};
}

Outcome diamond_network() {
  Compiled three(testing::read_benchmark("diamond3.dice"));
  const std::size_t nodes = three.mgr().node_count(three.program.expr.formula.node());
  std::vector<double> xs, ys;
  for (int n = 8; n <= 256; n *= 2) {
    Compiled c(bench_program("diamond", n));
    xs.push_back(n);
    ys.push_back(static_cast<double>(c.mgr().node_count(c.program.expr.formula.node())));
  }
  const double r2 = r_squared(xs, ys);
  return {nodes <= 10 && r2 > 0.99, "3-diamond nodes=" + std::to_string(nodes) + " n=256 nodes=" +
                                        fmt("%.0f", ys.back()) + " R^2=" + fmt("%.6f", r2)};
}

Outcome scaling() {
  std::string detail;
  bool ok = true;
  for (const std::string& suite : {std::string("chained"), std::string("diamond")}) {
    // chained(n) has 2n layers.
    std::vector<double> xs, ys;
    double last_seconds = 0;
    for (int n : {250, 500, 1000}) {
      auto start = Clock::now();
      RunConfig config;
      InferReport r = infer_source(bench_program(suite, n), suite, config);
      last_seconds = seconds_since(start);
      xs.push_back(n);
      ys.push_back(static_cast<double>(r.nodes));
    }
    const double r2 = r_squared(xs, ys);
    const double growth = ys[2] / ys[1];
    ok = ok && last_seconds < 10 && r2 > 0.99 && growth <= 2.05;
    detail += (detail.empty() ? "" : "; ") + suite + "(n=1000): " + fmt("%.2f s", last_seconds) + " nodes=" + fmt("%.0f", ys[2]) +
              " R^2=" + fmt("%.6f", r2);
  }
  return {ok, detail};
}

Outcome oracle_equivalence() {
  testing::SuiteComparison s = testing::compare_random_programs(424242, 200);
  bool ok = s.programs == 200 && s.worst.max_error < 1e-9 && s.seconds < 60 && s.with_observe > 0 &&
            s.with_calls > 0;
  return {ok, std::to_string(s.programs) + " programs (" + std::to_string(s.with_observe) + " observe, " +
                  std::to_string(s.with_calls) + " calls) max error " + fmt("%.3g", s.worst.max_error) + " in " +
                  fmt("%.2f s", s.seconds)};
}

Outcome caesar() {
  std::string src = testing::read_benchmark("caesar_mini.dice");
  Compiled c(src);
  Inference inf(c.mgr(), c.program.expr);
  OracleResult o = enumerate_program(c.lowered.surface);
  double err = 0;
  std::string post;
  for (int k = 0; k < 4; ++k) {
    const double p = inf.prob_of_value(one_hot_value(4, k));
    err = std::max(err, std::abs(p - mass_of(o.distribution, one_hot_value(4, k))));
    post += fmt("%.6f ", p);
  }
  return {err < 1e-9, "posterior " + post + "max error " + fmt("%.3g", err)};
}

Outcome bdd_properties() {
  auto canon = testing::check_canonicity(91, 200);
  auto enumeration = testing::check_wmc_enumeration(92, 500);
  auto product = testing::check_product_rule(93, 500);
  auto ie = testing::check_inclusion_exclusion(94, 500);
  int visit_violations = 0;
  for (const std::string& name : kBenchmarks) {
    Compiled c(testing::read_benchmark(name));
    for (NodeRef r : roots_of(c.program.expr)) {
      c.mgr().wmc(r, c.program.expr.weights);
      if (c.mgr().last_wmc_visits() > c.mgr().node_count(r)) ++visit_violations;
    }
  }
  const int violations = canon.violations + enumeration.violations + product.violations + ie.violations;
  return {violations == 0 && visit_violations == 0,
          "canonicity " + std::to_string(canon.trials) + ", wmc " + std::to_string(enumeration.trials) +
              ", product " + std::to_string(product.trials) + ", incl-excl " + std::to_string(ie.trials) +
              " checks; " + std::to_string(violations) + " violations; visit-bound violations " +
              std::to_string(visit_violations)};
}

Outcome conditional_independence() {
  auto r = testing::check_conditional_independence(95, 50);
  return {r.trials == 50 && r.violations == 0,
          std::to_string(r.trials) + " pairs, " + std::to_string(r.violations) + " violations"};
}

Outcome bif_pipeline() {
  auto start = Clock::now();
  BayesNet net = parse_bif(testing::read_benchmark("cancer.bif"));
  Program p = net_to_program(net, "Xray");
  Compiled c(pretty_print(p));
  Inference inf(c.mgr(), c.program.expr);
  std::vector<double> want = testing::joint_marginal(net, *net.index_of("Xray"));
  double err = 0;
  for (int s = 0; s < 2; ++s) err = std::max(err, std::abs(inf.prob_of_value(one_hot_value(2, s)) - want[s]));
  const double secs = seconds_since(start);
  bool ok = net.variables.size() == 5 && net.free_parameter_count() == 10 && err < 1e-9 && secs < 1.0;
  return {ok, "P(Xray=positive)=" + fmt("%.12g", want[0]) + " max error " + fmt("%.3g", err) + " in " +
                  fmt("%.3f s", secs)};
}

Outcome mode_agreement() {
  std::vector<std::string> sources;
  for (const std::string& name : kBenchmarks) sources.push_back(testing::read_benchmark(name));
  sources.push_back(pretty_print(net_to_program(parse_bif(testing::read_benchmark("cancer.bif")), "Dyspnoea")));
  double diff = 0;
  for (const std::string& src : sources) {
    Program parsed = parse_program(src);
    std::vector<double> a = testing::compiled_distribution(parsed, CompileMode::Modular);
    std::vector<double> b = testing::compiled_distribution(parsed, CompileMode::Inline);
    if (a.size() != b.size()) return {false, "result shapes differ"};
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return {diff <= 1e-12, std::to_string(sources.size()) + " programs, max difference " + fmt("%.3g", diff)};
}

}  // namespace
}  // namespace bddppl

int main() {
  using namespace bddppl;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"chained-flips example with node annotations", chained_flips_example},
      {"let example", exlet},
      {"observation example", obsprog},
      {"observation through functions", observing_functions},
      {"diamond network size", diamond_network},
      {"scaling", scaling},
      {"oracle equivalence on random programs", oracle_equivalence},
      {"caesar cipher posterior", caesar},
      {"BDD engine properties", bdd_properties},
      {"conditional independence size bound", conditional_independence},
      {"Bayesian network pipeline", bif_pipeline},
      {"modular and inline agreement", mode_agreement},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
