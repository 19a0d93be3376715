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

#include "bddppl/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "bddppl/bif.hpp"
#include "bddppl/desugar.hpp"
#include "bddppl/errors.hpp"
#include "bddppl/infer.hpp"
#include "bddppl/oracle.hpp"
#include "bddppl/parser.hpp"

namespace bddppl {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void leaf_paths(const TypePtr& t, const std::string& prefix, std::vector<std::string>& out) {
  if (t->is_bool()) {
    out.push_back(prefix.empty() ? "value" : prefix);
    return;
  }
  leaf_paths(t->left(), prefix.empty() ? "l" : prefix + ".l", out);
  leaf_paths(t->right(), prefix.empty() ? "r" : prefix + ".r", out);
}

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::Internal ? 2 : 1; }

}  // namespace

const char* query_kind_name(QueryKind q) {
  switch (q) {
    case QueryKind::Distribution:
      return "distribution";
    case QueryKind::Marginals:
      return "marginals";
    case QueryKind::Accepting:
      return "accepting";
  }
  return "?";
}

InferReport infer_source(const std::string& text, const std::string& file, const RunConfig& config) {
  InferReport r;
  r.query = config.query;
  r.mode = config.mode;

  auto t0 = Clock::now();
  Program parsed = parse_program(text, file);
  LoweredProgram lowered = lower_program(parsed);
  BddOptions options;
  options.order = config.order;
  CompiledProgram compiled = compile_program(lowered.core, config.mode, std::move(options));
  r.compile_ms = ms_since(t0);

  BddManager& mgr = *compiled.manager;
  const CompiledExpr& expr = compiled.expr;
  auto t1 = Clock::now();
  Inference inf(mgr, expr);
  r.accepting = inf.accepting_probability();
  std::vector<Value> values;
  switch (config.query) {
    case QueryKind::Distribution: {
      Distribution d = inf.full_distribution(lowered.surface_type);
      for (const Value& v : inhabitants(lowered.surface_type)) {
        values.push_back(v);
        r.results.emplace_back(format_value(v, lowered.surface_type), d.at(v));
      }
      break;
    }
    case QueryKind::Marginals:
      for (const Marginal& m : inf.marginals()) {
        r.results.emplace_back(m.path.empty() ? "value" : m.path, m.probability);
      }
      break;
    case QueryKind::Accepting:
      r.results.emplace_back("accepting", r.accepting);
      break;
  }
  r.query_ms = ms_since(t1);
  r.flips = expr.weights.size();
  r.nodes = mgr.node_count(roots_of(expr));

  if (config.dot_path) {
    std::vector<std::pair<std::string, NodeRef>> roots;
    std::vector<std::string> names;
    leaf_paths(lowered.core_type, "", names);
    std::vector<NodeRef> leaves = expr.formula.leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i) roots.emplace_back(names.at(i), leaves[i]);
    roots.emplace_back("accepting", expr.accepting);
    r.dot = mgr.export_dot(roots);
  }

  if (config.oracle_check) {
    OracleResult o = enumerate_program(lowered.surface);
    std::vector<double> expected;
    switch (config.query) {
      case QueryKind::Distribution:
        for (const Value& v : values) expected.push_back(mass_of(o.distribution, v));
        break;
      case QueryKind::Marginals: {
        std::size_t n = static_cast<std::size_t>(lowered.core_type->leaf_count());
        expected.assign(n, 0.0);
        for (const auto& [v, p] : o.distribution) {
          std::vector<bool> bits = leaves(v);
          for (std::size_t i = 0; i < n; ++i) {
            if (bits.at(i)) expected[i] += p;
          }
        }
        break;
      }
      case QueryKind::Accepting:
        expected.push_back(o.accepting);
        break;
    }
    double err = std::fabs(o.accepting - r.accepting);
    for (std::size_t i = 0; i < r.results.size(); ++i) {
      err = std::max(err, std::fabs(expected.at(i) - r.results[i].second));
    }
    r.oracle_max_error = err;
    r.oracle_match = err < kOracleTolerance;
  }
  return r;
}

std::string format_table(const InferReport& r) {
  std::ostringstream out;
  out << "query: " << query_kind_name(r.query) << " (" << compile_mode_name(r.mode) << ")\n";
  std::size_t width = 5;
  for (const auto& [name, p] : r.results) width = std::max(width, name.size());
  for (const auto& [name, p] : r.results) {
    out << name << std::string(width - name.size() + 2, ' ') << fmt12(p) << "\n";
  }
  out << "accepting: " << fmt12(r.accepting) << "\n";
  out << "flips: " << r.flips << "\n";
  out << "nodes: " << r.nodes << "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "compile_ms: %.3f\nquery_ms: %.3f\n", r.compile_ms, r.query_ms);
  out << buf;
  if (r.oracle_match) {
    out << (*r.oracle_match ? "MATCH" : "MISMATCH") << " (max error " << fmt12(r.oracle_max_error) << ")\n";
  }
  return out.str();
}

std::string format_json(const InferReport& r) {
  nlohmann::json j;
  j["accepting"] = r.accepting;
  j["query"] = query_kind_name(r.query);
  j["mode"] = compile_mode_name(r.mode);
  nlohmann::json results = nlohmann::json::array();
  for (const auto& [name, p] : r.results) results.push_back({{"name", name}, {"probability", p}});
  j["results"] = results;
  j["flips"] = r.flips;
  j["nodes"] = r.nodes;
  j["compile_ms"] = r.compile_ms;
  j["query_ms"] = r.query_ms;
  if (r.oracle_match) {
    j["oracle"] = {{"match", *r.oracle_match}, {"max_error", r.oracle_max_error}};
  }
  return j.dump(2) + "\n";
}

int run_infer(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::string text = read_file(config.input_path);
    InferReport r = infer_source(text, config.input_path, config);
    if (config.dot_path) {
      std::ofstream dot(*config.dot_path);
      if (!dot) {
        err << "error: cannot write '" << *config.dot_path << "'\n";
        return 1;
      }
      dot << r.dot;
    }
    out << (config.output == OutputFormat::Json ? format_json(r) : format_table(r));
    if (r.oracle_match && !*r.oracle_match) return 2;
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

int run_translate(const std::string& bif_path, const std::string& query, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  try {
    BayesNet net = parse_bif(read_file(bif_path), bif_path);
    Program p = net_to_program(net, query);
    std::ofstream file(out_path);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    file << pretty_print(p);
    out << "network " << (net.name.empty() ? "<unnamed>" : net.name) << ": " << net.variables.size()
        << " variables, " << net.free_parameter_count() << " free parameters\n";
    for (std::size_t v : net.topological_order()) {
      const BifVariable& var = net.variables[v];
      out << "  " << program_name(net, v) << " : int(" << var.states.size() << ")  {";
      for (std::size_t s = 0; s < var.states.size(); ++s) out << (s ? ", " : "") << s << "=" << var.states[s];
      out << "}" << (var.name == query ? "  <- query" : "") << "\n";
    }
    out << "wrote " << out_path << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

const std::vector<std::string>& bench_suites() {
  static const std::vector<std::string> s = {"chained", "diamond", "ladder", "caesar"};
  return s;
}

std::vector<int> bench_grid(int max_n) {
  std::vector<int> g;
  for (int n = 1; n < max_n; n *= 2) g.push_back(n);
  if (max_n >= 1) g.push_back(max_n);
  return g;
}

std::string bench_program(const std::string& suite, int n) {
  std::ostringstream p;
  if (suite == "chained") {
    p << "let x0 = flip 0.1 in\n";
    for (int i = 1; i <= 2 * n; ++i) {
      const bool odd = i % 2 == 1;
      p << "let x" << i << " = if x" << i - 1 << " then flip " << (odd ? "0.2" : "0.4") << " else flip "
        << (odd ? "0.3" : "0.5") << " in\n";
    }
    p << "x" << 2 * n << "\n";
  } else if (suite == "diamond") {
    p << "fun diamond(s1: bool): bool {\n"
         "  let route = flip 0.5 in\n"
         "  let s2 = if route then s1 else false in\n"
         "  let s3 = if route then false else s1 in\n"
         "  let drop = flip 0.0001 in\n"
         "  s2 || (s3 && !drop)\n"
         "}\n";
    p << "let net1 = diamond(true) in\n";
    for (int i = 2; i <= n; ++i) p << "let net" << i << " = diamond(net" << i - 1 << ") in\n";
    p << "net" << n << "\n";
  } else if (suite == "ladder") {
    p << "fun ladder(s: (bool, bool)): (bool, bool) {\n"
         "  let a = fst s in\n"
         "  let b = snd s in\n"
         "  let ra = flip 0.5 in\n"
         "  let rb = flip 0.5 in\n"
         "  let drop = flip 0.0001 in\n"
         "  let up = (a && ra) || (b && rb) in\n"
         "  let down = (a && !ra) || (b && !rb) in\n"
         "  (up, down && !drop)\n"
         "}\n";
    p << "let r = iterate(ladder, (true, false), " << n << ") in\nfst r || snd r\n";
  } else if (suite == "caesar") {
    static const int kCipher[] = {1, 3, 2, 1, 0, 2, 3, 3};
    p << "fun encrypt(key: int(4), c: int(4)): bool {\n"
         "  let r = discrete(0.5, 0.25, 0.15, 0.1) in\n"
         "  let ct = r + key in\n"
         "  let fail = flip 0.0001 in\n"
         "  if fail then true else observe ct == c\n"
         "}\n";
    p << "let k = discrete(0.25, 0.25, 0.25, 0.25) in\n";
    for (int i = 1; i <= n; ++i) {
      p << "let o" << i << " = encrypt(k, int(4, " << kCipher[(i - 1) % 8] << ")) in\n";
    }
    p << "k\n";
  } else {
    throw Error(ErrorKind::Parse, "unknown benchmark suite '" + suite + "'");
  }
  return p.str();
}

int run_bench(const std::string& suite, int max_n, const std::string& csv_path, std::ostream& out,
              std::ostream& err) {
  try {
    bench_program(suite, 1);
    if (max_n < 1) throw Error(ErrorKind::Parse, "--max-n must be at least 1");
    std::ofstream csv(csv_path);
    if (!csv) {
      err << "error: cannot write '" << csv_path << "'\n";
      return 1;
    }
    csv << "n,compile_ms,infer_ms,nodes\n";
    out << "n,compile_ms,infer_ms,nodes\n";
    for (int n : bench_grid(max_n)) {
      RunConfig config;
      InferReport r = infer_source(bench_program(suite, n), suite, config);
      char line[160];
      std::snprintf(line, sizeof line, "%d,%.3f,%.3f,%zu\n", n, r.compile_ms, r.query_ms, r.nodes);
      csv << line;
      out << line;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bddppl
