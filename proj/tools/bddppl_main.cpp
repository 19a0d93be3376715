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

#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bddppl/cli.hpp"

int main(int argc, char** argv) {
  using namespace bddppl;
  CLI::App app{"Exact inference for discrete probabilistic programs via BDD compilation"};
  app.require_subcommand(1);

  RunConfig config;
  std::string mode = "modular";
  std::string query = "distribution";
  std::string order;
  bool json = false;
  std::string dot;
  CLI::App* infer = app.add_subcommand("infer", "compile a program and run a query");
  infer->add_option("file", config.input_path, "program (.dice)")->required();
  infer->add_option("--mode", mode, "function compilation: modular or inline")
      ->check(CLI::IsMember({"modular", "inline"}));
  infer->add_option("--query", query, "distribution, marginals or accepting")
      ->check(CLI::IsMember({"distribution", "marginals", "accepting"}));
  infer->add_flag("--json", json, "machine-readable output");
  infer->add_option("--dot", dot, "write the compiled BDD as Graphviz");
  infer->add_flag("--oracle-check", config.oracle_check, "compare against exhaustive enumeration");
  infer->add_option("--order", order, "comma-separated flip names to place first (f1,f2,...)");

  std::string bif_path, var, out_path;
  CLI::App* translate = app.add_subcommand("translate", "convert a BIF network into a program");
  translate->add_option("file", bif_path, "network (.bif)")->required();
  translate->add_option("--query", var, "query variable")->required();
  translate->add_option("-o", out_path, "output program")->required();

  std::string suite, csv;
  int max_n = 256;
  CLI::App* bench = app.add_subcommand("bench", "time a scaling suite");
  bench->add_option("suite", suite, "chained, diamond, ladder or caesar")->required();
  bench->add_option("--max-n", max_n, "largest size parameter");
  bench->add_option("-o", csv, "CSV output")->required();

  CLI11_PARSE(app, argc, argv);

  if (*infer) {
    config.mode = mode == "inline" ? CompileMode::Inline : CompileMode::Modular;
    config.query = query == "marginals"   ? QueryKind::Marginals
                   : query == "accepting" ? QueryKind::Accepting
                                          : QueryKind::Distribution;
    config.output = json ? OutputFormat::Json : OutputFormat::Table;
    if (!dot.empty()) config.dot_path = dot;
    std::stringstream ss(order);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) config.order.push_back(item);
    }
    return run_infer(config, std::cout, std::cerr);
  }
  if (*translate) return run_translate(bif_path, var, out_path, std::cout, std::cerr);
  return run_bench(suite, max_n, csv, std::cout, std::cerr);
}
