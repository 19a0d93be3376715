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

#include "bddppl/bif.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <unordered_map>

#include "bddppl/errors.hpp"

namespace bddppl {

namespace {

struct Token {
  enum class Kind { Word, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourceSpan span;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '+' ||
         c == '\'' || c == '"';
}

std::vector<Token> lex(std::string_view text, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto here = [&]() {
    SourceSpan s;
    s.file = file;
    s.start_line = s.end_line = line;
    s.start_col = s.end_col = col;
    s.begin_offset = s.end_offset = i;
    return s;
  };
  auto bump = [&]() {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump();
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') bump();
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      SourceSpan start = here();
      bump();
      bump();
      while (i + 1 < text.size() && !(text[i] == '*' && text[i + 1] == '/')) bump();
      if (i + 1 >= text.size()) throw Error(ErrorKind::BifParse, "unterminated comment", start);
      bump();
      bump();
      continue;
    }
    Token t;
    t.span = here();
    if (std::string_view("{}()[]|,;").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      bump();
    } else if (is_word_char(c)) {
      t.kind = Token::Kind::Word;
      while (i < text.size() && is_word_char(text[i])) {
        if (text[i] != '"') t.text.push_back(text[i]);
        bump();
      }
    } else {
      throw Error(ErrorKind::BifParse, std::string("unexpected character '") + c + "'", t.span);
    }
    t.span.end_line = line;
    t.span.end_col = col;
    t.span.end_offset = i;
    out.push_back(std::move(t));
  }
  Token end;
  end.span = here();
  out.push_back(end);
  return out;
}

class BifParser {
 public:
  BifParser(std::string_view text, const std::string& file) : toks_(lex(text, file)) {}

  BayesNet run() {
    while (peek().kind != Token::Kind::End) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Word && t.text == "network") {
        parse_network();
      } else if (t.kind == Token::Kind::Word && t.text == "variable") {
        parse_variable();
      } else if (t.kind == Token::Kind::Word && t.text == "probability") {
        parse_probability();
      } else {
        fail(t, "expected 'network', 'variable' or 'probability'");
      }
    }
    for (std::size_t v = 0; v < net_.variables.size(); ++v) {
      if (!defined_[v]) {
        throw Error(ErrorKind::MalformedCpt,
                    "variable '" + net_.variables[v].name + "' has no probability block", decl_[v]);
      }
    }
    net_.topological_order();
    return std::move(net_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::BifParse, msg + ", found " + found, t.span);
  }

  const Token& expect(const std::string& punct) {
    const Token& t = next();
    if (t.kind != Token::Kind::Punct || t.text != punct) fail(t, "expected '" + punct + "'");
    return t;
  }

  bool accept(const std::string& punct) {
    if (peek().kind == Token::Kind::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }

  const Token& word(const std::string& what) {
    const Token& t = next();
    if (t.kind != Token::Kind::Word) fail(t, "expected " + what);
    if (t.text == "property") {
      throw Error(ErrorKind::BifParse, "'property' entries are not supported", t.span);
    }
    return t;
  }

  double number(const Token& t) {
    char* end = nullptr;
    double v = std::strtod(t.text.c_str(), &end);
    if (t.text.empty() || *end != '\0' || !std::isfinite(v)) fail(t, "expected a probability");
    return v;
  }

  void skip_block() {
    int depth = 1;
    while (depth > 0) {
      const Token& t = next();
      if (t.kind == Token::Kind::End) fail(t, "unterminated block");
      if (t.kind == Token::Kind::Word && t.text == "property") {
        throw Error(ErrorKind::BifParse, "'property' entries are not supported", t.span);
      }
      if (t.kind == Token::Kind::Punct && t.text == "{") ++depth;
      if (t.kind == Token::Kind::Punct && t.text == "}") --depth;
    }
  }

  void parse_network() {
    next();
    net_.name = word("a network name").text;
    expect("{");
    skip_block();
  }

  void parse_variable() {
    next();
    const Token& name = word("a variable name");
    if (index_.count(name.text)) {
      throw Error(ErrorKind::BifParse, "variable '" + name.text + "' declared twice", name.span);
    }
    expect("{");
    const Token& type = word("'type'");
    if (type.text != "type") fail(type, "expected 'type'");
    const Token& kind = word("'discrete'");
    if (kind.text != "discrete") {
      throw Error(ErrorKind::BifParse, "only discrete variables are supported", kind.span);
    }
    expect("[");
    const Token& count_tok = word("a state count");
    double count = number(count_tok);
    if (count < 1 || count != std::floor(count)) fail(count_tok, "expected a positive state count");
    expect("]");
    expect("{");
    BifVariable var;
    var.name = name.text;
    std::set<std::string> seen;
    do {
      const Token& s = word("a state name");
      if (!seen.insert(s.text).second) {
        throw Error(ErrorKind::BifParse, "state '" + s.text + "' listed twice", s.span);
      }
      var.states.push_back(s.text);
    } while (accept(","));
    expect("}");
    if (var.states.size() != static_cast<std::size_t>(count)) {
      throw Error(ErrorKind::BifParse,
                  "variable '" + var.name + "' declares " + count_tok.text + " states but lists " +
                      std::to_string(var.states.size()),
                  count_tok.span);
    }
    expect(";");
    expect("}");
    index_[var.name] = net_.variables.size();
    net_.variables.push_back(std::move(var));
    net_.parents.emplace_back();
    net_.cpts.emplace_back();
    defined_.push_back(false);
    decl_.push_back(name.span);
  }

  std::size_t variable(const Token& t) {
    auto it = index_.find(t.text);
    if (it == index_.end()) {
      throw Error(ErrorKind::BifParse, "unknown variable '" + t.text + "'", t.span);
    }
    return it->second;
  }

  std::vector<double> row(std::size_t var, const SourceSpan& at) {
    std::vector<double> r;
    do {
      const Token& t = next();
      if (t.kind == Token::Kind::Word && t.text == "default") {
        throw Error(ErrorKind::BifParse, "'default' rows are not supported", t.span);
      }
      if (t.kind != Token::Kind::Word) fail(t, "expected a probability");
      r.push_back(number(t));
    } while (accept(","));
    expect(";");
    const BifVariable& v = net_.variables[var];
    if (r.size() != v.states.size()) {
      throw Error(ErrorKind::MalformedCpt,
                  "row for '" + v.name + "' has " + std::to_string(r.size()) + " entries, expected " +
                      std::to_string(v.states.size()),
                  at);
    }
    double sum = 0.0;
    for (double p : r) {
      if (p < 0.0) throw Error(ErrorKind::MalformedCpt, "negative probability in CPT of '" + v.name + "'", at);
      sum += p;
    }
    if (std::fabs(sum - 1.0) > kCptRowTolerance) {
      throw Error(ErrorKind::MalformedCpt,
                  "row for '" + v.name + "' sums to " + std::to_string(sum) + ", expected 1", at);
    }
    return r;
  }

  void parse_probability() {
    next();
    expect("(");
    const Token& child_tok = word("a variable name");
    std::size_t child = variable(child_tok);
    if (defined_[child]) {
      throw Error(ErrorKind::BifParse, "second probability block for '" + child_tok.text + "'",
                  child_tok.span);
    }
    std::vector<std::size_t> parents;
    if (accept("|")) {
      do {
        std::size_t p = variable(word("a parent name"));
        parents.push_back(p);
      } while (accept(","));
    }
    expect(")");
    expect("{");
    net_.parents[child] = parents;
    std::size_t rows = net_.row_count(child);
    std::vector<std::vector<double>> cpt(rows);
    std::vector<char> filled(rows, 0);
    while (!accept("}")) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Word && t.text == "table") {
        next();
        if (!parents.empty()) {
          throw Error(ErrorKind::BifParse, "'table' is only supported for variables without parents",
                      t.span);
        }
        cpt[0] = row(child, t.span);
        filled[0] = 1;
        continue;
      }
      if (t.kind == Token::Kind::Punct && t.text == "(") {
        SourceSpan at = t.span;
        next();
        std::size_t idx = 0;
        for (std::size_t k = 0; k < parents.size(); ++k) {
          if (k > 0) expect(",");
          const Token& s = word("a parent state");
          const auto& states = net_.variables[parents[k]].states;
          std::size_t si = 0;
          while (si < states.size() && states[si] != s.text) ++si;
          if (si == states.size()) {
            throw Error(ErrorKind::MalformedCpt,
                        "'" + s.text + "' is not a state of '" + net_.variables[parents[k]].name + "'",
                        s.span);
          }
          idx = idx * states.size() + si;
        }
        expect(")");
        if (filled[idx]) throw Error(ErrorKind::MalformedCpt, "duplicate CPT row", at);
        cpt[idx] = row(child, at);
        filled[idx] = 1;
        continue;
      }
      fail(t, "expected 'table' or a parenthesized row");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (!filled[r]) {
        throw Error(ErrorKind::MalformedCpt,
                    "CPT of '" + child_tok.text + "' has " + std::to_string(rows) + " rows, some missing",
                    child_tok.span);
      }
    }
    net_.cpts[child] = std::move(cpt);
    defined_[child] = true;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  BayesNet net_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> defined_;
  std::vector<SourceSpan> decl_;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"fun", "let",  "in",   "if",    "then", "else", "observe",
                                          "flip", "discrete", "int", "iterate", "true", "false",
                                          "T",   "F",    "fst",  "snd",   "bool", "Bool"};
  return k;
}

}  // namespace

std::optional<std::size_t> BayesNet::index_of(const std::string& n) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == n) return i;
  }
  return std::nullopt;
}

std::size_t BayesNet::row_count(std::size_t var) const {
  std::size_t r = 1;
  for (std::size_t p : parents.at(var)) r *= variables[p].states.size();
  return r;
}

std::vector<std::size_t> BayesNet::topological_order() const {
  const std::size_t n = variables.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t p : parents[v]) {
      children[p].push_back(v);
      ++indegree[v];
    }
  }
  // Smallest declaration index first, for a deterministic order.
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.insert(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (std::size_t c : children[v]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }
  if (order.size() != n) {
    for (std::size_t v = 0; v < n; ++v) {
      if (indegree[v] != 0) {
        throw Error(ErrorKind::CyclicNetwork, "network has a cycle through '" + variables[v].name + "'");
      }
    }
  }
  return order;
}

std::size_t BayesNet::free_parameter_count() const {
  std::size_t k = 0;
  for (std::size_t v = 0; v < variables.size(); ++v) k += row_count(v) * (variables[v].states.size() - 1);
  return k;
}

BayesNet parse_bif(std::string_view text, const std::string& file) { return BifParser(text, file).run(); }

std::string program_name(const BayesNet& net, std::size_t var) {
  auto base = [&](std::size_t v) {
    std::string s;
    for (char c : net.variables.at(v).name) {
      s.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
    }
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '_' || keywords().count(s)) {
      s = "v_" + s;
    }
    return s;
  };
  std::string mine = base(var);
  // Disambiguate collisions after sanitizing by declaration index.
  for (std::size_t u = 0; u < net.variables.size(); ++u) {
    if (u != var && base(u) == mine) return mine + "_" + std::to_string(var);
  }
  return mine;
}

Program net_to_program(const BayesNet& net, const std::string& query) {
  auto q = net.index_of(query);
  if (!q) throw Error(ErrorKind::UnknownQueryVariable, "network has no variable '" + query + "'");

  auto states = [&](std::size_t v) { return static_cast<int>(net.variables[v].states.size()); };
  auto dispatch = [&](auto&& self, std::size_t v, std::size_t k, std::size_t idx) -> ExprPtr {
    const auto& ps = net.parents[v];
    if (k == ps.size()) return mk_discrete(net.cpts[v][idx]);
    const std::size_t p = ps[k];
    const int m = states(p);
    ExprPtr out = self(self, v, k + 1, idx * m + (m - 1));
    for (int s = m - 1; s-- > 0;) {
      ExprPtr test = mk_eq(mk_ident(program_name(net, p)), mk_int(m, s));
      out = mk_ite(test, self(self, v, k + 1, idx * m + s), out);
    }
    return out;
  };

  std::vector<std::size_t> order = net.topological_order();
  ExprPtr body = mk_ident(program_name(net, *q));
  for (std::size_t i = order.size(); i-- > 0;) {
    std::size_t v = order[i];
    body = mk_let(program_name(net, v), dispatch(dispatch, v, 0, 0), body);
  }
  Program p;
  p.main = body;
  return p;
}

}  // namespace bddppl
