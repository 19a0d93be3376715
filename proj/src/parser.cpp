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

#include "bddppl/parser.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <unordered_set>

namespace bddppl {

namespace {

enum class Tok { Ident, Keyword, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kKeywords = {
      "fun",  "let",  "in",       "if",   "then",    "else", "observe", "flip",
      "discrete", "int", "iterate", "true", "false", "T",    "F",       "fst",
      "snd",  "bool", "Bool"};
  return kKeywords;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      begin(t.span);
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        finish(t.span);
        out.push_back(std::move(t));
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '\'')) {
          advance();
        }
        t.text = std::string(text_.substr(t.span.begin_offset, pos_ - t.span.begin_offset));
        finish(t.span);
        if (t.text.rfind(kReservedPrefix, 0) == 0) {
          throw ParseError(t.span, "identifier '" + t.text + "' uses the reserved prefix '__'");
        }
        t.kind = keywords().count(t.text) ? Tok::Keyword : Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        lex_number();
        t.text = std::string(text_.substr(t.span.begin_offset, pos_ - t.span.begin_offset));
        finish(t.span);
        t.kind = Tok::Number;
      } else {
        static const char* kTwo[] = {"&&", "||", "=="};
        bool matched = false;
        for (const char* op : kTwo) {
          if (text_.substr(pos_, 2) == op) {
            advance();
            advance();
            t.text = op;
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (std::string_view("()[]{},:;=!+*/").find(c) == std::string_view::npos) {
            advance();
            finish(t.span);
            throw ParseError(t.span, std::string("unexpected character '") + c + "'");
          }
          advance();
          t.text = std::string(1, c);
        }
        finish(t.span);
        t.kind = Tok::Punct;
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void lex_number() {
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      int save_col = col_;
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;
        col_ = save_col;
      }
    }
  }

  void begin(SourceSpan& s) const {
    s.file = file_;
    s.start_line = line_;
    s.start_col = col_;
    s.begin_offset = pos_;
  }

  void finish(SourceSpan& s) const {
    s.end_line = line_;
    s.end_col = col_;
    s.end_offset = pos_;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    while (is_keyword("fun")) {
      FuncDef f = fundef();
      p.functions.push_back(std::move(f));
    }
    p.main = expr();
    if (peek().kind != Tok::End) fail("expected end of input", {"end of input"});
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool is_keyword(const char* kw) const {
    return peek().kind == Tok::Keyword && peek().text == kw;
  }

  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.span, message + ", found " + found, std::move(expected));
  }

  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'", {p});
    next();
  }

  void expect_keyword(const char* kw) {
    if (!is_keyword(kw)) fail(std::string("expected '") + kw + "'", {kw});
    next();
  }

  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier", {"identifier"});
    return next().text;
  }

  int integer() {
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
      fail("expected integer literal", {"integer"});
    }
    next();
    return std::atoi(t.text.c_str());
  }

  double number() {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail("expected number", {"number"});
    next();
    return std::strtod(t.text.c_str(), nullptr);
  }

  // number or a/b
  double probability(SourceSpan& span) {
    span = peek().span;
    double v = number();
    if (is_punct("/")) {
      next();
      double d = number();
      if (d == 0.0) throw ParseError(span, "division by zero in probability literal");
      v /= d;
    }
    close(span);
    return v;
  }

  void close(SourceSpan& s) const {
    const Token& last = toks_[pos_ == 0 ? 0 : pos_ - 1];
    s.end_line = last.span.end_line;
    s.end_col = last.span.end_col;
    s.end_offset = last.span.end_offset;
  }

  template <class F>
  ExprPtr spanned(const SourceSpan& start, F&& build) {
    ExprPtr e = build();
    auto copy = std::make_shared<Expr>(*e);
    copy->span = start;
    close(copy->span);
    return copy;
  }

  TypePtr type() {
    if (is_keyword("bool") || is_keyword("Bool")) {
      next();
      return Type::boolean();
    }
    if (is_keyword("int")) {
      next();
      expect_punct("(");
      SourceSpan s = peek().span;
      int n = integer();
      if (n < 1) throw ParseError(s, "integer type size must be at least 1");
      expect_punct(")");
      return Type::integer(n);
    }
    if (is_punct("(")) {
      next();
      std::vector<TypePtr> parts{type()};
      while (is_punct(",")) {
        next();
        parts.push_back(type());
      }
      expect_punct(")");
      TypePtr t = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;) t = Type::product(parts[i], t);
      return t;
    }
    fail("expected type", {"bool", "int", "("});
  }

  FuncDef fundef() {
    FuncDef f;
    f.span = peek().span;
    expect_keyword("fun");
    f.name = ident();
    expect_punct("(");
    do {
      if (!f.params.empty()) next();
      Param p;
      p.name = ident();
      expect_punct(":");
      p.type = type();
      f.params.push_back(std::move(p));
    } while (is_punct(","));
    expect_punct(")");
    expect_punct(":");
    f.return_type = type();
    expect_punct("{");
    f.body = expr();
    expect_punct("}");
    close(f.span);
    return f;
  }

  ExprPtr expr() {
    SourceSpan start = peek().span;
    if (is_keyword("let")) {
      next();
      std::string x = ident();
      expect_punct("=");
      ExprPtr bound = expr();
      expect_keyword("in");
      ExprPtr body = expr();
      return spanned(start, [&] { return mk_let(x, bound, body); });
    }
    if (is_keyword("if")) {
      next();
      ExprPtr g = expr();
      expect_keyword("then");
      ExprPtr t = expr();
      expect_keyword("else");
      ExprPtr e = expr();
      return spanned(start, [&] { return mk_ite(g, t, e); });
    }
    if (is_keyword("observe")) {
      next();
      ExprPtr a = expr();
      return spanned(start, [&] { return mk_observe(a); });
    }
    return binary(0);
  }

  // levels: 0 '==', 1 '||', 2 '&&', 3 '+', 4 '*'
  ExprPtr binary(int level) {
    static const char* kOps[] = {"==", "||", "&&", "+", "*"};
    if (level == 5) return unary();
    SourceSpan start = peek().span;
    ExprPtr lhs = binary(level + 1);
    while (is_punct(kOps[level])) {
      next();
      ExprPtr rhs = binary(level + 1);
      lhs = spanned(start, [&] {
        switch (level) {
          case 0: return mk_eq(lhs, rhs);
          case 1: return mk_or(lhs, rhs);
          case 2: return mk_and(lhs, rhs);
          case 3: return mk_int_add(lhs, rhs);
          default: return mk_int_mul(lhs, rhs);
        }
      });
    }
    return lhs;
  }

  ExprPtr unary() {
    SourceSpan start = peek().span;
    if (is_punct("!")) {
      next();
      ExprPtr a = unary();
      return spanned(start, [&] { return mk_not(a); });
    }
    if (is_keyword("fst") || is_keyword("snd")) {
      bool first = peek().text == "fst";
      next();
      ExprPtr a = unary();
      return spanned(start, [&] { return first ? mk_fst(a) : mk_snd(a); });
    }
    return atom();
  }

  ExprPtr atom() {
    SourceSpan start = peek().span;
    const Token& t = peek();
    if (t.kind == Tok::Keyword) {
      if (t.text == "true" || t.text == "T" || t.text == "false" || t.text == "F") {
        bool v = t.text == "true" || t.text == "T";
        next();
        return spanned(start, [&] { return mk_bool(v); });
      }
      if (t.text == "let" || t.text == "if" || t.text == "observe") return expr();
      if (t.text == "flip") {
        next();
        bool paren = is_punct("(");
        if (paren) next();
        SourceSpan ps;
        double theta = probability(ps);
        if (paren) expect_punct(")");
        if (!(theta >= 0.0 && theta <= 1.0)) {
          throw ParseError(ps, "flip probability " + std::to_string(theta) +
                                   " is outside [0, 1]");
        }
        return spanned(start, [&] { return mk_flip(theta); });
      }
      if (t.text == "discrete") {
        next();
        expect_punct("(");
        std::vector<double> ps;
        do {
          if (!ps.empty()) next();
          SourceSpan s;
          ps.push_back(probability(s));
        } while (is_punct(","));
        expect_punct(")");
        return spanned(start, [&] { return mk_discrete(ps); });
      }
      if (t.text == "int") {
        next();
        expect_punct("(");
        SourceSpan s = peek().span;
        int n = integer();
        expect_punct(",");
        int k = integer();
        expect_punct(")");
        close(s);
        if (n < 1 || k >= n) {
          throw ParseError(s, "integer literal needs size >= 1 and 0 <= value < size");
        }
        return spanned(start, [&] { return mk_int(n, k); });
      }
      if (t.text == "iterate") {
        next();
        expect_punct("(");
        std::string f = ident();
        expect_punct(",");
        ExprPtr init = expr();
        expect_punct(",");
        int k = integer();
        expect_punct(")");
        return spanned(start, [&] { return mk_iterate(f, init, k); });
      }
      fail("expected expression", {"expression"});
    }
    if (t.kind == Tok::Ident) {
      std::string name = next().text;
      if (is_punct("(")) {
        next();
        std::vector<ExprPtr> args{expr()};
        while (is_punct(",")) {
          next();
          args.push_back(expr());
        }
        expect_punct(")");
        return spanned(start, [&] { return mk_call(name, args); });
      }
      return spanned(start, [&] { return mk_ident(name); });
    }
    if (is_punct("(")) {
      next();
      std::vector<ExprPtr> parts{expr()};
      while (is_punct(",")) {
        next();
        parts.push_back(expr());
      }
      expect_punct(")");
      if (parts.size() == 1) return parts[0];
      return spanned(start, [&] {
        ExprPtr e = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;) e = mk_tuple(parts[i], e);
        return e;
      });
    }
    fail("expected expression", {"expression"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---- printing -------------------------------------------------------------

std::string format_number(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  std::string s = buf;
  // Keep the literal recognisable as a number even without a fraction part.
  return s;
}

// Precedence contexts: 0 any, 1 eq, 2 or, 3 and, 4 add, 5 mul, 6 unary, 7 atom.
void print(const Expr& e, int ctx, std::string& out);

void wrap(bool paren, std::string& out, auto&& body) {
  if (paren) out += "(";
  body();
  if (paren) out += ")";
}

void print_binary(const Expr& e, int level, const char* op, int ctx, std::string& out) {
  wrap(ctx > level, out, [&] {
    print(e.kid(0), level, out);
    out += " ";
    out += op;
    out += " ";
    print(e.kid(1), level + 1, out);
  });
}

void print(const Expr& e, int ctx, std::string& out) {
  switch (e.kind) {
    case ExprKind::BoolLit:
      out += e.bool_value ? "true" : "false";
      return;
    case ExprKind::Ident:
      out += e.name;
      return;
    case ExprKind::Let:
      wrap(ctx > 0, out, [&] {
        out += "let " + e.name + " = ";
        print(e.kid(0), 0, out);
        out += " in\n";
        print(e.kid(1), 0, out);
      });
      return;
    case ExprKind::Ite:
      wrap(ctx > 0, out, [&] {
        out += "if ";
        print(e.kid(0), 0, out);
        out += " then ";
        print(e.kid(1), 0, out);
        out += " else ";
        print(e.kid(2), 0, out);
      });
      return;
    case ExprKind::Observe:
      wrap(ctx > 0, out, [&] {
        out += "observe ";
        print(e.kid(0), 0, out);
      });
      return;
    case ExprKind::Eq: print_binary(e, 1, "==", ctx, out); return;
    case ExprKind::Or: print_binary(e, 2, "||", ctx, out); return;
    case ExprKind::And: print_binary(e, 3, "&&", ctx, out); return;
    case ExprKind::IntAdd: print_binary(e, 4, "+", ctx, out); return;
    case ExprKind::IntMul: print_binary(e, 5, "*", ctx, out); return;
    case ExprKind::Not:
    case ExprKind::Fst:
    case ExprKind::Snd:
      wrap(ctx > 6, out, [&] {
        out += e.kind == ExprKind::Not ? "!" : e.kind == ExprKind::Fst ? "fst " : "snd ";
        print(e.kid(0), 6, out);
      });
      return;
    case ExprKind::Tuple:
      out += "(";
      print(e.kid(0), 0, out);
      out += ", ";
      print(e.kid(1), 0, out);
      out += ")";
      return;
    case ExprKind::Flip:
      out += "flip " + format_number(e.theta);
      return;
    case ExprKind::Discrete:
      out += "discrete(";
      for (std::size_t i = 0; i < e.params.size(); ++i) {
        if (i) out += ", ";
        out += format_number(e.params[i]);
      }
      out += ")";
      return;
    case ExprKind::IntLit:
      out += "int(" + std::to_string(e.int_size) + ", " + std::to_string(e.int_value) + ")";
      return;
    case ExprKind::Iterate:
      out += "iterate(" + e.name + ", ";
      print(e.kid(0), 0, out);
      out += ", " + std::to_string(e.int_value) + ")";
      return;
    case ExprKind::Call:
      out += e.name + "(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        print(e.kid(i), 0, out);
      }
      out += ")";
      return;
  }
}

}  // namespace

Program parse_program(std::string_view text, const std::string& file) {
  Lexer lexer(text, file);
  Parser parser(lexer.run());
  return parser.program();
}

std::string pretty_print(const Type& type) { return type.to_string(); }

std::string pretty_print(const Expr& expr) {
  std::string out;
  print(expr, 0, out);
  return out;
}

std::string pretty_print(const Program& program) {
  std::string out;
  for (const FuncDef& f : program.functions) {
    out += "fun " + f.name + "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) out += ", ";
      out += f.params[i].name + ": " + f.params[i].type->to_string();
    }
    out += "): " + f.return_type->to_string() + " {\n";
    print(*f.body, 0, out);
    out += "\n}\n";
  }
  print(*program.main, 0, out);
  out += "\n";
  return out;
}

}  // namespace bddppl
