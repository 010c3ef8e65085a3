// Recursive descent parser and canonical renderer for `.primo` rule files.
//
//   spec  := stmt*
//   stmt  := input | rule
//   input := "input" lit "=" NUM ";"
//   rule  := "rule" ID ":" [ante ("&" ante)*] "->" "(" NUM ")" lit ";"
//   ante  := lit | "not" "[" NUM "]" lit
//   lit   := "~"? ID
//
// NUM is a plain decimal with at most 9 fractional digits. `#` starts a line
// comment.
#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "primo/core.hpp"

namespace primo {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
  std::string to_string() const {
    return std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
  }
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> diags)
      : std::runtime_error(join(diags)), diagnostics_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string join(const std::vector<Diagnostic>& diags) {
    std::string s;
    for (const auto& d : diags) {
      if (!s.empty()) s += '\n';
      s += d.to_string();
    }
    return s;
  }
  std::vector<Diagnostic> diagnostics_;
};

struct InputDecl {
  Literal literal;
  double confidence = 0.0;
  SourceSpan span;
};

struct RuleDecl {
  Justification rule;
  SourceSpan span;
};

struct PrimoSpec {
  std::vector<InputDecl> inputs;
  std::vector<RuleDecl> rules;

  /// Equality of semantic content: order and source positions ignored.
  bool same_content(const PrimoSpec& other) const {
    auto key_inputs = [](const PrimoSpec& s) {
      std::vector<std::pair<Literal, double>> v;
      for (const auto& i : s.inputs) v.emplace_back(i.literal, i.confidence);
      std::sort(v.begin(), v.end());
      return v;
    };
    auto key_rules = [](const PrimoSpec& s) {
      std::vector<Justification> v;
      for (const auto& r : s.rules) v.push_back(r.rule);
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
      return v;
    };
    return key_inputs(*this) == key_inputs(other) && key_rules(*this) == key_rules(other);
  }
};

namespace detail {

enum class Tok { Ident, Number, Tilde, Amp, Arrow, LParen, RParen, LBracket, RBracket, Colon, Semi, Equals, End };

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Arrow: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.span = {line_, col_};
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(b, pos_ - b));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      if (pos_ < src_.size() && src_[pos_] == '.') {
        advance();
        std::size_t frac = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        if (pos_ == frac) throw ParseError({{t.span, "malformed number: digits expected after '.'"}});
        if (pos_ - frac > 9) throw ParseError({{t.span, "number has more than 9 fractional digits"}});
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E'))
        throw ParseError({{t.span, "scientific notation is not supported"}});
      t.kind = Tok::Number;
      t.text = std::string(src_.substr(b, pos_ - b));
      return t;
    }
    advance();
    switch (c) {
      case '~': t.kind = Tok::Tilde; break;
      case '&': t.kind = Tok::Amp; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '[': t.kind = Tok::LBracket; break;
      case ']': t.kind = Tok::RBracket; break;
      case ':': t.kind = Tok::Colon; break;
      case ';': t.kind = Tok::Semi; break;
      case '=': t.kind = Tok::Equals; break;
      case '-':
        if (pos_ < src_.size() && src_[pos_] == '>') {
          advance();
          t.kind = Tok::Arrow;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError({{t.span, std::string("unexpected character '") + c + "'"}});
    }
    t.text = tok_name(t.kind);
    return t;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  PrimoSpec parse() {
    PrimoSpec spec;
    while (tok_.kind != Tok::End) {
      if (is_keyword("input")) {
        spec.inputs.push_back(parse_input());
      } else if (is_keyword("rule")) {
        spec.rules.push_back(parse_rule());
      } else {
        syntax_error({"'input'", "'rule'"});
      }
    }
    check_semantics(spec);
    if (!semantic_.empty()) throw ParseError(std::move(semantic_));
    return spec;
  }

 private:
  bool is_keyword(std::string_view kw) const { return tok_.kind == Tok::Ident && tok_.text == kw; }

  [[noreturn]] void syntax_error(std::vector<std::string> expected) {
    std::sort(expected.begin(), expected.end());
    std::string msg = "syntax error: found ";
    msg += tok_.kind == Tok::Ident ? "'" + tok_.text + "'" : (tok_.kind == Tok::Number ? tok_.text : tok_name(tok_.kind));
    msg += ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    throw ParseError({{tok_.span, msg}});
  }

  Token expect(Tok kind) {
    if (tok_.kind != kind) syntax_error({tok_name(kind)});
    Token t = tok_;
    tok_ = lex_.next();
    return t;
  }

  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) syntax_error({"'" + std::string(kw) + "'"});
    tok_ = lex_.next();
  }

  double number(bool zero_allowed, const char* what) {
    Token t = expect(Tok::Number);
    double v = 0.0;
    std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    bool ok = zero_allowed ? (v >= 0.0 && v <= 1.0) : (v > 0.0 && v <= 1.0);
    if (!ok)
      semantic_.push_back({t.span, std::string(what) + " " + t.text + " outside " + (zero_allowed ? "[0,1]" : "(0,1]")});
    return v;
  }

  Literal literal() {
    bool neg = false;
    if (tok_.kind == Tok::Tilde) {
      neg = true;
      tok_ = lex_.next();
    }
    if (tok_.kind == Tok::Ident && (tok_.text == "not" || tok_.text == "input" || tok_.text == "rule"))
      syntax_error({"identifier"});
    return Literal{expect(Tok::Ident).text, neg};
  }

  InputDecl parse_input() {
    InputDecl d;
    d.span = tok_.span;
    expect_keyword("input");
    d.literal = literal();
    expect(Tok::Equals);
    d.confidence = number(true, "input confidence");
    expect(Tok::Semi);
    return d;
  }

  void antecedent(Justification& j) {
    if (is_keyword("not")) {
      tok_ = lex_.next();
      expect(Tok::LBracket);
      double alpha = number(false, "threshold");
      expect(Tok::RBracket);
      j.nonmonotonic.push_back({literal(), alpha});
    } else if (tok_.kind == Tok::Ident || tok_.kind == Tok::Tilde) {
      j.monotonic.push_back(literal());
    } else {
      syntax_error({"identifier", "'~'", "'not'"});
    }
  }

  RuleDecl parse_rule() {
    RuleDecl d;
    d.span = tok_.span;
    expect_keyword("rule");
    d.rule.id = expect(Tok::Ident).text;
    expect(Tok::Colon);
    if (tok_.kind != Tok::Arrow) {
      antecedent(d.rule);
      while (tok_.kind == Tok::Amp) {
        tok_ = lex_.next();
        antecedent(d.rule);
      }
    }
    expect(Tok::Arrow);
    expect(Tok::LParen);
    d.rule.sufficiency = number(false, "sufficiency");
    expect(Tok::RParen);
    d.rule.conclusion = literal();
    expect(Tok::Semi);
    return d;
  }

  void check_semantics(const PrimoSpec& spec) {
    std::set<Literal> seen_inputs;
    for (const auto& i : spec.inputs)
      if (!seen_inputs.insert(i.literal).second)
        semantic_.push_back({i.span, "duplicate input declaration for " + i.literal.to_string()});
    std::set<std::string> seen_rules;
    for (const auto& r : spec.rules)
      if (!seen_rules.insert(r.rule.id).second)
        semantic_.push_back({r.span, "duplicate rule id " + r.rule.id});
    std::stable_sort(semantic_.begin(), semantic_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.span.line, a.span.column) < std::tie(b.span.line, b.span.column);
    });
  }

  Lexer lex_;
  Token tok_;
  std::vector<Diagnostic> semantic_;
};

}  // namespace detail

/// Parses rule text. Syntax errors stop at the first offending token;
/// range and duplicate errors are collected and thrown together.
inline PrimoSpec parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Shortest decimal spelling with at most 9 fractional digits.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s += '0';
  return s;
}

/// Canonical text: inputs sorted by literal, then rules sorted by id.
inline std::string render(const PrimoSpec& spec) {
  std::vector<const InputDecl*> inputs;
  for (const auto& i : spec.inputs) inputs.push_back(&i);
  std::sort(inputs.begin(), inputs.end(), [](auto* a, auto* b) { return a->literal < b->literal; });
  std::vector<const RuleDecl*> rules;
  for (const auto& r : spec.rules) rules.push_back(&r);
  std::sort(rules.begin(), rules.end(), [](auto* a, auto* b) { return a->rule.id < b->rule.id; });

  std::ostringstream out;
  for (const auto* i : inputs)
    out << "input " << i->literal.to_string() << " = " << format_number(i->confidence) << ";\n";
  for (const auto* r : rules) {
    const Justification& j = r->rule;
    out << "rule " << j.id << ":";
    bool first = true;
    for (const auto& m : j.monotonic) {
      out << (first ? " " : " & ") << m.to_string();
      first = false;
    }
    for (const auto& nm : j.nonmonotonic) {
      out << (first ? " " : " & ") << "not[" << format_number(nm.alpha) << "] " << nm.target.to_string();
      first = false;
    }
    out << " -> (" << format_number(j.sufficiency) << ") " << j.conclusion.to_string() << ";\n";
  }
  return out.str();
}

/// Builds the AND/OR graph. Literals are interned in declaration order.
inline PrimoGraph build_graph(const PrimoSpec& spec) {
  PrimoGraph g;
  for (const auto& i : spec.inputs) g.set_input(i.literal, i.confidence);
  for (const auto& r : spec.rules) g.add_justification(r.rule);
  return g;
}

inline PrimoGraph parse_graph(std::string_view text) { return build_graph(parse(text)); }

}  // namespace primo
