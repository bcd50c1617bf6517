#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "poctl/errors.hpp"
#include "poctl/formula.hpp"

namespace poctl {
namespace detail {

enum class Tok {
  End,
  Ident,
  String,
  Number,
  Bang,
  Amp,
  Pipe,
  Arrow,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Ge,
  Gt,
  Le,
  Lt,
  Eq,
  Comma,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class FormulaLexer {
 public:
  explicit FormulaLexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 0;
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      const std::size_t line = line_, col = col_ + 1;
      if (c == '"') {
        advance();
        std::string name;
        while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
          name += text_[pos_];
          advance();
        }
        if (pos_ >= text_.size() || text_[pos_] != '"')
          throw ParseError("unterminated quoted atom", line, col);
        advance();
        out.push_back({Tok::String, std::move(name), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::string num;
        bool dot = false;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                (text_[pos_] == '.' && !dot))) {
          dot = dot || text_[pos_] == '.';
          num += text_[pos_];
          advance();
        }
        out.push_back({Tok::Number, std::move(num), line, col});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_')) {
          name += text_[pos_];
          advance();
        }
        out.push_back({Tok::Ident, std::move(name), line, col});
      } else {
        Tok kind;
        std::size_t len = 1;
        switch (c) {
          case '!': kind = Tok::Bang; break;
          case '&': kind = Tok::Amp; break;
          case '|': kind = Tok::Pipe; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case '[': kind = Tok::LBracket; break;
          case ']': kind = Tok::RBracket; break;
          case ',': kind = Tok::Comma; break;
          case '=': kind = Tok::Eq; break;
          case '>':
            if (peek_next() == '=') { kind = Tok::Ge; len = 2; } else kind = Tok::Gt;
            break;
          case '<':
            if (peek_next() == '=') { kind = Tok::Le; len = 2; } else kind = Tok::Lt;
            break;
          case '-':
            if (peek_next() == '>') { kind = Tok::Arrow; len = 2; break; }
            [[fallthrough]];
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back({kind, std::string(text_.substr(pos_, len)), line, col});
        while (len--) advance();
      }
    }
    out.push_back({Tok::End, "", line_, col_ + 1});
    return out;
  }

 private:
  char peek_next() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }
  void advance() {
    ++pos_;
    ++col_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 0;
};

enum class FormulaDialect { Poctl, Ctl };

// Recursive-descent parser over the state-formula grammar
//   S ::= 'true' | 'false' | ATOM | '!' S | S '&' S | S '|' S | S '->' S
//       | '(' S ')' | PO '[' P ']' | ('E'|'A') '[' P ']'
//   P ::= 'X' S | S 'U' S | S 'U<=' INT S | 'F' S | 'G' S
// with precedence ! > & > | > -> and left-associative binaries. '|', '->',
// 'false' and 'F' are desugared while parsing. The dialect restricts which
// quantifier family is allowed; the other one is a well-formedness error.
class FormulaParser {
 public:
  FormulaParser(std::string_view text, FormulaDialect dialect)
      : tokens_(FormulaLexer(text).run()), dialect_(dialect) {}

  StateFormulaPtr run() {
    auto f = parse_implies();
    expect(Tok::End, "end of formula");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what, peek());
    return take();
  }

  bool peek_keyword(const char* kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  static bool is_reserved(const std::string& word) {
    return word == "true" || word == "false" || word == "X" || word == "U" || word == "F" ||
           word == "G" || word == "E" || word == "A" || word == "Po" || word == "in";
  }

  StateFormulaPtr parse_implies() {
    auto lhs = parse_or();
    while (accept(Tok::Arrow)) lhs = make_implies(std::move(lhs), parse_or());
    return lhs;
  }

  StateFormulaPtr parse_or() {
    auto lhs = parse_and();
    while (accept(Tok::Pipe)) lhs = make_or(std::move(lhs), parse_and());
    return lhs;
  }

  StateFormulaPtr parse_and() {
    auto lhs = parse_unary();
    while (accept(Tok::Amp)) lhs = make_and(std::move(lhs), parse_unary());
    return lhs;
  }

  StateFormulaPtr parse_unary() {
    if (accept(Tok::Bang)) return make_not(parse_unary());
    return parse_primary();
  }

  StateFormulaPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::String:
        return make_atom(take().text);
      case Tok::LParen: {
        take();
        auto f = parse_implies();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        if (t.text == "true") { take(); return make_true(); }
        if (t.text == "false") { take(); return make_false(); }
        if (t.text == "Po") {
          if (dialect_ == FormulaDialect::Ctl)
            fail("possibility bound is not allowed in a CTL formula", t);
          take();
          auto bound = parse_bound();
          return make_po(std::move(bound), parse_bracketed_path());
        }
        if (t.text == "E" || t.text == "A") {
          if (dialect_ == FormulaDialect::Poctl)
            fail("CTL path quantifier '" + t.text + "' is not allowed in a PoCTL formula", t);
          const bool exists = t.text == "E";
          take();
          auto path = parse_bracketed_path();
          return exists ? make_exists(std::move(path)) : make_forall(std::move(path));
        }
        if (is_reserved(t.text)) fail("unexpected keyword '" + t.text + "'", t);
        return make_atom(take().text);
      }
      default:
        fail("expected a state formula", t);
    }
  }

  Interval parse_bound() {
    const Token& t = peek();
    auto checked = [&](auto build) -> Interval {
      try {
        return build();
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), t.line, t.column);
      }
    };
    switch (t.kind) {
      case Tok::Ge: take(); return checked([&] { return Interval::at_least(parse_decimal()); });
      case Tok::Gt: take(); return checked([&] { return Interval::greater_than(parse_decimal()); });
      case Tok::Le: take(); return checked([&] { return Interval::at_most(parse_decimal()); });
      case Tok::Lt: take(); return checked([&] { return Interval::less_than(parse_decimal()); });
      case Tok::Eq: take(); return checked([&] { return Interval::exactly(parse_decimal()); });
      case Tok::Ident:
        if (t.text == "in") {
          take();
          bool lower_closed;
          if (accept(Tok::LBracket)) lower_closed = true;
          else if (accept(Tok::LParen)) lower_closed = false;
          else fail("expected '[' or '(' after 'in'", peek());
          auto lo = parse_decimal();
          expect(Tok::Comma, "','");
          auto hi = parse_decimal();
          bool upper_closed;
          if (accept(Tok::RBracket)) upper_closed = true;
          else if (accept(Tok::RParen)) upper_closed = false;
          else fail("expected ']' or ')'", peek());
          return checked([&] { return Interval{lo, hi, lower_closed, upper_closed}; });
        }
        [[fallthrough]];
      default:
        fail("expected a possibility comparator after 'Po'", t);
    }
  }

  Possibility parse_decimal() {
    const Token& t = expect(Tok::Number, "a decimal value");
    try {
      return Possibility::parse(t.text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), t.line, t.column);
    }
  }

  PathFormulaPtr parse_bracketed_path() {
    expect(Tok::LBracket, "'['");
    auto p = parse_path();
    expect(Tok::RBracket, "']'");
    return p;
  }

  PathFormulaPtr parse_path() {
    if (peek_keyword("X")) { take(); return make_next(parse_implies()); }
    if (peek_keyword("F")) { take(); return make_eventually(parse_implies()); }
    if (peek_keyword("G")) { take(); return make_always(parse_implies()); }
    auto lhs = parse_implies();
    const Token& t = peek();
    if (!(t.kind == Tok::Ident && t.text == "U"))
      fail("expected 'U' or 'U<=' in path formula", t);
    take();
    if (peek().kind == Tok::Le) {
      if (dialect_ == FormulaDialect::Ctl)
        fail("bounded until is not a CTL path formula", peek());
      take();
      const std::uint32_t n = parse_step_bound();
      return make_bounded_until(std::move(lhs), parse_implies(), n);
    }
    return make_until(std::move(lhs), parse_implies());
  }

  std::uint32_t parse_step_bound() {
    const Token& t = expect(Tok::Number, "a step bound");
    std::uint64_t n = 0;
    for (const char c : t.text) {
      if (c == '.') fail("step bound must be an integer", t);
      n = n * 10 + static_cast<std::uint64_t>(c - '0');
      if (n > 0xffffffffull) fail("step bound too large", t);
    }
    return static_cast<std::uint32_t>(n);
  }

  std::vector<Token> tokens_;
  FormulaDialect dialect_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a PoCTL state formula. CTL quantifiers are rejected as a
/// well-formedness error.
inline StateFormulaPtr parse_poctl(std::string_view text) {
  return detail::FormulaParser(text, detail::FormulaDialect::Poctl).run();
}

/// Parses a CTL state formula. Possibility bounds and bounded until are
/// rejected as well-formedness errors.
inline StateFormulaPtr parse_ctl(std::string_view text) {
  return detail::FormulaParser(text, detail::FormulaDialect::Ctl).run();
}

}  // namespace poctl
