#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "sepgraph/algebra.hpp"
#include "sepgraph/lexer.hpp"

namespace sepgraph {

// Terms `(c/d) * a1 a2 ... ak` joined by + and -. Atoms are vertex names,
// edge names, and ghosts `e*` (star glued to the name). The coefficient may be
// a bare integer, `(n)` or `(n/d)`, and can be left out. `0` is the zero element.
// Products that are not composable vanish. The result is not normalized.
template <class Scalar>
Element<Scalar> parse_expression(const SeparatedGraph& g, std::string_view text);

// Canonical printing: words sorted by (length, lex), `0` for the zero element.
template <class Scalar>
std::string format_element(const SeparatedGraph& g, const Element<Scalar>& x);

namespace detail {

class ExprCursor {
 public:
  explicit ExprCursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek(std::size_t ahead = 0) const { return toks_[pos_ + ahead]; }
  bool has(std::size_t ahead) const { return pos_ + ahead < toks_.size(); }
  bool is_symbol(std::string_view s, std::size_t ahead = 0) const {
    return has(ahead) && toks_[pos_ + ahead].kind == TokenKind::Symbol && toks_[pos_ + ahead].text == s;
  }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    if (done()) {
      int col = toks_.empty() ? 1 : toks_.back().column + static_cast<int>(toks_.back().text.size());
      throw ParseError(msg, 1, col);
    }
    throw ParseError(msg, toks_[pos_].line, toks_[pos_].column);
  }
  std::string integer() {
    if (done() || peek().kind != TokenKind::Ident || !is_integer(peek().text)) fail("expected an integer");
    return next().text;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class Scalar>
Element<Scalar> parse_expression(const SeparatedGraph& g, std::string_view text) {
  std::vector<Token> toks;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      auto t = tokenize_line(line, ++n);
      toks.insert(toks.end(), t.begin(), t.end());
    }
  }
  detail::ExprCursor cur(std::move(toks));
  if (cur.done()) cur.fail("empty expression");
  auto is_name = [&](const std::string& s) {
    return g.find_vertex(s).has_value() || g.find_edge(s).has_value();
  };

  Element<Scalar> out;
  bool first = true;
  while (!cur.done()) {
    Scalar sign(1);
    if (cur.is_symbol("+")) {
      cur.next();
    } else if (cur.is_symbol("-")) {
      cur.next();
      sign = Scalar(-1);
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    first = false;

    Scalar coef = sign;
    bool have_coef = false;
    if (cur.is_symbol("(")) {
      cur.next();
      std::string num = cur.integer();
      std::string den = "1";
      if (cur.is_symbol("/")) {
        cur.next();
        den = cur.integer();
      }
      if (!cur.is_symbol(")")) cur.fail("expected ')'");
      cur.next();
      coef *= ScalarTraits<Scalar>::from_decimal(num, den);
      have_coef = true;
    } else if (!cur.done() && cur.peek().kind == TokenKind::Ident && is_integer(cur.peek().text) &&
               !is_name(cur.peek().text)) {
      coef *= ScalarTraits<Scalar>::from_decimal(cur.next().text, "1");
      have_coef = true;
    }
    if (have_coef) {
      if (cur.is_symbol("*")) {
        cur.next();
      } else if (cur.done() || cur.is_symbol("+") || cur.is_symbol("-")) {
        // a bare number is only meaningful as zero
        if (!ScalarTraits<Scalar>::is_zero(coef)) cur.fail("a coefficient needs '*' and a word");
        continue;
      } else {
        cur.fail("expected '*' after the coefficient");
      }
    }

    std::optional<PathWord> word;
    bool vanished = false;
    bool any = false;
    while (!cur.done() && cur.peek().kind == TokenKind::Ident) {
      const Token t = cur.next();
      PathWord atom;
      if (auto v = g.find_vertex(t.text)) {
        if (cur.is_symbol("*") && cur.peek().glued)
          throw ParseError("vertex '" + t.text + "' has no ghost", t.line, t.column);
        atom = PathWord::vertex(*v);
      } else if (auto e = g.find_edge(t.text)) {
        bool ghost = false;
        if (cur.is_symbol("*") && cur.peek().glued) {
          cur.next();
          ghost = true;
        }
        atom = PathWord::letter(g, make_letter(*e, ghost));
      } else {
        throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
      }
      any = true;
      if (vanished) continue;
      if (!word) {
        word = atom;
      } else if (auto w = concat(*word, atom)) {
        word = std::move(*w);
      } else {
        vanished = true;
      }
    }
    if (!any) cur.fail("expected a word");
    if (!vanished) out.add_term(*word, coef);
  }
  return out;
}

template <class Scalar>
std::string format_element(const SeparatedGraph& g, const Element<Scalar>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    const bool neg = ScalarTraits<Scalar>::is_negative(c);
    if (first)
      out += neg ? "- " : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    Scalar a = neg ? Scalar(-c) : c;
    if (!ScalarTraits<Scalar>::is_one(a)) out += ScalarTraits<Scalar>::format_abs(a) + " * ";
    out += format_word(g, w);
  }
  return out;
}

}  // namespace sepgraph
