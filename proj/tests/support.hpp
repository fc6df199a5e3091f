#pragma once

// Independent oracles and random generators shared by the unit tests and the
// acceptance binary. Nothing here calls into the reduction engine.

#include <optional>
#include <random>
#include <vector>

#include "sepgraph/algebra.hpp"
#include "sepgraph/graph.hpp"
#include "sepgraph/path_word.hpp"

namespace testsupport {

using namespace sepgraph;

inline std::vector<Letter> all_letters(const SeparatedGraph& g) {
  std::vector<Letter> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out.push_back(make_letter(e, false));
    out.push_back(make_letter(e, true));
  }
  return out;
}

// Lex-least edge of the block, computed from names rather than ids.
inline EdgeId lex_least_edge(const SeparatedGraph& g, BlockId x) {
  EdgeId best = kNoId;
  for (EdgeId e : g.block(x).edges)
    if (best == kNoId || g.edge(e).name < g.edge(best).name) best = e;
  return best;
}

// Membership in B': consecutive ghost/real letters f* e must come from
// different blocks, and no real/ghost junction may read e_X e_X* for X in S.
inline bool is_reduced_word(const SeparatedGraph& g, const std::vector<Letter>& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Letter a = w[i], b = w[i + 1];
    const EdgeId ea = letter_edge(a), eb = letter_edge(b);
    if (letter_ghost(a) && !letter_ghost(b)) {
      if (g.edge(ea).block == g.edge(eb).block) return false;
    } else if (!letter_ghost(a) && letter_ghost(b)) {
      const Block& x = g.block(g.edge(ea).block);
      if (ea == eb && x.in_s && ea == lex_least_edge(g, g.edge(ea).block)) return false;
    }
  }
  return true;
}

// Every composable word of length <= max_len (vertices included).
inline std::vector<std::vector<Letter>> all_composable_words(const SeparatedGraph& g,
                                                             std::size_t max_len) {
  std::vector<std::vector<Letter>> out, layer;
  const auto letters = all_letters(g);
  for (Letter l : letters) layer.push_back({l});
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<std::vector<Letter>> next;
    if (len < max_len) {
      for (const auto& w : layer)
        for (Letter l : letters)
          if (letter_range(g, w.back()) == letter_source(g, l)) {
            next.push_back(w);
            next.back().push_back(l);
          }
    }
    layer = std::move(next);
  }
  return out;
}

inline std::vector<PathWord> brute_force_basis(const SeparatedGraph& g, std::size_t max_len) {
  std::vector<PathWord> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(PathWord::vertex(v));
  for (const auto& w : all_composable_words(g, max_len))
    if (is_reduced_word(g, w)) out.push_back(*PathWord::checked(g, w));
  std::sort(out.begin(), out.end());
  return out;
}

// Product of two basis words of a Cohn algebra (S empty), by the closed formula:
// write a = L nu*, b = gamma R with nu* the maximal ghost suffix of a and gamma
// the maximal real prefix of b, cancel the common prefix of nu and gamma, and
//   nu'' empty     -> L gamma'' R
//   gamma'' empty  -> L nu''* R
//   both nonempty  -> 0 if the first edges share a block, else L nu''* gamma'' R.
inline std::optional<PathWord> cohn_product(const SeparatedGraph& g, const PathWord& a,
                                            const PathWord& b) {
  if (a.range() != b.source()) return std::nullopt;
  if (a.is_vertex()) return b;
  if (b.is_vertex()) return a;
  std::vector<Letter> la(a.letters().begin(), a.letters().end());
  std::vector<Letter> lb(b.letters().begin(), b.letters().end());
  std::size_t cut_a = la.size();
  while (cut_a > 0 && letter_ghost(la[cut_a - 1])) --cut_a;
  std::size_t cut_b = 0;
  while (cut_b < lb.size() && !letter_ghost(lb[cut_b])) ++cut_b;
  // nu as a real path: reverse the ghost suffix
  std::vector<EdgeId> nu, gamma;
  for (std::size_t i = la.size(); i > cut_a; --i) nu.push_back(letter_edge(la[i - 1]));
  for (std::size_t i = 0; i < cut_b; ++i) gamma.push_back(letter_edge(lb[i]));
  std::size_t p = 0;
  while (p < nu.size() && p < gamma.size() && nu[p] == gamma[p]) ++p;
  if (p < nu.size() && p < gamma.size() && g.edge(nu[p]).block == g.edge(gamma[p]).block)
    return std::nullopt;
  std::vector<Letter> out(la.begin(), la.begin() + cut_a);
  for (std::size_t i = nu.size(); i > p; --i) out.push_back(make_letter(nu[i - 1], true));
  for (std::size_t i = p; i < gamma.size(); ++i) out.push_back(make_letter(gamma[i], false));
  out.insert(out.end(), lb.begin() + cut_b, lb.end());
  if (out.empty()) {
    // everything cancelled: the range of the cancelled path
    const VertexId v = p > 0 ? g.edge(nu[p - 1]).range : a.range();
    return PathWord::vertex(v);
  }
  return PathWord::checked(g, out);
}

// Random composable word of exact length len (a vertex when len == 0).
inline PathWord random_word(const SeparatedGraph& g, std::size_t len, std::mt19937_64& rng) {
  const auto letters = all_letters(g);
  if (len == 0 || letters.empty()) {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.vertex_count() - 1));
    return PathWord::vertex(pick(rng));
  }
  std::vector<Letter> w;
  std::uniform_int_distribution<std::size_t> first(0, letters.size() - 1);
  w.push_back(letters[first(rng)]);
  while (w.size() < len) {
    std::vector<Letter> next;
    for (Letter l : letters)
      if (letter_source(g, l) == letter_range(g, w.back())) next.push_back(l);
    if (next.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    w.push_back(next[pick(rng)]);
  }
  return *PathWord::checked(g, w);
}

// Coefficients drawn from {1, -1, 2, -2, 1/2}; up to max_terms words of length <= max_len.
inline RationalElement random_element(const SeparatedGraph& g, std::mt19937_64& rng,
                                      std::size_t max_terms = 4, std::size_t max_len = 6) {
  static const Rational coeffs[] = {Rational(1), Rational(-1), Rational(2), Rational(-2),
                                    Rational(1, 2)};
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms), len(0, max_len), c(0, 4);
  RationalElement x;
  const std::size_t k = nterms(rng);
  for (std::size_t i = 0; i < k; ++i) x.add_term(random_word(g, len(rng), rng), coeffs[c(rng)]);
  return x;
}

}  // namespace testsupport
