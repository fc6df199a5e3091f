#pragma once

#include <functional>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "sepgraph/graph.hpp"
#include "sepgraph/path_word.hpp"
#include "sepgraph/scalar.hpp"

namespace sepgraph {

// Finite linear combination of path words with nonzero coefficients.
template <class Scalar>
class Element {
 public:
  using scalar_type = Scalar;
  using Terms = std::map<PathWord, Scalar>;

  Element() = default;
  explicit Element(const PathWord& w, Scalar c = Scalar(1)) { add_term(w, std::move(c)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const PathWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const PathWord& w, const Scalar& c) {
    if (ScalarTraits<Scalar>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<Scalar>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Element& operator+=(const Element& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  Element& operator*=(const Scalar& s) {
    if (ScalarTraits<Scalar>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& s, Element a) { return a *= s; }
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

using RationalElement = Element<Rational>;

// Rules (5) and (6) of the reduction system over a fixed graph:
//   e* f -> delta_{e,f} r(e)              for e, f in one block
//   e_X e_X* -> s(e_X) - sum_{e in X'} e e*   for X in S, X' = X \ {e_X}
// Everything else (vertex absorption, composability) is structural.
class ReductionSystem {
 public:
  explicit ReductionSystem(GraphPtr g);

  const SeparatedGraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }

  bool is_chosen(EdgeId e) const { return chosen_[e] != 0; }

  // wt(e_X) = 2 for X in S, every other letter and every vertex weighs 1.
  int weight(const PathWord& w) const;
  int letter_weight(Letter l) const;

  bool is_redex(Letter a, Letter b) const;
  std::vector<std::size_t> redexes(const PathWord& w) const;
  std::optional<std::size_t> leftmost_redex(const PathWord& w) const;

  // Replacement of the redex at positions (i, i+1), scaled by c; appended to out.
  template <class Scalar>
  void rewrite(const PathWord& w, std::size_t i, const Scalar& c,
               std::vector<std::pair<PathWord, Scalar>>& out) const;

 private:
  PathWord splice(const PathWord& w, std::size_t i, std::span<const Letter> mid,
                  VertexId vertex_if_empty) const;

  GraphPtr graph_;
  std::vector<char> chosen_;  // per edge: is e_X for an S-block X
};

enum class StrategyKind { Leftmost, Rightmost, Random };

struct RewriteStrategy {
  StrategyKind kind = StrategyKind::Leftmost;
  std::uint64_t seed = 0;

  static RewriteStrategy leftmost() { return {}; }
  static RewriteStrategy rightmost() { return {StrategyKind::Rightmost, 0}; }
  static RewriteStrategy random(std::uint64_t seed) { return {StrategyKind::Random, seed}; }
};

// Called once per rewrite step with the rewritten word and the words produced.
using StepObserver = std::function<void(const PathWord& before, std::span<const PathWord> after)>;

template <class Scalar>
Element<Scalar> normalize_terms(const ReductionSystem& sys,
                                std::vector<std::pair<PathWord, Scalar>> work,
                                RewriteStrategy strategy = {}, const StepObserver& observer = {}) {
  Element<Scalar> out;
  std::mt19937_64 rng(strategy.seed);
  std::vector<std::pair<PathWord, Scalar>> produced;
  std::vector<PathWord> produced_words;
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    std::optional<std::size_t> pos;
    switch (strategy.kind) {
      case StrategyKind::Leftmost:
        pos = sys.leftmost_redex(w);
        break;
      case StrategyKind::Rightmost:
      case StrategyKind::Random: {
        auto all = sys.redexes(w);
        if (!all.empty()) {
          if (strategy.kind == StrategyKind::Rightmost) {
            pos = all.back();
          } else {
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            pos = all[pick(rng)];
          }
        }
        break;
      }
    }
    if (!pos) {
      out.add_term(w, c);
      continue;
    }
    produced.clear();
    sys.rewrite(w, *pos, c, produced);
    if (observer) {
      produced_words.clear();
      for (const auto& p : produced) produced_words.push_back(p.first);
      observer(w, produced_words);
    }
    for (auto& p : produced) work.push_back(std::move(p));
  }
  return out;
}

template <class Scalar>
Element<Scalar> normalize(const ReductionSystem& sys, const Element<Scalar>& x,
                          RewriteStrategy strategy = {}, const StepObserver& observer = {}) {
  std::vector<std::pair<PathWord, Scalar>> work(x.terms().begin(), x.terms().end());
  return normalize_terms(sys, std::move(work), strategy, observer);
}

template <class Scalar>
Element<Scalar> multiply(const ReductionSystem& sys, const Element<Scalar>& a,
                         const Element<Scalar>& b) {
  std::vector<std::pair<PathWord, Scalar>> work;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms())
      if (auto w = concat(wa, wb)) work.emplace_back(std::move(*w), ca * cb);
  return normalize_terms(sys, std::move(work));
}

template <class Scalar>
Element<Scalar> star(const Element<Scalar>& x) {
  Element<Scalar> out;
  for (const auto& [w, c] : x.terms()) out.add_term(w.star(), c);
  return out;
}

template <class Scalar>
std::map<int, Element<Scalar>> degree_split(const Element<Scalar>& x) {
  std::map<int, Element<Scalar>> out;
  for (const auto& [w, c] : x.terms()) out[w.degree()].add_term(w, c);
  return out;
}

template <class Scalar>
Element<Scalar> vertex_element(VertexId v) {
  return Element<Scalar>(PathWord::vertex(v));
}

template <class Scalar>
Element<Scalar> letter_element(const SeparatedGraph& g, EdgeId e, bool ghost) {
  return Element<Scalar>(PathWord::letter(g, make_letter(e, ghost)));
}

// Sum of all vertices.
template <class Scalar>
Element<Scalar> unit_element(const SeparatedGraph& g) {
  Element<Scalar> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.add_term(PathWord::vertex(v), Scalar(1));
  return out;
}

// q_Z = v - sum_{e in Z} e e*, normalized. Z must lie inside one block at v.
template <class Scalar>
Element<Scalar> q_idempotent(const ReductionSystem& sys, VertexId v, std::span<const EdgeId> z) {
  const SeparatedGraph& g = sys.graph();
  if (z.empty()) throw GraphError("q_idempotent needs a nonempty edge set");
  const BlockId x = g.edge(z.front()).block;
  Element<Scalar> q(PathWord::vertex(v));
  for (EdgeId e : z) {
    if (g.edge(e).block != x || g.edge(e).source != v)
      throw GraphError("edge set is not contained in one block at '" + g.vertex_name(v) + "'");
    auto w = PathWord::checked(g, {make_letter(e, false), make_letter(e, true)});
    q.add_term(*w, Scalar(-1));
  }
  return normalize(sys, q);
}

// All reduced words of length <= max_len in canonical order.
std::vector<PathWord> enumerate_basis(const ReductionSystem& sys, std::size_t max_len);

template <class Scalar>
void ReductionSystem::rewrite(const PathWord& w, std::size_t i, const Scalar& c,
                              std::vector<std::pair<PathWord, Scalar>>& out) const {
  const SeparatedGraph& g = *graph_;
  const Letter a = w[i];
  const Letter b = w[i + 1];
  if (letter_ghost(a)) {
    // e* f with e, f in one block
    if (letter_edge(a) != letter_edge(b)) return;
    out.emplace_back(splice(w, i, {}, g.edge(letter_edge(a)).range), c);
    return;
  }
  // e_X e_X*
  const EdgeId ex = letter_edge(a);
  const VertexId v = g.edge(ex).source;
  out.emplace_back(splice(w, i, {}, v), c);
  for (EdgeId e : g.block(g.edge(ex).block).edges) {
    if (e == ex) continue;
    const Letter mid[2] = {make_letter(e, false), make_letter(e, true)};
    out.emplace_back(splice(w, i, mid, v), -c);
  }
}

}  // namespace sepgraph
