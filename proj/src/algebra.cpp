#include "sepgraph/algebra.hpp"

#include <algorithm>

namespace sepgraph {

ReductionSystem::ReductionSystem(GraphPtr g) : graph_(std::move(g)) {
  chosen_.assign(graph_->edge_count(), 0);
  for (BlockId x = 0; x < graph_->block_count(); ++x)
    if (graph_->block(x).in_s) chosen_[graph_->chosen_edge(x)] = 1;
}

int ReductionSystem::letter_weight(Letter l) const {
  return (!letter_ghost(l) && chosen_[letter_edge(l)]) ? 2 : 1;
}

int ReductionSystem::weight(const PathWord& w) const {
  if (w.is_vertex()) return 1;
  int total = 0;
  for (Letter l : w.letters()) total += letter_weight(l);
  return total;
}

bool ReductionSystem::is_redex(Letter a, Letter b) const {
  const SeparatedGraph& g = *graph_;
  if (letter_ghost(a) && !letter_ghost(b))
    return g.edge(letter_edge(a)).block == g.edge(letter_edge(b)).block;
  if (!letter_ghost(a) && letter_ghost(b))
    return letter_edge(a) == letter_edge(b) && chosen_[letter_edge(a)];
  return false;
}

std::vector<std::size_t> ReductionSystem::redexes(const PathWord& w) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < w.length(); ++i)
    if (is_redex(w[i], w[i + 1])) out.push_back(i);
  return out;
}

std::optional<std::size_t> ReductionSystem::leftmost_redex(const PathWord& w) const {
  for (std::size_t i = 0; i + 1 < w.length(); ++i)
    if (is_redex(w[i], w[i + 1])) return i;
  return std::nullopt;
}

PathWord ReductionSystem::splice(const PathWord& w, std::size_t i, std::span<const Letter> mid,
                                 VertexId vertex_if_empty) const {
  std::vector<Letter> ls;
  ls.reserve(w.length() - 2 + mid.size());
  auto all = w.letters();
  ls.insert(ls.end(), all.begin(), all.begin() + static_cast<std::ptrdiff_t>(i));
  ls.insert(ls.end(), mid.begin(), mid.end());
  ls.insert(ls.end(), all.begin() + static_cast<std::ptrdiff_t>(i + 2), all.end());
  return PathWord::from_letters(*graph_, std::move(ls), vertex_if_empty);
}

std::vector<PathWord> enumerate_basis(const ReductionSystem& sys, std::size_t max_len) {
  const SeparatedGraph& g = sys.graph();
  std::vector<PathWord> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(PathWord::vertex(v));
  if (max_len == 0) return out;

  // letters leaving each vertex of the double graph
  std::vector<std::vector<Letter>> leaving(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    leaving[g.edge(e).source].push_back(make_letter(e, false));
    leaving[g.edge(e).range].push_back(make_letter(e, true));
  }
  std::vector<Letter> cur;
  std::function<void()> extend = [&]() {
    out.push_back(PathWord::from_letters(g, cur, 0));
    if (cur.size() == max_len) return;
    for (Letter l : leaving[letter_range(g, cur.back())]) {
      if (sys.is_redex(cur.back(), l)) continue;
      cur.push_back(l);
      extend();
      cur.pop_back();
    }
  };
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (bool ghost : {false, true}) {
      cur.assign(1, make_letter(e, ghost));
      extend();
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sepgraph
