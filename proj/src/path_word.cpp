#include "sepgraph/path_word.hpp"

#include <algorithm>

namespace sepgraph {

PathWord PathWord::from_letters(const SeparatedGraph& g, std::vector<Letter> letters,
                                VertexId vertex_if_empty) {
  if (letters.empty()) return vertex(vertex_if_empty);
  const VertexId s = letter_source(g, letters.front());
  const VertexId r = letter_range(g, letters.back());
  return PathWord(s, r, std::move(letters));
}

std::optional<PathWord> PathWord::checked(const SeparatedGraph& g, std::vector<Letter> letters) {
  if (letters.empty()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letter_range(g, letters[i]) != letter_source(g, letters[i + 1])) return std::nullopt;
  const VertexId s = letter_source(g, letters.front());
  return from_letters(g, std::move(letters), s);
}

int PathWord::degree() const {
  int d = 0;
  for (Letter l : letters_) d += letter_ghost(l) ? -1 : 1;
  return d;
}

PathWord PathWord::star() const {
  std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
  for (Letter& l : rev) l = letter_star(l);
  return PathWord(range_, source_, std::move(rev));
}

std::strong_ordering operator<=>(const PathWord& a, const PathWord& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  if (a.letters_.empty()) return a.source_ <=> b.source_;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

std::optional<PathWord> concat(const PathWord& a, const PathWord& b) {
  if (a.range() != b.source()) return std::nullopt;
  if (a.is_vertex()) return b;
  if (b.is_vertex()) return a;
  std::vector<Letter> ls(a.letters().begin(), a.letters().end());
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  return PathWord(a.source(), b.range(), std::move(ls));
}

std::string format_word(const SeparatedGraph& g, const PathWord& w) {
  if (w.is_vertex()) return g.vertex_name(w.source());
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += ' ';
    out += g.edge(letter_edge(w[i])).name;
    if (letter_ghost(w[i])) out += '*';
  }
  return out;
}

std::size_t PathWordHash::operator()(const PathWord& w) const noexcept {
  std::size_t h = std::hash<std::uint32_t>{}(w.source()) * 0x9e3779b97f4a7c15ull;
  for (Letter l : w.letters()) h = (h ^ l) * 0x100000001b3ull + 0x7f4a7c15u;
  return h ^ w.range();
}

}  // namespace sepgraph
