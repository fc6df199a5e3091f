#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepgraph/graph.hpp"

namespace sepgraph {

// A letter of the double graph: an edge e or its ghost e*, packed as 2e + ghost.
using Letter = std::uint32_t;

inline constexpr Letter make_letter(EdgeId e, bool ghost) { return (e << 1) | (ghost ? 1u : 0u); }
inline constexpr EdgeId letter_edge(Letter l) { return l >> 1; }
inline constexpr bool letter_ghost(Letter l) { return (l & 1u) != 0; }
inline constexpr Letter letter_star(Letter l) { return l ^ 1u; }

inline VertexId letter_source(const SeparatedGraph& g, Letter l) {
  const Edge& e = g.edge(letter_edge(l));
  return letter_ghost(l) ? e.range : e.source;
}
inline VertexId letter_range(const SeparatedGraph& g, Letter l) {
  const Edge& e = g.edge(letter_edge(l));
  return letter_ghost(l) ? e.source : e.range;
}

// A composable word of the double graph. The empty letter sequence stands for
// the vertex word at `source() == range()`.
class PathWord {
 public:
  PathWord() = default;

  static PathWord vertex(VertexId v) { return PathWord(v, v, {}); }
  static PathWord letter(const SeparatedGraph& g, Letter l) {
    return PathWord(letter_source(g, l), letter_range(g, l), {l});
  }
  // Letters must already be composable; an empty sequence needs `vertex_if_empty`.
  static PathWord from_letters(const SeparatedGraph& g, std::vector<Letter> letters,
                               VertexId vertex_if_empty);
  // Checks composability; nullopt if some junction does not match.
  static std::optional<PathWord> checked(const SeparatedGraph& g, std::vector<Letter> letters);

  bool is_vertex() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  VertexId source() const { return source_; }
  VertexId range() const { return range_; }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  // #edge letters - #ghost letters
  int degree() const;
  PathWord star() const;

  friend std::optional<PathWord> concat(const PathWord& a, const PathWord& b);
  friend bool operator==(const PathWord&, const PathWord&) = default;
  // Canonical order: by length, then letter by letter (vertex id for length 0).
  friend std::strong_ordering operator<=>(const PathWord& a, const PathWord& b);

 private:
  PathWord(VertexId s, VertexId r, std::vector<Letter> letters)
      : source_(s), range_(r), letters_(std::move(letters)) {}

  VertexId source_ = 0;
  VertexId range_ = 0;
  std::vector<Letter> letters_;
};

// Product in the path algebra of the double graph; nullopt when it vanishes.
std::optional<PathWord> concat(const PathWord& a, const PathWord& b);

std::string format_word(const SeparatedGraph& g, const PathWord& w);

struct PathWordHash {
  std::size_t operator()(const PathWord& w) const noexcept;
};

}  // namespace sepgraph
