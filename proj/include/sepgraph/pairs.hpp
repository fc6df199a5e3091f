#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepgraph/graph.hpp"

namespace sepgraph {

// (H, G): H hereditary and (C,S)-saturated, G a subset of G(H). Both sorted.
struct AdmissiblePair {
  std::vector<VertexId> h;
  std::vector<BlockId> g;

  friend bool operator==(const AdmissiblePair&, const AdmissiblePair&) = default;
  friend auto operator<=>(const AdmissiblePair&, const AdmissiblePair&) = default;
};

// Sorted vertex/blocks sets as plain vectors; helpers for small set algebra.
using VertexSet = std::vector<VertexId>;
using BlockSet = std::vector<BlockId>;

VertexSet hereditary_closure(const SeparatedGraph& g, std::span<const VertexId> h0);
bool is_hereditary(const SeparatedGraph& g, std::span<const VertexId> h);
bool is_cs_saturated(const SeparatedGraph& g, std::span<const VertexId> h);
// Smallest hereditary (C,S)-saturated superset.
VertexSet saturation_closure(const SeparatedGraph& g, std::span<const VertexId> h0);

// X/H = edges of X whose range lies outside H
std::vector<EdgeId> block_mod(const SeparatedGraph& g, BlockId x, std::span<const VertexId> h);
// G(H): blocks outside S with X/H nonempty (finite graphs: always finite)
BlockSet g_of_h(const SeparatedGraph& g, std::span<const VertexId> h);
// C[H]: blocks at vertices of H
BlockSet c_of_h(const SeparatedGraph& g, std::span<const VertexId> h);

bool is_admissible(const SeparatedGraph& g, const AdmissiblePair& p);

// `H = {v,w}; G = {X}`
std::string format_pair(const SeparatedGraph& g, const AdmissiblePair& p);
AdmissiblePair parse_pair(const SeparatedGraph& g, std::string_view text);

}  // namespace sepgraph
