#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepgraph/algebra.hpp"
#include "sepgraph/monoid.hpp"
#include "sepgraph/pairs.hpp"

namespace sepgraph {

// Hereditary (C,S)-saturated subsets of E^0, sorted by (size, members).
// Filters all subsets when |E^0| <= 16, otherwise joins closures of singletons.
std::vector<VertexSet> saturated_sets(const SeparatedGraph& g, std::size_t max_sets = 1u << 16);
std::vector<VertexSet> saturated_sets_by_filter(const SeparatedGraph& g);
std::vector<VertexSet> saturated_sets_by_closure(const SeparatedGraph& g, std::size_t max_sets = 1u << 16);

// All admissible pairs, sorted by (|H|, H, |G|, G): (0,0) first, (E^0,0) last.
// Throws std::length_error past max_pairs.
std::vector<AdmissiblePair> enumerate_admissible_pairs(const SeparatedGraph& g,
                                                       std::size_t max_pairs = 1u << 16);

bool pair_leq(const SeparatedGraph& g, const AdmissiblePair& a, const AdmissiblePair& b);
// Explicit infimum; the empty family gives (E^0, 0).
AdmissiblePair pair_inf(const SeparatedGraph& g, std::span<const AdmissiblePair> family);
// Infimum of the upper bounds inside `lattice` (enumerated when omitted).
AdmissiblePair pair_sup(const SeparatedGraph& g, std::span<const AdmissiblePair> family,
                        std::span<const AdmissiblePair> lattice);
AdmissiblePair pair_sup(const SeparatedGraph& g, std::span<const AdmissiblePair> family);

// H plus q'_X for X in G.
std::vector<MonoidElement> order_ideal_generators(const MonoidPresentation& p, const AdmissiblePair& pair);

// Vertices of H plus q_X for X in G.
template <class Scalar>
std::vector<Element<Scalar>> trace_ideal_generators(const ReductionSystem& sys, const AdmissiblePair& pair) {
  const SeparatedGraph& g = sys.graph();
  if (!is_admissible(g, pair)) throw GraphError("pair is not admissible: " + format_pair(g, pair));
  std::vector<Element<Scalar>> out;
  for (VertexId v : pair.h) out.push_back(vertex_element<Scalar>(v));
  for (BlockId x : pair.g) out.push_back(q_idempotent<Scalar>(sys, g.block(x).vertex, g.block(x).edges));
  return out;
}

struct RoundtripReport {
  AdmissiblePair recovered;  // read off the kernel of pi
  bool ok = false;
  bool unknown = false;  // a relation check ran out of budget
  std::string detail;
};

RoundtripReport pair_roundtrip_check(const MonoidPresentation& p, const AdmissiblePair& pair,
                                     const Budget& budget = {});

struct SimpleResult {
  bool simple = false;
  std::optional<BlockId> witness_block;  // a block outside S
  VertexSet witness_h;                   // else a proper nonempty saturated set
};

SimpleResult is_simple(const SeparatedGraph& g);

// Paths from `start`, each given by its edges; all of length `depth` or
// ending in a sink.
struct MultipathPrefix {
  VertexId start = 0;
  std::size_t depth = 0;
  std::vector<std::vector<EdgeId>> paths;
};

// Conditions (a') and (b') up to the prefix depth.
bool is_multipath_prefix(const SeparatedGraph& g, const MultipathPrefix& m);

struct CofinalResult {
  bool cofinal = true;
  VertexId w = kNoId;  // vertex that does not reach the multipath
  VertexSet h;         // hereditary set generated by w
  VertexSet closure;   // its C-saturation iterate, disjoint from the multipath
  std::optional<MultipathPrefix> multipath;
};

// Exact for finite graphs. Every block counts, whatever S is.
CofinalResult is_c_cofinal(const SeparatedGraph& g, std::size_t depth = 4, std::size_t max_paths = 4096);

// Hereditary (C,S)-saturated subsets of XE^0 = E^0 + (C \ S).
struct XeSet {
  VertexSet vertices;
  BlockSet blocks;
  friend bool operator==(const XeSet&, const XeSet&) = default;
  friend auto operator<=>(const XeSet&, const XeSet&) = default;
};

std::vector<XeSet> xe_saturated_sets(const SeparatedGraph& g, std::size_t max_sets = 1u << 16);
// H -> (H n E^0, {X in H : vertex(X) not in H})
AdmissiblePair xe_to_pair(const SeparatedGraph& g, const XeSet& s);
XeSet pair_to_xe(const SeparatedGraph& g, const AdmissiblePair& p);
// Both maps are mutually inverse and order preserving on the full lists.
bool check_xe_bijection(const SeparatedGraph& g, std::string* why = nullptr);

// Covering relations of the enumerated lattice as DOT.
std::string hasse_dot(const SeparatedGraph& g, std::span<const AdmissiblePair> lattice);

}  // namespace sepgraph
