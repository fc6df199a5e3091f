#pragma once

// Lattice oracles written against the definitions, sharing nothing with pairs.cpp.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "sepgraph/pairs.hpp"

namespace testsupport {

using namespace sepgraph;

inline bool o_hereditary(const SeparatedGraph& g, const std::set<VertexId>& h) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (h.count(g.edge(e).source) && !h.count(g.edge(e).range)) return false;
  return true;
}

inline bool o_saturated(const SeparatedGraph& g, const std::set<VertexId>& h) {
  for (BlockId x = 0; x < g.block_count(); ++x) {
    if (!g.block(x).in_s || h.count(g.block(x).vertex)) continue;
    bool inside = true;
    for (EdgeId e : g.block(x).edges) inside &= h.count(g.edge(e).range) > 0;
    if (inside) return false;
  }
  return true;
}

inline std::set<BlockId> o_g_of_h(const SeparatedGraph& g, const std::set<VertexId>& h) {
  std::set<BlockId> out;
  for (BlockId x = 0; x < g.block_count(); ++x) {
    if (g.block(x).in_s) continue;
    for (EdgeId e : g.block(x).edges)
      if (!h.count(g.edge(e).range)) out.insert(x);
  }
  return out;
}

inline std::set<BlockId> o_c_of_h(const SeparatedGraph& g, const std::set<VertexId>& h) {
  std::set<BlockId> out;
  for (BlockId x = 0; x < g.block_count(); ++x)
    if (h.count(g.block(x).vertex)) out.insert(x);
  return out;
}

inline std::vector<AdmissiblePair> o_pairs(const SeparatedGraph& g) {
  std::vector<AdmissiblePair> out;
  for (std::uint32_t hm = 0; hm < (1u << g.vertex_count()); ++hm) {
    std::set<VertexId> h;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (hm >> v & 1) h.insert(v);
    if (!o_hereditary(g, h) || !o_saturated(g, h)) continue;
    const auto gh = o_g_of_h(g, h);
    const auto ch = o_c_of_h(g, h);
    for (std::uint32_t gm = 0; gm < (1u << g.block_count()); ++gm) {
      AdmissiblePair p{{h.begin(), h.end()}, {}};
      bool ok = true;
      for (BlockId x = 0; x < g.block_count(); ++x)
        if (gm >> x & 1) {
          ok &= gh.count(x) > 0 && ch.count(x) == 0;
          p.g.push_back(x);
        }
      if (ok) out.push_back(p);
    }
  }
  return out;
}

inline bool o_leq(const SeparatedGraph& g, const AdmissiblePair& a, const AdmissiblePair& b) {
  const std::set<VertexId> hb(b.h.begin(), b.h.end());
  for (VertexId v : a.h)
    if (!hb.count(v)) return false;
  const auto ch = o_c_of_h(g, hb);
  for (BlockId x : a.g)
    if (!std::count(b.g.begin(), b.g.end(), x) && !ch.count(x)) return false;
  return true;
}

inline std::optional<AdmissiblePair> o_poset_inf(const SeparatedGraph& g, const std::vector<AdmissiblePair>& all,
                                          const std::vector<AdmissiblePair>& family) {
  std::vector<AdmissiblePair> lower;
  for (const auto& c : all)
    if (std::all_of(family.begin(), family.end(), [&](const auto& f) { return o_leq(g, c, f); }))
      lower.push_back(c);
  for (const auto& c : lower)
    if (std::all_of(lower.begin(), lower.end(), [&](const auto& d) { return o_leq(g, d, c); })) return c;
  return std::nullopt;
}

inline std::optional<AdmissiblePair> o_poset_sup(const SeparatedGraph& g, const std::vector<AdmissiblePair>& all,
                                          const std::vector<AdmissiblePair>& family) {
  std::vector<AdmissiblePair> upper;
  for (const auto& c : all)
    if (std::all_of(family.begin(), family.end(), [&](const auto& f) { return o_leq(g, f, c); }))
      upper.push_back(c);
  for (const auto& c : upper)
    if (std::all_of(upper.begin(), upper.end(), [&](const auto& d) { return o_leq(g, c, d); })) return c;
  return std::nullopt;
}

}  // namespace testsupport
