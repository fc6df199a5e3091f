#include "sepgraph/morphism.hpp"

#include <algorithm>
#include <set>

namespace sepgraph {

const char* to_string(MorphismCondition c) {
  switch (c) {
    case MorphismCondition::None: return "none";
    case MorphismCondition::Shape: return "shape";
    case MorphismCondition::GraphHom: return "graph-homomorphism";
    case MorphismCondition::VertexInjective: return "vertex-injectivity";
    case MorphismCondition::BlockInto: return "block-into-block";
    case MorphismCondition::SBlockBijective: return "s-block-bijection";
  }
  return "?";
}

MorphismReport check_morphism(const GraphMorphism& m) {
  MorphismReport rep;
  auto fail = [&](MorphismCondition c, std::string d) {
    rep.ok = false;
    rep.failed = c;
    rep.detail = std::move(d);
    rep.block_map.clear();
    return rep;
  };
  const SeparatedGraph& E = *m.source;
  const SeparatedGraph& F = *m.target;
  if (m.vertex_map.size() != E.vertex_count() || m.edge_map.size() != E.edge_count())
    return fail(MorphismCondition::Shape, "map sizes do not match the source graph");
  for (VertexId v : m.vertex_map)
    if (v >= F.vertex_count()) return fail(MorphismCondition::Shape, "vertex image out of range");
  for (EdgeId e : m.edge_map)
    if (e >= F.edge_count()) return fail(MorphismCondition::Shape, "edge image out of range");

  for (EdgeId e = 0; e < E.edge_count(); ++e) {
    const Edge& src = E.edge(e);
    const Edge& img = F.edge(m.edge_map[e]);
    if (img.source != m.vertex_map[src.source] || img.range != m.vertex_map[src.range])
      return fail(MorphismCondition::GraphHom, "edge '" + src.name + "' does not commute with s,r");
  }
  std::vector<VertexId> seen(m.vertex_map);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    return fail(MorphismCondition::VertexInjective, "two vertices share an image");

  for (BlockId x = 0; x < E.block_count(); ++x) {
    const Block& b = E.block(x);
    const BlockId y = F.edge(m.edge_map[b.edges.front()]).block;
    std::set<EdgeId> images;
    for (EdgeId e : b.edges) {
      const EdgeId fe = m.edge_map[e];
      if (F.edge(fe).block != y)
        return fail(MorphismCondition::BlockInto, "block '" + b.name + "' meets two target blocks");
      if (!images.insert(fe).second)
        return fail(MorphismCondition::BlockInto, "block '" + b.name + "' is not mapped injectively");
    }
    if (b.in_s) {
      const Block& target = F.block(y);
      if (!target.in_s)
        return fail(MorphismCondition::SBlockBijective,
                    "S-block '" + b.name + "' lands in non-S block '" + target.name + "'");
      if (target.edges.size() != b.edges.size())
        return fail(MorphismCondition::SBlockBijective,
                    "S-block '" + b.name + "' is not onto block '" + target.name + "'");
    }
    rep.block_map.push_back(y);
  }
  rep.ok = true;
  return rep;
}

GraphMorphism identity_morphism(const GraphPtr& g) {
  GraphMorphism m{g, g, {}, {}};
  for (VertexId v = 0; v < g->vertex_count(); ++v) m.vertex_map.push_back(v);
  for (EdgeId e = 0; e < g->edge_count(); ++e) m.edge_map.push_back(e);
  return m;
}

GraphMorphism inclusion_by_name(const GraphPtr& sub, const GraphPtr& super) {
  GraphMorphism m{sub, super, {}, {}};
  m.vertex_map.reserve(sub->vertex_count());
  m.edge_map.reserve(sub->edge_count());
  for (VertexId v = 0; v < sub->vertex_count(); ++v)
    m.vertex_map.push_back(super->vertex_id(sub->vertex_name(v)));
  for (EdgeId e = 0; e < sub->edge_count(); ++e)
    m.edge_map.push_back(super->edge_id(sub->edge(e).name));
  return m;
}

Subobject finite_complete_subobject(const GraphPtr& gp, const std::vector<std::string>& items) {
  const SeparatedGraph& g = *gp;
  if (items.empty()) throw GraphError("finite_complete_subobject needs a nonempty item set");
  std::vector<char> a_vertex(g.vertex_count(), 0), a_edge(g.edge_count(), 0);
  for (const auto& it : items) {
    if (auto v = g.find_vertex(it)) {
      a_vertex[*v] = 1;
    } else if (auto e = g.find_edge(it)) {
      a_edge[*e] = 1;
    } else {
      throw GraphError("item '" + it + "' is neither a vertex nor an edge");
    }
  }
  // E_1: generated subgraph
  std::vector<char> e1_vertex(a_vertex);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (a_edge[e]) e1_vertex[g.edge(e).source] = e1_vertex[g.edge(e).range] = 1;
  // F_v = s^{-1}_{E_1}(v) plus S-blocks at v meeting A
  std::vector<char> f_edge(a_edge);
  for (BlockId x = 0; x < g.block_count(); ++x) {
    const Block& b = g.block(x);
    if (!b.in_s || !e1_vertex[b.vertex]) continue;
    bool meets = std::any_of(b.edges.begin(), b.edges.end(), [&](EdgeId e) { return a_edge[e]; });
    if (meets)
      for (EdgeId e : b.edges) f_edge[e] = 1;
  }
  std::vector<char> f_vertex(e1_vertex);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (f_edge[e]) f_vertex[g.edge(e).range] = 1;

  GraphBuilder sb(g.name());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (f_vertex[v]) sb.vertex(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (f_edge[e])
      sb.edge(g.edge(e).name, g.vertex_name(g.edge(e).source), g.vertex_name(g.edge(e).range));
  bool any_s = false;
  for (BlockId x = 0; x < g.block_count(); ++x) {
    const Block& b = g.block(x);
    std::vector<std::string> kept;
    for (EdgeId e : b.edges)
      if (f_edge[e]) kept.push_back(g.edge(e).name);
    if (kept.empty()) continue;
    sb.block(g.vertex_name(b.vertex), b.name, std::move(kept));
    if (b.in_s) {
      sb.s_add(b.name);
      any_s = true;
    }
  }
  if (!any_s) sb.s_none();
  GraphPtr sub = sb.build_shared();
  return {sub, inclusion_by_name(sub, gp)};
}

}  // namespace sepgraph
