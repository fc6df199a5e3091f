#include "sepgraph/transforms.hpp"

namespace sepgraph {

PlainGraph cs_extension(const SeparatedGraph& g) {
  PlainGraph p;
  std::vector<std::uint32_t> block_node(g.block_count(), kNoId);
  for (VertexId v = 0; v < g.vertex_count(); ++v) p.nodes.push_back({g.vertex_name(v), false, v});
  for (BlockId x = 0; x < g.block_count(); ++x) {
    if (g.block(x).in_s) continue;
    block_node[x] = static_cast<std::uint32_t>(p.nodes.size());
    p.nodes.push_back({g.block(x).name, true, x});
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    p.arcs.push_back({g.edge(e).name, g.edge(e).source, g.edge(e).range});
  for (BlockId x = 0; x < g.block_count(); ++x) {
    if (block_node[x] == kNoId) continue;
    const VertexId v = g.block(x).vertex;
    p.arcs.push_back({g.vertex_name(v) + "->" + g.block(x).name, v, block_node[x]});
  }
  p.out.assign(p.nodes.size(), {});
  for (std::uint32_t a = 0; a < p.arcs.size(); ++a) p.out[p.arcs[a].source].push_back(a);
  return p;
}

namespace {

std::string fresh(const SeparatedGraph& g, const std::string& base, bool vertex) {
  std::string name = base;
  auto taken = [&](const std::string& n) {
    return vertex ? g.find_vertex(n).has_value() : g.find_edge(n).has_value();
  };
  while (taken(name)) name += "'";
  return name;
}

}  // namespace

RemoveSResult remove_s(const SeparatedGraph& g) {
  RemoveSResult res;
  GraphBuilder b(g.name());
  for (VertexId v = 0; v < g.vertex_count(); ++v) b.vertex(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    b.edge(g.edge(e).name, g.vertex_name(g.edge(e).source), g.vertex_name(g.edge(e).range));
  for (BlockId x = 0; x < g.block_count(); ++x) {
    const Block& blk = g.block(x);
    std::vector<std::string> names;
    for (EdgeId e : blk.edges) names.push_back(g.edge(e).name);
    if (!blk.in_s) {
      const std::string w = fresh(g, "w." + blk.name, true);
      const std::string f = fresh(g, "f." + blk.name, false);
      b.vertex(w);
      b.edge(f, g.vertex_name(blk.vertex), w);
      names.push_back(f);
      res.q_to_vertex[blk.name] = w;
      res.new_edges[blk.name] = f;
    }
    b.block(g.vertex_name(blk.vertex), blk.name, std::move(names));
  }
  b.s_all();
  res.graph = b.build();
  return res;
}

}  // namespace sepgraph
