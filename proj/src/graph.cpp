#include "sepgraph/graph.hpp"

#include <algorithm>
#include <numeric>

namespace sepgraph {

namespace {

template <class Map>
auto lookup(const Map& m, std::string_view name) -> std::optional<typename Map::mapped_type> {
  auto it = m.find(std::string(name));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> sorted_order(const std::vector<std::string>& names) {
  std::vector<std::uint32_t> order(names.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return names[a] < names[b]; });
  return order;
}

}  // namespace

std::optional<VertexId> SeparatedGraph::find_vertex(std::string_view name) const {
  return lookup(vertex_index_, name);
}
std::optional<EdgeId> SeparatedGraph::find_edge(std::string_view name) const {
  return lookup(edge_index_, name);
}
std::optional<BlockId> SeparatedGraph::find_block(std::string_view name) const {
  return lookup(block_index_, name);
}

VertexId SeparatedGraph::vertex_id(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw GraphError("unknown vertex '" + std::string(name) + "'");
}
EdgeId SeparatedGraph::edge_id(std::string_view name) const {
  if (auto e = find_edge(name)) return *e;
  throw GraphError("unknown edge '" + std::string(name) + "'");
}
BlockId SeparatedGraph::block_id(std::string_view name) const {
  if (auto b = find_block(name)) return *b;
  throw GraphError("unknown block '" + std::string(name) + "'");
}

bool SeparatedGraph::s_equals_c() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.in_s; });
}

bool SeparatedGraph::is_separated() const {
  return std::any_of(blocks_at_.begin(), blocks_at_.end(),
                     [](const auto& bs) { return bs.size() > 1; });
}

std::size_t SeparatedGraph::non_s_block_count() const {
  return static_cast<std::size_t>(
      std::count_if(blocks_.begin(), blocks_.end(), [](const Block& b) { return !b.in_s; }));
}

bool operator==(const SeparatedGraph& a, const SeparatedGraph& b) {
  if (a.name_ != b.name_ || a.vertex_names_ != b.vertex_names_) return false;
  if (a.edges_.size() != b.edges_.size() || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.name != y.name || x.source != y.source || x.range != y.range || x.block != y.block)
      return false;
  }
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    const Block& x = a.blocks_[i];
    const Block& y = b.blocks_[i];
    if (x.name != y.name || x.vertex != y.vertex || x.edges != y.edges || x.in_s != y.in_s)
      return false;
  }
  return true;
}

GraphBuilder::GraphBuilder(std::string name) : name_(std::move(name)) {}

GraphBuilder& GraphBuilder::vertex(std::string name) {
  vertices_.push_back(std::move(name));
  return *this;
}

GraphBuilder& GraphBuilder::edge(std::string name, std::string source, std::string range) {
  edges_.push_back({std::move(name), std::move(source), std::move(range)});
  return *this;
}

GraphBuilder& GraphBuilder::block(std::string vertex, std::string name,
                                  std::vector<std::string> edges) {
  blocks_.push_back({std::move(vertex), std::move(name), std::move(edges)});
  return *this;
}

GraphBuilder& GraphBuilder::s_all() {
  s_mode_ = SMode::All;
  s_names_.clear();
  return *this;
}

GraphBuilder& GraphBuilder::s_none() {
  s_mode_ = SMode::None;
  s_names_.clear();
  return *this;
}

GraphBuilder& GraphBuilder::s_add(std::string block) {
  if (s_mode_ != SMode::List) {
    s_mode_ = SMode::List;
    s_names_.clear();
  }
  s_names_.push_back(std::move(block));
  return *this;
}

SeparatedGraph GraphBuilder::build() const {
  SeparatedGraph g;
  g.name_ = name_;

  // vertices
  g.vertex_names_ = vertices_;
  std::sort(g.vertex_names_.begin(), g.vertex_names_.end());
  for (std::size_t i = 0; i < g.vertex_names_.size(); ++i) {
    if (i > 0 && g.vertex_names_[i] == g.vertex_names_[i - 1])
      throw GraphError("duplicate vertex '" + g.vertex_names_[i] + "'");
    g.vertex_index_.emplace(g.vertex_names_[i], static_cast<VertexId>(i));
  }
  const std::size_t nv = g.vertex_names_.size();

  // edges
  std::vector<std::string> edge_names;
  edge_names.reserve(edges_.size());
  for (const auto& e : edges_) edge_names.push_back(e.name);
  const auto edge_order = sorted_order(edge_names);
  g.edges_.reserve(edges_.size());
  for (auto idx : edge_order) {
    const PendingEdge& pe = edges_[idx];
    if (!g.edges_.empty() && g.edges_.back().name == pe.name)
      throw GraphError("duplicate edge '" + pe.name + "'");
    Edge e;
    e.name = pe.name;
    auto s = g.find_vertex(pe.source);
    auto r = g.find_vertex(pe.range);
    if (!s) throw GraphError("edge '" + pe.name + "' has unknown source '" + pe.source + "'");
    if (!r) throw GraphError("edge '" + pe.name + "' has unknown range '" + pe.range + "'");
    e.source = *s;
    e.range = *r;
    g.edge_index_.emplace(e.name, static_cast<EdgeId>(g.edges_.size()));
    g.edges_.push_back(std::move(e));
  }

  // blocks
  std::vector<std::string> block_names;
  block_names.reserve(blocks_.size());
  for (const auto& b : blocks_) block_names.push_back(b.name);
  const auto block_order = sorted_order(block_names);
  g.blocks_.reserve(blocks_.size());
  for (auto idx : block_order) {
    const PendingBlock& pb = blocks_[idx];
    if (!g.blocks_.empty() && g.blocks_.back().name == pb.name)
      throw GraphError("duplicate block '" + pb.name + "'");
    if (pb.edges.empty()) throw GraphError("block '" + pb.name + "' is empty");
    auto v = g.find_vertex(pb.vertex);
    if (!v) throw GraphError("block '" + pb.name + "' at unknown vertex '" + pb.vertex + "'");
    const BlockId bid = static_cast<BlockId>(g.blocks_.size());
    Block b;
    b.name = pb.name;
    b.vertex = *v;
    for (const auto& en : pb.edges) {
      auto e = g.find_edge(en);
      if (!e) throw GraphError("block '" + pb.name + "' lists unknown edge '" + en + "'");
      Edge& edge = g.edges_[*e];
      if (edge.source != *v)
        throw GraphError("block '" + pb.name + "' at '" + pb.vertex + "' contains edge '" + en +
                         "' whose source is '" + g.vertex_names_[edge.source] + "'");
      if (edge.block == bid)
        throw GraphError("edge '" + en + "' listed twice in block '" + pb.name + "'");
      if (edge.block != kNoId)
        throw GraphError("edge '" + en + "' lies in two blocks ('" +
                         g.blocks_[edge.block].name + "' and '" + pb.name + "')");
      edge.block = bid;
      b.edges.push_back(*e);
    }
    std::sort(b.edges.begin(), b.edges.end());
    b.in_s = s_mode_ == SMode::All;
    g.block_index_.emplace(b.name, bid);
    g.blocks_.push_back(std::move(b));
  }
  for (const Edge& e : g.edges_) {
    if (e.block == kNoId)
      throw GraphError("block not a partition: edge '" + e.name + "' lies in no block at '" +
                       g.vertex_names_[e.source] + "'");
  }
  if (s_mode_ == SMode::List) {
    for (const auto& sn : s_names_) {
      auto b = g.find_block(sn);
      if (!b) throw GraphError("S block unknown: '" + sn + "'");
      g.blocks_[*b].in_s = true;
    }
  }

  g.blocks_at_.assign(nv, {});
  g.out_edges_.assign(nv, {});
  g.in_edges_.assign(nv, {});
  for (BlockId b = 0; b < g.blocks_.size(); ++b) g.blocks_at_[g.blocks_[b].vertex].push_back(b);
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    g.out_edges_[g.edges_[e].source].push_back(e);
    g.in_edges_[g.edges_[e].range].push_back(e);
  }
  return g;
}

GraphBuilder builder_from(const SeparatedGraph& g) {
  GraphBuilder b(g.name());
  for (VertexId v = 0; v < g.vertex_count(); ++v) b.vertex(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    b.edge(g.edge(e).name, g.vertex_name(g.edge(e).source), g.vertex_name(g.edge(e).range));
  bool any_s = false;
  for (BlockId x = 0; x < g.block_count(); ++x) {
    std::vector<std::string> names;
    for (EdgeId e : g.block(x).edges) names.push_back(g.edge(e).name);
    b.block(g.vertex_name(g.block(x).vertex), g.block(x).name, std::move(names));
    if (g.block(x).in_s) {
      b.s_add(g.block(x).name);
      any_s = true;
    }
  }
  if (!any_s) b.s_none();
  if (g.s_equals_c()) b.s_all();
  return b;
}

SeparatedGraph with_s(const SeparatedGraph& g, bool all) {
  GraphBuilder b = builder_from(g);
  if (all)
    b.s_all();
  else
    b.s_none();
  return b.build();
}

}  // namespace sepgraph
