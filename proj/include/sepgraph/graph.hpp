#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sepgraph {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using BlockId = std::uint32_t;

inline constexpr std::uint32_t kNoId = std::numeric_limits<std::uint32_t>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::string name;
  VertexId source = kNoId;
  VertexId range = kNoId;
  BlockId block = kNoId;
};

struct Block {
  std::string name;
  VertexId vertex = kNoId;
  std::vector<EdgeId> edges;  // sorted by id
  bool in_s = true;
};

// A finite separated graph (E, C, S). Ids follow lexicographic order of names
// within each namespace, so iterating by id is the canonical order.
class SeparatedGraph {
 public:
  SeparatedGraph() = default;

  const std::string& name() const { return name_; }

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t block_count() const { return blocks_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const Block& block(BlockId b) const { return blocks_[b]; }

  std::span<const BlockId> blocks_at(VertexId v) const { return blocks_at_[v]; }
  std::span<const EdgeId> out_edges(VertexId v) const { return out_edges_[v]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_edges_[v]; }

  bool is_sink(VertexId v) const { return out_edges_[v].empty(); }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;
  std::optional<BlockId> find_block(std::string_view name) const;

  VertexId vertex_id(std::string_view name) const;
  EdgeId edge_id(std::string_view name) const;
  BlockId block_id(std::string_view name) const;

  // e_X: the lexicographically least edge of the block.
  EdgeId chosen_edge(BlockId b) const { return blocks_[b].edges.front(); }

  bool s_equals_c() const;
  // Some vertex carries two or more blocks.
  bool is_separated() const;
  std::size_t non_s_block_count() const;

  friend bool operator==(const SeparatedGraph& a, const SeparatedGraph& b);

 private:
  friend class GraphBuilder;

  std::string name_;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<Block> blocks_;
  std::vector<std::vector<BlockId>> blocks_at_;
  std::vector<std::vector<EdgeId>> out_edges_;
  std::vector<std::vector<EdgeId>> in_edges_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
  std::unordered_map<std::string, BlockId> block_index_;
};

using GraphPtr = std::shared_ptr<const SeparatedGraph>;

// Collects names, then validates and canonicalizes in build().
class GraphBuilder {
 public:
  explicit GraphBuilder(std::string name = "g");

  GraphBuilder& vertex(std::string name);
  GraphBuilder& edge(std::string name, std::string source, std::string range);
  GraphBuilder& block(std::string vertex, std::string name, std::vector<std::string> edges);
  GraphBuilder& s_all();
  GraphBuilder& s_none();
  GraphBuilder& s_add(std::string block);

  SeparatedGraph build() const;
  GraphPtr build_shared() const { return std::make_shared<const SeparatedGraph>(build()); }

 private:
  enum class SMode { All, None, List };
  struct PendingEdge {
    std::string name, source, range;
  };
  struct PendingBlock {
    std::string vertex, name;
    std::vector<std::string> edges;
  };

  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<PendingEdge> edges_;
  std::vector<PendingBlock> blocks_;
  SMode s_mode_ = SMode::All;
  std::vector<std::string> s_names_;
};

// Builder preloaded with every vertex, edge, block and the S set of g.
GraphBuilder builder_from(const SeparatedGraph& g);

// Copy of g with S replaced (all blocks in S when `all`, none otherwise).
SeparatedGraph with_s(const SeparatedGraph& g, bool all);

}  // namespace sepgraph
