#pragma once

#include <string>
#include <vector>

#include "sepgraph/graph.hpp"

namespace sepgraph {

struct GraphMorphism {
  GraphPtr source;
  GraphPtr target;
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};

enum class MorphismCondition {
  None,
  Shape,            // map sizes or ids out of range
  GraphHom,         // s and r do not commute
  VertexInjective,
  BlockInto,        // a block is not sent injectively into one target block
  SBlockBijective,  // an S-block does not land bijectively on a target S-block
};

const char* to_string(MorphismCondition c);

struct MorphismReport {
  bool ok = false;
  MorphismCondition failed = MorphismCondition::None;
  std::string detail;
  std::vector<BlockId> block_map;  // filled on success
};

MorphismReport check_morphism(const GraphMorphism& m);

GraphMorphism identity_morphism(const GraphPtr& g);

// Sends every vertex and edge of `sub` to the item of `super` with the same name.
GraphMorphism inclusion_by_name(const GraphPtr& sub, const GraphPtr& super);

struct Subobject {
  GraphPtr graph;
  GraphMorphism inclusion;
};

// Smallest complete subobject built from the items (vertex or edge names) by
// taking the generated subgraph and completing S-blocks that it meets.
Subobject finite_complete_subobject(const GraphPtr& g, const std::vector<std::string>& items);

}  // namespace sepgraph
