#pragma once

#include <map>
#include <string>
#include <vector>

#include "sepgraph/graph.hpp"

namespace sepgraph {

// Directed graph without partitions. Nodes are either vertices of E or
// blocks of C \ S.
struct PlainGraph {
  struct Node {
    std::string name;
    bool is_block = false;
    std::uint32_t id = 0;  // VertexId or BlockId in the originating graph
  };
  struct Arc {
    std::string name;
    std::uint32_t source = 0;
    std::uint32_t range = 0;
  };
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  std::vector<std::vector<std::uint32_t>> out;  // arc ids per node
};

// XE: nodes E^0 then C \ S (block order), arcs E^1 then one v -> X per X in C_v \ S.
PlainGraph cs_extension(const SeparatedGraph& g);

struct RemoveSResult {
  SeparatedGraph graph;
  std::map<std::string, std::string> q_to_vertex;  // block name -> new sink w_X
  std::map<std::string, std::string> new_edges;    // block name -> new edge f_X
};

// Adjoins a sink w_X and an edge f_X into X for every X in C \ S, then puts
// every block in S.
RemoveSResult remove_s(const SeparatedGraph& g);

}  // namespace sepgraph
