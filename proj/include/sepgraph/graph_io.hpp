#pragma once

#include <string>
#include <string_view>

#include "sepgraph/graph.hpp"
#include "sepgraph/lexer.hpp"

namespace sepgraph {

// Grammar, one statement per line, '#' comments:
//   graph NAME
//   vertex v1 v2 ...
//   edge e : v -> w
//   partition v { X = e1 e2 ; Y = f1 }
//   s X Y   |   s *   |   s -
// Without an `s` statement every block is in S.
SeparatedGraph parse_graph(std::string_view text);
GraphPtr parse_graph_shared(std::string_view text);

std::string print_graph(const SeparatedGraph& g);

std::string dot_export(const SeparatedGraph& g);

std::string read_file(const std::string& path);

}  // namespace sepgraph
