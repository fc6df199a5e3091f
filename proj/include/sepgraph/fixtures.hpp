#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sepgraph/graph.hpp"

namespace sepgraph {

struct Fixture {
  std::string name;
  std::string summary;
  std::string text;  // graph description, or a plan for plan fixtures
  bool is_plan = false;
};

// The bundled corpus, sorted by name.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(std::string_view name);
GraphPtr fixture_graph(std::string_view name);

// Names of graph fixtures (plans excluded).
std::vector<std::string> graph_fixture_names();

// Loads `fixture:NAME` from the corpus, anything else from disk.
GraphPtr load_graph(const std::string& spec);

}  // namespace sepgraph
