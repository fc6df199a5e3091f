#include "sepgraph/fixtures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sepgraph/graph_io.hpp"
#include "sepgraph/key_example.hpp"

namespace sepgraph {

SeparatedGraph make_emn(int m, int n, bool s_all) {
  if (m < 1 || n < 1) throw GraphError("E(m,n) needs m, n >= 1");
  GraphBuilder b("e" + std::to_string(m) + std::to_string(n));
  b.vertex("v").vertex("w");
  std::vector<std::string> as, bs;
  for (int i = 1; i <= n; ++i) {
    as.push_back("a" + std::to_string(i));
    b.edge(as.back(), "v", "w");
  }
  for (int j = 1; j <= m; ++j) {
    bs.push_back("b" + std::to_string(j));
    b.edge(bs.back(), "v", "w");
  }
  b.block("v", "A", as).block("v", "B", bs);
  if (s_all)
    b.s_all();
  else
    b.s_none();
  return b.build();
}

namespace {

std::vector<Fixture> build_corpus() {
  std::vector<Fixture> fx;
  auto add = [&](std::string name, std::string summary, std::string text, bool plan = false) {
    fx.push_back({std::move(name), std::move(summary), std::move(text), plan});
  };
  for (auto [m, n] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    SeparatedGraph g = make_emn(m, n);
    add(g.name(), "E(" + std::to_string(m) + "," + std::to_string(n) + "): Leavitt type (m,n)",
        print_graph(g));
  }
  {
    const std::string text = print_graph(make_emn(2, 3, false));
    add("e23_cohn", "E(2,3) with S empty (Cohn algebra)", "graph e23_cohn" + text.substr(9));
  }
  add("e23_mixed", "E(2,3) with only the a-block in S", R"(graph e23_mixed
vertex v w
edge a1 : v -> w
edge a2 : v -> w
edge a3 : v -> w
edge b1 : v -> w
edge b2 : v -> w
partition v { A = a1 a2 a3 ; B = b1 b2 }
s A
)");
  add("free_1_1", "one vertex, two singleton blocks: L(1) * L(1)", R"(graph free_1_1
vertex v
edge e : v -> v
edge f : v -> v
partition v { X = e ; Y = f }
s *
)");
  add("free_2_1", "one vertex, blocks of sizes 2 and 1: L(1,2) * L(1)", R"(graph free_2_1
vertex v
edge e1 : v -> v
edge e2 : v -> v
edge f : v -> v
partition v { X = e1 e2 ; Y = f }
s *
)");
  add("single_loop", "one loop in one S-block: Laurent polynomials", R"(graph single_loop
vertex v
edge e : v -> v
partition v { X = e }
s *
)");
  add("cuntz2", "one vertex, two loops in one block: L(1,2)", R"(graph cuntz2
vertex v
edge e1 : v -> v
edge e2 : v -> v
partition v { X = e1 e2 }
s *
)");
  add("nonrefinement", "x1+x2 = y1+y2 without refinement", R"(graph nonrefinement
vertex v x1 x2 y1 y2
edge e1 : v -> x1
edge e2 : v -> x2
edge f1 : v -> y1
edge f2 : v -> y2
partition v { X = e1 e2 ; Y = f1 f2 }
s *
)");
  add("csimple", "loop e and edge f at v in separate blocks; simple monoid", R"(graph csimple
vertex v w
edge e : v -> v
edge f : v -> w
partition v { X = e ; Y = f }
s *
)");
  add("csimple_nonsep", "loop e and edge f at v in one block; {w} is a proper ideal",
      R"(graph csimple_nonsep
vertex v w
edge e : v -> v
edge f : v -> w
partition v { X = e f }
s *
)");
  add("noncofinal", "x <- v -> y in separate blocks; simple but not cofinal", R"(graph noncofinal
vertex v x y
edge e : v -> x
edge f : v -> y
partition v { X = e ; Y = f }
s *
)");
  add("nonseparative", "v = 2x = 2y = x + y with x != y", R"(graph nonseparative
vertex v x y
edge e1 : v -> x
edge e2 : v -> x
edge e3 : v -> x
edge f1 : v -> y
edge f2 : v -> y
edge f3 : v -> y
partition v { X = e1 e2 ; Y = f1 f2 ; Z = e3 f3 }
s *
)");
  add("nonseparative_cohn", "the nonseparative graph with S empty", R"(graph nonseparative_cohn
vertex v x y
edge e1 : v -> x
edge e2 : v -> x
edge e3 : v -> x
edge f1 : v -> y
edge f2 : v -> y
edge f3 : v -> y
partition v { X = e1 e2 ; Y = f1 f2 ; Z = e3 f3 }
s -
)");
  add("complete3", "two parallel edges between any two distinct vertices, one block each",
      R"(graph complete3
vertex p q r
edge pq1 : p -> q
edge pq2 : p -> q
edge pr1 : p -> r
edge pr2 : p -> r
edge qp1 : q -> p
edge qp2 : q -> p
edge qr1 : q -> r
edge qr2 : q -> r
edge rp1 : r -> p
edge rp2 : r -> p
edge rq1 : r -> q
edge rq2 : r -> q
partition p { P = pq1 pq2 pr1 pr2 }
partition q { Q = qp1 qp2 qr1 qr2 }
partition r { R = rp1 rp2 rq1 rq2 }
s *
)");
  add("isolated", "a single vertex", "graph isolated\nvertex v\ns *\n");
  add("sinks3", "three sinks", "graph sinks3\nvertex x y z\ns *\n");
  add("chain", "u -> v -> w, not separated", R"(graph chain
vertex u v w
edge e : u -> v
edge f : v -> w
partition u { X = e }
partition v { Y = f }
s *
)");
  add("diamond", "u -> a, u -> b, a -> c, b -> c, not separated", R"(graph diamond
vertex a b c u
edge ac : a -> c
edge bc : b -> c
edge ua : u -> a
edge ub : u -> b
partition a { A = ac }
partition b { B = bc }
partition u { U = ua ub }
s *
)");
  add("mainrevisited", "factorial symmetric resolution of E(2,3)",
      "resolve fixture:e23 stages=2 triples=symmetric delta=factorial\n", true);
  add("nonseparative_plan", "one stage of symmetric all-ones resolution",
      "resolve fixture:nonseparative stages=1 triples=symmetric delta=ones\n", true);
  add("nonrefinement_plan", "one stage, one orientation per pair, all ones",
      "resolve fixture:nonrefinement stages=1 triples=one_per_pair delta=ones\n", true);
  std::sort(fx.begin(), fx.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return fx;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> corpus = build_corpus();
  return corpus;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw std::runtime_error("unknown fixture '" + std::string(name) + "'");
}

GraphPtr fixture_graph(std::string_view name) {
  const Fixture& f = fixture(name);
  if (f.is_plan) throw std::runtime_error("fixture '" + f.name + "' is a plan, not a graph");
  return parse_graph_shared(f.text);
}

std::vector<std::string> graph_fixture_names() {
  std::vector<std::string> out;
  for (const auto& f : fixtures())
    if (!f.is_plan) out.push_back(f.name);
  return out;
}

GraphPtr load_graph(const std::string& spec) {
  constexpr std::string_view prefix = "fixture:";
  if (spec.rfind(prefix, 0) == 0) return fixture_graph(spec.substr(prefix.size()));
  return parse_graph_shared(read_file(spec));
}

}  // namespace sepgraph
