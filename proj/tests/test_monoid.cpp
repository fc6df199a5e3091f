#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "sepgraph/fixtures.hpp"
#include "sepgraph/graph_io.hpp"
#include "sepgraph/lexer.hpp"
#include "sepgraph/monoid.hpp"
#include "support_monoid.hpp"

using namespace sepgraph;
using namespace testsupport;

namespace {

MonoidPresentation pres(std::string_view fixture) { return MonoidPresentation(fixture_graph(fixture)); }

MonoidElement el(const MonoidPresentation& p, std::string_view text) { return parse_monoid_element(p, text); }

bool non_separated(const SeparatedGraph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.blocks_at(v).size() > 1) return false;
  return true;
}

void check_witness(const MonoidPresentation& p, const MonoidElement& a, const MonoidElement& b,
                   const EqResult& r) {
  REQUIRE(r.verdict == EqVerdict::Equal);
  auto ga = replay(p, a, r.trace_a);
  auto gb = replay(p, b, r.trace_b);
  REQUIRE(ga);
  REQUIRE(gb);
  CHECK(*ga == r.gamma);
  CHECK(*gb == r.gamma);
}

}  // namespace

TEST_CASE("presentation of E(2,3), sinks and the nonseparative graph") {
  auto e23 = pres("e23");
  CHECK(e23.generator_count() == 2);
  CHECK(format_relations(e23) == std::vector<std::string>{"v = 3 w", "v = 2 w"});

  auto sinks = pres("sinks3");
  CHECK(sinks.generator_count() == sinks.graph().vertex_count());
  CHECK(format_relations(sinks).empty());

  auto ns = pres("nonseparative");
  auto rel = format_relations(ns);
  std::sort(rel.begin(), rel.end());
  CHECK(rel == std::vector<std::string>{"v = 2 x", "v = 2 y", "v = x + y"});

  auto cohn = pres("e23_cohn");
  CHECK(cohn.generator_count() == 4);
  CHECK(cohn.find("q.A"));
  CHECK(cohn.find("q.B"));
}

TEST_CASE("every relation has a single vertex on the left, one per block") {
  for (const auto& name : graph_fixture_names()) {
    auto p = pres(name);
    const auto rels = oracle_relations(p.graph());
    REQUIRE(rels.size() == p.graph().block_count());
    for (BlockId x = 0; x < p.graph().block_count(); ++x) {
      CHECK(to_bag(p, p.rho(x)) == rels[x].rhs);
      CHECK(p.is_vertex(p.graph().block(x).vertex));
    }
  }
}

TEST_CASE("element syntax") {
  auto p = pres("e23");
  CHECK(format_monoid_element(p, el(p, "v + 2 w")) == "v + 2 w");
  CHECK(el(p, "2w") == el(p, "2 w"));
  CHECK(el(p, "2 * w + w") == el(p, "3 w"));
  CHECK(el(p, "0").is_zero());
  CHECK(format_monoid_element(p, MonoidElement{}) == "0");
  CHECK_THROWS_AS(el(p, "u"), ParseError);
  CHECK_THROWS_AS(el(p, "v +"), ParseError);
  CHECK_THROWS_AS(el(p, "v w"), ParseError);
  auto c = pres("e23_cohn");
  CHECK(format_monoid_element(c, el(c, "q.B + v")) == "v + q.B");
}

TEST_CASE("forward steps") {
  auto p = pres("e23");
  std::set<MonoidElement> got;
  for (auto& s : forward_steps(p, el(p, "v"))) got.insert(s.result);
  CHECK(got == std::set<MonoidElement>{el(p, "2 w"), el(p, "3 w")});
  CHECK(forward_steps(p, el(p, "4 w")).empty());

  // collapsed by multiset equality, k copies of v give one successor per distinct rho(X)
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    const auto rels = oracle_relations(q.graph());
    for (VertexId v = 0; v < q.graph().vertex_count(); ++v) {
      std::set<MonoidElement> distinct;
      for (auto& s : forward_steps(q, MonoidElement::generator(v, 3))) distinct.insert(s.result);
      std::set<NameBag> rhos;
      for (const auto& r : rels)
        if (r.lhs == q.graph().vertex_name(v)) rhos.insert(r.rhs);
      CHECK(distinct.size() == rhos.size());
    }
  }
}

TEST_CASE("parallel steps compose from single steps") {
  auto p = pres("e23");
  CHECK(parallel_step(p, el(p, "2 v"), {}) == el(p, "2 v"));
  const BlockId a = p.graph().block_id("A"), b = p.graph().block_id("B");
  CHECK(parallel_step(p, el(p, "2 v"), std::vector<BlockId>{a}) == el(p, "v + 3 w"));
  CHECK(parallel_step(p, el(p, "2 v"), std::vector<BlockId>{a, b}) == el(p, "5 w"));
  CHECK_THROWS_AS(parallel_step(p, el(p, "v"), std::vector<BlockId>{a, b}), GraphError);

  std::mt19937_64 rng(11);
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    const SeparatedGraph& g = q.graph();
    for (int trial = 0; trial < 20; ++trial) {
      MonoidElement x = from_bag(q, random_bag(g, rng, 4));
      // choose a block for a random subset of the vertex occurrences
      std::vector<BlockId> choices;
      for (const auto& [gen, k] : x.terms()) {
        if (!q.is_vertex(gen) || g.blocks_at(gen).empty()) continue;
        for (std::uint32_t i = 0; i < k; ++i) {
          if (rng() % 2) continue;
          const auto bl = g.blocks_at(gen);
          choices.push_back(bl[rng() % bl.size()]);
        }
      }
      MonoidElement seq = x;
      for (BlockId c : choices) seq = *apply_step(q, seq, {StepDirection::Forward, c});
      CHECK(parallel_step(q, x, choices) == seq);
      if (auto imgs = parallel_images(q, x)) CHECK(std::binary_search(imgs->begin(), imgs->end(), seq));
    }
  }
}

TEST_CASE("~> and -> generate the same bounded reachability") {
  std::mt19937_64 rng(5);
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    for (int trial = 0; trial < 5; ++trial) {
      const MonoidElement x = from_bag(q, random_bag(q.graph(), rng, 2));
      // -> reachability within 4 steps
      std::set<MonoidElement> arrow{x};
      std::vector<MonoidElement> layer{x};
      for (int d = 0; d < 4; ++d) {
        std::vector<MonoidElement> next;
        for (auto& y : layer)
          for (auto& s : forward_steps(q, y))
            if (s.result.size() <= 20 && arrow.insert(s.result).second) next.push_back(s.result);
        layer = std::move(next);
      }
      // every single -> step is a ~> step, and every ~> step lies in ->*
      auto imgs = parallel_images(q, x);
      REQUIRE(imgs);
      for (auto& s : forward_steps(q, x)) CHECK(std::binary_search(imgs->begin(), imgs->end(), s.result));
      for (auto& y : *imgs) {
        if (x.size() <= 2 && y.size() <= 20) {
          // at most |x| single steps are needed
          std::set<MonoidElement> reach{x};
          std::vector<MonoidElement> l{x};
          for (std::uint64_t d = 0; d < x.size(); ++d) {
            std::vector<MonoidElement> nx;
            for (auto& z : l)
              for (auto& s : forward_steps(q, z))
                if (reach.insert(s.result).second) nx.push_back(s.result);
            l = std::move(nx);
          }
          CHECK(reach.count(y) == 1);
        }
      }
    }
  }
}

TEST_CASE("-> is compatible with sums") {
  std::mt19937_64 rng(17);
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    for (int trial = 0; trial < 10; ++trial) {
      const MonoidElement a = from_bag(q, random_bag(q.graph(), rng));
      const MonoidElement c = from_bag(q, random_bag(q.graph(), rng));
      std::set<MonoidElement> sums;
      for (auto& s : forward_steps(q, a + c)) sums.insert(s.result);
      for (auto& s : forward_steps(q, a)) CHECK(sums.count(s.result + c) == 1);
    }
  }
}

TEST_CASE("(*) checker") {
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    if (non_separated(q.graph())) {
      CAPTURE(name);
      CHECK(check_star(q).overall == StarStatus::Pass);
      CHECK(check_star(q).pairs.empty());
    }
  }
  auto ns = pres("nonseparative");
  auto rep = check_star(ns);
  CHECK(rep.overall == StarStatus::Fail);
  CHECK(rep.pairs.size() == 3);
  CHECK_FALSE(ns.star_holds());

  // free_1_1: v = v, v = v; the common image is v itself
  auto f = pres("free_1_1");
  auto r = check_star(f);
  CHECK(r.overall == StarStatus::Pass);
  REQUIRE(r.pairs.size() == 1);
  REQUIRE(r.pairs[0].gamma);
}

TEST_CASE("word problem: worked cases") {
  auto p = pres("e23");
  auto r = monoid_eq(p, el(p, "2 w"), el(p, "3 w"));
  check_witness(p, el(p, "2 w"), el(p, "3 w"), r);

  auto ne = monoid_eq(p, el(p, "w"), el(p, "2 w"));
  CHECK(ne.verdict == EqVerdict::NotEqual);
  if (ne.certificate == Certificate::ClassExhausted) {
    auto cls = oracle_class(p.graph(), to_bag(p, el(p, ne.exhausted_side == 0 ? "w" : "2 w")));
    REQUIRE(cls);
    std::set<NameBag> got;
    for (auto& x : ne.exhausted_class) got.insert(to_bag(p, x));
    CHECK(got == *cls);
  }
  // class of w is {w}
  auto cls_w = oracle_class(p.graph(), to_bag(p, el(p, "w")));
  REQUIRE(cls_w);
  CHECK(cls_w->size() == 1);

  auto n = pres("nonseparative");
  check_witness(n, el(n, "2 x"), el(n, "x + y"), monoid_eq(n, el(n, "2 x"), el(n, "x + y")));
  check_witness(n, el(n, "2 y"), el(n, "x + y"), monoid_eq(n, el(n, "2 y"), el(n, "x + y")));
  check_witness(n, el(n, "2 x"), el(n, "2 y"), monoid_eq(n, el(n, "2 x"), el(n, "2 y")));
  auto xy = monoid_eq(n, el(n, "x"), el(n, "y"));
  CHECK(xy.verdict == EqVerdict::NotEqual);

  // forced through the class-exhaustion path
  EqOptions no_pairs;
  no_pairs.use_pair_invariant = false;
  auto xy2 = monoid_eq(n, el(n, "x"), el(n, "y"), no_pairs);
  REQUIRE(xy2.verdict == EqVerdict::NotEqual);
  CHECK(xy2.certificate == Certificate::ClassExhausted);
  CHECK(xy2.exhausted_class.size() == 1);

  CHECK_THROWS(monoid_eq(n, MonoidElement::generator(99), el(n, "x")));
}

TEST_CASE("word problem agrees with the class oracle on random pairs") {
  std::mt19937_64 rng(23);
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    const SeparatedGraph& g = q.graph();
    CAPTURE(name);
    for (int trial = 0; trial < 12; ++trial) {
      const NameBag a = random_bag(g, rng, 2);
      // half the time b is a random walk away from a, so equal
      const bool related = trial % 2 == 0;
      const NameBag b = related ? random_walk(g, a, 4, rng) : random_bag(g, rng, 2);
      const auto ea = from_bag(q, a), eb = from_bag(q, b);
      const auto r = monoid_eq(q, ea, eb);
      if (related) CHECK(r.verdict != EqVerdict::NotEqual);
      if (r.verdict == EqVerdict::Equal) check_witness(q, ea, eb, r);
      auto cls = oracle_class(g, a);
      if (!cls) continue;
      const bool truth = cls->count(b) > 0;
      if (r.verdict != EqVerdict::Unknown) CHECK((r.verdict == EqVerdict::Equal) == truth);
      if (r.certificate == Certificate::ClassExhausted) {
        std::set<NameBag> got;
        for (auto& x : r.exhausted_class) got.insert(to_bag(q, x));
        auto exp = oracle_class(g, r.exhausted_side == 0 ? a : b);
        REQUIRE(exp);
        CHECK(got == *exp);
        CHECK(got.count(r.exhausted_side == 0 ? b : a) == 0);
      }
    }
  }
}

TEST_CASE("phase 1 and phase 2 agree when both answer") {
  std::mt19937_64 rng(29);
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    if (check_star(q).overall != StarStatus::Pass) continue;
    CAPTURE(name);
    EqOptions only1, only2;
    only1.phase2 = false;
    only1.use_pair_invariant = false;
    only2.phase1 = false;
    only2.use_pair_invariant = false;
    for (int trial = 0; trial < 10; ++trial) {
      const NameBag a = random_bag(q.graph(), rng, 2);
      const NameBag b = trial % 2 ? random_walk(q.graph(), a, 3, rng) : random_bag(q.graph(), rng, 2);
      const auto r1 = monoid_eq(q, from_bag(q, a), from_bag(q, b), only1);
      const auto r2 = monoid_eq(q, from_bag(q, a), from_bag(q, b), only2);
      // phase 1 alone only ever proves equality
      CHECK(r1.verdict != EqVerdict::NotEqual);
      if (r1.verdict != EqVerdict::Unknown && r2.verdict != EqVerdict::Unknown) CHECK(r1.verdict == r2.verdict);
    }
  }
}

TEST_CASE("budgets") {
  Budget b = Budget::parse("size=10,depth=3");
  CHECK(b.max_size == 10);
  CHECK(b.max_depth == 3);
  CHECK(b.max_states == Budget{}.max_states);
  CHECK(Budget::parse("frontier=7").max_states == 7);
  CHECK_THROWS(Budget::parse("size"));
  CHECK_THROWS(Budget::parse("speed=3"));
  CHECK_THROWS(Budget::parse("size=-1"));

  // v ~ v + w in E(1,2); a depth-1 budget may give up but must never refute it
  auto p = pres("e12");
  EqOptions tiny;
  tiny.budget.max_depth = 1;
  tiny.use_pair_invariant = false;
  auto r = monoid_eq(p, el(p, "v"), el(p, "v + w"), tiny);
  CHECK(r.verdict != EqVerdict::NotEqual);
}

TEST_CASE("refinement") {
  SUBCASE("diagonal") {
    auto p = pres("nonseparative");
    auto a1 = el(p, "x"), a2 = el(p, "y");
    auto r = refine(p, a1, a2, a1, a2);
    REQUIRE(r.found);
    CHECK(r.verified);
    CHECK(r.g12.is_zero());
    CHECK(r.g21.is_zero());
  }
  SUBCASE("free monoid: multiset refinement") {
    auto p = pres("sinks3");
    auto a = MonoidElement::generator(0, 2) + MonoidElement::generator(1);
    auto b = MonoidElement::generator(2, 1);
    auto c = MonoidElement::generator(0) + MonoidElement::generator(2);
    auto d = MonoidElement::generator(0) + MonoidElement::generator(1);
    auto r = refine(p, a, b, c, d);
    REQUIRE(r.found);
    CHECK(r.verified);
    CHECK(r.g11 + r.g12 == a);
    CHECK(r.g21 + r.g22 == b);
    CHECK(r.g11 + r.g21 == c);
    CHECK(r.g12 + r.g22 == d);
  }
  SUBCASE("random equal sums on non-separated graphs") {
    std::mt19937_64 rng(31);
    for (const auto& name : graph_fixture_names()) {
      auto q = pres(name);
      if (!non_separated(q.graph())) continue;
      CAPTURE(name);
      for (int trial = 0; trial < 8; ++trial) {
        const NameBag a1 = random_bag(q.graph(), rng, 2), a2 = random_bag(q.graph(), rng, 2);
        NameBag sum = a1;
        for (auto& [k, c] : a2) sum[k] += c;
        const NameBag s2 = random_walk(q.graph(), sum, 3, rng);
        // split s2 into two random halves
        NameBag b1, b2;
        for (auto& [k, c] : s2)
          for (int i = 0; i < c; ++i) ++(rng() % 2 ? b1 : b2)[k];
        auto r = refine(q, from_bag(q, a1), from_bag(q, a2), from_bag(q, b1), from_bag(q, b2));
        if (!r.found) continue;  // budget
        CHECK(r.verified);
        CHECK(r.a1p + r.a2p == r.gamma);
        CHECK(r.b1p + r.b2p == r.gamma);
      }
    }
  }
  SUBCASE("unequal sums") {
    auto p = pres("e23");
    auto r = refine(p, el(p, "w"), el(p, "0"), el(p, "2 w"), el(p, "0"));
    CHECK_FALSE(r.found);
    CHECK_FALSE(r.reason.empty());
  }
}

TEST_CASE("generated pair") {
  auto p = pres("csimple");
  // Y has r(Y) = w, so saturation pulls v in
  auto gp = generated_pair(p, el(p, "w"));
  CHECK(format_pair(p.graph(), gp) == "H = {v,w}; G = {}");
  auto c = pres("e23_cohn");
  auto gq = generated_pair(c, el(c, "q.A"));
  CHECK(format_pair(c.graph(), gq) == "H = {}; G = {A}");
  auto gw = generated_pair(c, el(c, "w"));
  CHECK(format_pair(c.graph(), gw) == "H = {w}; G = {}");
  auto gwq = generated_pair(c, el(c, "w + q.A"));
  CHECK(format_pair(c.graph(), gwq) == "H = {v,w}; G = {}");
  for (const auto& name : graph_fixture_names()) {
    auto q = pres(name);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) CHECK(is_admissible(q.graph(), generated_pair(q, from_bag(q, random_bag(q.graph(), rng)))));
  }
}

TEST_CASE("pi homomorphism") {
  auto p = pres("e23_cohn");
  SUBCASE("trivial pair") {
    auto r = pi_homomorphism(p, {});
    CHECK(r.killed.empty());
    CHECK(r.expected_killed.empty());
    CHECK(r.relations_ok);
    CHECK(r.quotient->vertex_count() == 2);
    for (GenId gen = 0; gen < p.generator_count(); ++gen)
      CHECK(format_monoid_element(MonoidPresentation(r.quotient), r.image[gen]) == p.name(gen));
  }
  SUBCASE("everything") {
    AdmissiblePair all;
    for (VertexId v = 0; v < p.graph().vertex_count(); ++v) all.h.push_back(v);
    auto r = pi_homomorphism(p, all);
    CHECK(r.quotient->vertex_count() == 0);
    CHECK(r.killed.size() == p.generator_count());
    CHECK(r.killed == r.expected_killed);
    CHECK(r.relations_ok);
  }
  SUBCASE("non-saturated H is rejected") {
    auto c = pres("csimple");
    CHECK_THROWS_AS(pi_homomorphism(c, parse_pair(c.graph(), "H = {w}")), GraphError);
  }
  SUBCASE("kernel is exactly the pair generators on every admissible pair") {
    for (const auto& name : graph_fixture_names()) {
      auto q = pres(name);
      const SeparatedGraph& g = q.graph();
      if (g.vertex_count() > 8) continue;
      CAPTURE(name);
      for (std::uint32_t mask = 0; mask < (1u << g.vertex_count()); ++mask) {
        VertexSet h;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
          if (mask >> v & 1) h.push_back(v);
        if (!is_hereditary(g, h) || !is_cs_saturated(g, h)) continue;
        const BlockSet gh = g_of_h(g, h);
        for (std::uint32_t gm = 0; gm < (1u << gh.size()) && gm < 16; ++gm) {
          AdmissiblePair pair{h, {}};
          for (std::size_t i = 0; i < gh.size(); ++i)
            if (gm >> i & 1) pair.g.push_back(gh[i]);
          auto r = pi_homomorphism(q, pair);
          CHECK(r.killed == r.expected_killed);
          CHECK(r.relations_ok);
        }
      }
    }
  }
}

TEST_CASE("presentations to graphs") {
  SUBCASE("<x | 2x = 3x> is E(2,3)") {
    auto g = presentation_to_graph(parse_presentation("generators x\nrelation 2 x = 3 x\n"));
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 5);
    CHECK(g.block_count() == 2);
    CHECK(g.s_equals_c());
    auto p = MonoidPresentation(std::make_shared<const SeparatedGraph>(g));
    CHECK(format_relations(p) == std::vector<std::string>{"u1 = 2 x", "u1 = 3 x"});
  }
  SUBCASE("x = x") {
    auto g = presentation_to_graph(parse_presentation("generators x\nrelation x = x\n"));
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.block_count() == 2);
    for (BlockId b = 0; b < g.block_count(); ++b) CHECK(g.block(b).edges.size() == 1);
  }
  SUBCASE("x + x = y") {
    auto g = presentation_to_graph(parse_presentation("generators x y\nrelation x + x = y\n"));
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
  }
  SUBCASE("generator named like a source") {
    auto g = presentation_to_graph(parse_presentation("generators u1\nrelation u1 = 2 u1\n"));
    CHECK(g.find_vertex("u1'"));
  }
  SUBCASE("relations survive the round trip") {
    auto cp = parse_presentation("generators a b c\nrelation a + b = 2 c\nrelation c = a\n");
    auto g = std::make_shared<const SeparatedGraph>(presentation_to_graph(cp));
    auto p = MonoidPresentation(g);
    auto rels = format_relations(p);
    CHECK(rels == std::vector<std::string>{"u1 = a + b", "u1 = 2 c", "u2 = c", "u2 = a"});
  }
  CHECK_THROWS_AS(presentation_to_graph(parse_presentation("generators x\nrelation 0 = x\n")), GraphError);
  CHECK_THROWS_AS(parse_presentation("generators x\nrelation x = z\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("frobnicate\n"), ParseError);
}
