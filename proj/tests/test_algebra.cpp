#include <doctest.h>

#include <set>

#include "sepgraph/expression.hpp"
#include "sepgraph/fixtures.hpp"
#include "sepgraph/graph_io.hpp"
#include "sepgraph/homomorphism.hpp"
#include "sepgraph/key_example.hpp"
#include "support.hpp"

using namespace sepgraph;
using testsupport::random_element;

namespace {

struct Alg {
  GraphPtr g;
  ReductionSystem sys;
  explicit Alg(GraphPtr graph) : g(graph), sys(graph) {}
  explicit Alg(std::string_view fixture_name) : Alg(fixture_graph(fixture_name)) {}
  RationalElement parse(std::string_view s) const { return parse_expression<Rational>(*g, s); }
  RationalElement nf(std::string_view s) const { return normalize(sys, parse(s)); }
  RationalElement mul(std::string_view a, std::string_view b) const {
    return multiply(sys, parse(a), parse(b));
  }
  std::string show(const RationalElement& x) const { return format_element(*g, x); }
};

const char* kLoopCohn = "vertex v\nedge e1 : v -> v\nedge e2 : v -> v\npartition v { X = e1 e2 }\ns -\n";

}  // namespace

TEST_CASE("rule (5): e* f for distinct e, f in one block vanishes") {
  Alg a("cuntz2");
  CHECK(a.nf("e1* e2").is_zero());
  CHECK(a.show(a.nf("e1* e1")) == "v");
}

TEST_CASE("singleton S-block: e e* = s(e)") {
  Alg a("single_loop");
  CHECK(a.show(a.nf("e e*")) == "v");
}

TEST_CASE("rule (6): e_X e_X* = s(e_X) - f f*") {
  Alg a("cuntz2");
  CHECK(a.show(a.nf("e1 e1*")) == "v - e2 e2*");
  // e2 is not the chosen edge, so e2 e2* is already reduced
  CHECK(a.show(a.nf("e2 e2*")) == "e2 e2*");
}

TEST_CASE("multiply") {
  SUBCASE("distinct vertices are orthogonal") {
    Alg a("e23");
    CHECK(a.mul("v", "w").is_zero());
    CHECK(a.show(a.mul("v", "v")) == "v");
  }
  SUBCASE("single loop is the Laurent model") {
    Alg a("single_loop");
    CHECK(a.show(a.mul("e", "e*")) == "v");
    CHECK(a.show(a.mul("e*", "e")) == "v");
    CHECK(a.show(a.mul("e e", "e* e* e*")) == "e*");
  }
  SUBCASE("Cohn branch gamma = nu gamma'") {
    Alg a(parse_graph_shared(kLoopCohn));
    // lambda = e1, nu = e2, gamma = e2 e1, mu = e2
    CHECK(a.show(a.mul("e1 e2*", "e2 e1 e2*")) == "e1 e1 e2*");
    CHECK(a.mul("e1 e2*", "e1 e2*").is_zero());
  }
  SUBCASE("non-composable concatenation vanishes") {
    Alg a("e23");
    CHECK(a.mul("a1", "b1").is_zero());
    CHECK(a.show(a.mul("a1", "b1*")) == "a1 b1*");
  }
}

TEST_CASE("star") {
  Alg a("cuntz2");
  CHECK(a.show(star(a.parse("e1"))) == "e1*");
  CHECK(a.show(star(a.parse("e1 e2*"))) == "e2 e1*");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto x = random_element(*a.g, rng);
    CHECK(star(star(x)) == x);
  }
}

TEST_CASE("q_idempotent") {
  SUBCASE("Z = X in S vanishes") {
    Alg a("cuntz2");
    const EdgeId z[] = {a.g->edge_id("e1"), a.g->edge_id("e2")};
    CHECK(q_idempotent<Rational>(a.sys, a.g->vertex_id("v"), z).is_zero());
  }
  SUBCASE("Z avoiding e_X does not vanish, is idempotent, self-adjoint, kills Z") {
    Alg a("cuntz2");
    const EdgeId z[] = {a.g->edge_id("e2")};
    auto q = q_idempotent<Rational>(a.sys, a.g->vertex_id("v"), z);
    // v and e2 e2* are distinct basis words, so the combination is nonzero
    CHECK(a.show(q) == "v - e2 e2*");
    CHECK(multiply(a.sys, q, q) == q);
    CHECK(normalize(a.sys, star(q)) == q);
    CHECK(multiply(a.sys, q, a.parse("e2")).is_zero());
  }
  SUBCASE("Z containing e_X but smaller than X") {
    Alg a("e23");
    const EdgeId z[] = {a.g->edge_id("a1")};
    auto q = q_idempotent<Rational>(a.sys, a.g->vertex_id("v"), z);
    CHECK(!q.is_zero());
    CHECK(multiply(a.sys, q, q) == q);
    CHECK(normalize(a.sys, star(q)) == q);
  }
  SUBCASE("non-S block: q_X is nonzero") {
    Alg a("e23_cohn");
    const EdgeId z[] = {a.g->edge_id("b1"), a.g->edge_id("b2")};
    auto q = q_idempotent<Rational>(a.sys, a.g->vertex_id("v"), z);
    CHECK(a.show(q) == "v - b1 b1* - b2 b2*");
    CHECK(multiply(a.sys, q, q) == q);
  }
  SUBCASE("Z across two blocks is rejected") {
    Alg a("e23");
    const EdgeId z[] = {a.g->edge_id("a1"), a.g->edge_id("b1")};
    CHECK_THROWS_AS(q_idempotent<Rational>(a.sys, a.g->vertex_id("v"), z), GraphError);
  }
}

TEST_CASE("degree") {
  Alg a("cuntz2");
  CHECK(a.parse("e1 e2*").terms().begin()->first.degree() == 0);
  CHECK(a.parse("e1 e2").terms().begin()->first.degree() == 2);
  std::mt19937_64 rng(11);
  for (const auto& name : graph_fixture_names()) {
    Alg f(name);
    for (int i = 0; i < 40; ++i) {
      auto x = random_element(*f.g, rng);
      auto lhs = degree_split(normalize(f.sys, x));
      std::map<int, RationalElement> rhs;
      for (auto& [d, part] : degree_split(x)) {
        auto n = normalize(f.sys, part);
        if (!n.is_zero()) rhs[d] = n;
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("normalize: confluence, termination, idempotence on every fixture") {
  std::mt19937_64 rng(2024);
  for (const auto& name : graph_fixture_names()) {
    CAPTURE(name);
    Alg f(name);
    for (int i = 0; i < 60; ++i) {
      auto x = random_element(*f.g, rng);
      bool decreasing = true;
      auto watch = [&](const PathWord& before, std::span<const PathWord> after) {
        for (const auto& w : after) decreasing &= f.sys.weight(w) < f.sys.weight(before);
      };
      auto left = normalize(f.sys, x, RewriteStrategy::leftmost(), watch);
      auto right = normalize(f.sys, x, RewriteStrategy::rightmost(), watch);
      auto rnd = normalize(f.sys, x, RewriteStrategy::random(rng()), watch);
      CHECK(decreasing);
      CHECK(left == right);
      CHECK(left == rnd);
      CHECK(normalize(f.sys, left) == left);
      for (const auto& [w, c] : left.terms())
        CHECK(testsupport::is_reduced_word(*f.g, {w.letters().begin(), w.letters().end()}));
    }
  }
}

TEST_CASE("multiply is associative and star is anti-multiplicative") {
  std::mt19937_64 rng(99);
  for (const auto& name : {"e23", "cuntz2", "free_2_1", "nonseparative", "e23_mixed", "e23_cohn"}) {
    CAPTURE(name);
    Alg f(name);
    for (int i = 0; i < 30; ++i) {
      auto x = random_element(*f.g, rng, 3, 3);
      auto y = random_element(*f.g, rng, 3, 3);
      auto z = random_element(*f.g, rng, 3, 3);
      CHECK(multiply(f.sys, multiply(f.sys, x, y), z) == multiply(f.sys, x, multiply(f.sys, y, z)));
      CHECK(normalize(f.sys, star(multiply(f.sys, x, y))) ==
            multiply(f.sys, star(y), star(x)));
    }
  }
}

TEST_CASE("enumerate_basis") {
  SUBCASE("single loop up to length 4 has 9 words") {
    Alg a("single_loop");
    auto basis = enumerate_basis(a.sys, 4);
    CHECK(basis.size() == 9);
    CHECK(basis == testsupport::brute_force_basis(*a.g, 4));
  }
  SUBCASE("max_len 0 gives the vertices") {
    for (const auto& name : graph_fixture_names()) {
      Alg f(name);
      CHECK(enumerate_basis(f.sys, 0).size() == f.g->vertex_count());
    }
  }
  SUBCASE("two singleton S-blocks at one vertex: reduced words of a free group of rank 2") {
    // 1 + 4 + 4*3 + 4*9 + 4*27 words of length <= 4
    Alg a("free_1_1");
    CHECK(enumerate_basis(a.sys, 4).size() == 161);
    CHECK(testsupport::brute_force_basis(*a.g, 4).size() == 161);
  }
  SUBCASE("agrees with the brute-force filter and is fixed by normalize") {
    for (const auto& name : graph_fixture_names()) {
      CAPTURE(name);
      Alg f(name);
      auto basis = enumerate_basis(f.sys, 3);
      CHECK(basis == testsupport::brute_force_basis(*f.g, 3));
      for (const auto& w : basis) CHECK(normalize(f.sys, RationalElement(w)) == RationalElement(w));
    }
  }
}

TEST_CASE("Cohn product formula agrees with multiply (S empty)") {
  for (const char* name : {"e23_cohn", "nonseparative_cohn"}) {
    CAPTURE(name);
    Alg f(name);
    auto basis = enumerate_basis(f.sys, 3);
    for (const auto& a : basis)
      for (const auto& b : basis) {
        auto got = multiply(f.sys, RationalElement(a), RationalElement(b));
        auto want = testsupport::cohn_product(*f.g, a, b);
        CHECK(got == (want ? RationalElement(*want) : RationalElement()));
      }
  }
  Alg loop(parse_graph_shared(kLoopCohn));
  auto basis = enumerate_basis(loop.sys, 3);
  for (const auto& a : basis)
    for (const auto& b : basis) {
      auto want = testsupport::cohn_product(*loop.g, a, b);
      CHECK(multiply(loop.sys, RationalElement(a), RationalElement(b)) ==
            (want ? RationalElement(*want) : RationalElement()));
    }
}

TEST_CASE("expression parsing and printing") {
  Alg a("e23");
  CHECK(a.show(a.parse("0")) == "0");
  CHECK(a.show(a.parse("(1/2) * a1 b1* - 3 * v + w")) == "- 3 * v + w + (1/2) * a1 b1*");
  CHECK(a.parse("a1 a1").is_zero());
  CHECK_THROWS_AS(a.parse("zz"), ParseError);
  CHECK_THROWS_AS(a.parse("a1 +"), ParseError);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto x = random_element(*a.g, rng);
    CHECK(a.parse(a.show(x)) == x);
  }
}

TEST_CASE("prime-field coefficients agree with rationals on integer inputs") {
  using F = ModP<1000003>;
  Alg a("e23");
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    auto x = random_element(*a.g, rng);
    std::string text = a.show(x);
    if (text.find('/') != std::string::npos) continue;
    auto xr = normalize(a.sys, a.parse(text));
    auto xp = normalize(a.sys, parse_expression<F>(*a.g, text));
    // small integer coefficients survive reduction mod p unchanged
    CHECK(format_element(*a.g, xp) == a.show(xr));
  }
}

TEST_CASE("homomorphisms") {
  auto g = fixture_graph("e23");
  CLAlgebra<Rational> target(g);
  SUBCASE("identity") {
    auto im = induced_hom(identity_morphism(g), target);
    CHECK(verify_hom(*g, im, target).ok);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      auto x = target.reduce(random_element(*g, rng));
      CHECK(apply_hom(im, target, x) == x);
    }
  }
  SUBCASE("complete subobject inclusion maps basis words to distinct basis words") {
    for (const auto& name : graph_fixture_names()) {
      CAPTURE(name);
      auto big = fixture_graph(name);
      CLAlgebra<Rational> tgt(big);
      for (EdgeId e = 0; e < big->edge_count(); ++e) {
        auto sub = finite_complete_subobject(big, {big->edge(e).name});
        auto im = induced_hom(sub.inclusion, tgt);
        REQUIRE(verify_hom(*sub.graph, im, tgt).ok);
        ReductionSystem small(sub.graph);
        std::set<PathWord> seen;
        for (const auto& w : enumerate_basis(small, 3)) {
          auto img = apply_hom(im, tgt, RationalElement(w));
          REQUIRE(img.size() == 1);
          CHECK(img.terms().begin()->second == Rational(1));
          CHECK(seen.insert(img.terms().begin()->first).second);
        }
      }
    }
  }
  SUBCASE("a wrong image is reported") {
    auto im = induced_hom(identity_morphism(g), target);
    im.ghost[g->edge_id("a1")] = target.ghost(g->edge_id("a2"));
    auto rep = verify_hom(*g, im, target);
    CHECK(!rep.ok);
    CHECK(rep.failed_relation.find("SCK") != std::string::npos);
  }
}

TEST_CASE("key example isomorphism") {
  for (auto [m, n] : {std::pair{1, 2}, {2, 3}}) {
    CAPTURE(m);
    CAPTURE(n);
    KeyExample<Rational> kx(m, n);
    auto psi = kx.verify_psi();
    CHECK_MESSAGE(psi.ok, psi.failed_relation);
    auto phi = kx.verify_phi();
    CHECK_MESSAGE(phi.ok, phi.failure);
    auto pp = kx.phi_psi();
    CHECK_MESSAGE(pp.ok, pp.failure);
    auto qq = kx.psi_phi();
    CHECK_MESSAGE(qq.ok, qq.failure);
    auto bg = kx.verify_bergman_images();
    CHECK_MESSAGE(bg.ok, bg.failure);
  }
}
