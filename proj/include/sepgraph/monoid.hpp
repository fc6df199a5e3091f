#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepgraph/graph.hpp"
#include "sepgraph/pairs.hpp"

namespace sepgraph {

using GenId = std::uint32_t;

namespace detail {
struct StarCache;
}

// Element of the free abelian monoid F on E^0 and the q'_X (X outside S):
// sorted (generator, multiplicity) pairs with positive multiplicities.
class MonoidElement {
 public:
  using Term = std::pair<GenId, std::uint32_t>;

  MonoidElement() = default;
  static MonoidElement generator(GenId g, std::uint32_t k = 1);

  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t count(GenId g) const;
  // total multiplicity
  std::uint64_t size() const;

  void add(GenId g, std::uint32_t k = 1);
  // false (and no change) if fewer than k copies are present
  bool remove(GenId g, std::uint32_t k = 1);
  bool contains(const MonoidElement& sub) const;

  MonoidElement& operator+=(const MonoidElement& o);
  friend MonoidElement operator+(MonoidElement a, const MonoidElement& b) { return a += b; }
  // requires contains(b)
  MonoidElement minus(const MonoidElement& b) const;
  MonoidElement scaled(std::uint32_t k) const;

  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
  friend auto operator<=>(const MonoidElement& a, const MonoidElement& b) { return a.terms_ <=> b.terms_; }

 private:
  std::vector<Term> terms_;
};

struct MonoidElementHash {
  std::size_t operator()(const MonoidElement& x) const noexcept;
};

// Generators: the vertices (ids 0..|E^0|-1, same order as the graph), then
// q'_X for each block outside S in block order. q'_X prints as `q.X`.
class MonoidPresentation {
 public:
  explicit MonoidPresentation(GraphPtr g);

  const SeparatedGraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }

  std::size_t generator_count() const { return names_.size(); }
  const std::string& name(GenId g) const { return names_[g]; }
  std::optional<GenId> find(std::string_view name) const;

  bool is_vertex(GenId g) const { return g < graph_->vertex_count(); }
  // q'_X for a block outside S, kNoId for blocks in S
  GenId q_of(BlockId x) const { return q_of_block_[x]; }
  BlockId block_of_q(GenId g) const { return block_of_q_[g - graph_->vertex_count()]; }

  // r(X) and rho(X) = r(X) (+ q'_X when X is outside S)
  const MonoidElement& r(BlockId x) const { return r_[x]; }
  const MonoidElement& rho(BlockId x) const { return rho_[x]; }

  // Blocks whose rho has `g` as its least generator; drives reverse matching.
  std::span<const BlockId> blocks_led_by(GenId g) const { return led_by_[g]; }

  // check_star(*this).overall == Pass, computed once
  bool star_holds() const;

 private:
  GraphPtr graph_;
  std::vector<std::string> names_;
  std::vector<GenId> q_of_block_;
  std::vector<BlockId> block_of_q_;
  std::vector<MonoidElement> r_, rho_;
  std::vector<std::vector<BlockId>> led_by_;
  std::shared_ptr<detail::StarCache> star_;
};

MonoidPresentation presentation_of(GraphPtr g);

// `v + 2 w + q.X`; `0` is the zero element.
MonoidElement parse_monoid_element(const MonoidPresentation& p, std::string_view text);
std::string format_monoid_element(const MonoidPresentation& p, const MonoidElement& x);
// one line per relation: `v = 3 w`, `v = x + q.X`
std::vector<std::string> format_relations(const MonoidPresentation& p);

enum class StepDirection { Forward, Reverse };

// Forward: one copy of vertex(block) becomes rho(block). Reverse: the opposite.
struct RewriteStep {
  StepDirection direction = StepDirection::Forward;
  BlockId block = kNoId;
  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

std::string format_step(const MonoidPresentation& p, const RewriteStep& s);
// nullopt if some step is not applicable
std::optional<MonoidElement> apply_step(const MonoidPresentation& p, const MonoidElement& x,
                                        const RewriteStep& s);
std::optional<MonoidElement> replay(const MonoidPresentation& p, MonoidElement x,
                                    std::span<const RewriteStep> trace);

struct ForwardStep {
  BlockId block;
  MonoidElement result;
};

// All ->_1 successors, one per (vertex in the support, block at it).
std::vector<ForwardStep> forward_steps(const MonoidPresentation& p, const MonoidElement& x);
// All reverse ->_1 moves: occurrences of some rho(X) collapsed to its vertex.
std::vector<ForwardStep> reverse_steps(const MonoidPresentation& p, const MonoidElement& x);

// The ~>_1 image choosing block choices[i] for one occurrence of its vertex each.
// Throws if a vertex is chosen more often than it occurs.
MonoidElement parallel_step(const MonoidPresentation& p, const MonoidElement& x,
                            std::span<const BlockId> choices);

// Every ~>_1 image of x; nullopt if there would be more than `cap`.
std::optional<std::vector<MonoidElement>> parallel_images(const MonoidPresentation& p,
                                                          const MonoidElement& x,
                                                          std::size_t cap = 200000);

enum class StarStatus { Pass, Fail, Unknown };
std::string to_string(StarStatus s);

struct StarPairReport {
  VertexId vertex;
  BlockId x, y;
  StarStatus status;
  std::optional<MonoidElement> gamma;  // least common image when found
};

struct StarReport {
  StarStatus overall = StarStatus::Pass;
  std::vector<StarPairReport> pairs;
};

// Checks (*) on every unordered pair of distinct blocks at every vertex.
StarReport check_star(const MonoidPresentation& p, std::size_t image_cap = 200000);
// The same check for one pair.
StarPairReport check_star_pair(const MonoidPresentation& p, BlockId x, BlockId y,
                               std::size_t image_cap = 200000);

struct Budget {
  std::uint64_t max_size = 64;       // total multiplicity of any explored element
  std::size_t max_states = 50000;    // explored states, both sides together
  std::size_t max_depth = 12;        // BFS layers per side

  // `size=N,frontier=N,depth=N` (any subset); throws on malformed text
  static Budget parse(std::string_view text, Budget base);
  static Budget parse(std::string_view text);
  // Applies SEPGRAPH_BUDGET when set.
  static Budget from_env(Budget base);
  static Budget from_env();
};

enum class EqVerdict { Equal, NotEqual, Unknown };
std::string to_string(EqVerdict v);

enum class Certificate { None, ClassExhausted, PairMismatch };

struct EqResult {
  EqVerdict verdict = EqVerdict::Unknown;
  // Equal: alpha ->trace_a gamma <-trace_b beta
  MonoidElement gamma;
  std::vector<RewriteStep> trace_a, trace_b;
  int phase = 0;  // 1 forward confluence, 2 bidirectional
  // NotEqual
  Certificate certificate = Certificate::None;
  int exhausted_side = -1;                    // 0 alpha, 1 beta
  std::vector<MonoidElement> exhausted_class;  // sorted
  AdmissiblePair pair_a, pair_b;              // PairMismatch
  std::size_t states = 0;
};

// Smallest admissible pair whose order-ideal contains x.
AdmissiblePair generated_pair(const MonoidPresentation& p, const MonoidElement& x);

struct EqOptions {
  Budget budget;
  // nullopt: ask the presentation; true/false: trust the caller
  std::optional<bool> star_holds;
  bool use_pair_invariant = true;
  bool phase1 = true;
  bool phase2 = true;
};

EqResult monoid_eq(const MonoidPresentation& p, const MonoidElement& a, const MonoidElement& b,
                   const EqOptions& opt = {});

// Forward-only search for a common descendant (valid witness in any graph).
EqResult forward_meet(const MonoidPresentation& p, const MonoidElement& a, const MonoidElement& b,
                      const Budget& budget);

struct Refinement {
  bool found = false;
  std::string reason;  // why not, when !found
  MonoidElement gamma;
  MonoidElement a1p, a2p, b1p, b2p;  // forward images of the summands
  MonoidElement g11, g12, g21, g22;
  bool verified = false;  // the four monoid_eq checks returned Equal
};

Refinement refine(const MonoidPresentation& p, const MonoidElement& a1, const MonoidElement& a2,
                  const MonoidElement& b1, const MonoidElement& b2, const Budget& budget = {});

// Homomorphism M(E,C,S) -> M(E/H, C~, S~) with kernel generated by the pair.
struct PiResult {
  GraphPtr quotient;                       // may have no vertices
  std::vector<MonoidElement> image;        // per source generator, over the quotient
  std::vector<GenId> killed;               // source generators with image 0
  std::vector<GenId> expected_killed;      // H, q'_X for X in G, q'_X for X in C[H]
  std::size_t relations_checked = 0;
  bool relations_ok = true;
  bool relations_unknown = false;          // some check ran out of budget
  std::string failed_relation;
};

PiResult pi_homomorphism(const MonoidPresentation& p, const AdmissiblePair& pair,
                         const Budget& budget = {});

// Presentation rows sum_j a_ij x_j = sum_j b_ij x_j over named generators.
struct ConicalPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> relations;
};

// `generators x y` then `relation 2 x = x + y` lines; `#` comments.
ConicalPresentation parse_presentation(std::string_view text);

// Sources u1..uk (one per relation) and one sink per generator; blocks
// X<i>_1 and X<i>_2; S = C.
SeparatedGraph presentation_to_graph(const ConicalPresentation& cp);

}  // namespace sepgraph
