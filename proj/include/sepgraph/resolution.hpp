#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepgraph/graph.hpp"
#include "sepgraph/monoid.hpp"

namespace sepgraph {

// |X| x |Y| positive integers; rows follow the edges of X, columns those of Y,
// both in id order.
using DeltaMatrix = std::vector<std::vector<std::uint32_t>>;

struct TripleSpec {
  std::string vertex, x, y;  // vertex and two distinct blocks at it, by name
  DeltaMatrix delta;
};

enum class TriplePolicy { Symmetric, OnePerPair, Explicit };
enum class DeltaPolicy { Ones, Factorial, Explicit };

struct ExplicitTriple {
  std::size_t stage = 0;  // belongs to T_stage
  TripleSpec triple;      // delta empty unless the plan gives one
};

struct ResolutionPlan {
  std::string base_spec;
  GraphPtr base;
  std::size_t stages = 1;
  TriplePolicy triples = TriplePolicy::Symmetric;
  DeltaPolicy delta = DeltaPolicy::Ones;
  bool skip_star = false;  // drop triples for which (*) already holds
  std::vector<ExplicitTriple> explicit_triples;
};

// First line: `resolve GRAPH stages=N triples=symmetric|one_per_pair|all|explicit
// delta=ones|factorial|explicit [skip=star]`. Then, for explicit plans,
// `triple STAGE VERTEX X Y [delta 1 2 ; 3 4]` lines. GRAPH goes through load_graph.
ResolutionPlan parse_plan(std::string_view text);

struct NameEntry {
  std::string name;
  char kind = 'v';  // v, g, h, X (block X^k_e), Y (block Y^k_f)
  std::size_t k = 0;
  std::string e, f;  // edge names of the previous stage
  std::uint32_t j = 0;
};

struct StageGraph {
  std::size_t stage = 0;
  GraphPtr graph;
  GraphPtr previous;                 // null at stage 0
  std::vector<TripleSpec> triples;   // the T used to build this stage, k = index + 1
  std::vector<NameEntry> names;      // generated names, in creation order
  std::vector<std::uint32_t> vertex_birth;  // per vertex id of `graph`
  std::vector<std::uint32_t> block_birth;   // per block id of `graph`
};

// One delta-T-resolution of `g`; generated names carry `label`
// (`v@label_k.i.j`, `g@label_k.i.j.t`, `h@...`, `X@label_k.i`, `Y@label_k.j`,
// with i, j, t counted from 1). Births are copied from `prev` when given.
StageGraph delta_t_resolution(const GraphPtr& g, const std::vector<TripleSpec>& t, std::size_t label,
                              const StageGraph* prev = nullptr);

// The triples T_n the plan prescribes on the stage-n graph.
std::vector<TripleSpec> plan_triples(const ResolutionPlan& plan, const StageGraph& stage);

// Stages 0..n; element i is stage i.
std::vector<StageGraph> resolution_chain(const ResolutionPlan& plan, std::size_t n);
StageGraph resolution_stage(const ResolutionPlan& plan, std::size_t n);

// `name = kind k=K e=E f=F [j=J]` lines.
std::string format_name_table(const StageGraph& s);

// r(X_k) ~>_1 sum delta v^k_{e,f} <~_1 r(Y_k), choosing X^k_e for every
// occurrence of r(e) and Y^k_f for every r(f). Returns the common image.
std::optional<MonoidElement> resolved_triple_witness(const MonoidPresentation& stage, const StageGraph& s,
                                                     std::size_t k);

// Free-monoid cover of the single relation sum x_i = sum y_j.
struct FreeCover {
  DeltaMatrix delta;
  std::size_t n = 0, m = 0;
  // psi on a canonical input (lambda_1..n, mu_1..m), as counts on a_ij (row-major)
  std::vector<std::uint64_t> psi(std::span<const std::uint32_t> lambda, std::span<const std::uint32_t> mu) const;
};

FreeCover free_cover(const DeltaMatrix& delta);

struct InjectivityReport {
  bool injective = true;
  std::size_t checked = 0;
  std::string collision;  // the two inputs when not injective
};

// All lambda, mu in [0, bound] with min mu = 0.
InjectivityReport injectivity_test(const FreeCover& c, std::uint32_t bound);

struct UnitarityReport {
  std::size_t samples = 0;
  std::size_t passed = 0;
  bool cofinal = true;
  std::string failure;
};

// Samples u, u' with psi(u) <= psi(u') and solves for w with psi(w) = psi(u') - psi(u).
UnitarityReport unitarity_samples(const FreeCover& c, std::size_t samples, std::uint64_t seed,
                                  std::uint32_t bound = 4);

// Generator-wise inclusion of a base element into a stage.
MonoidElement unitary_image(const MonoidPresentation& base, const MonoidPresentation& stage, const MonoidElement& x);

struct TransferCase {
  MonoidElement a, b;  // over the base
  EqVerdict base = EqVerdict::Unknown, stage = EqVerdict::Unknown;
  bool ok = false;  // stage verdict equals a definite base verdict
};

std::vector<TransferCase> check_unitary_transfer(const MonoidPresentation& base, const MonoidPresentation& stage,
                                                 const std::vector<std::pair<MonoidElement, MonoidElement>>& pairs,
                                                 const Budget& budget = {});

struct LiftResult {
  bool ok = false;
  bool unknown = false;
  std::string failure;
  std::vector<MonoidElement> image;  // per generator of the stage presentation
};

// Extends phi (base vertex name -> element of the target) by v^k_{e,f} -> c
// (keyed by generated vertex name) and checks every relation of the stage.
LiftResult delta_refinement_lift(const StageGraph& stage, const MonoidPresentation& target,
                                 const std::map<std::string, MonoidElement>& phi,
                                 const std::map<std::string, MonoidElement>& c, const Budget& budget = {});

struct DivisibilityResult {
  bool divisible = false;
  std::vector<RewriteStep> trace;  // from v to gamma
  MonoidElement gamma;             // every multiplicity divisible by m
  MonoidElement part;              // gamma / m
  std::string reason;              // when not found
};

// Descends through the youngest blocks first, as in the divisibility induction.
DivisibilityResult divisibility_probe(const MonoidPresentation& stage, const StageGraph& s, VertexId v,
                                      std::uint32_t m, const Budget& budget = {});

}  // namespace sepgraph
