#include "sepgraph/resolution.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sepgraph/fixtures.hpp"
#include "sepgraph/lexer.hpp"

namespace sepgraph {

namespace {

std::uint32_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > 0xffffffffu) throw GraphError("factorial delta overflows at stage " + std::to_string(n));
  }
  return static_cast<std::uint32_t>(f);
}

DeltaMatrix constant_delta(std::size_t rows, std::size_t cols, std::uint32_t value) {
  return DeltaMatrix(rows, std::vector<std::uint32_t>(cols, value));
}

std::vector<std::string> split_ws(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
  std::string spaced;
  for (char c : line) {
    if (c == ';')
      spaced += " ; ";
    else
      spaced += c;
  }
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

// ------------------------------------------------------------------ plans

ResolutionPlan parse_plan(std::string_view text) {
  ResolutionPlan plan;
  bool header = false;
  bool delta_given = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto w = split_ws(line);
    if (w.empty()) continue;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, line_no, 1); };
    if (!header) {
      if (w[0] != "resolve" || w.size() < 2) fail("expected 'resolve GRAPH key=value ...'");
      plan.base_spec = w[1];
      for (std::size_t i = 2; i < w.size(); ++i) {
        const auto eq = w[i].find('=');
        if (eq == std::string::npos) fail("expected key=value, got '" + w[i] + "'");
        const std::string key = w[i].substr(0, eq), val = w[i].substr(eq + 1);
        if (key == "stages") {
          if (!is_integer(val)) fail("stages must be a nonnegative integer");
          plan.stages = std::stoul(val);
        } else if (key == "triples") {
          if (val == "symmetric" || val == "all")
            plan.triples = TriplePolicy::Symmetric;
          else if (val == "one_per_pair")
            plan.triples = TriplePolicy::OnePerPair;
          else if (val == "explicit")
            plan.triples = TriplePolicy::Explicit;
          else
            fail("unknown triple policy '" + val + "'");
        } else if (key == "delta") {
          if (val == "ones")
            plan.delta = DeltaPolicy::Ones;
          else if (val == "factorial")
            plan.delta = DeltaPolicy::Factorial;
          else if (val == "explicit")
            plan.delta = DeltaPolicy::Explicit;
          else
            fail("unknown delta policy '" + val + "'");
        } else if (key == "skip") {
          if (val != "star" && val != "none") fail("skip must be 'star' or 'none'");
          plan.skip_star = val == "star";
        } else {
          fail("unknown plan key '" + key + "'");
        }
      }
      header = true;
      continue;
    }
    if (w[0] != "triple" || w.size() < 5) fail("expected 'triple STAGE VERTEX X Y [delta ...]'");
    if (!is_integer(w[1])) fail("triple stage must be an integer");
    ExplicitTriple t;
    t.stage = std::stoul(w[1]);
    t.triple.vertex = w[2];
    t.triple.x = w[3];
    t.triple.y = w[4];
    if (w.size() > 5) {
      if (w[5] != "delta") fail("expected 'delta'");
      t.triple.delta.emplace_back();
      for (std::size_t i = 6; i < w.size(); ++i) {
        if (w[i] == ";") {
          t.triple.delta.emplace_back();
          continue;
        }
        if (!is_integer(w[i])) fail("delta entries must be positive integers");
        t.triple.delta.back().push_back(static_cast<std::uint32_t>(std::stoul(w[i])));
      }
      delta_given = true;
    }
    plan.explicit_triples.push_back(std::move(t));
  }
  if (!header) throw ParseError("empty plan", 1, 1);
  if (plan.triples != TriplePolicy::Explicit && !plan.explicit_triples.empty())
    throw ParseError("triple lines need triples=explicit", line_no, 1);
  if (plan.delta == DeltaPolicy::Explicit && plan.triples != TriplePolicy::Explicit)
    throw ParseError("delta=explicit needs triples=explicit", 1, 1);
  (void)delta_given;
  plan.base = load_graph(plan.base_spec);
  if (!plan.base->s_equals_c()) throw GraphError("resolution needs a base graph with S = C");
  return plan;
}

// ------------------------------------------------------------ resolutions

StageGraph delta_t_resolution(const GraphPtr& gp, const std::vector<TripleSpec>& t, std::size_t label,
                              const StageGraph* prev) {
  const SeparatedGraph& g = *gp;
  if (!g.s_equals_c()) throw GraphError("resolution needs S = C");
  StageGraph out;
  out.stage = label;
  out.previous = gp;
  out.triples = t;
  GraphBuilder b = builder_from(g);
  const std::string tag = std::to_string(label) + "_";
  for (std::size_t k = 1; k <= t.size(); ++k) {
    const TripleSpec& tr = t[k - 1];
    auto v = g.find_vertex(tr.vertex);
    auto x = g.find_block(tr.x);
    auto y = g.find_block(tr.y);
    if (!v) throw GraphError("triple " + std::to_string(k) + ": unknown vertex '" + tr.vertex + "'");
    if (!x || !y) throw GraphError("triple " + std::to_string(k) + ": unknown block");
    if (*x == *y) throw GraphError("triple " + std::to_string(k) + ": X = Y");
    if (g.block(*x).vertex != *v || g.block(*y).vertex != *v)
      throw GraphError("triple " + std::to_string(k) + ": blocks are not at '" + tr.vertex + "'");
    const auto& xe = g.block(*x).edges;
    const auto& ye = g.block(*y).edges;
    if (tr.delta.size() != xe.size()) throw GraphError("triple " + std::to_string(k) + ": delta has wrong shape");
    for (const auto& row : tr.delta) {
      if (row.size() != ye.size()) throw GraphError("triple " + std::to_string(k) + ": delta has wrong shape");
      for (auto d : row)
        if (d == 0) throw GraphError("triple " + std::to_string(k) + ": delta entries must be positive");
    }
    const std::string kk = tag + std::to_string(k);
    std::vector<std::vector<std::string>> x_blocks(xe.size()), y_blocks(ye.size());
    for (std::size_t i = 0; i < xe.size(); ++i)
      for (std::size_t j = 0; j < ye.size(); ++j) {
        const std::string ij = kk + "." + std::to_string(i + 1) + "." + std::to_string(j + 1);
        const std::string& e = g.edge(xe[i]).name;
        const std::string& f = g.edge(ye[j]).name;
        const std::string vn = "v@" + ij;
        b.vertex(vn);
        out.names.push_back({vn, 'v', k, e, f, 0});
        for (std::uint32_t s = 1; s <= tr.delta[i][j]; ++s) {
          const std::string gn = "g@" + ij + "." + std::to_string(s);
          const std::string hn = "h@" + ij + "." + std::to_string(s);
          b.edge(gn, g.vertex_name(g.edge(xe[i]).range), vn);
          b.edge(hn, g.vertex_name(g.edge(ye[j]).range), vn);
          out.names.push_back({gn, 'g', k, e, f, s});
          out.names.push_back({hn, 'h', k, e, f, s});
          x_blocks[i].push_back(gn);
          y_blocks[j].push_back(hn);
        }
      }
    for (std::size_t i = 0; i < xe.size(); ++i) {
      const std::string bn = "X@" + kk + "." + std::to_string(i + 1);
      b.block(g.vertex_name(g.edge(xe[i]).range), bn, x_blocks[i]);
      out.names.push_back({bn, 'X', k, g.edge(xe[i]).name, "", 0});
    }
    for (std::size_t j = 0; j < ye.size(); ++j) {
      const std::string bn = "Y@" + kk + "." + std::to_string(j + 1);
      b.block(g.vertex_name(g.edge(ye[j]).range), bn, y_blocks[j]);
      out.names.push_back({bn, 'Y', k, "", g.edge(ye[j]).name, 0});
    }
  }
  out.graph = b.build_shared();
  const SeparatedGraph& ng = *out.graph;
  out.vertex_birth.assign(ng.vertex_count(), static_cast<std::uint32_t>(label));
  out.block_birth.assign(ng.block_count(), static_cast<std::uint32_t>(label));
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out.vertex_birth[ng.vertex_id(g.vertex_name(v))] = prev ? prev->vertex_birth[v] : 0;
  for (BlockId x = 0; x < g.block_count(); ++x)
    out.block_birth[ng.block_id(g.block(x).name)] = prev ? prev->block_birth[x] : 0;
  return out;
}

std::vector<TripleSpec> plan_triples(const ResolutionPlan& plan, const StageGraph& s) {
  const SeparatedGraph& g = *s.graph;
  const std::size_t n = s.stage;
  auto default_delta = [&](BlockId x, BlockId y) {
    const std::uint32_t d = plan.delta == DeltaPolicy::Factorial ? factorial(n) : 1;
    return constant_delta(g.block(x).edges.size(), g.block(y).edges.size(), d);
  };
  std::vector<TripleSpec> out;
  if (plan.triples == TriplePolicy::Explicit) {
    for (const auto& et : plan.explicit_triples) {
      if (et.stage != n) continue;
      TripleSpec t = et.triple;
      if (t.delta.empty()) {
        if (plan.delta == DeltaPolicy::Explicit)
          throw GraphError("delta=explicit but triple at '" + t.vertex + "' has no delta");
        auto x = g.find_block(t.x), y = g.find_block(t.y);
        if (!x || !y) throw GraphError("explicit triple names an unknown block");
        t.delta = default_delta(*x, *y);
      }
      out.push_back(std::move(t));
    }
    return out;
  }
  std::optional<MonoidPresentation> pres;
  if (plan.skip_star) pres.emplace(s.graph);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto blocks = g.blocks_at(v);
    for (BlockId x : blocks)
      for (BlockId y : blocks) {
        if (x == y) continue;
        if (plan.triples == TriplePolicy::OnePerPair && y < x) continue;
        if (n > 0 && s.block_birth[x] != n && s.block_birth[y] != n) continue;
        if (pres && check_star_pair(*pres, x, y).status == StarStatus::Pass) continue;
        out.push_back({g.vertex_name(v), g.block(x).name, g.block(y).name, default_delta(x, y)});
      }
  }
  return out;
}

std::vector<StageGraph> resolution_chain(const ResolutionPlan& plan, std::size_t n) {
  if (!plan.base) throw GraphError("plan has no base graph");
  if (!plan.base->s_equals_c()) throw GraphError("resolution needs a base graph with S = C");
  std::vector<StageGraph> chain;
  StageGraph s0;
  s0.graph = plan.base;
  s0.vertex_birth.assign(plan.base->vertex_count(), 0);
  s0.block_birth.assign(plan.base->block_count(), 0);
  chain.push_back(std::move(s0));
  for (std::size_t i = 0; i < n; ++i) {
    auto t = plan_triples(plan, chain.back());
    auto next = delta_t_resolution(chain.back().graph, t, i + 1, &chain.back());
    chain.push_back(std::move(next));
  }
  return chain;
}

StageGraph resolution_stage(const ResolutionPlan& plan, std::size_t n) {
  auto chain = resolution_chain(plan, n);
  return std::move(chain.back());
}

std::string format_name_table(const StageGraph& s) {
  std::string out;
  for (const auto& e : s.names) {
    out += e.name + " = " + std::string(1, e.kind) + " k=" + std::to_string(e.k);
    if (!e.e.empty()) out += " e=" + e.e;
    if (!e.f.empty()) out += " f=" + e.f;
    if (e.j) out += " j=" + std::to_string(e.j);
    out += "\n";
  }
  return out;
}

std::optional<MonoidElement> resolved_triple_witness(const MonoidPresentation& p, const StageGraph& s,
                                                     std::size_t k) {
  if (k == 0 || k > s.triples.size() || !s.previous) return std::nullopt;
  const SeparatedGraph& g0 = *s.previous;
  const SeparatedGraph& g = p.graph();
  const TripleSpec& t = s.triples[k - 1];
  const std::string kk = std::to_string(s.stage) + "_" + std::to_string(k);
  auto side = [&](const std::string& block, char tag) {
    MonoidElement r;
    std::vector<BlockId> choices;
    const auto& edges = g0.block(g0.block_id(block)).edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      r.add(g.vertex_id(g0.vertex_name(g0.edge(edges[i]).range)));
      choices.push_back(g.block_id(std::string(1, tag) + "@" + kk + "." + std::to_string(i + 1)));
    }
    return parallel_step(p, r, choices);
  };
  MonoidElement a = side(t.x, 'X');
  MonoidElement b = side(t.y, 'Y');
  if (a != b) return std::nullopt;
  return a;
}

// ------------------------------------------------------------ free covers

std::vector<std::uint64_t> FreeCover::psi(std::span<const std::uint32_t> lambda,
                                          std::span<const std::uint32_t> mu) const {
  std::vector<std::uint64_t> out(n * m, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out[i * m + j] = static_cast<std::uint64_t>(lambda[i] + mu[j]) * delta[i][j];
  return out;
}

FreeCover free_cover(const DeltaMatrix& delta) {
  FreeCover c;
  c.delta = delta;
  c.n = delta.size();
  c.m = delta.empty() ? 0 : delta[0].size();
  if (c.n == 0 || c.m == 0) throw GraphError("free cover needs a nonempty delta");
  for (const auto& row : delta) {
    if (row.size() != c.m) throw GraphError("delta rows differ in length");
    for (auto d : row)
      if (d == 0) throw GraphError("delta entries must be positive");
  }
  return c;
}

namespace {

std::string format_input(std::span<const std::uint32_t> lambda, std::span<const std::uint32_t> mu) {
  std::string out = "lambda=(";
  for (std::size_t i = 0; i < lambda.size(); ++i) out += (i ? "," : "") + std::to_string(lambda[i]);
  out += ") mu=(";
  for (std::size_t j = 0; j < mu.size(); ++j) out += (j ? "," : "") + std::to_string(mu[j]);
  return out + ")";
}

// odometer over [0, bound]^len; false once it wraps
bool next_tuple(std::vector<std::uint32_t>& t, std::uint32_t bound) {
  for (auto& x : t) {
    if (x < bound) {
      ++x;
      return true;
    }
    x = 0;
  }
  return false;
}

}  // namespace

InjectivityReport injectivity_test(const FreeCover& c, std::uint32_t bound) {
  InjectivityReport rep;
  std::map<std::vector<std::uint64_t>, std::string> seen;
  std::vector<std::uint32_t> lambda(c.n, 0);
  do {
    std::vector<std::uint32_t> mu(c.m, 0);
    do {
      if (*std::min_element(mu.begin(), mu.end()) != 0) continue;
      ++rep.checked;
      auto img = c.psi(lambda, mu);
      auto [it, fresh] = seen.emplace(std::move(img), format_input(lambda, mu));
      if (!fresh) {
        rep.injective = false;
        rep.collision = it->second + " and " + format_input(lambda, mu);
        return rep;
      }
    } while (next_tuple(mu, bound));
  } while (next_tuple(lambda, bound));
  return rep;
}

UnitarityReport unitarity_samples(const FreeCover& c, std::size_t samples, std::uint64_t seed, std::uint32_t bound) {
  UnitarityReport rep;
  for (const auto& row : c.delta)
    for (auto d : row) rep.cofinal = rep.cofinal && d >= 1;  // a_ij <= c_i
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coef(0, bound);
  auto draw = [&](std::size_t len) {
    std::vector<std::uint32_t> v(len);
    for (auto& x : v) x = coef(rng);
    return v;
  };
  std::size_t attempts = 0;
  while (rep.samples < samples && attempts < samples * 50) {
    ++attempts;
    auto lam = draw(c.n), mu = draw(c.m);
    std::vector<std::uint32_t> lam2, mu2;
    if (attempts % 2) {
      // u' = u + w for a random w
      auto lw = draw(c.n), mw = draw(c.m);
      for (std::size_t i = 0; i < c.n; ++i) lam2.push_back(lam[i] + lw[i]);
      for (std::size_t j = 0; j < c.m; ++j) mu2.push_back(mu[j] + mw[j]);
    } else {
      lam2 = draw(c.n);
      mu2 = draw(c.m);
    }
    const auto pu = c.psi(lam, mu), pu2 = c.psi(lam2, mu2);
    bool below = true;
    for (std::size_t t = 0; t < pu.size(); ++t) below = below && pu[t] <= pu2[t];
    if (!below) continue;
    ++rep.samples;
    // lambda_i - lambda'_i <= lambda <= mu'_j - mu_j
    std::int64_t lo = INT64_MIN, hi = INT64_MAX;
    for (std::size_t i = 0; i < c.n; ++i) lo = std::max<std::int64_t>(lo, std::int64_t(lam[i]) - lam2[i]);
    for (std::size_t j = 0; j < c.m; ++j) hi = std::min<std::int64_t>(hi, std::int64_t(mu2[j]) - mu[j]);
    if (lo > hi) {
      if (rep.failure.empty()) rep.failure = "no lambda for " + format_input(lam, mu);
      continue;
    }
    std::vector<std::uint32_t> lw(c.n), mw(c.m);
    for (std::size_t i = 0; i < c.n; ++i) lw[i] = static_cast<std::uint32_t>(std::int64_t(lam2[i]) + lo - lam[i]);
    for (std::size_t j = 0; j < c.m; ++j) mw[j] = static_cast<std::uint32_t>(std::int64_t(mu2[j]) - mu[j] - lo);
    const auto pw = c.psi(lw, mw);
    bool match = true;
    for (std::size_t t = 0; t < pu.size(); ++t) match = match && pw[t] == pu2[t] - pu[t];
    if (match)
      ++rep.passed;
    else if (rep.failure.empty())
      rep.failure = "psi(w) differs for " + format_input(lam, mu);
  }
  return rep;
}

// ---------------------------------------------------------------- unitarity

MonoidElement unitary_image(const MonoidPresentation& base, const MonoidPresentation& stage, const MonoidElement& x) {
  MonoidElement out;
  for (const auto& [g, k] : x.terms()) {
    auto id = stage.find(base.name(g));
    if (!id) throw GraphError("generator '" + base.name(g) + "' is missing from the stage");
    out.add(*id, k);
  }
  return out;
}

std::vector<TransferCase> check_unitary_transfer(const MonoidPresentation& base, const MonoidPresentation& stage,
                                                 const std::vector<std::pair<MonoidElement, MonoidElement>>& pairs,
                                                 const Budget& budget) {
  std::vector<TransferCase> out;
  EqOptions opt;
  opt.budget = budget;
  for (const auto& [a, b] : pairs) {
    TransferCase c{a, b};
    c.base = monoid_eq(base, a, b, opt).verdict;
    c.stage = monoid_eq(stage, unitary_image(base, stage, a), unitary_image(base, stage, b), opt).verdict;
    c.ok = c.base != EqVerdict::Unknown && c.base == c.stage;
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------- lifting

LiftResult delta_refinement_lift(const StageGraph& s, const MonoidPresentation& target,
                                 const std::map<std::string, MonoidElement>& phi,
                                 const std::map<std::string, MonoidElement>& c, const Budget& budget) {
  LiftResult res;
  if (!s.previous) {
    res.failure = "stage 0 has nothing to lift";
    return res;
  }
  const SeparatedGraph& g0 = *s.previous;
  const SeparatedGraph& g = *s.graph;
  EqOptions opt;
  opt.budget = budget;
  auto check = [&](const MonoidElement& a, const MonoidElement& b, const std::string& what) {
    const EqVerdict v = monoid_eq(target, a, b, opt).verdict;
    if (v == EqVerdict::Equal) return true;
    if (v == EqVerdict::Unknown) {
      res.unknown = true;
      if (res.failure.empty()) res.failure = what + " undecided";
      return true;
    }
    res.failure = what + " fails in the target";
    return false;
  };
  auto image_of = [&](const std::string& name) -> const MonoidElement* {
    if (auto it = c.find(name); it != c.end()) return &it->second;
    if (auto it = phi.find(name); it != phi.end()) return &it->second;
    return nullptr;
  };
  for (VertexId v = 0; v < g0.vertex_count(); ++v)
    if (!phi.count(g0.vertex_name(v))) {
      res.failure = "phi has no image for '" + g0.vertex_name(v) + "'";
      return res;
    }
  // phi is a homomorphism on the previous stage
  for (BlockId x = 0; x < g0.block_count(); ++x) {
    MonoidElement rhs;
    for (EdgeId e : g0.block(x).edges) rhs += phi.at(g0.vertex_name(g0.edge(e).range));
    if (!check(phi.at(g0.vertex_name(g0.block(x).vertex)), rhs, "phi on block " + g0.block(x).name)) return res;
  }
  // the c's form a delta-refinement
  for (std::size_t k = 1; k <= s.triples.size(); ++k) {
    const TripleSpec& t = s.triples[k - 1];
    const auto& xe = g0.block(g0.block_id(t.x)).edges;
    const auto& ye = g0.block(g0.block_id(t.y)).edges;
    const std::string kk = std::to_string(s.stage) + "_" + std::to_string(k);
    auto cv = [&](std::size_t i, std::size_t j) -> const MonoidElement* {
      auto it = c.find("v@" + kk + "." + std::to_string(i + 1) + "." + std::to_string(j + 1));
      return it == c.end() ? nullptr : &it->second;
    };
    for (std::size_t i = 0; i < xe.size(); ++i)
      for (std::size_t j = 0; j < ye.size(); ++j)
        if (!cv(i, j)) {
          res.failure = "no c for triple " + std::to_string(k);
          return res;
        }
    for (std::size_t i = 0; i < xe.size(); ++i) {
      MonoidElement sum;
      for (std::size_t j = 0; j < ye.size(); ++j) sum += cv(i, j)->scaled(t.delta[i][j]);
      if (!check(phi.at(g0.vertex_name(g0.edge(xe[i]).range)), sum, "row " + std::to_string(i + 1) + " of triple " + std::to_string(k)))
        return res;
    }
    for (std::size_t j = 0; j < ye.size(); ++j) {
      MonoidElement sum;
      for (std::size_t i = 0; i < xe.size(); ++i) sum += cv(i, j)->scaled(t.delta[i][j]);
      if (!check(phi.at(g0.vertex_name(g0.edge(ye[j]).range)), sum, "column " + std::to_string(j + 1) + " of triple " + std::to_string(k)))
        return res;
    }
  }
  // the extension, and every relation of the stage
  MonoidPresentation sp(s.graph);
  for (GenId gen = 0; gen < sp.generator_count(); ++gen) {
    const MonoidElement* img = image_of(sp.name(gen));
    if (!img) {
      res.failure = "no image for '" + sp.name(gen) + "'";
      return res;
    }
    res.image.push_back(*img);
  }
  for (BlockId x = 0; x < g.block_count(); ++x) {
    MonoidElement rhs;
    for (const auto& [gen, k] : sp.rho(x).terms()) rhs += res.image[gen].scaled(k);
    if (!check(res.image[g.block(x).vertex], rhs, "stage relation at block " + g.block(x).name)) return res;
  }
  res.ok = true;
  return res;
}

// ------------------------------------------------------------ divisibility

DivisibilityResult divisibility_probe(const MonoidPresentation& p, const StageGraph& s, VertexId v, std::uint32_t m,
                                      const Budget& budget) {
  DivisibilityResult res;
  const SeparatedGraph& g = p.graph();
  if (m == 0) throw GraphError("divisibility by 0");
  if (v >= g.vertex_count()) throw GraphError("vertex id out of range");
  struct Found {
    std::vector<RewriteStep> trace;
    MonoidElement gamma;
  };
  std::unordered_map<VertexId, Found> memo;
  std::vector<char> on_stack(g.vertex_count(), 0);
  bool over_budget = false;

  std::function<const Found*(VertexId, std::size_t)> expand = [&](VertexId u, std::size_t depth) -> const Found* {
    if (auto it = memo.find(u); it != memo.end()) return &it->second;
    if (depth > budget.max_depth || on_stack[u]) return nullptr;
    std::vector<BlockId> blocks(g.blocks_at(u).begin(), g.blocks_at(u).end());
    std::stable_sort(blocks.begin(), blocks.end(),
                     [&](BlockId a, BlockId b) { return s.block_birth[a] > s.block_birth[b]; });
    on_stack[u] = 1;
    const Found* result = nullptr;
    for (BlockId x : blocks) {
      Found f;
      f.trace.push_back({StepDirection::Forward, x});
      bool ok = true;
      for (const auto& [gen, k] : p.rho(x).terms()) {
        if (k % m == 0) {
          f.gamma.add(gen, k);
          continue;
        }
        if (!p.is_vertex(gen)) {
          ok = false;
          break;
        }
        const Found* sub = expand(gen, depth + 1);
        if (!sub) {
          ok = false;
          break;
        }
        for (std::uint32_t t = 0; t < k; ++t) {
          f.trace.insert(f.trace.end(), sub->trace.begin(), sub->trace.end());
          f.gamma += sub->gamma;
        }
        if (f.trace.size() > budget.max_states || f.gamma.size() > budget.max_size * m) {
          over_budget = true;
          ok = false;
          break;
        }
      }
      if (ok) {
        result = &memo.emplace(u, std::move(f)).first->second;
        break;
      }
    }
    on_stack[u] = 0;
    return result;
  };

  if (m == 1) {
    res.divisible = true;
    res.gamma = res.part = MonoidElement::generator(v);
    return res;
  }
  const Found* f = expand(v, 0);
  if (!f) {
    res.reason = over_budget ? "budget exhausted" : "no descent through the available blocks";
    return res;
  }
  res.divisible = true;
  res.trace = f->trace;
  res.gamma = f->gamma;
  for (const auto& [gen, k] : res.gamma.terms()) res.part.add(gen, k / m);
  return res;
}

}  // namespace sepgraph
