// sepgraph: command-line front end.
// Exit codes: 0 definite answer, 1 input or usage error, 2 undecided within budget.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sepgraph/algebra.hpp"
#include "sepgraph/expression.hpp"
#include "sepgraph/fixtures.hpp"
#include "sepgraph/graph_io.hpp"
#include "sepgraph/homomorphism.hpp"
#include "sepgraph/key_example.hpp"
#include "sepgraph/lattice.hpp"
#include "sepgraph/lexer.hpp"
#include "sepgraph/monoid.hpp"
#include "sepgraph/morphism.hpp"
#include "sepgraph/pairs.hpp"
#include "sepgraph/resolution.hpp"

using namespace sepgraph;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kUnknown = 2;

enum class Format { Text, Dot, Records };

struct Options {
  std::string graph;
  Format format = Format::Text;
  std::string field = "QQ";
  std::string budget;
  std::uint64_t seed = 1;
};

// key=value records, one group per item, groups separated by blank lines
class Records {
 public:
  explicit Records(std::ostream& out) : out_(out) {}
  Records& kv(const std::string& k, const std::string& v) {
    out_ << k << "=" << v << "\n";
    return *this;
  }
  Records& kv(const std::string& k, std::uint64_t v) { return kv(k, std::to_string(v)); }
  void end() { out_ << "\n"; }

 private:
  std::ostream& out_;
};

Budget budget_of(const Options& o) {
  Budget b = Budget::from_env();
  if (o.budget.empty()) return b;
  if (is_integer(o.budget)) {
    b.max_states = std::stoull(o.budget);
    if (b.max_states == 0) throw std::invalid_argument("budget must be positive");
    return b;
  }
  return Budget::parse(o.budget, b);
}

std::string join_vertices(const SeparatedGraph& g, std::span<const VertexId> vs) {
  std::string out;
  for (VertexId v : vs) out += (out.empty() ? "" : ",") + g.vertex_name(v);
  return out;
}

std::string braces(const std::string& s) { return "{" + s + "}"; }

GraphPtr need_graph(const Options& o) {
  if (o.graph.empty()) throw std::invalid_argument("a graph argument is required");
  return load_graph(o.graph);
}

// ------------------------------------------------------------------ algebra

template <class Scalar>
int run_algebra(const std::string& op, const Options& o, const std::vector<std::string>& args, std::size_t max_len,
                std::ostream& out) {
  auto g = need_graph(o);
  ReductionSystem sys(g);
  if (op == "normalize") {
    auto x = normalize(sys, parse_expression<Scalar>(*g, args[0]));
    if (o.format == Format::Records)
      Records(out).kv("result", format_element(*g, x)).kv("terms", x.size()).end();
    else
      out << format_element(*g, x) << "\n";
    return kOk;
  }
  if (op == "mul") {
    auto a = normalize(sys, parse_expression<Scalar>(*g, args[0]));
    auto b = normalize(sys, parse_expression<Scalar>(*g, args[1]));
    auto x = multiply(sys, a, b);
    if (o.format == Format::Records)
      Records(out).kv("result", format_element(*g, x)).kv("terms", x.size()).end();
    else
      out << format_element(*g, x) << "\n";
    return kOk;
  }
  // basis
  const auto words = enumerate_basis(sys, max_len);
  if (o.format == Format::Records) {
    Records r(out);
    for (const auto& w : words) r.kv("word", format_word(*g, w)).kv("length", w.length()).end();
    r.kv("count", words.size()).end();
  } else {
    for (const auto& w : words) out << format_word(*g, w) << "\n";
    out << "# " << words.size() << " basis words of length <= " << max_len << "\n";
  }
  return kOk;
}

int dispatch_field(const std::string& op, const Options& o, const std::vector<std::string>& args, std::size_t max_len,
                   std::ostream& out) {
  const std::string& f = o.field;
  if (f == "QQ") return run_algebra<Rational>(op, o, args, max_len, out);
  if (f == "F2") return run_algebra<ModP<2>>(op, o, args, max_len, out);
  if (f == "F3") return run_algebra<ModP<3>>(op, o, args, max_len, out);
  if (f == "F5") return run_algebra<ModP<5>>(op, o, args, max_len, out);
  if (f == "F7") return run_algebra<ModP<7>>(op, o, args, max_len, out);
  if (f == "F1000003") return run_algebra<ModP<1000003>>(op, o, args, max_len, out);
  throw std::invalid_argument("unknown field '" + f + "' (QQ, F2, F3, F5, F7, F1000003)");
}

// ------------------------------------------------------------------- monoid

int cmd_check(const Options& o, std::ostream& out) {
  auto g = need_graph(o);
  std::size_t s_blocks = g->block_count() - g->non_s_block_count();
  if (o.format == Format::Records) {
    Records(out)
        .kv("graph", g->name())
        .kv("vertices", g->vertex_count())
        .kv("edges", g->edge_count())
        .kv("blocks", g->block_count())
        .kv("s_blocks", s_blocks)
        .kv("separated", g->is_separated() ? "true" : "false")
        .end();
  } else {
    out << "OK " << g->name() << ": " << g->vertex_count() << " vertices, " << g->edge_count() << " edges, "
        << g->block_count() << " blocks, " << s_blocks << " in S\n";
  }
  return kOk;
}

void render_trace(const MonoidPresentation& p, const MonoidElement& start, const std::vector<RewriteStep>& trace,
                  const std::string& tag, std::ostream& out) {
  MonoidElement x = start;
  out << tag << ": " << format_monoid_element(p, x) << "\n";
  for (const auto& s : trace) {
    x = *apply_step(p, x, s);
    out << "  " << format_step(p, s) << " -> " << format_monoid_element(p, x) << "\n";
  }
}

int cmd_mono_eq(const Options& o, const std::string& a_text, const std::string& b_text, std::ostream& out) {
  auto g = need_graph(o);
  MonoidPresentation p(g);
  auto a = parse_monoid_element(p, a_text), b = parse_monoid_element(p, b_text);
  EqOptions opt;
  opt.budget = budget_of(o);
  auto r = monoid_eq(p, a, b, opt);
  if (o.format == Format::Records) {
    Records rec(out);
    rec.kv("verdict", to_string(r.verdict)).kv("states", r.states);
    if (r.verdict == EqVerdict::Equal) {
      rec.kv("gamma", format_monoid_element(p, r.gamma)).kv("phase", r.phase);
      for (const auto& s : r.trace_a) rec.kv("step_a", format_step(p, s));
      for (const auto& s : r.trace_b) rec.kv("step_b", format_step(p, s));
    } else if (r.certificate == Certificate::PairMismatch) {
      rec.kv("certificate", "pair-mismatch")
          .kv("pair_a", format_pair(*g, r.pair_a))
          .kv("pair_b", format_pair(*g, r.pair_b));
    } else if (r.certificate == Certificate::ClassExhausted) {
      rec.kv("certificate", "class-exhausted").kv("side", r.exhausted_side == 0 ? "a" : "b");
      for (const auto& x : r.exhausted_class) rec.kv("member", format_monoid_element(p, x));
    }
    rec.end();
  } else if (r.verdict == EqVerdict::Equal) {
    out << "EQUAL\n";
    out << "common image: " << format_monoid_element(p, r.gamma) << " (phase " << r.phase << ")\n";
    render_trace(p, a, r.trace_a, "a", out);
    render_trace(p, b, r.trace_b, "b", out);
  } else if (r.verdict == EqVerdict::NotEqual) {
    out << "NOT EQUAL\n";
    if (r.certificate == Certificate::PairMismatch) {
      out << "generated pairs differ: " << format_pair(*g, r.pair_a) << " vs " << format_pair(*g, r.pair_b) << "\n";
    } else {
      out << "congruence class of " << (r.exhausted_side == 0 ? "a" : "b") << " exhausted ("
          << r.exhausted_class.size() << " elements):\n";
      for (const auto& x : r.exhausted_class) out << "  " << format_monoid_element(p, x) << "\n";
    }
  } else {
    out << "UNKNOWN: budget exhausted after " << r.states << " states\n";
  }
  return r.verdict == EqVerdict::Unknown ? kUnknown : kOk;
}

int cmd_star(const Options& o, std::ostream& out) {
  auto g = need_graph(o);
  MonoidPresentation p(g);
  auto rep = check_star(p);
  if (o.format == Format::Records) {
    Records rec(out);
    for (const auto& pr : rep.pairs) {
      rec.kv("vertex", g->vertex_name(pr.vertex))
          .kv("x", g->block(pr.x).name)
          .kv("y", g->block(pr.y).name)
          .kv("status", to_string(pr.status));
      if (pr.gamma) rec.kv("gamma", format_monoid_element(p, *pr.gamma));
      rec.end();
    }
    rec.kv("overall", to_string(rep.overall)).end();
  } else {
    for (const auto& pr : rep.pairs) {
      out << g->vertex_name(pr.vertex) << " " << g->block(pr.x).name << " " << g->block(pr.y).name << ": "
          << to_string(pr.status);
      if (pr.gamma) out << " via " << format_monoid_element(p, *pr.gamma);
      out << "\n";
    }
    out << (rep.overall == StarStatus::Pass ? "STAR HOLDS" : rep.overall == StarStatus::Fail ? "STAR FAILS" : "STAR UNKNOWN")
        << "\n";
  }
  return rep.overall == StarStatus::Unknown ? kUnknown : kOk;
}

int cmd_refine(const Options& o, const std::array<std::string, 4>& args, std::ostream& out) {
  auto g = need_graph(o);
  MonoidPresentation p(g);
  std::array<MonoidElement, 4> x;
  for (std::size_t i = 0; i < 4; ++i) x[i] = parse_monoid_element(p, args[i]);
  if (x[0] + x[1] != x[2] + x[3]) {
    EqOptions opt;
    opt.budget = budget_of(o);
    auto eq = monoid_eq(p, x[0] + x[1], x[2] + x[3], opt);
    if (eq.verdict == EqVerdict::NotEqual) throw std::invalid_argument("a1 + a2 and b1 + b2 are not equal");
  }
  auto r = refine(p, x[0], x[1], x[2], x[3], budget_of(o));
  auto f = [&](const MonoidElement& e) { return format_monoid_element(p, e); };
  if (o.format == Format::Records) {
    Records rec(out);
    rec.kv("found", r.found ? "true" : "false");
    if (r.found)
      rec.kv("g11", f(r.g11)).kv("g12", f(r.g12)).kv("g21", f(r.g21)).kv("g22", f(r.g22)).kv(
          "verified", r.verified ? "true" : "false");
    else
      rec.kv("reason", r.reason);
    rec.end();
  } else if (r.found) {
    out << "REFINEMENT" << (r.verified ? "" : " (unverified)") << "\n";
    out << "        b1    b2\n";
    out << "  a1:  " << f(r.g11) << " | " << f(r.g12) << "\n";
    out << "  a2:  " << f(r.g21) << " | " << f(r.g22) << "\n";
  } else {
    out << "NO REFINEMENT FOUND: " << r.reason << "\n";
  }
  return r.found && r.verified ? kOk : kUnknown;
}

// ------------------------------------------------------------------ lattice

int cmd_lattice(const Options& o, std::ostream& out) {
  auto g = need_graph(o);
  auto pairs = enumerate_admissible_pairs(*g);
  if (o.format == Format::Dot) {
    out << hasse_dot(*g, pairs);
  } else if (o.format == Format::Records) {
    Records rec(out);
    for (const auto& p : pairs) rec.kv("pair", format_pair(*g, p)).end();
    rec.kv("count", pairs.size()).end();
  } else {
    for (const auto& p : pairs) out << format_pair(*g, p) << "\n";
    out << "# " << pairs.size() << " admissible pairs\n";
  }
  return kOk;
}

int cmd_simple(const Options& o, std::ostream& out) {
  auto g = need_graph(o);
  auto r = is_simple(*g);
  if (o.format == Format::Records) {
    Records rec(out);
    rec.kv("simple", r.simple ? "true" : "false");
    if (r.witness_block) rec.kv("witness_block", g->block(*r.witness_block).name);
    if (!r.simple && !r.witness_block) rec.kv("witness_h", braces(join_vertices(*g, r.witness_h)));
    rec.end();
  } else if (r.simple) {
    out << "SIMPLE\n";
  } else if (r.witness_block) {
    out << "NOT SIMPLE: block " << g->block(*r.witness_block).name << " is not in S\n";
  } else {
    out << "NOT SIMPLE: H = " << braces(join_vertices(*g, r.witness_h)) << " is a proper hereditary saturated set\n";
  }
  return kOk;
}

int cmd_cofinal(const Options& o, std::size_t depth, std::ostream& out) {
  auto g = need_graph(o);
  auto r = is_c_cofinal(*g, depth);
  auto path_text = [&](const std::vector<EdgeId>& path) {
    std::string s;
    for (EdgeId e : path) s += (s.empty() ? "" : " ") + g->edge(e).name;
    return s.empty() ? std::string("(empty)") : s;
  };
  if (o.format == Format::Records) {
    Records rec(out);
    rec.kv("cofinal", r.cofinal ? "true" : "false");
    if (!r.cofinal) {
      rec.kv("w", g->vertex_name(r.w)).kv("h", braces(join_vertices(*g, r.h)));
      if (r.multipath) {
        rec.kv("start", g->vertex_name(r.multipath->start)).kv("depth", r.multipath->depth);
        for (const auto& p : r.multipath->paths) rec.kv("path", path_text(p));
      }
    }
    rec.end();
  } else if (r.cofinal) {
    out << "COFINAL\n";
  } else {
    out << "NOT COFINAL\n";
    out << "w = " << g->vertex_name(r.w) << ", H = " << braces(join_vertices(*g, r.h)) << "\n";
    if (r.multipath) {
      out << "multipath from " << g->vertex_name(r.multipath->start) << " avoiding H, depth " << r.multipath->depth
          << ":\n";
      std::map<std::size_t, std::vector<std::string>> by_len;
      for (const auto& p : r.multipath->paths) by_len[p.size()].push_back(path_text(p));
      for (const auto& [len, ps] : by_len)
        for (const auto& s : ps) out << "  [" << len << "] " << s << "\n";
    }
  }
  return kOk;
}

int cmd_subobject(const Options& o, const std::string& items, std::ostream& out) {
  auto g = need_graph(o);
  std::vector<std::string> names;
  std::stringstream in(items);
  for (std::string s; std::getline(in, s, ',');)
    if (!s.empty()) names.push_back(s);
  if (names.empty()) throw std::invalid_argument("--items needs at least one vertex or edge name");
  auto sub = finite_complete_subobject(g, names);
  auto rep = check_morphism(sub.inclusion);
  if (!rep.ok) throw GraphError("subobject inclusion failed: " + rep.detail);
  if (o.format == Format::Dot)
    out << dot_export(*sub.graph);
  else if (o.format == Format::Records)
    Records(out)
        .kv("vertices", sub.graph->vertex_count())
        .kv("edges", sub.graph->edge_count())
        .kv("blocks", sub.graph->block_count())
        .end();
  else
    out << print_graph(*sub.graph);
  return kOk;
}

// ---------------------------------------------------------------- resolution

int cmd_resolve(const Options& o, const std::string& plan_spec, std::optional<std::size_t> stage,
                const std::string& names_path, std::ostream& out) {
  std::string text;
  if (plan_spec.rfind("fixture:", 0) == 0) {
    const Fixture& f = fixture(plan_spec.substr(8));
    if (!f.is_plan) throw std::invalid_argument("fixture '" + f.name + "' is a graph, not a plan");
    text = f.text;
  } else {
    text = read_file(plan_spec);
  }
  auto plan = parse_plan(text);
  auto s = resolution_stage(plan, stage.value_or(plan.stages));
  if (!names_path.empty()) {
    std::ofstream nf(names_path);
    if (!nf) throw std::runtime_error("cannot write '" + names_path + "'");
    nf << format_name_table(s);
  }
  if (o.format == Format::Dot) {
    out << dot_export(*s.graph);
  } else if (o.format == Format::Records) {
    Records(out)
        .kv("stage", s.stage)
        .kv("triples", s.triples.size())
        .kv("vertices", s.graph->vertex_count())
        .kv("edges", s.graph->edge_count())
        .kv("blocks", s.graph->block_count())
        .end();
  } else {
    out << print_graph(*s.graph);
    if (names_path.empty() && !s.names.empty()) {
      out << "# names\n";
      std::istringstream table(format_name_table(s));
      for (std::string line; std::getline(table, line);) out << "# " << line << "\n";
    }
  }
  return kOk;
}

// ------------------------------------------------------------- homomorphisms

// File format:
//   source GRAPH
//   target GRAPH            (defaults to the source)
//   vertex NAME = EXPR
//   edge NAME = EXPR
//   ghost NAME = EXPR       (defaults to the adjoint of the edge image)
// GRAPH is `fixture:NAME` or a path relative to the file. `keyexample:M,N`
// in place of a file runs the matrix isomorphism checks instead.
template <class Scalar>
int run_verify_hom(const Options& o, const std::string& file, std::ostream& out) {
  const std::filesystem::path base = std::filesystem::path(file).parent_path();
  auto resolve = [&](const std::string& spec) {
    if (spec.rfind("fixture:", 0) == 0) return load_graph(spec);
    std::filesystem::path p(spec);
    return load_graph((p.is_absolute() ? p : base / p).string());
  };
  const std::string text = read_file(file);
  GraphPtr src, dst;
  struct Line {
    int no;
    std::string kind, name, expr;
  };
  std::vector<Line> lines;
  std::istringstream in(text);
  int no = 0;
  for (std::string line; std::getline(in, line);) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string kind, name;
    if (!(ls >> kind)) continue;
    if (kind == "source" || kind == "target") {
      std::string spec;
      if (!(ls >> spec)) throw ParseError("expected a graph after '" + kind + "'", no, 1);
      (kind == "source" ? src : dst) = resolve(spec);
      continue;
    }
    if (kind != "vertex" && kind != "edge" && kind != "ghost") throw ParseError("unknown line '" + kind + "'", no, 1);
    std::string eq;
    if (!(ls >> name >> eq) || eq != "=") throw ParseError("expected '" + kind + " NAME = EXPR'", no, 1);
    std::string rest;
    std::getline(ls, rest);
    lines.push_back({no, kind, name, rest});
  }
  if (!src) throw ParseError("missing 'source' line", 1, 1);
  if (!dst) dst = src;
  CLAlgebra<Scalar> target(dst);
  GeneratorImages<CLAlgebra<Scalar>> im;
  std::vector<char> has_v(src->vertex_count(), 0), has_e(src->edge_count(), 0), has_g(src->edge_count(), 0);
  im.vertex.resize(src->vertex_count());
  im.edge.resize(src->edge_count());
  im.ghost.resize(src->edge_count());
  for (const auto& l : lines) {
    auto value = target.parse(l.expr);
    if (l.kind == "vertex") {
      auto v = src->find_vertex(l.name);
      if (!v) throw ParseError("unknown source vertex '" + l.name + "'", l.no, 1);
      im.vertex[*v] = value;
      has_v[*v] = 1;
    } else {
      auto e = src->find_edge(l.name);
      if (!e) throw ParseError("unknown source edge '" + l.name + "'", l.no, 1);
      (l.kind == "edge" ? im.edge : im.ghost)[*e] = value;
      (l.kind == "edge" ? has_e : has_g)[*e] = 1;
    }
  }
  for (VertexId v = 0; v < src->vertex_count(); ++v)
    if (!has_v[v]) throw std::invalid_argument("no image for vertex '" + src->vertex_name(v) + "'");
  for (EdgeId e = 0; e < src->edge_count(); ++e) {
    if (!has_e[e]) throw std::invalid_argument("no image for edge '" + src->edge(e).name + "'");
    if (!has_g[e]) im.ghost[e] = target.reduce(star(im.edge[e]));
  }
  auto rep = verify_hom(*src, im, target);
  if (o.format == Format::Records) {
    Records rec(out);
    rec.kv("ok", rep.ok ? "true" : "false").kv("relations", rep.relations_checked);
    if (!rep.ok) rec.kv("failed", rep.failed_relation);
    rec.end();
  } else if (rep.ok) {
    out << "HOMOMORPHISM: " << rep.relations_checked << " relations hold\n";
  } else {
    out << "NOT A HOMOMORPHISM: " << rep.failed_relation << "\n";
  }
  return rep.ok ? kOk : kInputError;
}

int run_key_example(const Options& o, const std::string& spec, std::ostream& out) {
  const auto comma = spec.find(',');
  const std::string ms = spec.substr(0, comma), ns = comma == std::string::npos ? "" : spec.substr(comma + 1);
  if (!is_integer(ms) || !is_integer(ns)) throw std::invalid_argument("expected keyexample:M,N");
  const int m = std::stoi(ms), n = std::stoi(ns);
  if (m < 1 || n <= m) throw std::invalid_argument("keyexample needs 1 <= m < n");
  KeyExample<Rational> k(m, n);
  const auto psi = k.verify_psi();
  const auto phi = k.verify_phi();
  const auto pp = k.phi_psi();
  const auto qq = k.psi_phi();
  const bool ok = psi.ok && phi.ok && pp.ok && qq.ok;
  if (o.format == Format::Records) {
    Records(out)
        .kv("psi", psi.ok ? "true" : "false")
        .kv("phi", phi.ok ? "true" : "false")
        .kv("phi_psi", pp.ok ? "true" : "false")
        .kv("psi_phi", qq.ok ? "true" : "false")
        .end();
  } else {
    out << "psi: " << (psi.ok ? "ok" : "FAILS " + psi.failed_relation) << " (" << psi.relations_checked
        << " relations)\n";
    out << "phi: " << (phi.ok ? "ok" : "FAILS " + phi.failure) << " (" << phi.checked << " relations)\n";
    out << "phi psi = id: " << (pp.ok ? "ok" : "FAILS " + pp.failure) << " (" << pp.checked << " generators)\n";
    out << "psi phi = id: " << (qq.ok ? "ok" : "FAILS " + qq.failure) << " (" << qq.checked << " generators)\n";
  }
  return ok ? kOk : kInputError;
}

int cmd_verify_hom(const Options& o, const std::string& file, std::ostream& out) {
  if (file.rfind("keyexample:", 0) == 0) return run_key_example(o, file.substr(11), out);
  const std::string& f = o.field;
  if (f == "QQ") return run_verify_hom<Rational>(o, file, out);
  if (f == "F2") return run_verify_hom<ModP<2>>(o, file, out);
  if (f == "F3") return run_verify_hom<ModP<3>>(o, file, out);
  if (f == "F5") return run_verify_hom<ModP<5>>(o, file, out);
  if (f == "F7") return run_verify_hom<ModP<7>>(o, file, out);
  if (f == "F1000003") return run_verify_hom<ModP<1000003>>(o, file, out);
  throw std::invalid_argument("unknown field '" + f + "'");
}

// ---------------------------------------------------------------------- misc

int cmd_fixtures(const Options& o, const std::string& name, std::ostream& out) {
  if (!name.empty()) {
    out << fixture(name).text;
    return kOk;
  }
  for (const auto& f : fixtures()) {
    if (o.format == Format::Records)
      Records(out).kv("name", f.name).kv("kind", f.is_plan ? "plan" : "graph").kv("summary", f.summary).end();
    else
      out << f.name << (f.is_plan ? " (plan)" : "") << ": " << f.summary << "\n";
  }
  return kOk;
}

int cmd_from_presentation(const Options& o, const std::string& file, std::ostream& out) {
  auto g = presentation_to_graph(parse_presentation(read_file(file)));
  out << (o.format == Format::Dot ? dot_export(g) : print_graph(g));
  return kOk;
}

// `-a1` is not a valid CLI11 short flag; accept it as `--a1`.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-a1" || a == "-a2" || a == "-b1" || a == "-b2") a = "-" + a;
    out.push_back(a);
  }
  std::reverse(out.begin(), out.end());  // CLI11 takes the vector in reverse
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separated graphs: Leavitt path algebras, graph monoids, admissible pairs, resolutions", "sepgraph"};
  app.require_subcommand(1);
  Options o;
  std::string fmt = "text";
  auto add_common = [&](CLI::App* sub, bool graph = true) {
    if (graph) sub->add_option("graph", o.graph, "graph file or fixture:NAME")->required();
    sub->add_option("--format", fmt, "text, dot or records")->check(CLI::IsMember({"text", "dot", "records"}));
  };

  auto* check = app.add_subcommand("check", "parse and validate a graph");
  add_common(check);

  std::string e_text, a_text, b_text;
  auto* norm = app.add_subcommand("normalize", "reduced form of an algebra element");
  add_common(norm);
  norm->add_option("-e,--expr", e_text, "expression")->required();
  norm->add_option("--field", o.field, "QQ, F2, F3, F5, F7 or F1000003");

  auto* mul = app.add_subcommand("mul", "product of two algebra elements");
  add_common(mul);
  mul->add_option("-a", a_text, "left factor")->required();
  mul->add_option("-b", b_text, "right factor")->required();
  mul->add_option("--field", o.field, "QQ, F2, F3, F5, F7 or F1000003");

  std::size_t max_len = 3;
  auto* basis = app.add_subcommand("basis", "reduced words up to a length");
  add_common(basis);
  basis->add_option("--max-len", max_len, "maximum word length")->required();

  auto* meq = app.add_subcommand("mono-eq", "word problem in the graph monoid");
  add_common(meq);
  meq->add_option("-a", a_text, "first element")->required();
  meq->add_option("-b", b_text, "second element")->required();
  meq->add_option("--budget", o.budget, "N states, or size=N,frontier=N,depth=N");

  auto* star_cmd = app.add_subcommand("star-check", "condition (*) on every pair of blocks");
  add_common(star_cmd);

  std::array<std::string, 4> ref;
  auto* refine_cmd = app.add_subcommand("refine", "refinement of a1 + a2 = b1 + b2");
  add_common(refine_cmd);
  refine_cmd->add_option("--a1", ref[0])->required();
  refine_cmd->add_option("--a2", ref[1])->required();
  refine_cmd->add_option("--b1", ref[2])->required();
  refine_cmd->add_option("--b2", ref[3])->required();
  refine_cmd->add_option("--budget", o.budget, "N states, or size=N,frontier=N,depth=N");

  auto* lat = app.add_subcommand("lattice", "admissible pairs; --format dot draws the Hasse diagram");
  add_common(lat);

  auto* simple = app.add_subcommand("simple", "simplicity of the graph monoid");
  add_common(simple);

  std::size_t depth = 4;
  auto* cof = app.add_subcommand("cofinal", "C-cofinality with a multipath witness");
  add_common(cof);
  cof->add_option("--depth", depth, "multipath depth")->check(CLI::PositiveNumber);

  std::string items;
  auto* sub = app.add_subcommand("subobject", "complete subobject generated by vertices and edges");
  add_common(sub);
  sub->add_option("--items", items, "comma separated names")->required();

  std::string plan_spec, names_path;
  std::optional<std::size_t> stage;
  auto* res = app.add_subcommand("resolve", "materialize a resolution stage");
  add_common(res, false);
  res->add_option("plan", plan_spec, "plan file or fixture:NAME")->required();
  res->add_option("--stage", stage, "stage to print (defaults to the plan's)");
  res->add_option("--names", names_path, "write the name table here instead of trailing comments");

  std::string hom_file;
  auto* vh = app.add_subcommand("verify-hom", "check generator images against the defining relations");
  add_common(vh, false);
  vh->add_option("file", hom_file, "homomorphism file or keyexample:M,N")->required();
  vh->add_option("--field", o.field, "QQ, F2, F3, F5, F7 or F1000003");

  std::string fixture_name;
  auto* fx = app.add_subcommand("fixtures", "list the bundled corpus or print one entry");
  add_common(fx, false);
  fx->add_option("name", fixture_name);

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a graph");
  add_common(dot);

  std::string pres_file;
  auto* fp = app.add_subcommand("from-presentation", "graph realizing a finitely generated conical presentation");
  add_common(fp, false);
  fp->add_option("file", pres_file)->required();

  app.add_option("--seed", o.seed, "seed for randomized subcommands");

  try {
    auto args = normalize_args(argc, argv);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return kInputError;
  }
  o.format = fmt == "dot" ? Format::Dot : fmt == "records" ? Format::Records : Format::Text;

  std::ostringstream out;
  int code = kOk;
  try {
    if (*check) code = cmd_check(o, out);
    else if (*norm) code = dispatch_field("normalize", o, {e_text}, 0, out);
    else if (*mul) code = dispatch_field("mul", o, {a_text, b_text}, 0, out);
    else if (*basis) code = dispatch_field("basis", o, {}, max_len, out);
    else if (*meq) code = cmd_mono_eq(o, a_text, b_text, out);
    else if (*star_cmd) code = cmd_star(o, out);
    else if (*refine_cmd) code = cmd_refine(o, ref, out);
    else if (*lat) code = cmd_lattice(o, out);
    else if (*simple) code = cmd_simple(o, out);
    else if (*cof) code = cmd_cofinal(o, depth, out);
    else if (*sub) code = cmd_subobject(o, items, out);
    else if (*res) code = cmd_resolve(o, plan_spec, stage, names_path, out);
    else if (*vh) code = cmd_verify_hom(o, hom_file, out);
    else if (*fx) code = cmd_fixtures(o, fixture_name, out);
    else if (*dot) code = (out << dot_export(*need_graph(o)), kOk);
    else if (*fp) code = cmd_from_presentation(o, pres_file, out);
  } catch (const ParseError& e) {
    std::cerr << "error: line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  std::cout << out.str();
  return code;
}
