#include "sepgraph/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sepgraph {

namespace {

bool set_less(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool pair_less(const AdmissiblePair& a, const AdmissiblePair& b) {
  if (a.h != b.h) return set_less(a.h, b.h);
  if (a.g.size() != b.g.size()) return a.g.size() < b.g.size();
  return a.g < b.g;
}

template <class T>
std::vector<T> set_union(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class T>
std::vector<T> set_intersection(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class T>
bool subset(const std::vector<T>& a, const std::vector<T>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet all_vertices(const SeparatedGraph& g) {
  VertexSet out(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) out[v] = v;
  return out;
}

void require_admissible(const SeparatedGraph& g, const AdmissiblePair& p) {
  if (!is_admissible(g, p)) throw GraphError("pair is not admissible over '" + g.name() + "'");
}

}  // namespace

// -------------------------------------------------------------- enumeration

std::vector<VertexSet> saturated_sets_by_filter(const SeparatedGraph& g) {
  if (g.vertex_count() > 24) throw std::length_error("too many vertices to filter all subsets");
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << g.vertex_count()); ++mask) {
    VertexSet h;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (mask >> v & 1) h.push_back(v);
    if (is_hereditary(g, h) && is_cs_saturated(g, h)) out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

std::vector<VertexSet> saturated_sets_by_closure(const SeparatedGraph& g, std::size_t max_sets) {
  // every saturated set is the closure of the union of its singleton closures
  std::set<VertexSet> found{saturation_closure(g, {})};
  std::vector<VertexSet> basis;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexId one[] = {v};
    basis.push_back(saturation_closure(g, one));
  }
  std::vector<VertexSet> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (const auto& h : frontier)
      for (const auto& b : basis) {
        if (subset(b, h)) continue;
        VertexSet j = saturation_closure(g, set_union(h, b));
        if (found.insert(j).second) {
          if (found.size() > max_sets) throw std::length_error("saturated-set enumeration exceeds the size guard");
          next.push_back(std::move(j));
        }
      }
    frontier = std::move(next);
  }
  std::vector<VertexSet> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

std::vector<VertexSet> saturated_sets(const SeparatedGraph& g, std::size_t max_sets) {
  if (g.vertex_count() <= 16) return saturated_sets_by_filter(g);
  return saturated_sets_by_closure(g, max_sets);
}

std::vector<AdmissiblePair> enumerate_admissible_pairs(const SeparatedGraph& g, std::size_t max_pairs) {
  std::vector<AdmissiblePair> out;
  for (const auto& h : saturated_sets(g, max_pairs)) {
    const BlockSet gh = g_of_h(g, h);
    if (gh.size() >= 32 || out.size() + (std::size_t{1} << gh.size()) > max_pairs)
      throw std::length_error("admissible-pair enumeration exceeds the size guard");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gh.size()); ++mask) {
      AdmissiblePair p{h, {}};
      for (std::size_t i = 0; i < gh.size(); ++i)
        if (mask >> i & 1) p.g.push_back(gh[i]);
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), pair_less);
  return out;
}

// ------------------------------------------------------------------- order

bool pair_leq(const SeparatedGraph& g, const AdmissiblePair& a, const AdmissiblePair& b) {
  require_admissible(g, a);
  require_admissible(g, b);
  return subset(a.h, b.h) && subset(a.g, set_union(b.g, c_of_h(g, b.h)));
}

AdmissiblePair pair_inf(const SeparatedGraph& g, std::span<const AdmissiblePair> family) {
  AdmissiblePair out{all_vertices(g), {}};
  if (family.empty()) return out;
  BlockSet all_blocks(g.block_count());
  for (BlockId x = 0; x < g.block_count(); ++x) all_blocks[x] = x;
  BlockSet gs = all_blocks;
  for (const auto& p : family) {
    require_admissible(g, p);
    out.h = set_intersection(out.h, p.h);
    gs = set_intersection(gs, set_union(p.g, c_of_h(g, p.h)));
  }
  out.g = set_intersection(g_of_h(g, out.h), gs);
  return out;
}

AdmissiblePair pair_sup(const SeparatedGraph& g, std::span<const AdmissiblePair> family,
                        std::span<const AdmissiblePair> lattice) {
  std::vector<AdmissiblePair> upper;
  for (const auto& u : lattice) {
    bool above = true;
    for (const auto& p : family)
      if (!pair_leq(g, p, u)) {
        above = false;
        break;
      }
    if (above) upper.push_back(u);
  }
  return pair_inf(g, upper);
}

AdmissiblePair pair_sup(const SeparatedGraph& g, std::span<const AdmissiblePair> family) {
  const auto lattice = enumerate_admissible_pairs(g);
  return pair_sup(g, family, lattice);
}

// ------------------------------------------------------------------ ideals

std::vector<MonoidElement> order_ideal_generators(const MonoidPresentation& p, const AdmissiblePair& pair) {
  require_admissible(p.graph(), pair);
  std::vector<MonoidElement> out;
  for (VertexId v : pair.h) out.push_back(MonoidElement::generator(v));
  for (BlockId x : pair.g) out.push_back(MonoidElement::generator(p.q_of(x)));
  return out;
}

RoundtripReport pair_roundtrip_check(const MonoidPresentation& p, const AdmissiblePair& pair, const Budget& budget) {
  const SeparatedGraph& g = p.graph();
  const PiResult pi = pi_homomorphism(p, pair, budget);
  RoundtripReport rep;
  // the quotient monoid is conical, so a generator lies in the kernel iff its image is 0
  for (GenId gen : pi.killed)
    if (p.is_vertex(gen)) rep.recovered.h.push_back(gen);
  for (GenId gen : pi.killed) {
    if (p.is_vertex(gen)) continue;
    const BlockId x = p.block_of_q(gen);
    if (!std::binary_search(rep.recovered.h.begin(), rep.recovered.h.end(), g.block(x).vertex))
      rep.recovered.g.push_back(x);
  }
  std::sort(rep.recovered.g.begin(), rep.recovered.g.end());
  rep.unknown = pi.relations_unknown;
  if (!pi.relations_ok) {
    rep.detail = "relation fails in the quotient: " + pi.failed_relation;
  } else if (rep.recovered != pair) {
    rep.detail = "kernel gives " + format_pair(g, rep.recovered);
  } else if (rep.unknown) {
    rep.detail = "kernel matches; relation check undecided: " + pi.failed_relation;
  } else {
    rep.ok = true;
  }
  return rep;
}

// ----------------------------------------------------------- simplicity

SimpleResult is_simple(const SeparatedGraph& g) {
  SimpleResult r;
  for (BlockId x = 0; x < g.block_count(); ++x)
    if (!g.block(x).in_s) {
      r.witness_block = x;
      return r;
    }
  if (g.vertex_count() == 0) return r;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexId one[] = {v};
    VertexSet h = saturation_closure(g, one);
    if (h.size() != g.vertex_count()) {
      r.witness_h = std::move(h);
      return r;
    }
  }
  r.simple = true;
  return r;
}

// ------------------------------------------------------------- cofinality

bool is_multipath_prefix(const SeparatedGraph& g, const MultipathPrefix& m) {
  if (m.paths.empty()) return false;
  auto range_after = [&](const std::vector<EdgeId>& p, std::size_t n) {
    return n == 0 ? m.start : g.edge(p[n - 1]).range;
  };
  std::set<std::vector<EdgeId>> all(m.paths.begin(), m.paths.end());
  for (const auto& p : m.paths) {
    // (a'): composable from start, length exactly depth or ending in a sink
    for (std::size_t i = 0; i < p.size(); ++i)
      if (g.edge(p[i]).source != range_after(p, i)) return false;
    if (p.size() > m.depth) return false;
    if (p.size() < m.depth && !g.is_sink(range_after(p, p.size()))) return false;
  }
  // (b') for n < depth: each block at r(gamma[n]) is continued by some path
  for (const auto& p : m.paths) {
    for (std::size_t n = 0; n < std::min(p.size() + 1, m.depth); ++n) {
      const VertexId u = range_after(p, n);
      if (g.is_sink(u)) continue;
      for (BlockId x : g.blocks_at(u)) {
        bool found = false;
        for (EdgeId f : g.block(x).edges) {
          std::vector<EdgeId> ext(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n));
          ext.push_back(f);
          for (const auto& q : m.paths)
            if (q.size() >= ext.size() && std::equal(ext.begin(), ext.end(), q.begin())) {
              found = true;
              break;
            }
          if (found) break;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

CofinalResult is_c_cofinal(const SeparatedGraph& g, std::size_t depth, std::size_t max_paths) {
  CofinalResult res;
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    const VertexId one[] = {w};
    const VertexSet h = hereditary_closure(g, one);
    // C-saturation iterate of h, without re-closing under heredity
    std::vector<char> in(g.vertex_count(), 0);
    for (VertexId v : h) in[v] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (BlockId x = 0; x < g.block_count(); ++x) {
        const VertexId v = g.block(x).vertex;
        if (in[v]) continue;
        bool inside = true;
        for (EdgeId e : g.block(x).edges) inside = inside && in[g.edge(e).range];
        if (inside) {
          in[v] = 1;
          changed = true;
        }
      }
    }
    VertexSet closure;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (in[v]) closure.push_back(v);
    if (closure.size() == g.vertex_count()) continue;

    res.cofinal = false;
    res.w = w;
    res.h = h;
    res.closure = closure;
    MultipathPrefix m;
    m.start = static_cast<VertexId>(std::find(in.begin(), in.end(), 0) - in.begin());
    m.paths.push_back({});
    // every block at a vertex outside the closure has an edge leaving it
    for (std::size_t d = 0; d < depth; ++d) {
      std::vector<std::vector<EdgeId>> next;
      for (const auto& p : m.paths) {
        const VertexId u = p.empty() ? m.start : g.edge(p.back()).range;
        if (g.is_sink(u)) {
          next.push_back(p);
          continue;
        }
        for (BlockId x : g.blocks_at(u))
          for (EdgeId f : g.block(x).edges)
            if (!in[g.edge(f).range]) {
              next.push_back(p);
              next.back().push_back(f);
              break;
            }
      }
      if (next.size() > max_paths) break;
      m.paths = std::move(next);
      m.depth = d + 1;
    }
    res.multipath = std::move(m);
    return res;
  }
  return res;
}

// -------------------------------------------------------------------- XE

AdmissiblePair xe_to_pair(const SeparatedGraph& g, const XeSet& s) {
  AdmissiblePair p{s.vertices, {}};
  for (BlockId x : s.blocks)
    if (!std::binary_search(s.vertices.begin(), s.vertices.end(), g.block(x).vertex)) p.g.push_back(x);
  return p;
}

XeSet pair_to_xe(const SeparatedGraph& g, const AdmissiblePair& p) {
  XeSet s{p.h, p.g};
  for (VertexId v : p.h)
    for (BlockId x : g.blocks_at(v))
      if (!g.block(x).in_s) s.blocks.push_back(x);
  std::sort(s.blocks.begin(), s.blocks.end());
  return s;
}

namespace {

bool is_xe_hereditary_saturated(const SeparatedGraph& g, const XeSet& s) {
  std::vector<char> vin(g.vertex_count(), 0), bin(g.block_count(), 0);
  for (VertexId v : s.vertices) vin[v] = 1;
  for (BlockId x : s.blocks) bin[x] = 1;
  for (VertexId v : s.vertices) {
    for (EdgeId e : g.out_edges(v))
      if (!vin[g.edge(e).range]) return false;
    for (BlockId x : g.blocks_at(v))
      if (!g.block(x).in_s && !bin[x]) return false;
  }
  for (BlockId x = 0; x < g.block_count(); ++x) {
    const VertexId v = g.block(x).vertex;
    if (vin[v]) continue;
    bool inside = true;
    for (EdgeId e : g.block(x).edges) inside = inside && vin[g.edge(e).range];
    if (!inside) continue;
    if (g.block(x).in_s || bin[x]) return false;
  }
  return true;
}

}  // namespace

std::vector<XeSet> xe_saturated_sets(const SeparatedGraph& g, std::size_t max_sets) {
  BlockSet non_s;
  for (BlockId x = 0; x < g.block_count(); ++x)
    if (!g.block(x).in_s) non_s.push_back(x);
  std::vector<XeSet> out;
  const std::size_t n = g.vertex_count() + non_s.size();
  if (n <= 20) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      XeSet s;
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (mask >> v & 1) s.vertices.push_back(v);
      for (std::size_t i = 0; i < non_s.size(); ++i)
        if (mask >> (g.vertex_count() + i) & 1) s.blocks.push_back(non_s[i]);
      if (is_xe_hereditary_saturated(g, s)) out.push_back(std::move(s));
      if (out.size() > max_sets) throw std::length_error("XE enumeration exceeds the size guard");
    }
  } else {
    for (const auto& p : enumerate_admissible_pairs(g, max_sets)) out.push_back(pair_to_xe(g, p));
  }
  std::sort(out.begin(), out.end(), [](const XeSet& a, const XeSet& b) {
    const auto na = a.vertices.size() + a.blocks.size(), nb = b.vertices.size() + b.blocks.size();
    return na != nb ? na < nb : a < b;
  });
  return out;
}

bool check_xe_bijection(const SeparatedGraph& g, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const auto xs = xe_saturated_sets(g);
  const auto ps = enumerate_admissible_pairs(g);
  if (xs.size() != ps.size())
    return fail(std::to_string(xs.size()) + " XE sets vs " + std::to_string(ps.size()) + " pairs");
  std::set<AdmissiblePair> images;
  for (const auto& s : xs) {
    const AdmissiblePair p = xe_to_pair(g, s);
    if (!is_admissible(g, p)) return fail("image is not admissible: " + format_pair(g, p));
    if (pair_to_xe(g, p) != s) return fail("maps are not inverse at " + format_pair(g, p));
    images.insert(p);
  }
  if (images != std::set<AdmissiblePair>(ps.begin(), ps.end())) return fail("image differs from the pair list");
  for (const auto& a : xs)
    for (const auto& b : xs) {
      const bool incl = subset(a.vertices, b.vertices) && subset(a.blocks, b.blocks);
      if (incl != pair_leq(g, xe_to_pair(g, a), xe_to_pair(g, b))) return fail("order is not preserved");
    }
  return true;
}

// ------------------------------------------------------------------- DOT

std::string hasse_dot(const SeparatedGraph& g, std::span<const AdmissiblePair> lattice) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < lattice.size(); ++i)
    out << "  p" << i << " [label=\"" << format_pair(g, lattice[i]) << "\"];\n";
  const std::size_t n = lattice.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = pair_leq(g, lattice[i], lattice[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) cover = false;
      if (cover) out << "  p" << i << " -> p" << j << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace sepgraph
