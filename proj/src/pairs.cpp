#include "sepgraph/pairs.hpp"

#include <algorithm>

#include "sepgraph/lexer.hpp"

namespace sepgraph {

namespace {

std::vector<char> mask_of(const SeparatedGraph& g, std::span<const VertexId> h) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : h) {
    if (v >= g.vertex_count()) throw GraphError("vertex id out of range");
    in[v] = 1;
  }
  return in;
}

VertexSet set_of(const std::vector<char>& in) {
  VertexSet out;
  for (VertexId v = 0; v < in.size(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

void close_hereditary(const SeparatedGraph& g, std::vector<char>& in) {
  std::vector<VertexId> stack = set_of(in);
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      const VertexId w = g.edge(e).range;
      if (!in[w]) {
        in[w] = 1;
        stack.push_back(w);
      }
    }
  }
}

bool ranges_inside(const SeparatedGraph& g, BlockId x, const std::vector<char>& in) {
  for (EdgeId e : g.block(x).edges)
    if (!in[g.edge(e).range]) return false;
  return true;
}

}  // namespace

VertexSet hereditary_closure(const SeparatedGraph& g, std::span<const VertexId> h0) {
  auto in = mask_of(g, h0);
  close_hereditary(g, in);
  return set_of(in);
}

bool is_hereditary(const SeparatedGraph& g, std::span<const VertexId> h) {
  auto in = mask_of(g, h);
  for (VertexId v : h)
    for (EdgeId e : g.out_edges(v))
      if (!in[g.edge(e).range]) return false;
  return true;
}

bool is_cs_saturated(const SeparatedGraph& g, std::span<const VertexId> h) {
  auto in = mask_of(g, h);
  for (BlockId x = 0; x < g.block_count(); ++x) {
    const Block& b = g.block(x);
    if (b.in_s && !in[b.vertex] && ranges_inside(g, x, in)) return false;
  }
  return true;
}

VertexSet saturation_closure(const SeparatedGraph& g, std::span<const VertexId> h0) {
  auto in = mask_of(g, h0);
  bool changed = true;
  while (changed) {
    close_hereditary(g, in);
    changed = false;
    for (BlockId x = 0; x < g.block_count(); ++x) {
      const Block& b = g.block(x);
      if (b.in_s && !in[b.vertex] && ranges_inside(g, x, in)) {
        in[b.vertex] = 1;
        changed = true;
      }
    }
  }
  return set_of(in);
}

std::vector<EdgeId> block_mod(const SeparatedGraph& g, BlockId x, std::span<const VertexId> h) {
  std::vector<EdgeId> out;
  for (EdgeId e : g.block(x).edges)
    if (!std::binary_search(h.begin(), h.end(), g.edge(e).range)) out.push_back(e);
  return out;
}

BlockSet g_of_h(const SeparatedGraph& g, std::span<const VertexId> h) {
  BlockSet out;
  for (BlockId x = 0; x < g.block_count(); ++x)
    if (!g.block(x).in_s && !block_mod(g, x, h).empty()) out.push_back(x);
  return out;
}

BlockSet c_of_h(const SeparatedGraph& g, std::span<const VertexId> h) {
  BlockSet out;
  for (VertexId v : h)
    for (BlockId x : g.blocks_at(v)) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_admissible(const SeparatedGraph& g, const AdmissiblePair& p) {
  if (!std::is_sorted(p.h.begin(), p.h.end()) || !std::is_sorted(p.g.begin(), p.g.end()))
    return false;
  if (std::adjacent_find(p.h.begin(), p.h.end()) != p.h.end()) return false;
  if (std::adjacent_find(p.g.begin(), p.g.end()) != p.g.end()) return false;
  for (VertexId v : p.h)
    if (v >= g.vertex_count()) return false;
  if (!is_hereditary(g, p.h) || !is_cs_saturated(g, p.h)) return false;
  const BlockSet gh = g_of_h(g, p.h);
  return std::includes(gh.begin(), gh.end(), p.g.begin(), p.g.end());
}

std::string format_pair(const SeparatedGraph& g, const AdmissiblePair& p) {
  // names sort with ids, which follow lexicographic name order
  std::string out = "H = {";
  for (std::size_t i = 0; i < p.h.size(); ++i) out += (i ? "," : "") + g.vertex_name(p.h[i]);
  out += "}; G = {";
  for (std::size_t i = 0; i < p.g.size(); ++i) out += (i ? "," : "") + g.block(p.g[i]).name;
  return out + "}";
}

AdmissiblePair parse_pair(const SeparatedGraph& g, std::string_view text) {
  auto toks = tokenize_line(text, 1);
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    const int col = i < toks.size() ? toks[i].column : static_cast<int>(text.size()) + 1;
    throw ParseError(msg, 1, col);
  };
  auto expect = [&](std::string_view s) {
    if (i >= toks.size() || toks[i].text != s) fail("expected '" + std::string(s) + "'");
    ++i;
  };
  auto names = [&]() {
    std::vector<std::string> out;
    expect("{");
    while (i < toks.size() && toks[i].text != "}") {
      if (toks[i].kind != TokenKind::Ident) fail("expected a name");
      out.push_back(toks[i++].text);
      if (i < toks.size() && toks[i].text == ",") ++i;
    }
    expect("}");
    return out;
  };
  AdmissiblePair p;
  expect("H");
  expect("=");
  for (const auto& n : names()) {
    auto v = g.find_vertex(n);
    if (!v) throw GraphError("unknown vertex '" + n + "'");
    p.h.push_back(*v);
  }
  if (i < toks.size()) {
    expect(";");
    expect("G");
    expect("=");
    for (const auto& n : names()) {
      auto x = g.find_block(n);
      if (!x) throw GraphError("unknown block '" + n + "'");
      p.g.push_back(*x);
    }
  }
  if (i != toks.size()) fail("trailing input");
  std::sort(p.h.begin(), p.h.end());
  p.h.erase(std::unique(p.h.begin(), p.h.end()), p.h.end());
  std::sort(p.g.begin(), p.g.end());
  p.g.erase(std::unique(p.g.begin(), p.g.end()), p.g.end());
  return p;
}

}  // namespace sepgraph
