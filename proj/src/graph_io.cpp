#include "sepgraph/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace sepgraph {

namespace {

class LineCursor {
 public:
  LineCursor(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  bool done() const { return pos_ >= toks_.size(); }

  const Token& peek() const {
    if (done()) fail_end("unexpected end of line");
    return toks_[pos_];
  }

  std::string ident(const char* what) {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident) throw ParseError(std::string("expected ") + what, t.line, t.column);
    ++pos_;
    return t.text;
  }

  void symbol(std::string_view s) {
    const Token& t = peek();
    if (t.kind != TokenKind::Symbol || t.text != s)
      throw ParseError("expected '" + std::string(s) + "'", t.line, t.column);
    ++pos_;
  }

  bool accept(std::string_view s) {
    if (!done() && toks_[pos_].kind == TokenKind::Symbol && toks_[pos_].text == s) {
      ++pos_;
      return true;
    }
    return false;
  }

  void finish() const {
    if (!done()) throw ParseError("trailing input '" + toks_[pos_].text + "'", toks_[pos_].line,
                                  toks_[pos_].column);
  }

  [[noreturn]] void fail_end(const std::string& msg) const {
    int col = toks_.empty() ? 1 : toks_.back().column + static_cast<int>(toks_.back().text.size());
    throw ParseError(msg, line_, col);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SeparatedGraph parse_graph(std::string_view text) {
  GraphBuilder b;
  bool named = false;
  bool s_seen = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize_line(line, lineno);
    if (toks.empty()) continue;
    LineCursor cur(std::move(toks), lineno);
    const Token head = cur.peek();
    const std::string kw = cur.ident("a statement keyword");
    if (kw == "graph") {
      if (named) throw ParseError("second 'graph' statement", head.line, head.column);
      b = GraphBuilder(cur.ident("graph name"));
      named = true;
      cur.finish();
    } else if (kw == "vertex") {
      if (cur.done()) cur.fail_end("expected vertex name");
      while (!cur.done()) b.vertex(cur.ident("vertex name"));
    } else if (kw == "edge") {
      std::string e = cur.ident("edge name");
      cur.symbol(":");
      std::string s = cur.ident("source vertex");
      cur.symbol("->");
      std::string r = cur.ident("range vertex");
      cur.finish();
      b.edge(std::move(e), std::move(s), std::move(r));
    } else if (kw == "partition") {
      std::string v = cur.ident("vertex name");
      cur.symbol("{");
      while (true) {
        std::string name = cur.ident("block name");
        cur.symbol("=");
        std::vector<std::string> edges;
        while (!cur.done() && cur.peek().kind == TokenKind::Ident) edges.push_back(cur.ident("edge"));
        if (edges.empty()) {
          const Token& t = cur.peek();
          throw ParseError("empty block '" + name + "'", t.line, t.column);
        }
        b.block(v, std::move(name), std::move(edges));
        if (cur.accept(";")) continue;
        cur.symbol("}");
        break;
      }
      cur.finish();
    } else if (kw == "s") {
      if (s_seen) throw ParseError("second 's' statement", head.line, head.column);
      s_seen = true;
      if (cur.accept("*")) {
        b.s_all();
      } else if (cur.accept("-")) {
        b.s_none();
      } else {
        if (cur.done()) cur.fail_end("expected block names, '*' or '-'");
        while (!cur.done()) b.s_add(cur.ident("block name"));
      }
      cur.finish();
    } else {
      throw ParseError("unknown statement '" + kw + "'", head.line, head.column);
    }
  }
  return b.build();
}

GraphPtr parse_graph_shared(std::string_view text) {
  return std::make_shared<const SeparatedGraph>(parse_graph(text));
}

std::string print_graph(const SeparatedGraph& g) {
  std::ostringstream out;
  out << "graph " << g.name() << "\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v % 12 == 0) out << (v == 0 ? "" : "\n") << "vertex";
    out << ' ' << g.vertex_name(v);
  }
  if (g.vertex_count() > 0) out << "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out << "edge " << ed.name << " : " << g.vertex_name(ed.source) << " -> "
        << g.vertex_name(ed.range) << "\n";
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto bs = g.blocks_at(v);
    if (bs.empty()) continue;
    out << "partition " << g.vertex_name(v) << " {";
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const Block& b = g.block(bs[i]);
      out << (i ? " ; " : " ") << b.name << " =";
      for (EdgeId e : b.edges) out << ' ' << g.edge(e).name;
    }
    out << " }\n";
  }
  std::size_t in_s = 0;
  for (BlockId x = 0; x < g.block_count(); ++x) in_s += g.block(x).in_s ? 1 : 0;
  if (in_s == g.block_count()) {
    out << "s *\n";
  } else if (in_s == 0) {
    out << "s -\n";
  } else {
    out << "s";
    for (BlockId x = 0; x < g.block_count(); ++x)
      if (g.block(x).in_s) out << ' ' << g.block(x).name;
    out << "\n";
  }
  return out.str();
}

std::string dot_export(const SeparatedGraph& g) {
  static const char* const kPalette[] = {"black",  "red",   "blue",  "darkgreen",
                                         "orange", "purple", "brown", "teal"};
  std::ostringstream out;
  out << "digraph " << quote(g.name()) << " {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << "  " << quote(g.vertex_name(v)) << ";\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto bs = g.blocks_at(v);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const Block& b = g.block(bs[i]);
      const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
      for (EdgeId e : b.edges) {
        const Edge& ed = g.edge(e);
        out << "  " << quote(g.vertex_name(ed.source)) << " -> " << quote(g.vertex_name(ed.range))
            << " [label=" << quote(ed.name + " [" + b.name + "]") << ", color=" << color
            << (b.in_s ? "" : ", style=dashed") << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sepgraph
