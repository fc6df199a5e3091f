#include "sepgraph/monoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sepgraph/lexer.hpp"

namespace sepgraph {

namespace detail {
struct StarCache {
  std::once_flag once;
  bool value = false;
};
}  // namespace detail

// ---------------------------------------------------------------- elements

MonoidElement MonoidElement::generator(GenId g, std::uint32_t k) {
  MonoidElement x;
  if (k > 0) x.terms_.emplace_back(g, k);
  return x;
}

std::uint32_t MonoidElement::count(GenId g) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{g, 0});
  return it != terms_.end() && it->first == g ? it->second : 0;
}

std::uint64_t MonoidElement::size() const {
  std::uint64_t n = 0;
  for (const auto& t : terms_) n += t.second;
  return n;
}

void MonoidElement::add(GenId g, std::uint32_t k) {
  if (k == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{g, 0});
  if (it != terms_.end() && it->first == g)
    it->second += k;
  else
    terms_.insert(it, Term{g, k});
}

bool MonoidElement::remove(GenId g, std::uint32_t k) {
  if (k == 0) return true;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{g, 0});
  if (it == terms_.end() || it->first != g || it->second < k) return false;
  it->second -= k;
  if (it->second == 0) terms_.erase(it);
  return true;
}

bool MonoidElement::contains(const MonoidElement& sub) const {
  auto it = terms_.begin();
  for (const auto& [g, k] : sub.terms_) {
    while (it != terms_.end() && it->first < g) ++it;
    if (it == terms_.end() || it->first != g || it->second < k) return false;
  }
  return true;
}

MonoidElement& MonoidElement::operator+=(const MonoidElement& o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.cbegin();
  auto b = o.terms_.cbegin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MonoidElement MonoidElement::minus(const MonoidElement& b) const {
  MonoidElement out = *this;
  for (const auto& [g, k] : b.terms_)
    if (!out.remove(g, k)) throw std::logic_error("MonoidElement::minus: not a sub-multiset");
  return out;
}

MonoidElement MonoidElement::scaled(std::uint32_t k) const {
  MonoidElement out;
  if (k == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.second *= k;
  return out;
}

std::size_t MonoidElementHash::operator()(const MonoidElement& x) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [g, k] : x.terms()) {
    h ^= (static_cast<std::uint64_t>(g) << 32) | k;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// ------------------------------------------------------------ presentation

MonoidPresentation::MonoidPresentation(GraphPtr g)
    : graph_(std::move(g)), star_(std::make_shared<detail::StarCache>()) {
  const SeparatedGraph& e = *graph_;
  for (VertexId v = 0; v < e.vertex_count(); ++v) names_.push_back(e.vertex_name(v));
  q_of_block_.assign(e.block_count(), kNoId);
  for (BlockId x = 0; x < e.block_count(); ++x) {
    if (e.block(x).in_s) continue;
    q_of_block_[x] = static_cast<GenId>(names_.size());
    block_of_q_.push_back(x);
    names_.push_back("q." + e.block(x).name);
  }
  led_by_.resize(names_.size());
  for (BlockId x = 0; x < e.block_count(); ++x) {
    MonoidElement r;
    for (EdgeId f : e.block(x).edges) r.add(e.edge(f).range);
    MonoidElement rho = r;
    if (q_of_block_[x] != kNoId) rho.add(q_of_block_[x]);
    led_by_[rho.terms().front().first].push_back(x);
    r_.push_back(std::move(r));
    rho_.push_back(std::move(rho));
  }
}

std::optional<GenId> MonoidPresentation::find(std::string_view name) const {
  if (auto v = graph_->find_vertex(name)) return *v;
  if (name.substr(0, 2) == "q.") {
    if (auto x = graph_->find_block(name.substr(2)); x && q_of_block_[*x] != kNoId) return q_of_block_[*x];
  }
  return std::nullopt;
}

bool MonoidPresentation::star_holds() const {
  std::call_once(star_->once, [this] { star_->value = check_star(*this).overall == StarStatus::Pass; });
  return star_->value;
}

MonoidPresentation presentation_of(GraphPtr g) { return MonoidPresentation(std::move(g)); }

namespace {

// Sum of `[k] name` terms. Also accepts `k * name` and a glued `2w`.
std::vector<std::pair<std::size_t, std::uint32_t>> parse_sum(
    const std::vector<Token>& toks, std::size_t& i, std::size_t end,
    const std::function<std::optional<std::size_t>(std::string_view)>& lookup) {
  std::vector<std::pair<std::size_t, std::uint32_t>> out;
  auto fail = [&](const std::string& msg) {
    const Token& t = i < end ? toks[i] : toks[end - 1];
    throw ParseError(msg, t.line, i < end ? t.column : t.column + static_cast<int>(t.text.size()));
  };
  if (i >= end) {
    if (toks.empty()) throw ParseError("empty monoid element", 1, 1);
    fail("expected a monoid element");
  }
  if (i + 1 == end && toks[i].text == "0") {
    ++i;
    return out;
  }
  while (true) {
    if (i >= end) fail("expected a generator");
    std::uint32_t k = 1;
    std::string name;
    const Token& t = toks[i];
    if (t.kind != TokenKind::Ident) fail("expected a generator");
    if (is_integer(t.text)) {
      k = static_cast<std::uint32_t>(std::stoul(t.text));
      ++i;
      if (i < end && toks[i].text == "*") ++i;
      if (i >= end || toks[i].kind != TokenKind::Ident) fail("expected a generator");
      name = toks[i].text;
    } else {
      name = t.text;
      if (!lookup(name)) {
        std::size_t d = 0;
        while (d < name.size() && std::isdigit(static_cast<unsigned char>(name[d]))) ++d;
        if (d > 0 && d < name.size() && lookup(name.substr(d))) {
          k = static_cast<std::uint32_t>(std::stoul(name.substr(0, d)));
          name = name.substr(d);
        }
      }
    }
    auto id = lookup(name);
    if (!id) fail("unknown generator '" + name + "'");
    if (k > 0) out.emplace_back(*id, k);
    ++i;
    if (i >= end || toks[i].text != "+") break;
    ++i;
  }
  return out;
}

std::vector<Token> tokenize_all(std::string_view text) {
  std::vector<Token> toks;
  std::size_t start = 0;
  int line = 1;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto part = tokenize_line(text.substr(start, nl - start), line++);
    toks.insert(toks.end(), part.begin(), part.end());
    start = nl + 1;
  }
  return toks;
}

}  // namespace

MonoidElement parse_monoid_element(const MonoidPresentation& p, std::string_view text) {
  auto toks = tokenize_all(text);
  std::size_t i = 0;
  auto terms = parse_sum(toks, i, toks.size(), [&](std::string_view n) -> std::optional<std::size_t> {
    if (auto g = p.find(n)) return *g;
    return std::nullopt;
  });
  if (i != toks.size()) throw ParseError("expected '+'", toks[i].line, toks[i].column);
  MonoidElement x;
  for (auto [g, k] : terms) x.add(static_cast<GenId>(g), k);
  return x;
}

std::string format_monoid_element(const MonoidPresentation& p, const MonoidElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [g, k] : x.terms()) {
    if (!out.empty()) out += " + ";
    if (k != 1) out += std::to_string(k) + " ";
    out += p.name(g);
  }
  return out;
}

std::vector<std::string> format_relations(const MonoidPresentation& p) {
  std::vector<std::string> out;
  const SeparatedGraph& g = p.graph();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (BlockId x : g.blocks_at(v)) out.push_back(g.vertex_name(v) + " = " + format_monoid_element(p, p.rho(x)));
  return out;
}

// ------------------------------------------------------------------- steps

std::string format_step(const MonoidPresentation& p, const RewriteStep& s) {
  const Block& b = p.graph().block(s.block);
  return std::string(s.direction == StepDirection::Forward ? "forward " : "reverse ") +
         p.graph().vertex_name(b.vertex) + " " + b.name;
}

std::optional<MonoidElement> apply_step(const MonoidPresentation& p, const MonoidElement& x,
                                        const RewriteStep& s) {
  if (s.block >= p.graph().block_count()) return std::nullopt;
  const VertexId v = p.graph().block(s.block).vertex;
  MonoidElement out = x;
  if (s.direction == StepDirection::Forward) {
    if (!out.remove(v)) return std::nullopt;
    out += p.rho(s.block);
  } else {
    if (!out.contains(p.rho(s.block))) return std::nullopt;
    out = out.minus(p.rho(s.block));
    out.add(v);
  }
  return out;
}

std::optional<MonoidElement> replay(const MonoidPresentation& p, MonoidElement x,
                                    std::span<const RewriteStep> trace) {
  for (const auto& s : trace) {
    auto next = apply_step(p, x, s);
    if (!next) return std::nullopt;
    x = std::move(*next);
  }
  return x;
}

std::vector<ForwardStep> forward_steps(const MonoidPresentation& p, const MonoidElement& x) {
  std::vector<ForwardStep> out;
  for (const auto& [g, k] : x.terms()) {
    if (!p.is_vertex(g)) continue;
    for (BlockId b : p.graph().blocks_at(g)) {
      MonoidElement y = x;
      y.remove(g);
      y += p.rho(b);
      out.push_back({b, std::move(y)});
    }
  }
  return out;
}

std::vector<ForwardStep> reverse_steps(const MonoidPresentation& p, const MonoidElement& x) {
  std::vector<ForwardStep> out;
  for (const auto& [g, k] : x.terms()) {
    for (BlockId b : p.blocks_led_by(g)) {
      if (!x.contains(p.rho(b))) continue;
      MonoidElement y = x.minus(p.rho(b));
      y.add(p.graph().block(b).vertex);
      out.push_back({b, std::move(y)});
    }
  }
  return out;
}

MonoidElement parallel_step(const MonoidPresentation& p, const MonoidElement& x,
                            std::span<const BlockId> choices) {
  MonoidElement rest = x, added;
  for (BlockId b : choices) {
    if (b >= p.graph().block_count()) throw GraphError("parallel_step: unknown block");
    const VertexId v = p.graph().block(b).vertex;
    if (!rest.remove(v))
      throw GraphError("parallel_step: no free occurrence of '" + p.graph().vertex_name(v) + "'");
    added += p.rho(b);
  }
  return rest + added;
}

std::optional<std::vector<MonoidElement>> parallel_images(const MonoidPresentation& p,
                                                          const MonoidElement& x, std::size_t cap) {
  const SeparatedGraph& g = p.graph();
  // the part no ~>_1 step touches
  MonoidElement fixed;
  for (const auto& [gen, k] : x.terms())
    if (!p.is_vertex(gen) || g.blocks_at(gen).empty()) fixed.add(gen, k);
  std::vector<MonoidElement> partial{fixed};
  for (const auto& [gen, k] : x.terms()) {
    if (!p.is_vertex(gen) || g.blocks_at(gen).empty()) continue;
    const auto blocks = g.blocks_at(gen);
    // all ways to send the k copies to "stay" or to one of the blocks
    std::vector<MonoidElement> contrib;
    std::vector<std::uint32_t> n(blocks.size(), 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
      if (i == blocks.size()) {
        MonoidElement c = MonoidElement::generator(gen, left);
        for (std::size_t j = 0; j < blocks.size(); ++j) c += p.rho(blocks[j]).scaled(n[j]);
        contrib.push_back(std::move(c));
        return;
      }
      for (std::uint32_t t = 0; t <= left; ++t) {
        n[i] = t;
        rec(i + 1, left - t);
        if (contrib.size() > cap) return;
      }
      n[i] = 0;
    };
    rec(0, k);
    if (contrib.size() > cap || partial.size() * contrib.size() > cap) return std::nullopt;
    std::set<MonoidElement> next;
    for (const auto& a : partial)
      for (const auto& c : contrib) next.insert(a + c);
    partial.assign(next.begin(), next.end());
  }
  std::sort(partial.begin(), partial.end());
  partial.erase(std::unique(partial.begin(), partial.end()), partial.end());
  return partial;
}

// ---------------------------------------------------------------------- (*)

std::string to_string(StarStatus s) {
  switch (s) {
    case StarStatus::Pass:
      return "PASS";
    case StarStatus::Fail:
      return "FAIL";
    case StarStatus::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

StarPairReport check_star_pair(const MonoidPresentation& p, BlockId x, BlockId y, std::size_t image_cap) {
  StarPairReport rep{p.graph().block(x).vertex, x, y, StarStatus::Unknown, std::nullopt};
  if (p.graph().block(y).vertex != rep.vertex) throw GraphError("check_star_pair: blocks at different vertices");
  auto ix = parallel_images(p, p.rho(x), image_cap);
  auto iy = parallel_images(p, p.rho(y), image_cap);
  if (!ix || !iy) return rep;
  // both sorted: the first common element is the least one
  auto a = ix->begin(), b = iy->begin();
  while (a != ix->end() && b != iy->end()) {
    if (*a < *b)
      ++a;
    else if (*b < *a)
      ++b;
    else {
      rep.status = StarStatus::Pass;
      rep.gamma = *a;
      return rep;
    }
  }
  rep.status = StarStatus::Fail;
  return rep;
}

StarReport check_star(const MonoidPresentation& p, std::size_t image_cap) {
  StarReport rep;
  const SeparatedGraph& g = p.graph();
  bool unknown = false, fail = false;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto blocks = g.blocks_at(v);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        rep.pairs.push_back(check_star_pair(p, blocks[i], blocks[j], image_cap));
        fail |= rep.pairs.back().status == StarStatus::Fail;
        unknown |= rep.pairs.back().status == StarStatus::Unknown;
      }
  }
  rep.overall = fail ? StarStatus::Fail : unknown ? StarStatus::Unknown : StarStatus::Pass;
  return rep;
}

// ------------------------------------------------------------------ budget

Budget Budget::parse(std::string_view text, Budget base) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("budget item without '=': " + std::string(item));
    const std::string key(item.substr(0, eq)), val(item.substr(eq + 1));
    if (!is_integer(val) || std::stoull(val) == 0)
      throw std::invalid_argument("budget value must be a positive integer: " + std::string(item));
    const auto n = std::stoull(val);
    if (key == "size")
      base.max_size = n;
    else if (key == "frontier" || key == "states")
      base.max_states = n;
    else if (key == "depth")
      base.max_depth = n;
    else
      throw std::invalid_argument("unknown budget key '" + key + "'");
    pos = comma + 1;
  }
  return base;
}

Budget Budget::parse(std::string_view text) { return parse(text, Budget{}); }

Budget Budget::from_env() { return from_env(Budget{}); }

Budget Budget::from_env(Budget base) {
  if (const char* env = std::getenv("SEPGRAPH_BUDGET"); env && *env) return parse(env, base);
  return base;
}

std::string to_string(EqVerdict v) {
  switch (v) {
    case EqVerdict::Equal:
      return "EQUAL";
    case EqVerdict::NotEqual:
      return "NOT_EQUAL";
    case EqVerdict::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

// ----------------------------------------------------------- order ideals

AdmissiblePair generated_pair(const MonoidPresentation& p, const MonoidElement& x) {
  const SeparatedGraph& g = p.graph();
  std::vector<char> in(g.vertex_count(), 0);
  std::vector<BlockId> qs;
  for (const auto& [gen, k] : x.terms()) {
    if (p.is_vertex(gen))
      in[gen] = 1;
    else
      qs.push_back(p.block_of_q(gen));
  }
  auto ranges_inside = [&](BlockId b) {
    for (EdgeId e : g.block(b).edges)
      if (!in[g.edge(e).range]) return false;
    return true;
  };
  bool changed = true;
  while (changed) {
    VertexSet cur;
    for (VertexId v = 0; v < in.size(); ++v)
      if (in[v]) cur.push_back(v);
    for (VertexId v : hereditary_closure(g, cur)) in[v] = 1;
    changed = false;
    for (BlockId b = 0; b < g.block_count(); ++b) {
      const VertexId v = g.block(b).vertex;
      if (in[v]) continue;
      // v = r(X) lies in the ideal for X in S; v = r(X) + q'_X once q'_X does
      const bool q_in = std::find(qs.begin(), qs.end(), b) != qs.end();
      if ((g.block(b).in_s || q_in) && ranges_inside(b)) {
        in[v] = 1;
        changed = true;
      }
    }
  }
  AdmissiblePair out;
  for (VertexId v = 0; v < in.size(); ++v)
    if (in[v]) out.h.push_back(v);
  for (BlockId b : qs)
    if (!in[g.block(b).vertex]) out.g.push_back(b);
  std::sort(out.g.begin(), out.g.end());
  out.g.erase(std::unique(out.g.begin(), out.g.end()), out.g.end());
  return out;
}

// ------------------------------------------------------------------ search

namespace {

struct Node {
  MonoidElement elem;
  std::int64_t parent;
  RewriteStep step;
};

struct Side {
  std::vector<Node> nodes;
  std::unordered_map<MonoidElement, std::size_t, MonoidElementHash> index;
  std::size_t frontier_begin = 0;
  std::size_t depth = 0;
  bool truncated = false;
  bool exhausted = false;
  bool stopped = false;

  std::size_t frontier_size() const { return nodes.size() - frontier_begin; }

  std::vector<RewriteStep> trace_to(std::size_t i) const {
    std::vector<RewriteStep> out;
    for (std::int64_t j = static_cast<std::int64_t>(i); nodes[j].parent >= 0; j = nodes[j].parent)
      out.push_back(nodes[j].step);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

struct SearchOutcome {
  bool met = false;
  MonoidElement gamma;
  std::vector<RewriteStep> trace_a, trace_b;
  int exhausted_side = -1;
  std::vector<MonoidElement> exhausted_class;
  std::size_t states = 0;
};

SearchOutcome bidirectional(const MonoidPresentation& p, const MonoidElement& a, const MonoidElement& b,
                            bool with_reverse, const Budget& budget) {
  SearchOutcome out;
  Side sides[2];
  sides[0].nodes.push_back({a, -1, {}});
  sides[0].index.emplace(a, 0);
  sides[1].nodes.push_back({b, -1, {}});
  sides[1].index.emplace(b, 0);
  std::size_t total = 2;
  auto finish_meet = [&](int s, std::size_t mine, std::size_t theirs) {
    out.met = true;
    out.gamma = sides[s].nodes[mine].elem;
    auto t_mine = sides[s].trace_to(mine);
    auto t_theirs = sides[1 - s].trace_to(theirs);
    out.trace_a = s == 0 ? t_mine : t_theirs;
    out.trace_b = s == 0 ? t_theirs : t_mine;
  };
  if (a == b) {
    finish_meet(0, 0, 0);
    out.states = total;
    return out;
  }
  while (true) {
    int s = -1;
    for (int c = 0; c < 2; ++c) {
      if (sides[c].stopped) continue;
      if (s < 0 || sides[c].frontier_size() < sides[s].frontier_size()) s = c;
    }
    if (s < 0) break;
    Side& side = sides[s];
    Side& other = sides[1 - s];
    if (side.depth >= budget.max_depth) {
      side.truncated = true;
      side.stopped = true;
      continue;
    }
    const std::size_t begin = side.frontier_begin, end = side.nodes.size();
    side.frontier_begin = end;
    ++side.depth;
    bool out_of_states = false;
    for (std::size_t i = begin; i < end && !out_of_states; ++i) {
      auto expand = [&](std::vector<ForwardStep> moves, StepDirection dir) {
        for (auto& m : moves) {
          if (m.result.size() > budget.max_size) {
            side.truncated = true;
            continue;
          }
          if (side.index.count(m.result)) continue;
          if (total >= budget.max_states) {
            side.truncated = true;
            out_of_states = true;
            return false;
          }
          side.nodes.push_back({m.result, static_cast<std::int64_t>(i), {dir, m.block}});
          side.index.emplace(side.nodes.back().elem, side.nodes.size() - 1);
          ++total;
          if (auto it = other.index.find(m.result); it != other.index.end()) {
            finish_meet(s, side.nodes.size() - 1, it->second);
            return true;
          }
        }
        return false;
      };
      const MonoidElement cur = side.nodes[i].elem;
      if (expand(forward_steps(p, cur), StepDirection::Forward)) {
        out.states = total;
        return out;
      }
      if (with_reverse && expand(reverse_steps(p, cur), StepDirection::Reverse)) {
        out.states = total;
        return out;
      }
    }
    if (out_of_states) break;
    if (side.frontier_size() == 0) {
      side.stopped = true;
      if (!side.truncated) {
        side.exhausted = true;
        if (with_reverse) {
          out.exhausted_side = s;
          for (const auto& n : side.nodes) out.exhausted_class.push_back(n.elem);
          std::sort(out.exhausted_class.begin(), out.exhausted_class.end());
          break;
        }
      }
    }
  }
  out.states = total;
  return out;
}

void check_generators(const MonoidPresentation& p, const MonoidElement& x) {
  for (const auto& [g, k] : x.terms())
    if (g >= p.generator_count()) throw GraphError("generator not in presentation");
}

}  // namespace

EqResult forward_meet(const MonoidPresentation& p, const MonoidElement& a, const MonoidElement& b,
                      const Budget& budget) {
  check_generators(p, a);
  check_generators(p, b);
  EqResult res;
  auto s = bidirectional(p, a, b, false, budget);
  res.states = s.states;
  if (s.met) {
    res.verdict = EqVerdict::Equal;
    res.phase = 1;
    res.gamma = std::move(s.gamma);
    res.trace_a = std::move(s.trace_a);
    res.trace_b = std::move(s.trace_b);
  }
  return res;
}

EqResult monoid_eq(const MonoidPresentation& p, const MonoidElement& a, const MonoidElement& b,
                   const EqOptions& opt) {
  check_generators(p, a);
  check_generators(p, b);
  EqResult res;
  if (a == b) {
    res.verdict = EqVerdict::Equal;
    res.phase = 1;
    res.gamma = a;
    return res;
  }
  if (opt.use_pair_invariant) {
    res.pair_a = generated_pair(p, a);
    res.pair_b = generated_pair(p, b);
    if (res.pair_a != res.pair_b) {
      res.verdict = EqVerdict::NotEqual;
      res.certificate = Certificate::PairMismatch;
      return res;
    }
  }
  const bool star = opt.star_holds ? *opt.star_holds : p.star_holds();
  std::size_t states = 0;
  if (opt.phase1 && star) {
    EqResult r = forward_meet(p, a, b, opt.budget);
    states += r.states;
    if (r.verdict == EqVerdict::Equal) {
      r.pair_a = res.pair_a;
      r.pair_b = res.pair_b;
      return r;
    }
  }
  if (opt.phase2) {
    auto s = bidirectional(p, a, b, true, opt.budget);
    states += s.states;
    res.states = states;
    if (s.met) {
      res.verdict = EqVerdict::Equal;
      res.phase = 2;
      res.gamma = std::move(s.gamma);
      res.trace_a = std::move(s.trace_a);
      res.trace_b = std::move(s.trace_b);
      return res;
    }
    if (s.exhausted_side >= 0) {
      res.verdict = EqVerdict::NotEqual;
      res.certificate = Certificate::ClassExhausted;
      res.exhausted_side = s.exhausted_side;
      res.exhausted_class = std::move(s.exhausted_class);
      return res;
    }
  }
  res.states = states;
  return res;
}

// -------------------------------------------------------------- refinement

Refinement refine(const MonoidPresentation& p, const MonoidElement& a1, const MonoidElement& a2,
                  const MonoidElement& b1, const MonoidElement& b2, const Budget& budget) {
  Refinement out;
  EqResult meet = forward_meet(p, a1 + a2, b1 + b2, budget);
  if (meet.verdict != EqVerdict::Equal) {
    out.reason = "no common forward descendant of the two sums within budget";
    return out;
  }
  out.gamma = meet.gamma;
  // each rewritten occurrence goes to the first summand that holds it
  auto divide = [&](MonoidElement x1, MonoidElement x2, const std::vector<RewriteStep>& trace) {
    for (const auto& s : trace) {
      const VertexId v = p.graph().block(s.block).vertex;
      MonoidElement& host = x1.count(v) > 0 ? x1 : x2;
      host.remove(v);
      host += p.rho(s.block);
    }
    return std::pair{std::move(x1), std::move(x2)};
  };
  std::tie(out.a1p, out.a2p) = divide(a1, a2, meet.trace_a);
  std::tie(out.b1p, out.b2p) = divide(b1, b2, meet.trace_b);
  // refinement in the free monoid, generator by generator
  for (const auto& [g, total] : out.gamma.terms()) {
    const std::uint32_t x1 = out.a1p.count(g), x2 = out.a2p.count(g);
    const std::uint32_t y1 = out.b1p.count(g);
    const std::uint32_t c11 = std::min(x1, y1);
    const std::uint32_t c12 = x1 - c11;
    const std::uint32_t c21 = y1 - c11;
    const std::uint32_t c22 = x2 - c21;
    out.g11.add(g, c11);
    out.g12.add(g, c12);
    out.g21.add(g, c21);
    out.g22.add(g, c22);
  }
  out.found = true;
  EqOptions opt;
  opt.budget = budget;
  out.verified = monoid_eq(p, a1, out.g11 + out.g12, opt).verdict == EqVerdict::Equal &&
                 monoid_eq(p, a2, out.g21 + out.g22, opt).verdict == EqVerdict::Equal &&
                 monoid_eq(p, b1, out.g11 + out.g21, opt).verdict == EqVerdict::Equal &&
                 monoid_eq(p, b2, out.g12 + out.g22, opt).verdict == EqVerdict::Equal;
  return out;
}

// ---------------------------------------------------------------------- pi

PiResult pi_homomorphism(const MonoidPresentation& p, const AdmissiblePair& pair, const Budget& budget) {
  const SeparatedGraph& g = p.graph();
  if (!is_admissible(g, pair)) throw GraphError("pair is not admissible: " + format_pair(g, pair));
  std::vector<char> in_h(g.vertex_count(), 0);
  for (VertexId v : pair.h) in_h[v] = 1;
  std::vector<char> in_g(g.block_count(), 0);
  for (BlockId x : pair.g) in_g[x] = 1;

  GraphBuilder qb(g.name() + "/H");
  qb.s_none();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!in_h[v]) qb.vertex(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!in_h[ed.range]) qb.edge(ed.name, g.vertex_name(ed.source), g.vertex_name(ed.range));
  }
  for (BlockId x = 0; x < g.block_count(); ++x) {
    const Block& b = g.block(x);
    if (in_h[b.vertex]) continue;
    std::vector<std::string> names;
    for (EdgeId e : block_mod(g, x, pair.h)) names.push_back(g.edge(e).name);
    if (names.empty()) continue;
    qb.block(g.vertex_name(b.vertex), b.name, names);
    if (b.in_s || in_g[x]) qb.s_add(b.name);
  }
  PiResult res;
  res.quotient = qb.build_shared();
  MonoidPresentation qp(res.quotient);
  auto qgen = [&](const std::string& name) { return MonoidElement::generator(*qp.find(name)); };

  for (GenId gen = 0; gen < p.generator_count(); ++gen) {
    MonoidElement img;
    if (p.is_vertex(gen)) {
      if (!in_h[gen]) img = qgen(g.vertex_name(gen));
    } else {
      const BlockId x = p.block_of_q(gen);
      const VertexId v = g.block(x).vertex;
      if (in_h[v] || in_g[x]) {
        // zero
      } else if (block_mod(g, x, pair.h).empty()) {
        img = qgen(g.vertex_name(v));
      } else {
        img = qgen("q." + g.block(x).name);
      }
    }
    if (img.is_zero()) res.killed.push_back(gen);
    res.image.push_back(std::move(img));
  }
  for (VertexId v : pair.h) res.expected_killed.push_back(v);
  for (BlockId x = 0; x < g.block_count(); ++x)
    if (!g.block(x).in_s && (in_g[x] || in_h[g.block(x).vertex])) res.expected_killed.push_back(p.q_of(x));
  std::sort(res.expected_killed.begin(), res.expected_killed.end());

  auto map = [&](const MonoidElement& x) {
    MonoidElement out;
    for (const auto& [gen, k] : x.terms()) out += res.image[gen].scaled(k);
    return out;
  };
  EqOptions opt;
  opt.budget = budget;
  for (BlockId x = 0; x < g.block_count(); ++x) {
    const VertexId v = g.block(x).vertex;
    const MonoidElement lhs = res.image[v];
    const MonoidElement rhs = map(p.rho(x));
    ++res.relations_checked;
    const EqResult r = monoid_eq(qp, lhs, rhs, opt);
    if (r.verdict == EqVerdict::Equal) continue;
    const std::string what = g.vertex_name(v) + " = " + format_monoid_element(p, p.rho(x));
    if (r.verdict == EqVerdict::Unknown) {
      res.relations_unknown = true;
      if (res.failed_relation.empty()) res.failed_relation = what + " (unknown)";
    } else if (res.relations_ok) {
      res.relations_ok = false;
      res.failed_relation = what;
    }
  }
  return res;
}

// ---------------------------------------------------- conical presentations

ConicalPresentation parse_presentation(std::string_view text) {
  ConicalPresentation cp;
  std::size_t start = 0;
  int line_no = 0;
  auto lookup = [&](std::string_view n) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < cp.generators.size(); ++j)
      if (cp.generators[j] == n) return j;
    return std::nullopt;
  };
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    auto toks = tokenize_line(text.substr(start, nl - start), line_no);
    start = nl + 1;
    if (toks.empty()) continue;
    if (toks[0].text == "generators") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::Ident || is_integer(toks[i].text))
          throw ParseError("expected a generator name", line_no, toks[i].column);
        if (lookup(toks[i].text)) throw ParseError("duplicate generator '" + toks[i].text + "'", line_no, toks[i].column);
        cp.generators.push_back(toks[i].text);
      }
    } else if (toks[0].text == "relation") {
      std::size_t eq = 1;
      while (eq < toks.size() && toks[eq].text != "=") ++eq;
      if (eq == toks.size()) throw ParseError("expected '='", line_no, toks.back().column);
      std::size_t i = 1;
      auto lhs = parse_sum(toks, i, eq, lookup);
      if (i != eq) throw ParseError("expected '='", line_no, toks[i].column);
      i = eq + 1;
      auto rhs = parse_sum(toks, i, toks.size(), lookup);
      if (i != toks.size()) throw ParseError("trailing input", line_no, toks[i].column);
      std::vector<std::uint32_t> a(cp.generators.size(), 0), b(cp.generators.size(), 0);
      for (auto [j, k] : lhs) a[j] += k;
      for (auto [j, k] : rhs) b[j] += k;
      cp.relations.emplace_back(std::move(a), std::move(b));
    } else {
      throw ParseError("expected 'generators' or 'relation'", line_no, toks[0].column);
    }
  }
  return cp;
}

SeparatedGraph presentation_to_graph(const ConicalPresentation& cp) {
  if (cp.generators.empty()) throw GraphError("presentation without generators");
  GraphBuilder b("presented");
  b.s_all();
  std::set<std::string> taken(cp.generators.begin(), cp.generators.end());
  for (const auto& x : cp.generators) b.vertex(x);
  for (std::size_t i = 0; i < cp.relations.size(); ++i) {
    const auto& [a, c] = cp.relations[i];
    auto nonzero = [](const std::vector<std::uint32_t>& row) {
      return std::any_of(row.begin(), row.end(), [](std::uint32_t k) { return k > 0; });
    };
    if (!nonzero(a) || !nonzero(c))
      throw GraphError("relation " + std::to_string(i + 1) + " has an all-zero side");
    std::string u = "u" + std::to_string(i + 1);
    while (taken.count(u)) u += "'";
    taken.insert(u);
    b.vertex(u);
    const std::string side_name[2] = {"a", "b"};
    const std::vector<std::uint32_t>* rows[2] = {&a, &c};
    for (int side = 0; side < 2; ++side) {
      std::vector<std::string> edges;
      for (std::size_t j = 0; j < cp.generators.size(); ++j)
        for (std::uint32_t t = 1; t <= (*rows[side])[j]; ++t) {
          edges.push_back(u + "." + side_name[side] + "." + cp.generators[j] + "." + std::to_string(t));
          b.edge(edges.back(), u, cp.generators[j]);
        }
      b.block(u, "X" + std::to_string(i + 1) + "_" + std::to_string(side + 1), edges);
    }
  }
  return b.build();
}

}  // namespace sepgraph
