#pragma once

#include <string>
#include <vector>

#include "sepgraph/algebra.hpp"
#include "sepgraph/expression.hpp"
#include "sepgraph/morphism.hpp"

namespace sepgraph {

// CL_K(E,C,S) as a target algebra: elements are kept in normal form.
template <class Scalar>
class CLAlgebra {
 public:
  using value_type = Element<Scalar>;
  using scalar_type = Scalar;

  explicit CLAlgebra(GraphPtr g) : sys_(std::move(g)) {}

  const ReductionSystem& system() const { return sys_; }
  const SeparatedGraph& graph() const { return sys_.graph(); }

  value_type zero() const { return {}; }
  value_type one() const { return unit_element<Scalar>(graph()); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type scale(const Scalar& s, const value_type& a) const { return s * a; }
  value_type mul(const value_type& a, const value_type& b) const { return multiply(sys_, a, b); }
  value_type reduce(const value_type& a) const { return normalize(sys_, a); }
  bool is_zero(const value_type& a) const { return normalize(sys_, a).is_zero(); }
  bool equal(const value_type& a, const value_type& b) const { return is_zero(a - b); }
  std::string format(const value_type& a) const { return format_element(graph(), a); }

  value_type vertex(VertexId v) const { return vertex_element<Scalar>(v); }
  value_type edge(EdgeId e) const { return letter_element<Scalar>(graph(), e, false); }
  value_type ghost(EdgeId e) const { return letter_element<Scalar>(graph(), e, true); }
  value_type parse(std::string_view text) const {
    return normalize(sys_, parse_expression<Scalar>(graph(), text));
  }

 private:
  ReductionSystem sys_;
};

// Images of the generators v, e, e* of a source graph, indexed by id.
template <class Target>
struct GeneratorImages {
  std::vector<typename Target::value_type> vertex;
  std::vector<typename Target::value_type> edge;
  std::vector<typename Target::value_type> ghost;
};

struct HomReport {
  bool ok = true;
  std::size_t relations_checked = 0;
  std::string failed_relation;  // empty on success
};

// Evaluates every defining relation (V), (E1), (E2), (SCK1), and (SCK2) for
// blocks in S under the images and stops at the first that fails.
template <class Target>
HomReport verify_hom(const SeparatedGraph& src, const GeneratorImages<Target>& im,
                     const Target& t) {
  HomReport rep;
  if (im.vertex.size() != src.vertex_count() || im.edge.size() != src.edge_count() ||
      im.ghost.size() != src.edge_count())
    throw GraphError("verify_hom: an image is missing");
  auto check = [&](bool holds, const std::string& what) {
    ++rep.relations_checked;
    if (!holds && rep.ok) {
      rep.ok = false;
      rep.failed_relation = what;
    }
    return holds;
  };
  auto vn = [&](VertexId v) { return src.vertex_name(v); };
  auto en = [&](EdgeId e) { return src.edge(e).name; };

  for (VertexId v = 0; v < src.vertex_count(); ++v) {
    for (VertexId w = 0; w < src.vertex_count(); ++w) {
      auto prod = t.mul(im.vertex[v], im.vertex[w]);
      bool holds = v == w ? t.equal(prod, im.vertex[v]) : t.is_zero(prod);
      if (!check(holds, "(V) " + vn(v) + " " + vn(w))) return rep;
    }
  }
  for (EdgeId e = 0; e < src.edge_count(); ++e) {
    const Edge& ed = src.edge(e);
    const auto& s = im.vertex[ed.source];
    const auto& r = im.vertex[ed.range];
    if (!check(t.equal(t.mul(s, im.edge[e]), im.edge[e]), "(E1) s(" + en(e) + ") " + en(e)))
      return rep;
    if (!check(t.equal(t.mul(im.edge[e], r), im.edge[e]), "(E1) " + en(e) + " r(" + en(e) + ")"))
      return rep;
    if (!check(t.equal(t.mul(r, im.ghost[e]), im.ghost[e]), "(E2) r(" + en(e) + ") " + en(e) + "*"))
      return rep;
    if (!check(t.equal(t.mul(im.ghost[e], s), im.ghost[e]), "(E2) " + en(e) + "* s(" + en(e) + ")"))
      return rep;
  }
  for (BlockId x = 0; x < src.block_count(); ++x) {
    const Block& b = src.block(x);
    for (EdgeId e : b.edges) {
      for (EdgeId f : b.edges) {
        auto prod = t.mul(im.ghost[e], im.edge[f]);
        bool holds = e == f ? t.equal(prod, im.vertex[src.edge(e).range]) : t.is_zero(prod);
        if (!check(holds, "(SCK1) " + en(e) + "* " + en(f))) return rep;
      }
    }
    if (b.in_s) {
      auto sum = t.zero();
      for (EdgeId e : b.edges) sum = t.add(sum, t.mul(im.edge[e], im.ghost[e]));
      if (!check(t.equal(sum, im.vertex[b.vertex]), "(SCK2) " + b.name)) return rep;
    }
  }
  return rep;
}

// Linear, multiplicative extension of the generator images to x.
template <class Target, class Scalar>
typename Target::value_type apply_hom(const GeneratorImages<Target>& im, const Target& t,
                                      const Element<Scalar>& x) {
  auto out = t.zero();
  for (const auto& [w, c] : x.terms()) {
    typename Target::value_type term;
    if (w.is_vertex()) {
      term = im.vertex[w.source()];
    } else {
      for (std::size_t i = 0; i < w.length(); ++i) {
        const auto& img = letter_ghost(w[i]) ? im.ghost[letter_edge(w[i])] : im.edge[letter_edge(w[i])];
        term = i == 0 ? img : t.mul(term, img);
      }
    }
    out = t.add(out, t.scale(c, term));
  }
  return t.reduce(out);
}

// v -> phi(v), e -> phi(e), e* -> phi(e)*.
template <class Scalar>
GeneratorImages<CLAlgebra<Scalar>> induced_hom(const GraphMorphism& m, const CLAlgebra<Scalar>& t) {
  GeneratorImages<CLAlgebra<Scalar>> im;
  for (VertexId v = 0; v < m.source->vertex_count(); ++v) im.vertex.push_back(t.vertex(m.vertex_map[v]));
  for (EdgeId e = 0; e < m.source->edge_count(); ++e) {
    im.edge.push_back(t.edge(m.edge_map[e]));
    im.ghost.push_back(t.ghost(m.edge_map[e]));
  }
  return im;
}

// Square matrices over a base algebra.
template <class Base>
class MatrixAlgebra {
 public:
  struct Matrix {
    std::vector<typename Base::value_type> entries;  // row-major
  };
  using value_type = Matrix;
  using scalar_type = typename Base::scalar_type;

  MatrixAlgebra(const Base& base, std::size_t n, typename Base::value_type entry_unit)
      : base_(&base), n_(n), unit_(std::move(entry_unit)) {}

  std::size_t dim() const { return n_; }
  const Base& base() const { return *base_; }
  const typename Base::value_type& entry_unit() const { return unit_; }

  value_type zero() const { return Matrix{std::vector<typename Base::value_type>(n_ * n_, base_->zero())}; }
  // entry_unit placed at (i, j), 0-based
  value_type unit(std::size_t i, std::size_t j) const { return placed(i, j, unit_); }
  value_type placed(std::size_t i, std::size_t j, typename Base::value_type a) const {
    value_type m = zero();
    m.entries[i * n_ + j] = std::move(a);
    return m;
  }
  value_type diagonal(const typename Base::value_type& a) const {
    value_type m = zero();
    for (std::size_t i = 0; i < n_; ++i) m.entries[i * n_ + i] = a;
    return m;
  }
  const typename Base::value_type& at(const value_type& m, std::size_t i, std::size_t j) const {
    return m.entries[i * n_ + j];
  }

  value_type add(const value_type& a, const value_type& b) const {
    value_type m = a;
    for (std::size_t k = 0; k < n_ * n_; ++k) m.entries[k] = base_->add(a.entries[k], b.entries[k]);
    return m;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    value_type m = a;
    for (std::size_t k = 0; k < n_ * n_; ++k) m.entries[k] = base_->sub(a.entries[k], b.entries[k]);
    return m;
  }
  value_type scale(const scalar_type& s, const value_type& a) const {
    value_type m = a;
    for (auto& x : m.entries) x = base_->scale(s, x);
    return m;
  }
  value_type mul(const value_type& a, const value_type& b) const {
    value_type m = zero();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const auto& aik = a.entries[i * n_ + k];
        if (base_->is_zero(aik)) continue;
        for (std::size_t j = 0; j < n_; ++j) {
          const auto& bkj = b.entries[k * n_ + j];
          if (base_->is_zero(bkj)) continue;
          m.entries[i * n_ + j] = base_->add(m.entries[i * n_ + j], base_->mul(aik, bkj));
        }
      }
    return m;
  }
  value_type reduce(const value_type& a) const {
    value_type m = a;
    for (auto& x : m.entries) x = base_->reduce(x);
    return m;
  }
  bool is_zero(const value_type& a) const {
    for (const auto& x : a.entries)
      if (!base_->is_zero(x)) return false;
    return true;
  }
  bool equal(const value_type& a, const value_type& b) const { return is_zero(sub(a, b)); }
  std::string format(const value_type& a) const {
    std::string out;
    for (std::size_t i = 0; i < n_; ++i) {
      out += "[";
      for (std::size_t j = 0; j < n_; ++j) out += (j ? " | " : " ") + base_->format(a.entries[i * n_ + j]);
      out += " ]\n";
    }
    return out;
  }

 private:
  const Base* base_;
  std::size_t n_;
  typename Base::value_type unit_;
};

}  // namespace sepgraph
