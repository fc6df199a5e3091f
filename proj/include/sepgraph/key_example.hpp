#pragma once

#include <string>
#include <vector>

#include "sepgraph/graph.hpp"
#include "sepgraph/homomorphism.hpp"

namespace sepgraph {

// E(m,n): vertices v, w; edges a1..an in block A and b1..bm in block B, all v -> w.
SeparatedGraph make_emn(int m, int n, bool s_all = true);

struct CheckReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure;  // first failing check

  void record(bool holds, const std::string& what) {
    ++checked;
    if (!holds && ok) {
      ok = false;
      failure = what;
    }
  }
};

// The isomorphism pair A = L(E(m,n), C(m,n)) <-> M_{m+1}(L_K(m,n)).
// L_K(m,n) is modeled inside A as the corner wAw with X_ij = b_i* a_j and
// X*_ij = a_j* b_i; matrices carry corner entries and the unit entry w.
// Indices below are 1-based.
template <class Scalar>
class KeyExample {
 public:
  using A = CLAlgebra<Scalar>;
  using M = MatrixAlgebra<A>;
  using Elem = typename A::value_type;
  using Mat = typename M::value_type;

  KeyExample(int m, int n)
      : m_(m),
        n_(n),
        a_(std::make_shared<const SeparatedGraph>(make_emn(m, n))),
        w_(a_.vertex(a_.graph().vertex_id("w"))),
        mat_(a_, static_cast<std::size_t>(m + 1), w_) {}

  KeyExample(const KeyExample&) = delete;
  KeyExample& operator=(const KeyExample&) = delete;

  int m() const { return m_; }
  int n() const { return n_; }
  const A& algebra() const { return a_; }
  const M& matrices() const { return mat_; }

  Elem x(int i, int j) const { return a_.parse(b(i) + "* " + al(j)); }
  Elem xs(int i, int j) const { return a_.parse(al(j) + "* " + b(i)); }
  Mat e(int k, int l) const { return mat_.unit(k - 1, l - 1); }

  GeneratorImages<M> psi() const {
    const SeparatedGraph& g = a_.graph();
    GeneratorImages<M> im;
    im.vertex.resize(2);
    Mat ev = mat_.zero();
    for (int l = 1; l <= m_; ++l) ev = mat_.add(ev, e(l, l));
    im.vertex[g.vertex_id("v")] = ev;
    im.vertex[g.vertex_id("w")] = e(m_ + 1, m_ + 1);
    im.edge.resize(g.edge_count());
    im.ghost.resize(g.edge_count());
    for (int i = 1; i <= n_; ++i) {
      Mat t = mat_.zero(), ts = mat_.zero();
      for (int l = 1; l <= m_; ++l) {
        t = mat_.add(t, mat_.placed(l - 1, m_, x(l, i)));
        ts = mat_.add(ts, mat_.placed(m_, l - 1, xs(l, i)));
      }
      im.edge[g.edge_id(al(i))] = t;
      im.ghost[g.edge_id(al(i))] = ts;
    }
    for (int j = 1; j <= m_; ++j) {
      im.edge[g.edge_id(b(j))] = e(j, m_ + 1);
      im.ghost[g.edge_id(b(j))] = e(m_ + 1, j);
    }
    return im;
  }

  Elem phi_e(int k, int l) const {
    if (k <= m_ && l <= m_) return a_.parse(b(k) + " " + b(l) + "*");
    if (k <= m_) return a_.parse(b(k));
    if (l <= m_) return a_.parse(b(l) + "*");
    return w_;
  }
  Elem phi_x(int i, int j) const {
    std::string s = b(i) + "* " + al(j);
    for (int l = 1; l <= m_; ++l) s += " + " + b(l) + " " + b(i) + "* " + al(j) + " " + b(l) + "*";
    return a_.parse(s);
  }
  Elem phi_xs(int i, int j) const {
    std::string s = al(j) + "* " + b(i);
    for (int l = 1; l <= m_; ++l) s += " + " + b(l) + " " + al(j) + "* " + b(i) + " " + b(l) + "*";
    return a_.parse(s);
  }

  // phi on a matrix whose entries lie in the corner model of L.
  Elem phi(const Mat& mat) const {
    const SeparatedGraph& g = a_.graph();
    Elem out;
    for (int k = 1; k <= m_ + 1; ++k) {
      for (int l = 1; l <= m_ + 1; ++l) {
        const Elem& entry = mat_.at(mat, k - 1, l - 1);
        for (const auto& [word, c] : entry.terms()) {
          Elem img = phi_e(k, l);
          Elem mono = a_.one();
          if (!word.is_vertex()) {
            if (word.length() % 2 != 0) throw GraphError("entry word outside the corner model");
            for (std::size_t p = 0; p < word.length(); p += 2) {
              const Letter s = word[p], t = word[p + 1];
              const std::string first = g.edge(letter_edge(s)).name;
              const std::string second = g.edge(letter_edge(t)).name;
              if (!letter_ghost(s) || letter_ghost(t)) throw GraphError("entry word outside the corner model");
              if (first[0] == 'b' && second[0] == 'a')
                mono = a_.mul(mono, phi_x(std::stoi(first.substr(1)), std::stoi(second.substr(1))));
              else if (first[0] == 'a' && second[0] == 'b')
                mono = a_.mul(mono, phi_xs(std::stoi(second.substr(1)), std::stoi(first.substr(1))));
              else
                throw GraphError("entry word outside the corner model");
            }
          } else if (word.source() != g.vertex_id("w")) {
            throw GraphError("entry word outside the corner model");
          }
          out = out + a_.scale(c, a_.mul(mono, img));
        }
      }
    }
    return a_.reduce(out);
  }

  HomReport verify_psi() const { return verify_hom(a_.graph(), psi(), mat_); }

  // Relations (a) of L, (b) matrix units, (c) commutation, evaluated under phi.
  CheckReport verify_phi() const {
    CheckReport rep;
    const Elem one = a_.one();
    auto delta = [&](bool same) { return same ? one : a_.zero(); };
    for (int i = 1; i <= m_; ++i)
      for (int i2 = 1; i2 <= m_; ++i2) {
        Elem s;
        for (int j = 1; j <= n_; ++j) s = s + a_.mul(phi_x(i, j), phi_xs(i2, j));
        rep.record(a_.equal(s, delta(i == i2)), "(XX*)_" + std::to_string(i) + std::to_string(i2));
      }
    for (int j = 1; j <= n_; ++j)
      for (int j2 = 1; j2 <= n_; ++j2) {
        Elem s;
        for (int i = 1; i <= m_; ++i) s = s + a_.mul(phi_xs(i, j), phi_x(i, j2));
        rep.record(a_.equal(s, delta(j == j2)), "(X*X)_" + std::to_string(j) + std::to_string(j2));
      }
    Elem diag;
    for (int i = 1; i <= m_ + 1; ++i) {
      diag = diag + phi_e(i, i);
      for (int j = 1; j <= m_ + 1; ++j)
        for (int k = 1; k <= m_ + 1; ++k)
          for (int l = 1; l <= m_ + 1; ++l) {
            Elem lhs = a_.mul(phi_e(i, j), phi_e(k, l));
            Elem rhs = j == k ? phi_e(i, l) : a_.zero();
            rep.record(a_.equal(lhs, rhs), "e" + idx(i, j) + " e" + idx(k, l));
          }
    }
    rep.record(a_.equal(diag, one), "sum e_kk = 1");
    for (int k = 1; k <= m_ + 1; ++k)
      for (int l = 1; l <= m_ + 1; ++l)
        for (int i = 1; i <= m_; ++i)
          for (int j = 1; j <= n_; ++j) {
            rep.record(a_.equal(a_.mul(phi_e(k, l), phi_x(i, j)), a_.mul(phi_x(i, j), phi_e(k, l))),
                       "e" + idx(k, l) + " X" + idx(i, j));
            rep.record(a_.equal(a_.mul(phi_e(k, l), phi_xs(i, j)), a_.mul(phi_xs(i, j), phi_e(k, l))),
                       "e" + idx(k, l) + " X*" + idx(i, j));
          }
    return rep;
  }

  // phi(psi(g)) = g for g in {v, w, a_i, a_i*, b_j, b_j*}.
  CheckReport phi_psi() const {
    CheckReport rep;
    const SeparatedGraph& g = a_.graph();
    const auto im = psi();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      rep.record(a_.equal(phi(im.vertex[v]), a_.vertex(v)), g.vertex_name(v));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      rep.record(a_.equal(phi(im.edge[e]), a_.edge(e)), g.edge(e).name);
      rep.record(a_.equal(phi(im.ghost[e]), a_.ghost(e)), g.edge(e).name + "*");
    }
    return rep;
  }

  // psi(phi(g)) = g for g in {e_kl, X_ij, X*_ij}.
  CheckReport psi_phi() const {
    CheckReport rep;
    const auto im = psi();
    auto back = [&](const Elem& x) { return apply_hom(im, mat_, x); };
    for (int k = 1; k <= m_ + 1; ++k)
      for (int l = 1; l <= m_ + 1; ++l) rep.record(mat_.equal(back(phi_e(k, l)), e(k, l)), "e" + idx(k, l));
    for (int i = 1; i <= m_; ++i)
      for (int j = 1; j <= n_; ++j) {
        rep.record(mat_.equal(back(phi_x(i, j)), mat_.diagonal(x(i, j))), "X" + idx(i, j));
        rep.record(mat_.equal(back(phi_xs(i, j)), mat_.diagonal(xs(i, j))), "X*" + idx(i, j));
      }
    return rep;
  }

  // Images f_ij = a_i a_j*, g_ij = b_i b_j*, u = a1 b1*, u* = b1 a1* satisfy
  // the relations of the universal isomorphism between Rf_11 and Rg_11 in vAv.
  CheckReport verify_bergman_images() const {
    CheckReport rep;
    const Elem v = a_.vertex(a_.graph().vertex_id("v"));
    auto f = [&](int i, int j) { return a_.parse(al(i) + " " + al(j) + "*"); };
    auto gg = [&](int i, int j) { return a_.parse(b(i) + " " + b(j) + "*"); };
    auto units = [&](auto unit, int size, const std::string& tag) {
      Elem d;
      for (int i = 1; i <= size; ++i) {
        d = d + unit(i, i);
        for (int j = 1; j <= size; ++j)
          for (int k = 1; k <= size; ++k)
            for (int l = 1; l <= size; ++l)
              rep.record(a_.equal(a_.mul(unit(i, j), unit(k, l)), j == k ? unit(i, l) : a_.zero()),
                         tag + idx(i, j) + " " + tag + idx(k, l));
      }
      rep.record(a_.equal(d, v), "sum " + tag + "_ii = v");
    };
    units(f, n_, "f");
    units(gg, m_, "g");
    const Elem u = a_.parse(al(1) + " " + b(1) + "*");
    const Elem us = a_.parse(b(1) + " " + al(1) + "*");
    rep.record(a_.equal(u, a_.mul(a_.mul(f(1, 1), u), gg(1, 1))), "u = f11 u g11");
    rep.record(a_.equal(us, a_.mul(a_.mul(gg(1, 1), us), f(1, 1))), "u* = g11 u* f11");
    rep.record(a_.equal(a_.mul(u, us), f(1, 1)), "u u* = f11");
    rep.record(a_.equal(a_.mul(us, u), gg(1, 1)), "u* u = g11");
    return rep;
  }

 private:
  static std::string al(int i) { return "a" + std::to_string(i); }
  static std::string b(int j) { return "b" + std::to_string(j); }
  static std::string idx(int i, int j) { return "_" + std::to_string(i) + "," + std::to_string(j); }

  int m_, n_;
  A a_;
  Elem w_;
  M mat_;
};

}  // namespace sepgraph
