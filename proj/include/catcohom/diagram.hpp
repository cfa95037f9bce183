#pragma once
/**
 * Coefficient systems: free finitely generated abelian groups on the
 * objects of a finite category and integer matrices on its morphisms.
 */

#include <memory>
#include <string>
#include <vector>

#include "catcohom/fincat.hpp"
#include "catcohom/int_matrix.hpp"
#include "catcohom/nerve.hpp"

namespace catcohom {

struct Diagram {
  std::string name;
  CatPtr base;
  std::vector<std::size_t> rank;    // per object
  std::vector<IntMatrix> action;    // per morphism, rank(cod) x rank(dom)
  CatPtr zc_origin;                 // set when this is the bimodule ZC of that category

  const IntMatrix& operator[](MorId m) const { return action[m]; }
};

inline void check_diagram(const Diagram& G) {
  const FinCat& C = *G.base;
  if (G.rank.size() != C.num_objects() || G.action.size() != C.num_morphisms())
    throw Error(ErrorKind::ShapeMismatch, "diagram " + G.name + " is not defined on every object and morphism");
  for (MorId f = 0; f < C.num_morphisms(); ++f) {
    const IntMatrix& a = G.action[f];
    if (a.rows() != G.rank[C.cod(f)] || a.cols() != G.rank[C.dom(f)])
      throw Error(ErrorKind::ShapeMismatch, "matrix of '" + C.morphism_name(f) + "' has shape " + IntMatrix::shape(a));
  }
  for (ObjId x = 0; x < C.num_objects(); ++x)
    if (!G.action[C.identity(x)].is_identity())
      throw Error(ErrorKind::NotFunctorial, "identity of '" + C.object_name(x) + "' does not act as the identity");
  for (MorId g = 0; g < C.num_morphisms(); ++g)
    for (MorId f : C.incoming(C.dom(g)))
      if (!(G.action[C.compose(g, f)] == G.action[g] * G.action[f]))
        throw Error(ErrorKind::NotFunctorial,
                    "composite (" + C.morphism_name(g) + ", " + C.morphism_name(f) + ") not respected");
}

inline Diagram make_diagram(std::string name, CatPtr base, std::vector<std::size_t> rank, std::vector<IntMatrix> action) {
  Diagram G{std::move(name), std::move(base), std::move(rank), std::move(action), nullptr};
  check_diagram(G);
  return G;
}

inline Diagram constant_diagram(const CatPtr& C, std::size_t r) {
  Diagram G{"const" + std::to_string(r), C, std::vector<std::size_t>(C->num_objects(), r), {}, nullptr};
  for (MorId f = 0; f < C->num_morphisms(); ++f) G.action.push_back(IntMatrix::identity(r));
  return G;
}

/// Constant rank-1 diagram with identity actions.
inline bool is_constant_z(const Diagram& G) {
  for (std::size_t r : G.rank)
    if (r != 1) return false;
  for (const auto& a : G.action)
    if (!a.is_identity()) return false;
  return true;
}

inline void require_same_base(const FinCat& expected, const FinCat& actual, const std::string& what) {
  if (&expected != &actual && !(expected == actual))
    throw Error(ErrorKind::BaseMismatch, what + ": expected a diagram on " + expected.name() + ", got one on " + actual.name());
}

/// G∘f
inline Diagram pullback_diagram(const FunctorMap& f, const Diagram& G) {
  require_same_base(*f.target, *G.base, "pullback along " + f.name);
  Diagram H{G.name + "." + f.name, f.source, {}, {}, nullptr};
  for (ObjId a : f.obj_map) H.rank.push_back(G.rank[a]);
  for (MorId m : f.mor_map) H.action.push_back(G.action[m]);
  return H;
}

/// ZC on op(C) x C: the free group on C(a,b) at (a,b); (u,v) acts by m ↦ v∘m∘u.
inline Diagram zc_bimodule(const CatPtr& C) {
  auto opC = share(opposite(*C));
  auto P = share(product(opC, C));
  const ProductInfo& info = *P->product_info();
  Diagram G{"Z" + C->name(), P, {}, {}, C};
  for (const auto& [a, b] : info.objects) G.rank.push_back(C->hom(a, b).size());
  for (MorId k = 0; k < P->num_morphisms(); ++k) {
    const auto [u, v] = info.morphisms[k];
    const auto [a, b] = info.objects[P->dom(k)];
    const auto [a2, b2] = info.objects[P->cod(k)];
    auto src = C->hom(a, b), dst = C->hom(a2, b2);
    IntMatrix M(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const MorId image = C->compose(v, C->compose(src[j], u));
      const auto it = std::find(dst.begin(), dst.end(), image);
      M(static_cast<std::size_t>(it - dst.begin()), j) = 1;
    }
    G.action.push_back(std::move(M));
  }
  return G;
}

/// Direct sum, rank-wise.
inline Diagram direct_sum(const Diagram& A, const Diagram& B) {
  require_same_base(*A.base, *B.base, "direct sum");
  Diagram S{A.name + "+" + B.name, A.base, {}, {}, nullptr};
  for (ObjId x = 0; x < A.rank.size(); ++x) S.rank.push_back(A.rank[x] + B.rank[x]);
  for (MorId f = 0; f < A.action.size(); ++f) {
    const IntMatrix& a = A.action[f];
    const IntMatrix& b = B.action[f];
    IntMatrix M(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) M(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) M(a.rows() + i, a.cols() + j) = b(i, j);
    S.action.push_back(std::move(M));
  }
  return S;
}

/**
 * A coefficient system on the simplex category of C, truncated at paths of
 * length max_dim. Only cofaces are stored: coface(n, k, i) maps the value
 * at d_i(σ') to the value at σ', where σ' is path k of degree n.
 */
struct TruncatedSimplexDiagram {
  std::string name;
  CatPtr base;
  std::shared_ptr<const PathTable> paths;  // all paths up to max_dim
  std::vector<std::vector<std::size_t>> value;                 // [n][k]
  std::vector<std::vector<std::vector<IntMatrix>>> cofaces;    // [n][k][i], n >= 1

  std::size_t max_dim() const { return paths->max_degree(); }
};

inline void check_simplex_diagram(const TruncatedSimplexDiagram& G) {
  const PathTable& T = *G.paths;
  for (std::size_t n = 1; n <= T.max_degree(); ++n)
    for (std::size_t k = 0; k < T.count(n); ++k)
      for (std::size_t i = 0; i <= n; ++i) {
        const IntMatrix& m = G.cofaces[n][k][i];
        if (m.rows() != G.value[n][k] || m.cols() != G.value[n - 1][T.face(n, k, i)])
          throw Error(ErrorKind::ShapeMismatch, "coface matrix shape mismatch");
      }
  // ∂^j∂^i = ∂^i∂^{j-1} for i < j, read on values: σ'' of degree n+1
  for (std::size_t n = 2; n <= T.max_degree(); ++n)
    for (std::size_t k = 0; k < T.count(n); ++k)
      for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          const std::size_t kj = T.face(n, k, j), ki = T.face(n, k, i);
          const IntMatrix lhs = G.cofaces[n][k][j] * G.cofaces[n - 1][kj][i];
          const IntMatrix rhs = G.cofaces[n][k][i] * G.cofaces[n - 1][ki][j - 1];
          if (!(lhs == rhs)) throw Error(ErrorKind::NotFunctorial, "cosimplicial identity fails");
        }
}

inline TruncatedSimplexDiagram constant_simplex_diagram(const CatPtr& C, std::size_t max_dim, std::size_t r) {
  TruncatedSimplexDiagram G{"const" + std::to_string(r), C, std::make_shared<const PathTable>(C, max_dim), {}, {}};
  const PathTable& T = *G.paths;
  G.value.resize(max_dim + 1);
  G.cofaces.resize(max_dim + 1);
  for (std::size_t n = 0; n <= max_dim; ++n) {
    G.value[n].assign(T.count(n), r);
    if (n == 0) continue;
    G.cofaces[n].assign(T.count(n), std::vector<IntMatrix>(n + 1, IntMatrix::identity(r)));
  }
  return G;
}

/// Pullback along Δ↓f: value(σ) = G(f(σ)), cofaces likewise.
inline TruncatedSimplexDiagram pullback_simplex_diagram(const FunctorMap& f, const TruncatedSimplexDiagram& G) {
  require_same_base(*f.target, *G.base, "simplex pullback along " + f.name);
  const std::size_t M = G.max_dim();
  TruncatedSimplexDiagram H{G.name + "." + f.name, f.source, std::make_shared<const PathTable>(f.source, M), {}, {}};
  const PathTable& T = *H.paths;
  const PathTable& S = *G.paths;
  H.value.resize(M + 1);
  H.cofaces.resize(M + 1);
  for (std::size_t n = 0; n <= M; ++n)
    for (std::size_t k = 0; k < T.count(n); ++k) {
      const std::size_t img = S.find(map_path(f, T.path(n, k)));
      H.value[n].push_back(G.value[n][img]);
      if (n > 0) H.cofaces[n].push_back(G.cofaces[n][img]);
    }
  return H;
}

}  // namespace catcohom
