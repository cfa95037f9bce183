#pragma once
/**
 * Colimits and left Kan extensions of free-valued diagrams, computed
 * through comma categories.
 */

#include <map>
#include <optional>
#include <vector>

#include "catcohom/cohomology.hpp"
#include "catcohom/diagram.hpp"
#include "catcohom/fincat.hpp"
#include "catcohom/homology.hpp"
#include "catcohom/smith.hpp"

namespace catcohom {

/// ℤ^rows / Im(A) with coordinates: projection(x) gives generator coordinates, section lifts them.
struct CokernelPresentation {
  AbGroup group;
  IntMatrix projection;  // generators x rows
  IntMatrix section;     // rows x generators
};

inline CokernelPresentation cokernel_presentation(const IntMatrix& A) {
  const SnfResult snf = smith_normal_form(A);
  const std::size_t rows = A.rows(), d = std::min(A.rows(), A.cols());
  std::vector<std::size_t> free_idx, torsion_idx;
  for (std::size_t i = 0; i < rows; ++i) {
    const Integer s = i < d ? snf.S(i, i) : Integer(0);
    if (s == 0) free_idx.push_back(i);
    else if (s != 1) torsion_idx.push_back(i);
  }
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), torsion_idx.begin(), torsion_idx.end());
  CokernelPresentation P;
  P.group.betti = free_idx.size();
  for (std::size_t i : torsion_idx) P.group.torsion.push_back(snf.S(i, i));
  P.projection = IntMatrix(order.size(), rows);
  P.section = IntMatrix(rows, order.size());
  for (std::size_t g = 0; g < order.size(); ++g)
    for (std::size_t r = 0; r < rows; ++r) {
      P.projection(g, r) = snf.U(order[g], r);
      P.section(r, g) = snf.U_inv(r, order[g]);
    }
  return P;
}

/// Projection followed by reduction modulo the torsion orders.
inline IntMatrix reduce_rows(IntMatrix M, const AbGroup& g) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const Integer t = g.modulus(i);
    if (t == 0) continue;
    for (std::size_t j = 0; j < M.cols(); ++j) mpz_fdiv_r(M(i, j).get_mpz_t(), M(i, j).get_mpz_t(), t.get_mpz_t());
  }
  return M;
}

struct Colimit {
  AbGroup group;
  std::vector<IntMatrix> cocone;  // per object: generators x rank
  CokernelPresentation presentation;
  std::vector<std::size_t> offset;  // block start of each object in ⊕ G(a)
};

/// coker(⊕_{α: a→b} G(a) -> ⊕_a G(a)), x at α ↦ G(α)x at b minus x at a.
inline Colimit colimit(const Diagram& G) {
  const FinCat& C = *G.base;
  Colimit out;
  std::size_t rows = 0;
  for (ObjId a = 0; a < C.num_objects(); ++a) {
    out.offset.push_back(rows);
    rows += G.rank[a];
  }
  std::size_t cols = 0;
  for (MorId m = 0; m < C.num_morphisms(); ++m)
    if (!C.is_identity(m)) cols += G.rank[C.dom(m)];
  IntMatrix A(rows, cols);
  std::size_t c = 0;
  for (MorId m = 0; m < C.num_morphisms(); ++m) {
    if (C.is_identity(m)) continue;
    const ObjId a = C.dom(m), b = C.cod(m);
    for (std::size_t j = 0; j < G.rank[a]; ++j, ++c) {
      for (std::size_t i = 0; i < G.rank[b]; ++i) A(out.offset[b] + i, c) += G.action[m](i, j);
      A(out.offset[a] + j, c) -= 1;
    }
  }
  out.presentation = cokernel_presentation(A);
  out.group = out.presentation.group;
  for (ObjId a = 0; a < C.num_objects(); ++a) {
    IntMatrix leg(out.group.num_generators(), G.rank[a]);
    for (std::size_t g = 0; g < leg.rows(); ++g)
      for (std::size_t j = 0; j < G.rank[a]; ++j) leg(g, j) = out.presentation.projection(g, out.offset[a] + j);
    out.cocone.push_back(reduce_rows(std::move(leg), out.group));
  }
  return out;
}

/// Per target object: comma category f↓d with the colimit of F∘Q_d.
struct LanData {
  std::vector<CommaCategory> commas;
  std::vector<Colimit> colimits;
};

inline LanData lan_data(const FunctorMap& f, const Diagram& F) {
  require_same_base(*f.source, *F.base, "Kan extension along " + f.name);
  LanData L;
  for (ObjId d = 0; d < f.target->num_objects(); ++d) {
    L.commas.push_back(comma(f, d, CommaSide::Left));
    L.colimits.push_back(colimit(pullback_diagram(L.commas.back().projection, F)));
  }
  return L;
}

/// Lan_f F; values are free, so NonFreeValue is raised on torsion.
inline Diagram lan(const FunctorMap& f, const Diagram& F, const LanData& L) {
  const FinCat& D = *f.target;
  Diagram out{"Lan(" + f.name + "," + F.name + ")", f.target, {}, {}, nullptr};
  for (ObjId d = 0; d < D.num_objects(); ++d) {
    const AbGroup& g = L.colimits[d].group;
    if (!g.torsion.empty())
      throw Error(ErrorKind::NonFreeValue, "Kan extension value at " + D.object_name(d) + " is " + g.to_string());
    out.rank.push_back(g.betti);
  }
  for (MorId m = 0; m < D.num_morphisms(); ++m) {
    const ObjId d = D.dom(m), e = D.cod(m);
    const CommaCategory& Kd = L.commas[d];
    const CommaCategory& Ke = L.commas[e];
    std::map<std::pair<ObjId, MorId>, ObjId> at;
    for (ObjId k = 0; k < Ke.objects.size(); ++k) at[Ke.objects[k]] = k;
    const Colimit& cd = L.colimits[d];
    const Colimit& ce = L.colimits[e];
    // push the lifted generators of the colimit at d along (c, b) ↦ (c, m∘b)
    IntMatrix M(out.rank[e], out.rank[d]);
    for (std::size_t g = 0; g < out.rank[d]; ++g)
      for (ObjId k = 0; k < Kd.objects.size(); ++k) {
        const auto [c, b] = Kd.objects[k];
        const ObjId k2 = at.at({c, D.compose(m, b)});
        for (std::size_t j = 0; j < F.rank[c]; ++j) {
          const Integer& x = cd.presentation.section(cd.offset[k] + j, g);
          if (x == 0) continue;
          for (std::size_t h = 0; h < out.rank[e]; ++h) M(h, g) += ce.presentation.projection(h, ce.offset[k2] + j) * x;
        }
      }
    out.action.push_back(std::move(M));
  }
  check_diagram(out);
  return out;
}

inline Diagram lan(const FunctorMap& f, const Diagram& F) { return lan(f, F, lan_data(f, F)); }

/// Lan^f_q F(d) = H_q(f↓d, F∘Q_d) for every target object d.
inline std::vector<AbGroup> derived_lan_values(const FunctorMap& f, const Diagram& F, std::size_t q) {
  require_same_base(*f.source, *F.base, "derived Kan extension along " + f.name);
  std::vector<AbGroup> out;
  for (ObjId d = 0; d < f.target->num_objects(); ++d) {
    const CommaCategory K = comma(f, d, CommaSide::Left);
    out.push_back(homology_with_coefficients(K.category, pullback_diagram(K.projection, F), q));
  }
  return out;
}

/// A natural transformation F -> T∘f, one matrix per source object.
using Unit = std::vector<IntMatrix>;

/**
 * Canonical units: all-ones between constant rank-1 diagrams, and m ↦ f(m)
 * between ZC and ZD along f^op x f.
 */
inline std::optional<Unit> canonical_unit(const FunctorMap& f, const Diagram& F, const Diagram& T) {
  const FinCat& C = *f.source;
  if (is_constant_z(F) && is_constant_z(T)) return Unit(C.num_objects(), IntMatrix{{1}});
  if (!F.zc_origin || !T.zc_origin) return std::nullopt;
  const ProductInfo* si = f.source->product_info();
  const ProductInfo* ti = f.target->product_info();
  if (!si || !ti) return std::nullopt;
  const FinCat& C0 = *F.zc_origin;
  const FinCat& D0 = *T.zc_origin;
  const std::size_t md = ti->right->num_morphisms();
  // underlying functor on morphisms: second component of f(id_a, m)
  auto f0 = [&](MorId m) {
    const MorId pm = C0.identity(C0.dom(m)) * C0.num_morphisms() + m;
    return f.mor(pm) % md;
  };
  Unit u;
  for (ObjId x = 0; x < C.num_objects(); ++x) {
    const auto [a, b] = si->objects[x];
    const auto [a2, b2] = ti->objects[f.obj(x)];
    auto src = C0.hom(a, b);
    auto dst = D0.hom(a2, b2);
    IntMatrix M(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto it = std::find(dst.begin(), dst.end(), f0(src[j]));
      if (it == dst.end()) return std::nullopt;
      M(static_cast<std::size_t>(it - dst.begin()), j) = 1;
    }
    u.push_back(std::move(M));
  }
  return u;
}

/// The comparison Lan_f F (d) -> T(d) adjoint to a unit, per target object.
inline std::vector<GroupHom> compare_to(const FunctorMap& f, const Diagram& F, const Diagram& T,
                                        std::optional<Unit> unit = std::nullopt) {
  require_same_base(*f.target, *T.base, "comparison target");
  if (!unit) unit = canonical_unit(f, F, T);
  if (!unit) throw Error(ErrorKind::NoCanonicalUnit, "no canonical unit " + F.name + " -> " + T.name + "." + f.name);
  const FinCat& D = *f.target;
  const LanData L = lan_data(f, F);
  std::vector<GroupHom> out;
  for (ObjId d = 0; d < D.num_objects(); ++d) {
    const CommaCategory& K = L.commas[d];
    const Colimit& cd = L.colimits[d];
    IntMatrix M(T.rank[d], cd.group.num_generators());
    for (std::size_t g = 0; g < M.cols(); ++g)
      for (ObjId k = 0; k < K.objects.size(); ++k) {
        const auto [c, b] = K.objects[k];
        IntMatrix x(F.rank[c], 1);
        for (std::size_t j = 0; j < F.rank[c]; ++j) x(j, 0) = cd.presentation.section(cd.offset[k] + j, g);
        const IntMatrix y = T.action[b] * ((*unit)[c] * x);
        for (std::size_t h = 0; h < M.rows(); ++h) M(h, g) += y(h, 0);
      }
    out.push_back(make_group_hom(cd.group, AbGroup::free(T.rank[d]), std::move(M)));
  }
  return out;
}

}  // namespace catcohom
