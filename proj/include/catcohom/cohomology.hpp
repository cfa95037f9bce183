#pragma once
/**
 * Path complexes of a finite category and their (co)homology.
 *
 * Every complex here is indexed by composable paths; the block of a path
 * holds the coefficient value attached to it. Blocks follow PathTable
 * order and generators follow their natural order inside a block.
 */

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catcohom/diagram.hpp"
#include "catcohom/fincat.hpp"
#include "catcohom/homology.hpp"
#include "catcohom/nerve.hpp"

namespace catcohom {

struct PathComplex {
  ComplexWindow window;
  std::shared_ptr<const PathTable> paths;
  std::vector<std::vector<std::size_t>> offset;  // [n][k]
  std::vector<std::vector<std::size_t>> width;   // [n][k]

  /// Basis labels of degree n: (path index, generator index) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> basis(std::size_t n) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 0; k < width[n].size(); ++k)
      for (std::size_t g = 0; g < width[n][k]; ++g) out.emplace_back(k, g);
    return out;
  }
};

namespace detail {

/// Block map of face i of path k' in degree n+1; nullopt stands for the identity.
using FaceBlock = std::function<std::optional<IntMatrix>(std::size_t n1, std::size_t k1, std::size_t i)>;
using BlockWidth = std::function<std::size_t(std::size_t n, std::size_t k)>;

/**
 * Assembles Σ (-1)^i (face block) over a path table with max degree N+1.
 * Faces that leave the table (degenerate faces of a normalized table) are dropped.
 */
inline PathComplex assemble(std::shared_ptr<const PathTable> T, Orientation orientation, const BlockWidth& width,
                            const FaceBlock& block) {
  PathComplex P;
  P.paths = T;
  const std::size_t top = T->max_degree();
  std::vector<std::size_t> ranks;
  for (std::size_t n = 0; n <= top; ++n) {
    std::size_t acc = 0;
    P.offset.emplace_back();
    P.width.emplace_back();
    for (std::size_t k = 0; k < T->count(n); ++k) {
      const std::size_t w = width(n, k);
      P.offset.back().push_back(acc);
      P.width.back().push_back(w);
      acc += w;
    }
    ranks.push_back(acc);
  }
  std::vector<SparseIntMatrix> diffs;
  for (std::size_t n = 0; n < top; ++n) {
    const std::size_t n1 = n + 1;
    SparseIntMatrix::Builder b = orientation == Orientation::Cochain ? SparseIntMatrix::Builder(ranks[n1], ranks[n])
                                                                     : SparseIntMatrix::Builder(ranks[n], ranks[n1]);
    for (std::size_t k1 = 0; k1 < T->count(n1); ++k1) {
      const std::size_t w1 = P.width[n1][k1];
      for (std::size_t i = 0; i <= n1; ++i) {
        const std::size_t k = T->face(n1, k1, i);
        if (k == kNone) continue;
        const std::size_t w = P.width[n][k];
        if (w == 0 || w1 == 0) continue;
        const Integer sign = i % 2 == 0 ? 1 : -1;
        const auto m = block(n1, k1, i);
        const std::size_t big = P.offset[n1][k1], small = P.offset[n][k];
        if (orientation == Orientation::Cochain) {
          if (m) b.add_block(big, small, *m, sign);
          else b.add_identity(big, small, w1, sign);
        } else {
          if (m) b.add_block(small, big, *m, sign);
          else b.add_identity(small, big, w1, sign);
        }
      }
    }
    diffs.push_back(b.build());
  }
  P.window = ComplexWindow(orientation, 0, std::move(ranks), std::move(diffs));
  return P;
}

inline void require_degree(std::size_t N) {
  if (N > 64) throw Error(ErrorKind::InvalidArgument, "degree too large");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Derived-limit cohomology

/**
 * C^n = ⊕ over n-paths of G(c_n); faces i ≤ n act by the identity, face n+1
 * by G(α_{n+1}). `normalized` restricts to identity-free paths and drops
 * degenerate faces (a quasi-isomorphic subcomplex for any category).
 */
inline PathComplex lim_cochain_complex(const CatPtr& C, const Diagram& G, std::size_t N, bool normalized = false) {
  detail::require_degree(N);
  require_same_base(*C, *G.base, "lim cohomology");
  auto T = std::make_shared<const PathTable>(C, N + 1, normalized);
  const PathTable& t = *T;
  return detail::assemble(
      T, Orientation::Cochain, [&](std::size_t n, std::size_t k) { return G.rank[t.last_object(n, k)]; },
      [&](std::size_t n1, std::size_t k1, std::size_t i) -> std::optional<IntMatrix> {
        if (i < n1) return std::nullopt;
        return G.action[t.path(n1, k1).arrows.back()];
      });
}

/// Complex over non-identity chains; requires a retraction-free category.
inline PathComplex reduced_cochain_complex(const CatPtr& C, const Diagram& G, std::size_t N) {
  if (!is_retraction_free(*C))
    throw Error(ErrorKind::HasRetractions, C->name() + " has a composite of non-identities equal to an identity");
  return lim_cochain_complex(C, G, N, true);
}

inline std::vector<AbGroup> groups_up_to(const PathComplex& P, std::size_t N) {
  std::vector<AbGroup> out;
  for (std::size_t n = 0; n <= N; ++n) out.push_back(homology_at(P.window, static_cast<int>(n)));
  return out;
}

inline AbGroup lim_cohomology(const CatPtr& C, const Diagram& G, std::size_t n) {
  return homology_at(lim_cochain_complex(C, G, n).window, static_cast<int>(n));
}

// ---------------------------------------------------------------------------
// Homology with coefficients and nerve homology

/// C_n = ⊕ over n-paths of F(c_0); face 0 acts by F(α_1).
inline PathComplex homology_chain_complex(const CatPtr& C, const Diagram& F, std::size_t N, bool normalized = false) {
  detail::require_degree(N);
  require_same_base(*C, *F.base, "homology");
  auto T = std::make_shared<const PathTable>(C, N + 1, normalized);
  const PathTable& t = *T;
  return detail::assemble(
      T, Orientation::Chain, [&](std::size_t n, std::size_t k) { return F.rank[t.first_object(n, k)]; },
      [&](std::size_t n1, std::size_t k1, std::size_t i) -> std::optional<IntMatrix> {
        if (i > 0) return std::nullopt;
        return F.action[t.path(n1, k1).arrows.front()];
      });
}

inline AbGroup homology_with_coefficients(const CatPtr& C, const Diagram& F, std::size_t n) {
  return homology_at(homology_chain_complex(C, F, n).window, static_cast<int>(n));
}

/// Normalized chain complex of the nerve with integer coefficients.
inline PathComplex nerve_chain_complex(const CatPtr& C, std::size_t N) {
  return homology_chain_complex(C, constant_diagram(C, 1), N, true);
}

inline AbGroup nerve_integral_homology(const CatPtr& C, std::size_t n) {
  return homology_at(nerve_chain_complex(C, n).window, static_cast<int>(n));
}

inline std::vector<AbGroup> nerve_homology_up_to(const CatPtr& C, std::size_t N) {
  return groups_up_to(nerve_chain_complex(C, N), N);
}

// ---------------------------------------------------------------------------
// Baues-Wirsching and Hochschild-Mitchell

/**
 * F^n = ⊕ over n-paths of G(composite). Face 0 acts by G(α_1, 1), face n+1
 * by G(1, α_{n+1}), inner faces by the identity.
 */
inline PathComplex bw_cochain_complex(const CatPtr& C, const Factorization& FC, const Diagram& G, std::size_t N) {
  detail::require_degree(N);
  require_same_base(*FC.category, *G.base, "Baues-Wirsching cohomology");
  auto T = std::make_shared<const PathTable>(C, N + 1);
  const PathTable& t = *T;
  const FinCat& c = *C;
  return detail::assemble(
      T, Orientation::Cochain,
      [&](std::size_t n, std::size_t k) { return G.rank[path_composite(c, t.path(n, k))]; },
      [&](std::size_t n1, std::size_t k1, std::size_t i) -> std::optional<IntMatrix> {
        if (i > 0 && i < n1) return std::nullopt;
        const Path& p = t.path(n1, k1);
        const Path face = t.face_path(n1, k1, i);
        const MorId src = path_composite(c, face);
        const MorId sq = i == 0 ? FC.square(src, p.arrows.front(), c.identity(path_object(c, p, n1)))
                                : FC.square(src, c.identity(p.start), p.arrows.back());
        return G.action[sq];
      });
}

inline PathComplex bw_cochain_complex(const CatPtr& C, const Diagram& G, std::size_t N) {
  return bw_cochain_complex(C, factorization(C), G, N);
}

inline AbGroup bw_cohomology(const CatPtr& C, const Diagram& G, std::size_t n) {
  return homology_at(bw_cochain_complex(C, G, n).window, static_cast<int>(n));
}

/// Natural system G∘(dom,cod) attached to a bimodule on op(C) x C.
inline Diagram bimodule_as_natural_system(const Factorization& FC, const Diagram& G) {
  return pullback_diagram(FC.dom_cod, G);
}

inline PathComplex hm_cochain_complex(const CatPtr& C, const Diagram& G, std::size_t N) {
  const Factorization FC = factorization(C);
  return bw_cochain_complex(C, FC, bimodule_as_natural_system(FC, G), N);
}

inline AbGroup hm_cohomology(const CatPtr& C, const Diagram& G, std::size_t n) {
  return homology_at(hm_cochain_complex(C, G, n).window, static_cast<int>(n));
}

// ---------------------------------------------------------------------------
// Thomason

/// Simplex coefficients G∘δ: value(σ) = G(composite σ), outer cofaces via the natural-system squares.
inline TruncatedSimplexDiagram induced_simplex_coefficients(const CatPtr& C, const Factorization& FC, const Diagram& G,
                                                            std::size_t M) {
  require_same_base(*FC.category, *G.base, "simplex coefficients");
  TruncatedSimplexDiagram S{G.name + ".delta", C, std::make_shared<const PathTable>(C, M), {}, {}};
  const PathTable& t = *S.paths;
  const FinCat& c = *C;
  S.value.resize(M + 1);
  S.cofaces.resize(M + 1);
  for (std::size_t n = 0; n <= M; ++n)
    for (std::size_t k = 0; k < t.count(n); ++k) {
      const Path& p = t.path(n, k);
      S.value[n].push_back(G.rank[path_composite(c, p)]);
      if (n == 0) continue;
      std::vector<IntMatrix> cof;
      for (std::size_t i = 0; i <= n; ++i) {
        const MorId src = path_composite(c, t.face_path(n, k, i));
        if (i > 0 && i < n) {
          cof.push_back(IntMatrix::identity(G.rank[src]));
          continue;
        }
        const MorId sq = i == 0 ? FC.square(src, p.arrows.front(), c.identity(path_object(c, p, n)))
                                : FC.square(src, c.identity(p.start), p.arrows.back());
        cof.push_back(G.action[sq]);
      }
      S.cofaces[n].push_back(std::move(cof));
    }
  return S;
}

inline TruncatedSimplexDiagram induced_simplex_coefficients(const CatPtr& C, const Diagram& G, std::size_t M) {
  return induced_simplex_coefficients(C, factorization(C), G, M);
}

/// C^n = ⊕ over all n-paths σ of G(σ), differential Σ (-1)^i G(∂^i).
inline PathComplex thomason_cochain_complex(const TruncatedSimplexDiagram& G, std::size_t N) {
  detail::require_degree(N);
  if (G.max_dim() < N + 1)
    throw Error(ErrorKind::TruncationTooShallow, "simplex coefficients stop at dimension " +
                                                     std::to_string(G.max_dim()) + ", need " + std::to_string(N + 1));
  auto T = std::make_shared<const PathTable>(G.base, N + 1);
  return detail::assemble(
      T, Orientation::Cochain, [&](std::size_t n, std::size_t k) { return G.value[n][k]; },
      [&](std::size_t n1, std::size_t k1, std::size_t i) -> std::optional<IntMatrix> { return G.cofaces[n1][k1][i]; });
}

inline AbGroup thomason_cohomology(const TruncatedSimplexDiagram& G, std::size_t n) {
  return homology_at(thomason_cochain_complex(G, n).window, static_cast<int>(n));
}

// ---------------------------------------------------------------------------
// Ext by the bar resolution

namespace detail {
/// Matrix of φ ↦ φ·A on row-major vectorized Hom spaces; φ is r x A.rows().
inline IntMatrix right_multiplication(const IntMatrix& A, std::size_t r) {
  const std::size_t t = A.rows(), s = A.cols();
  IntMatrix M(r * s, r * t);
  for (std::size_t row = 0; row < r; ++row)
    for (std::size_t col = 0; col < s; ++col)
      for (std::size_t mid = 0; mid < t; ++mid) M(row * s + col, row * t + mid) = A(mid, col);
  return M;
}
/// Matrix of φ ↦ B·φ; φ is B.cols() x s.
inline IntMatrix left_multiplication(const IntMatrix& B, std::size_t s) {
  const std::size_t r = B.rows(), t = B.cols();
  IntMatrix M(r * s, t * s);
  for (std::size_t row = 0; row < r; ++row)
    for (std::size_t col = 0; col < s; ++col)
      for (std::size_t mid = 0; mid < t; ++mid) M(row * s + col, mid * s + col) = B(row, mid);
  return M;
}
}  // namespace detail

/**
 * Hom of the bar resolution of F into G: degree n is ⊕ over n-paths of
 * Hom(F(c_0), G(c_n)), stored row-major. Valid because F is free-valued.
 */
inline PathComplex bar_ext_complex(const CatPtr& C, const Diagram& F, const Diagram& G, std::size_t N) {
  detail::require_degree(N);
  require_same_base(*C, *F.base, "bar Ext (source)");
  require_same_base(*C, *G.base, "bar Ext (target)");
  auto T = std::make_shared<const PathTable>(C, N + 1);
  const PathTable& t = *T;
  return detail::assemble(
      T, Orientation::Cochain,
      [&](std::size_t n, std::size_t k) { return F.rank[t.first_object(n, k)] * G.rank[t.last_object(n, k)]; },
      [&](std::size_t n1, std::size_t k1, std::size_t i) -> std::optional<IntMatrix> {
        const Path& p = t.path(n1, k1);
        if (i == 0) return detail::right_multiplication(F.action[p.arrows.front()], G.rank[t.last_object(n1, k1)]);
        if (i == n1) return detail::left_multiplication(G.action[p.arrows.back()], F.rank[p.start]);
        return std::nullopt;
      });
}

inline AbGroup bar_ext(const CatPtr& C, const Diagram& F, const Diagram& G, std::size_t n) {
  return homology_at(bar_ext_complex(C, F, G, n).window, static_cast<int>(n));
}

// ---------------------------------------------------------------------------
// Maps induced by functors

namespace detail {
/// Component sending the block of f(σ) in `on_target` to the block of σ in `on_source` (or back).
inline SparseIntMatrix path_transfer(const FunctorMap& f, const PathComplex& on_source, const PathComplex& on_target,
                                     std::size_t n, bool contravariant) {
  const PathTable& S = *on_source.paths;
  const PathTable& T = *on_target.paths;
  const std::size_t rs = on_source.window.rank(static_cast<int>(n));
  const std::size_t rt = on_target.window.rank(static_cast<int>(n));
  SparseIntMatrix::Builder b = contravariant ? SparseIntMatrix::Builder(rs, rt) : SparseIntMatrix::Builder(rt, rs);
  for (std::size_t k = 0; k < S.count(n); ++k) {
    const std::size_t img = T.find(map_path(f, S.path(n, k)));
    const std::size_t w = on_source.width[n][k];
    if (img == kNone) {
      if (!S.nondegenerate_only() && w > 0)
        throw Error(ErrorKind::NotAChainMap, "image path missing from target table");
      continue;
    }
    if (on_target.width[n][img] != w) throw Error(ErrorKind::NotAChainMap, "block widths differ under f");
    if (contravariant) b.add_identity(on_source.offset[n][k], on_target.offset[n][img], w, 1);
    else b.add_identity(on_target.offset[n][img], on_source.offset[n][k], w, 1);
  }
  return b.build();
}

inline ChainMap transfer_map(const FunctorMap& f, const PathComplex& on_source, const PathComplex& on_target,
                             bool contravariant) {
  ChainMap m;
  for (std::size_t n = 0; n <= on_source.paths->max_degree(); ++n)
    m.components[static_cast<int>(n)] = path_transfer(f, on_source, on_target, n, contravariant);
  return m;
}

inline GroupHom restriction(const FunctorMap& f, const PathComplex& on_target, const PathComplex& on_source,
                            std::size_t n) {
  return induced_homology_map(on_target.window, on_source.window, transfer_map(f, on_source, on_target, true),
                              static_cast<int>(n));
}
}  // namespace detail

enum class Flavor { Lim, Bw, Hm, Thomason, Homology, Nerve };

inline std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Lim: return "lim";
    case Flavor::Bw: return "bw";
    case Flavor::Hm: return "hm";
    case Flavor::Thomason: return "thomason";
    case Flavor::Homology: return "homology";
    case Flavor::Nerve: return "nerve";
  }
  return "?";
}

/**
 * Canonical map H^n(D, G) -> H^n(C, f*G) precomposing cochains with f.
 * G lives on D (lim), fact(D) (bw) or op(D) x D (hm).
 */
inline GroupHom restriction_map(const FunctorMap& f, const Diagram& G, Flavor flavor, std::size_t n) {
  switch (flavor) {
    case Flavor::Lim: {
      const PathComplex target = lim_cochain_complex(f.target, G, n);
      const PathComplex source = lim_cochain_complex(f.source, pullback_diagram(f, G), n);
      return detail::restriction(f, target, source, n);
    }
    case Flavor::Bw:
    case Flavor::Hm: {
      const Factorization FD = factorization(f.target);
      const Factorization FC = factorization(f.source);
      const Diagram nat = flavor == Flavor::Hm ? bimodule_as_natural_system(FD, G) : G;
      const FunctorMap Ff = factorization_of_functor(f, FC, FD);
      const PathComplex target = bw_cochain_complex(f.target, FD, nat, n);
      const PathComplex source = bw_cochain_complex(f.source, FC, pullback_diagram(Ff, nat), n);
      return detail::restriction(f, target, source, n);
    }
    default:
      throw Error(ErrorKind::InvalidArgument, "flavor " + to_string(flavor) + " has no contravariant diagram form");
  }
}

inline GroupHom restriction_map(const FunctorMap& f, const TruncatedSimplexDiagram& G, std::size_t n) {
  const PathComplex target = thomason_cochain_complex(G, n);
  const PathComplex source = thomason_cochain_complex(pullback_simplex_diagram(f, G), n);
  return detail::restriction(f, target, source, n);
}

/// Covariant map H_n(C, f*F) -> H_n(D, F) sending σ to f(σ).
inline GroupHom homology_pushforward(const FunctorMap& f, const Diagram& F, std::size_t n) {
  const PathComplex source = homology_chain_complex(f.source, pullback_diagram(f, F), n);
  const PathComplex target = homology_chain_complex(f.target, F, n);
  return induced_homology_map(source.window, target.window, detail::transfer_map(f, source, target, false),
                              static_cast<int>(n));
}

/// H_n(BC) -> H_n(BD) on normalized complexes; degenerate images vanish.
inline GroupHom nerve_pushforward(const FunctorMap& f, std::size_t n) {
  const PathComplex source = nerve_chain_complex(f.source, n);
  const PathComplex target = nerve_chain_complex(f.target, n);
  return induced_homology_map(source.window, target.window, detail::transfer_map(f, source, target, false),
                              static_cast<int>(n));
}

}  // namespace catcohom
