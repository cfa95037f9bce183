#pragma once
/**
 * Finitely generated abelian groups, bounded complexes of free modules,
 * and (co)homology computed through Smith normal forms.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catcohom/int_matrix.hpp"
#include "catcohom/smith.hpp"

namespace catcohom {

/// Z^betti + Z/t_1 + ... + Z/t_k with t_i >= 2 and t_i | t_{i+1}.
struct AbGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;

  static AbGroup free(std::size_t rank) { return AbGroup{rank, {}}; }

  /// Z^generators modulo a lattice with the given nonzero invariant factors.
  static AbGroup from_invariants(std::size_t generators, const std::vector<Integer>& factors) {
    AbGroup g;
    g.betti = generators - factors.size();
    for (const auto& f : factors)
      if (f != 1) g.torsion.push_back(f);
    return g;
  }

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  std::size_t num_generators() const { return betti + torsion.size(); }

  /// Order of generator i in the canonical system: free ones (0) first, then torsion.
  Integer modulus(std::size_t i) const { return i < betti ? Integer(0) : torsion[i - betti]; }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (betti > 0) {
      out << (betti == 1 ? std::string("Z") : "Z^" + std::to_string(betti));
      first = false;
    }
    for (const auto& t : torsion) {
      if (!first) out << " + ";
      out << "Z/" << t.get_str();
      first = false;
    }
    return out.str();
  }

  friend bool operator==(const AbGroup& a, const AbGroup& b) {
    return a.betti == b.betti && a.torsion == b.torsion;
  }
};

inline std::ostream& operator<<(std::ostream& os, const AbGroup& g) { return os << g.to_string(); }

/// Z^rows / Im(A)
inline AbGroup cokernel(const IntMatrix& A) {
  return AbGroup::from_invariants(A.rows(), dense_invariant_factors(A));
}

enum class Orientation { Chain, Cochain };

/**
 * Complex of free Z-modules restricted to degrees [lo, hi].
 *
 * Cochain: diffs[k] is d^{lo+k}: C^{lo+k} -> C^{lo+k+1}.
 * Chain:   diffs[k] is d_{lo+k+1}: C_{lo+k+1} -> C_{lo+k}.
 * Degrees below zero are zero modules.
 */
class ComplexWindow {
 public:
  ComplexWindow() = default;

  ComplexWindow(Orientation orientation, int lo, std::vector<std::size_t> ranks,
                std::vector<SparseIntMatrix> diffs)
      : orientation_(orientation), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    if (ranks_.empty()) throw Error(ErrorKind::InvalidArgument, "empty complex window");
    if (diffs_.size() + 1 != ranks_.size())
      throw Error(ErrorKind::ShapeMismatch, "window needs one differential per adjacent degree pair");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      const auto [rows, cols] = orientation_ == Orientation::Cochain
                                    ? std::pair(ranks_[k + 1], ranks_[k])
                                    : std::pair(ranks_[k], ranks_[k + 1]);
      if (diffs_[k].rows() != rows || diffs_[k].cols() != cols)
        throw Error(ErrorKind::ShapeMismatch,
                    "differential at window slot " + std::to_string(k) + " has wrong shape");
    }
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
      const SparseIntMatrix composite = orientation_ == Orientation::Cochain
                                            ? diffs_[k + 1] * diffs_[k]
                                            : diffs_[k] * diffs_[k + 1];
      if (!composite.is_zero())
        throw Error(ErrorKind::InvalidArgument,
                    "composite of consecutive differentials is nonzero at degree " +
                        std::to_string(lo_ + static_cast<int>(k)));
    }
  }

  Orientation orientation() const noexcept { return orientation_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool covers(int n) const noexcept { return n >= lo_ && n <= hi(); }

  std::size_t rank(int n) const {
    if (n < 0) return 0;
    if (!covers(n)) throw Error(ErrorKind::DegreeOutOfWindow, "degree " + std::to_string(n));
    return ranks_[static_cast<std::size_t>(n - lo_)];
  }

  const std::vector<SparseIntMatrix>& diffs() const noexcept { return diffs_; }

  /// Differential starting in degree n (d^n for cochains, d_n for chains).
  std::optional<SparseIntMatrix> differential_from(int n) const {
    const int other = orientation_ == Orientation::Cochain ? n + 1 : n - 1;
    if (other < 0) return SparseIntMatrix(0, rank(n));
    if (!covers(n) || !covers(other)) return std::nullopt;
    const int slot = std::min(n, other) - lo_;
    return diffs_[static_cast<std::size_t>(slot)];
  }

  /// Differential landing in degree n.
  std::optional<SparseIntMatrix> differential_into(int n) const {
    const int other = orientation_ == Orientation::Cochain ? n - 1 : n + 1;
    if (other < 0) return SparseIntMatrix(rank(n), 0);
    if (!covers(n) || !covers(other)) return std::nullopt;
    const int slot = std::min(n, other) - lo_;
    return diffs_[static_cast<std::size_t>(slot)];
  }

 private:
  Orientation orientation_ = Orientation::Cochain;
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<SparseIntMatrix> diffs_;
};

namespace detail {
inline std::pair<SparseIntMatrix, SparseIntMatrix> homology_pair(const ComplexWindow& w, int n) {
  if (!w.covers(n)) throw Error(ErrorKind::DegreeOutOfWindow, "degree " + std::to_string(n));
  auto in = w.differential_into(n);
  auto out = w.differential_from(n);
  if (!in || !out)
    throw Error(ErrorKind::DegreeOutOfWindow,
                "window [" + std::to_string(w.lo()) + "," + std::to_string(w.hi()) +
                    "] does not cover the neighbours of degree " + std::to_string(n));
  return {std::move(*in), std::move(*out)};
}
}  // namespace detail

/// Ker(outgoing) / Im(incoming) at degree n.
inline AbGroup homology_at(const ComplexWindow& w, int n) {
  auto [in, out] = detail::homology_pair(w, n);
  const auto in_factors = invariant_factors(in);
  const std::size_t out_rank = rank(out);
  AbGroup g;
  g.betti = w.rank(n) - in_factors.size() - out_rank;
  for (const auto& f : in_factors)
    if (f != 1) g.torsion.push_back(f);
  return g;
}

/**
 * Homology at one degree together with an explicit generator system.
 *
 * Generators are kernel basis columns transformed by the SNF of the
 * inclusion Im ⊆ Ker; they are ordered like AbGroup's canonical system
 * (free first, then torsion).
 */
class HomologyBasis {
 public:
  HomologyBasis(const ComplexWindow& w, int n) {
    auto [in, out] = detail::homology_pair(w, n);
    reduction_.emplace(out);
    const auto kernel = reduction_->kernel_basis();
    const std::size_t k = kernel.size();
    IntMatrix X(k, in.cols());
    for (std::size_t c = 0; c < in.cols(); ++c) {
      auto y = reduction_->kernel_coordinates(in.column(c));
      for (std::size_t r = 0; r < k; ++r) X(r, c) = std::move(y[r]);
    }
    const SnfResult snf = smith_normal_form(X);
    P_ = snf.U;
    std::vector<std::size_t> free_idx, torsion_idx;
    for (std::size_t i = 0; i < k; ++i) {
      const Integer s = i < std::min(X.rows(), X.cols()) ? snf.S(i, i) : Integer(0);
      if (s == 0) free_idx.push_back(i);
      else if (s != 1) torsion_idx.push_back(i);
    }
    for (std::size_t i : free_idx) {
      slots_.push_back(i);
      moduli_.push_back(0);
    }
    for (std::size_t i : torsion_idx) {
      slots_.push_back(i);
      moduli_.push_back(snf.S(i, i));
    }
    group_.betti = free_idx.size();
    for (std::size_t i : torsion_idx) group_.torsion.push_back(snf.S(i, i));
    for (std::size_t i : slots_) {
      SparseVec g;
      for (std::size_t r = 0; r < k; ++r)
        if (snf.U_inv(r, i) != 0) axpy(g, snf.U_inv(r, i), kernel[r]);
      generators_.push_back(std::move(g));
    }
  }

  const AbGroup& group() const noexcept { return group_; }
  const std::vector<SparseVec>& generators() const noexcept { return generators_; }

  /// Coordinates of a cycle in the generator system (torsion parts reduced).
  std::vector<Integer> coordinates(const SparseVec& cycle) const {
    const auto x = reduction_->kernel_coordinates(cycle);
    std::vector<Integer> out;
    for (std::size_t l = 0; l < slots_.size(); ++l) {
      Integer y = 0;
      for (std::size_t r = 0; r < x.size(); ++r) y += P_(slots_[l], r) * x[r];
      if (moduli_[l] != 0) mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), moduli_[l].get_mpz_t());
      out.push_back(std::move(y));
    }
    return out;
  }

 private:
  std::optional<ColumnReduction> reduction_;
  IntMatrix P_;
  std::vector<std::size_t> slots_;
  std::vector<Integer> moduli_;
  AbGroup group_;
  std::vector<SparseVec> generators_;
};

/// Homomorphism between canonical generator systems, with exact flags.
struct GroupHom {
  AbGroup source;
  AbGroup target;
  IntMatrix matrix;  // target generators x source generators
  bool is_iso = false;
  bool is_mono = false;
  bool is_epi = false;
};

/**
 * Builds a GroupHom from a matrix on canonical generators. Flags come from
 * the relation-augmented matrix [M | R_target]: epi iff its cokernel is
 * trivial, mono iff every kernel vector projects into the source relations.
 */
inline GroupHom make_group_hom(AbGroup source, AbGroup target, IntMatrix m) {
  const std::size_t a = source.num_generators(), b = target.num_generators();
  if (m.rows() != b || m.cols() != a)
    throw Error(ErrorKind::ShapeMismatch, "homomorphism matrix has shape " + IntMatrix::shape(m));
  for (std::size_t i = 0; i < b; ++i) {
    const Integer t = target.modulus(i);
    if (t == 0) continue;
    for (std::size_t j = 0; j < a; ++j) mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), t.get_mpz_t());
  }
  for (std::size_t j = 0; j < a; ++j) {
    const Integer s = source.modulus(j);
    if (s == 0) continue;
    for (std::size_t i = 0; i < b; ++i) {
      const Integer t = target.modulus(i);
      const Integer image = s * m(i, j);
      const bool ok = t == 0 ? image == 0 : mpz_divisible_p(image.get_mpz_t(), t.get_mpz_t()) != 0;
      if (!ok) throw Error(ErrorKind::InvalidArgument, "matrix does not respect source relations");
    }
  }

  SparseIntMatrix::Builder aug(b, a + b);
  aug.add_block(0, 0, m);
  for (std::size_t i = 0; i < b; ++i) aug.add(i, a + i, target.modulus(i));
  const SparseIntMatrix augmented = aug.build();

  const auto factors = invariant_factors(augmented);
  const bool epi = factors.size() == b &&
                   std::all_of(factors.begin(), factors.end(), [](const Integer& f) { return f == 1; });
  bool mono = true;
  ColumnReduction red(augmented);
  for (const auto& v : red.kernel_basis()) {
    for (const auto& [idx, x] : v) {
      if (idx >= a) break;
      const Integer s = source.modulus(idx);
      if (s == 0 ? x != 0 : !mpz_divisible_p(x.get_mpz_t(), s.get_mpz_t())) {
        mono = false;
        break;
      }
    }
    if (!mono) break;
  }
  GroupHom h{std::move(source), std::move(target), std::move(m), false, mono, epi};
  h.is_iso = mono && epi;
  return h;
}

/// Chain map components indexed by degree; component k maps src degree k to dst degree k.
struct ChainMap {
  std::map<int, SparseIntMatrix> components;
};

inline void check_chain_map(const ComplexWindow& src, const ComplexWindow& dst, const ChainMap& f) {
  if (src.orientation() != dst.orientation())
    throw Error(ErrorKind::NotAChainMap, "source and target orientations differ");
  for (const auto& [k, fk] : f.components) {
    if (src.covers(k) && dst.covers(k) &&
        (fk.rows() != dst.rank(k) || fk.cols() != src.rank(k)))
      throw Error(ErrorKind::NotAChainMap, "component at degree " + std::to_string(k) + " has wrong shape");
    const int next = src.orientation() == Orientation::Cochain ? k + 1 : k - 1;
    auto it = f.components.find(next);
    if (it == f.components.end()) continue;
    auto ds = src.differential_from(k);
    auto dd = dst.differential_from(k);
    if (!ds || !dd) continue;
    if (!(*dd * fk == it->second * *ds))
      throw Error(ErrorKind::NotAChainMap,
                  "map does not commute with differentials at degree " + std::to_string(k));
  }
}

inline GroupHom induced_homology_map(const ComplexWindow& src, const ComplexWindow& dst,
                                     const ChainMap& f, int n) {
  check_chain_map(src, dst, f);
  auto it = f.components.find(n);
  if (it == f.components.end())
    throw Error(ErrorKind::DegreeOutOfWindow, "chain map has no component at degree " + std::to_string(n));
  const HomologyBasis hs(src, n), hd(dst, n);
  IntMatrix m(hd.group().num_generators(), hs.group().num_generators());
  for (std::size_t j = 0; j < hs.generators().size(); ++j) {
    const auto image = it->second.apply(hs.generators()[j]);
    auto y = hd.coordinates(image);
    for (std::size_t i = 0; i < y.size(); ++i) m(i, j) = std::move(y[i]);
  }
  return make_group_hom(hs.group(), hd.group(), std::move(m));
}

}  // namespace catcohom
