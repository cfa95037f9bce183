#pragma once
/**
 * Smith normal form and lattice reductions over the integers.
 *
 * Three entry points:
 *   - smith_normal_form: dense SNF with unimodular transforms, U*A*V = S.
 *   - invariant_factors: nonzero diagonal of the SNF of a sparse matrix.
 *     Unit pivots are eliminated sparsely first (Markowitz-style choice);
 *     the leftover block is handed to the dense routine.
 *   - ColumnReduction: column echelon form B*V = [E | 0] of a sparse matrix
 *     with V and V^-1 tracked sparsely, giving a kernel basis together
 *     with a coordinate map for kernel elements.
 */

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "catcohom/int_matrix.hpp"

namespace catcohom {

struct SnfResult {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;

  /// Nonzero diagonal entries s_1 | s_2 | ... | s_r.
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()) && S(i, i) != 0; ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

struct SnfTracker {
  IntMatrix* U = nullptr;
  IntMatrix* U_inv = nullptr;
  IntMatrix* V = nullptr;
  IntMatrix* V_inv = nullptr;

  // row[target] += q * row[source]
  void add_row(std::size_t target, std::size_t source, const Integer& q) {
    if (U) U->add_row(target, source, q);
    if (U_inv) U_inv->add_col(source, target, -q);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (U) U->swap_rows(a, b);
    if (U_inv) U_inv->swap_cols(a, b);
  }
  void negate_row(std::size_t r) {
    if (U) U->negate_row(r);
    if (U_inv) U_inv->negate_col(r);
  }
  // col[target] += q * col[source]
  void add_col(std::size_t target, std::size_t source, const Integer& q) {
    if (V) V->add_col(target, source, q);
    if (V_inv) V_inv->add_row(source, target, -q);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (V) V->swap_cols(a, b);
    if (V_inv) V_inv->swap_rows(a, b);
  }
};

inline void snf_in_place(IntMatrix& S, SnfTracker& tr) {
  const std::size_t m = S.rows(), n = S.cols();
  auto row_op = [&](std::size_t target, std::size_t source, const Integer& q) {
    S.add_row(target, source, q);
    tr.add_row(target, source, q);
  };
  auto col_op = [&](std::size_t target, std::size_t source, const Integer& q) {
    S.add_col(target, source, q);
    tr.add_col(target, source, q);
  };
  auto swap_r = [&](std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    tr.swap_rows(a, b);
  };
  auto swap_c = [&](std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    tr.swap_cols(a, b);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 &&
            (!best || abs(S(i, j)) < abs(S(best->first, best->second))))
          best = std::make_pair(i, j);
    if (!best) break;
    swap_r(t, best->first);
    swap_c(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        row_op(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        col_op(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && abs(S(i, t)) < abs(S(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && abs(S(t, j)) < abs(S(bi, bj))) bi = t, bj = j;
        swap_r(t, bi);
        swap_c(t, bj);
        continue;
      }
      // divisibility: the pivot must divide the whole trailing block
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_op(t, *bad_row, 1);
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      tr.negate_row(t);
    }
  }
}

}  // namespace detail

/// U*A*V = S with U, V unimodular and S in Smith normal form.
inline SnfResult smith_normal_form(const IntMatrix& A) {
  SnfResult r{IntMatrix::identity(A.rows()), A, IntMatrix::identity(A.cols()),
              IntMatrix::identity(A.rows()), IntMatrix::identity(A.cols())};
  detail::SnfTracker tr{&r.U, &r.U_inv, &r.V, &r.V_inv};
  detail::snf_in_place(r.S, tr);
  return r;
}

inline std::vector<Integer> dense_invariant_factors(IntMatrix A) {
  detail::SnfTracker tr;
  detail::snf_in_place(A, tr);
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(A.rows(), A.cols()) && A(i, i) != 0; ++i) d.push_back(A(i, i));
  return d;
}

/// Nonzero invariant factors (including units) of a sparse matrix, ascending.
inline std::vector<Integer> invariant_factors(const SparseIntMatrix& A) {
  std::vector<SparseVec> cols = A.columns();
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<char> col_alive(n, 1);
  std::vector<std::size_t> row_count(m, 0);
  std::vector<std::vector<std::size_t>> row_cols(m);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [i, v] : cols[j]) {
      ++row_count[i];
      row_cols[i].push_back(j);
    }

  std::size_t unit_pivots = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < n; ++j)
      if (col_alive[j] && !cols[j].empty()) order.push_back(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cols[a].size() < cols[b].size(); });
    for (std::size_t j : order) {
      if (!col_alive[j] || cols[j].empty()) continue;
      std::optional<std::size_t> pivot_row;
      for (const auto& [i, v] : cols[j])
        if (abs(v) == 1 && (!pivot_row || row_count[i] < row_count[*pivot_row])) pivot_row = i;
      if (!pivot_row) continue;
      const std::size_t r = *pivot_row;
      const Integer pv = *sparse_find(cols[j], r);
      col_alive[j] = 0;
      for (const auto& [i, v] : cols[j]) --row_count[i];
      std::vector<std::size_t> touched;
      for (std::size_t k : row_cols[r])
        if (k != j && col_alive[k]) touched.push_back(k);
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (std::size_t k : touched) {
        const Integer* a = sparse_find(cols[k], r);
        if (!a) continue;
        Integer q = -(*a) * pv;  // pv = +-1, so pv^-1 = pv
        for (const auto& [i, v] : cols[k]) --row_count[i];
        axpy(cols[k], q, cols[j]);
        for (const auto& [i, v] : cols[k]) {
          ++row_count[i];
          // fill-in may create new occurrences; duplicates are harmless
          if (row_cols[i].empty() || row_cols[i].back() != k) row_cols[i].push_back(k);
        }
      }
      ++unit_pivots;
      progress = true;
    }
  }

  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t i = 0; i < m; ++i)
    if (row_count[i] > 0) live_rows.push_back(i);
  for (std::size_t j = 0; j < n; ++j)
    if (col_alive[j] && !cols[j].empty()) live_cols.push_back(j);
  std::vector<Integer> factors(unit_pivots, Integer(1));
  if (!live_rows.empty() && !live_cols.empty()) {
    std::vector<std::size_t> row_pos(m, 0);
    for (std::size_t k = 0; k < live_rows.size(); ++k) row_pos[live_rows[k]] = k;
    IntMatrix rest(live_rows.size(), live_cols.size());
    for (std::size_t c = 0; c < live_cols.size(); ++c)
      for (const auto& [i, v] : cols[live_cols[c]]) rest(row_pos[i], c) = v;
    for (auto& f : dense_invariant_factors(std::move(rest))) factors.push_back(std::move(f));
  }
  std::stable_sort(factors.begin(), factors.end());
  return factors;
}

inline std::size_t rank(const SparseIntMatrix& A) { return invariant_factors(A).size(); }

/**
 * Column echelon reduction B*V = [pivot columns | 0] with V unimodular.
 *
 * The zero columns of B*V span Ker B; `kernel_coordinates` expresses any
 * kernel element in that basis by applying the matching rows of V^-1.
 */
class ColumnReduction {
 public:
  explicit ColumnReduction(const SparseIntMatrix& B) : n_(B.cols()) {
    std::vector<SparseVec> cols = B.columns();
    const std::size_t m = B.rows();
    v_cols_.resize(n_);
    v_inv_rows_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      v_cols_[j] = {{j, Integer(1)}};
      v_inv_rows_[j] = {{j, Integer(1)}};
    }
    std::vector<char> alive(n_, 1);
    std::vector<std::vector<std::size_t>> row_cols(m);
    for (std::size_t j = 0; j < n_; ++j)
      for (const auto& [i, v] : cols[j]) row_cols[i].push_back(j);

    // col[target] += q * col[source], mirrored on V and V^-1
    auto col_op = [&](std::size_t target, std::size_t source, const Integer& q) {
      axpy(cols[target], q, cols[source]);
      for (const auto& [i, v] : cols[target])
        if (row_cols[i].empty() || row_cols[i].back() != target) row_cols[i].push_back(target);
      axpy(v_cols_[target], q, v_cols_[source]);
      axpy(v_inv_rows_[source], -q, v_inv_rows_[target]);
    };
    auto live_in_row = [&](std::size_t r) {
      std::vector<std::size_t> out;
      for (std::size_t k : row_cols[r])
        if (alive[k] && sparse_find(cols[k], r)) out.push_back(k);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      row_cols[r] = out;
      return out;
    };

    // unit pivots first: they never grow entries
    for (std::size_t j = 0; j < n_; ++j) {
      if (!alive[j]) continue;
      std::optional<std::size_t> r;
      for (const auto& [i, v] : cols[j])
        if (abs(v) == 1 && (!r || row_cols[i].size() < row_cols[*r].size())) r = i;
      if (!r) continue;
      const Integer pv = *sparse_find(cols[j], *r);
      alive[j] = 0;
      for (std::size_t k : live_in_row(*r)) {
        if (k == j) continue;
        Integer q = -(*sparse_find(cols[k], *r)) * pv;
        col_op(k, j, q);
      }
    }
    for (std::size_t r = 0; r < m; ++r) {
      for (;;) {
        auto live = live_in_row(r);
        if (live.empty()) break;
        std::size_t p = live.front();
        for (std::size_t k : live)
          if (abs(*sparse_find(cols[k], r)) < abs(*sparse_find(cols[p], r))) p = k;
        if (live.size() == 1) {
          alive[p] = 0;
          break;
        }
        const Integer pv = *sparse_find(cols[p], r);
        for (std::size_t k : live) {
          if (k == p) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), sparse_find(cols[k], r)->get_mpz_t(), pv.get_mpz_t());
          col_op(k, p, -q);
        }
      }
    }
    for (std::size_t j = 0; j < n_; ++j)
      if (alive[j]) kernel_index_.push_back(j);
    rank_ = n_ - kernel_index_.size();
  }

  std::size_t rank() const noexcept { return rank_; }
  std::size_t nullity() const noexcept { return kernel_index_.size(); }

  /// Kernel basis vectors (columns of V at the zero columns of B*V).
  std::vector<SparseVec> kernel_basis() const {
    std::vector<SparseVec> out;
    for (std::size_t j : kernel_index_) out.push_back(v_cols_[j]);
    return out;
  }

  /// Coordinates of a kernel element in `kernel_basis()`.
  std::vector<Integer> kernel_coordinates(const SparseVec& z) const {
    std::vector<Integer> y;
    y.reserve(kernel_index_.size());
    for (std::size_t j : kernel_index_) y.push_back(sparse_dot(v_inv_rows_[j], z));
    return y;
  }

 private:
  std::size_t n_;
  std::size_t rank_ = 0;
  std::vector<SparseVec> v_cols_;
  std::vector<SparseVec> v_inv_rows_;
  std::vector<std::size_t> kernel_index_;
};

}  // namespace catcohom
