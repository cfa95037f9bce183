#pragma once
/**
 * Exact integer matrices.
 *
 * IntMatrix is a dense row-major matrix used for small data: coefficient
 * actions, transforms and presentations. SparseIntMatrix stores columns as
 * sorted (row, value) lists and carries the (co)chain differentials, whose
 * columns have only a handful of nonzeros.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catcohom/error.hpp"

namespace catcohom {

using Integer = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[target] += factor * row[source]
  void add_row(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  IntMatrix column(std::size_t j) const {
    IntMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  /// Text form `[a b; c d]`; the empty matrix prints as `[]`.
  std::string to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i > 0) out << "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j > 0) out << ' ';
        out << (*this)(i, j).get_str();
      }
    }
    out << ']';
    return out.str();
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorKind::ShapeMismatch, "product of " + shape(a) + " and " + shape(b));
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::ShapeMismatch, "sum of " + shape(a) + " and " + shape(b));
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::ShapeMismatch, "difference of " + shape(a) + " and " + shape(b));
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  static std::string shape(const IntMatrix& m) {
    return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Sorted (index, value) list without explicit zeros.
using SparseVec = std::vector<std::pair<std::size_t, Integer>>;

/// a += factor * b
inline void axpy(SparseVec& a, const Integer& factor, const SparseVec& b) {
  if (factor == 0 || b.empty()) return;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, factor * b[j].second);
      ++j;
    } else {
      Integer v = a[i].second + factor * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

inline const Integer* sparse_find(const SparseVec& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, std::size_t i) { return e.first < i; });
  if (it == v.end() || it->first != index) return nullptr;
  return &it->second;
}

inline Integer sparse_dot(const SparseVec& a, const SparseVec& b) {
  Integer s = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else s += a[i++].second * b[j++].second;
  }
  return s;
}

class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  /// Accumulates triplets; duplicate positions are summed, zeros dropped.
  class Builder {
   public:
    Builder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), pending_(cols) {}
    void add(std::size_t row, std::size_t col, const Integer& value) {
      if (value == 0) return;
      pending_[col].emplace_back(row, value);
    }
    void add_block(std::size_t row0, std::size_t col0, const IntMatrix& block,
                   const Integer& scale = 1) {
      for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
          if (block(i, j) != 0) add(row0 + i, col0 + j, scale * block(i, j));
    }
    void add_identity(std::size_t row0, std::size_t col0, std::size_t n, const Integer& scale) {
      for (std::size_t i = 0; i < n; ++i) add(row0 + i, col0 + i, scale);
    }
    SparseIntMatrix build() {
      SparseIntMatrix m(rows_, cols_);
      for (std::size_t j = 0; j < cols_; ++j) {
        auto& col = pending_[j];
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec merged;
        for (auto& [r, v] : col) {
          if (r >= rows_) throw Error(ErrorKind::ShapeMismatch, "row index out of range");
          if (!merged.empty() && merged.back().first == r) merged.back().second += v;
          else merged.emplace_back(r, std::move(v));
        }
        std::erase_if(merged, [](const auto& e) { return e.second == 0; });
        m.columns_[j] = std::move(merged);
      }
      return m;
    }

   private:
    std::size_t rows_, cols_;
    std::vector<SparseVec> pending_;
  };

  static SparseIntMatrix from_dense(const IntMatrix& d) {
    Builder b(d.rows(), d.cols());
    b.add_block(0, 0, d);
    return b.build();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const SparseVec& column(std::size_t j) const { return columns_[j]; }
  const std::vector<SparseVec>& columns() const noexcept { return columns_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& c) { return c.empty(); });
  }

  Integer at(std::size_t i, std::size_t j) const {
    const Integer* v = sparse_find(columns_[j], i);
    return v ? *v : Integer(0);
  }

  IntMatrix to_dense() const {
    IntMatrix d(rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) d(i, j) = v;
    return d;
  }

  SparseIntMatrix transpose() const {
    Builder b(cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) b.add(j, i, v);
    return b.build();
  }

  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [j, v] : x) {
      if (j >= cols()) throw Error(ErrorKind::ShapeMismatch, "vector longer than matrix width");
      axpy(y, v, columns_[j]);
    }
    return y;
  }

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols() != b.rows())
      throw Error(ErrorKind::ShapeMismatch, "sparse product of incompatible shapes");
    SparseIntMatrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) c.columns_[j] = a.apply(b.columns_[j]);
    return c;
  }

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> columns_;
};

}  // namespace catcohom
