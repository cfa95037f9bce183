#pragma once
/**
 * Nerve enumeration: composable paths c0 -> c1 -> ... -> cn per degree,
 * in lexicographic order of morphism handles, with face and degeneracy
 * index maps.
 */

#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

#include "catcohom/fincat.hpp"

namespace catcohom {

inline constexpr std::size_t kDefaultPathCap = 200000;

/// Cap on paths per degree; CATCOHOM_PATH_CAP overrides the default.
inline std::size_t path_cap() {
  if (const char* env = std::getenv("CATCOHOM_PATH_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultPathCap;
}

namespace detail {
struct ArrowSeqHash {
  std::size_t operator()(const std::vector<MorId>& v) const noexcept {
    std::size_t h = v.size();
    for (MorId m : v) h ^= m + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
}  // namespace detail

class PathTable {
 public:
  /// All paths (`nondegenerate_only = false`) or only identity-free ones.
  PathTable(CatPtr C, std::size_t max_degree, bool nondegenerate_only = false, std::size_t cap = path_cap())
      : C_(std::move(C)), N_(max_degree), nondegenerate_only_(nondegenerate_only) {
    const FinCat& c = *C_;
    paths_.resize(N_ + 1);
    index_.resize(N_ + 1);
    for (ObjId a = 0; a < c.num_objects(); ++a) paths_[0].push_back(Path{a, {}});
    for (std::size_t n = 1; n <= N_; ++n) {
      auto& cur = paths_[n];
      for (const Path& p : paths_[n - 1]) {
        const ObjId end = n == 1 ? p.start : c.cod(p.arrows.back());
        std::vector<MorId> next(c.outgoing(end).begin(), c.outgoing(end).end());
        std::sort(next.begin(), next.end());
        for (MorId a : next) {
          if (nondegenerate_only_ && c.is_identity(a)) continue;
          Path q = p;
          q.arrows.push_back(a);
          cur.push_back(std::move(q));
          if (cur.size() > cap)
            throw Error(ErrorKind::PathCapExceeded, "more than " + std::to_string(cap) + " paths in degree " +
                                                        std::to_string(n) + " of " + c.name());
        }
      }
      for (std::size_t k = 0; k < cur.size(); ++k) index_[n].emplace(cur[k].arrows, k);
    }
  }

  const FinCat& category() const noexcept { return *C_; }
  const CatPtr& category_ptr() const noexcept { return C_; }
  std::size_t max_degree() const noexcept { return N_; }
  bool nondegenerate_only() const noexcept { return nondegenerate_only_; }

  std::size_t count(std::size_t n) const { return paths_.at(n).size(); }
  const Path& path(std::size_t n, std::size_t k) const { return paths_[n][k]; }
  const std::vector<Path>& paths(std::size_t n) const { return paths_.at(n); }

  /// Index of a path in this table, or kNone (absent or beyond max degree).
  std::size_t find(const Path& p) const {
    const std::size_t n = p.length();
    if (n > N_) return kNone;
    if (n == 0) return p.start < C_->num_objects() ? p.start : kNone;
    auto it = index_[n].find(p.arrows);
    return it == index_[n].end() ? kNone : it->second;
  }

  bool is_degenerate(std::size_t n, std::size_t k) const {
    for (MorId a : paths_[n][k].arrows)
      if (C_->is_identity(a)) return true;
    return false;
  }

  ObjId object_at(std::size_t n, std::size_t k, std::size_t i) const { return path_object(*C_, paths_[n][k], i); }
  ObjId first_object(std::size_t n, std::size_t k) const { return paths_[n][k].start; }
  ObjId last_object(std::size_t n, std::size_t k) const { return object_at(n, k, n); }

  /// The path d_i(σ): deletes c_i (composing at inner positions).
  Path face_path(std::size_t n, std::size_t k, std::size_t i) const {
    const Path& p = paths_[n][k];
    if (n == 0 || i > n) throw Error(ErrorKind::InvalidArgument, "face index out of range");
    Path q;
    if (n == 1) {
      q.start = i == 0 ? C_->cod(p.arrows[0]) : p.start;
      return q;
    }
    if (i == 0) {
      q.start = C_->cod(p.arrows[0]);
      q.arrows.assign(p.arrows.begin() + 1, p.arrows.end());
    } else if (i == n) {
      q.start = p.start;
      q.arrows.assign(p.arrows.begin(), p.arrows.end() - 1);
    } else {
      q.start = p.start;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i - 1) {
          q.arrows.push_back(C_->compose(p.arrows[i], p.arrows[i - 1]));
          ++j;
        } else {
          q.arrows.push_back(p.arrows[j]);
        }
      }
    }
    return q;
  }

  /// Index of d_i(σ) in degree n-1, or kNone when it is not in the table.
  std::size_t face(std::size_t n, std::size_t k, std::size_t i) const { return find(face_path(n, k, i)); }

  /// s_i(σ): inserts id_{c_i}. Requires n < max degree and an all-path table.
  std::size_t degeneracy(std::size_t n, std::size_t k, std::size_t i) const {
    if (n >= N_ || i > n) throw Error(ErrorKind::InvalidArgument, "degeneracy index out of range");
    const Path& p = paths_[n][k];
    Path q{p.start, p.arrows};
    q.arrows.insert(q.arrows.begin() + static_cast<std::ptrdiff_t>(i), C_->identity(object_at(n, k, i)));
    return find(q);
  }

 private:
  CatPtr C_;
  std::size_t N_;
  bool nondegenerate_only_;
  std::vector<std::vector<Path>> paths_;
  std::vector<std::unordered_map<std::vector<MorId>, std::size_t, detail::ArrowSeqHash>> index_;
};

inline PathTable nerve(const CatPtr& C, std::size_t max_degree) { return PathTable(C, max_degree); }

}  // namespace catcohom
