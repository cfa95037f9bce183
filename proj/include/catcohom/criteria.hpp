#pragma once
/**
 * Preservation criteria for inverse images along a functor, decided at a
 * finite level N. Each report lists failing anchors in enumeration order.
 */

#include <optional>
#include <string>
#include <vector>

#include "catcohom/cohomology.hpp"
#include "catcohom/fincat.hpp"
#include "catcohom/kan.hpp"
#include "catcohom/nerve.hpp"

namespace catcohom {

enum class Reason { Empty, Disconnected, HomologyNonzero, ComparisonNotIso, DerivedLanNonzero };

inline std::string to_string(Reason r) {
  switch (r) {
    case Reason::Empty: return "empty";
    case Reason::Disconnected: return "disconnected";
    case Reason::HomologyNonzero: return "homology-nonzero";
    case Reason::ComparisonNotIso: return "comparison-not-iso";
    case Reason::DerivedLanNonzero: return "derived-lan-nonzero";
  }
  return "?";
}

struct Witness {
  std::string anchor;
  Reason reason;
  std::optional<std::size_t> degree;  // for homology and derived-lan reasons
};

struct AnchorGroups {
  std::string anchor;
  std::vector<AbGroup> groups;  // H_0 .. H_N (or derived values q = 0 .. N)
};

struct CriterionReport {
  std::string criterion;
  std::size_t level = 0;
  std::optional<std::size_t> simplex_bound;
  std::vector<Witness> witnesses;
  std::vector<AnchorGroups> groups;

  bool pass() const noexcept { return witnesses.empty(); }
};

namespace detail {
/// Nonempty, connected and H_n = 0 for 1 ≤ n ≤ N; records the first failure.
inline void probe_category(CriterionReport& r, const std::string& anchor, const CatPtr& K, std::size_t N) {
  if (K->empty()) {
    r.witnesses.push_back({anchor, Reason::Empty, std::nullopt});
    r.groups.push_back({anchor, std::vector<AbGroup>(N + 1)});
    return;
  }
  const auto groups = nerve_homology_up_to(K, N);
  r.groups.push_back({anchor, groups});
  if (connected_components(*K).size() > 1) {
    r.witnesses.push_back({anchor, Reason::Disconnected, std::nullopt});
    return;
  }
  for (std::size_t n = 1; n <= N; ++n)
    if (!groups[n].is_zero()) {
      r.witnesses.push_back({anchor, Reason::HomologyNonzero, n});
      return;
    }
}

inline void require_level(std::size_t N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "criterion level must be at least 1");
}

inline CriterionReport comma_check(const FunctorMap& f, std::size_t N, CommaSide side, const char* tag) {
  require_level(N);
  CriterionReport r{tag, N, std::nullopt, {}, {}};
  const FinCat& D = *f.target;
  for (ObjId d = 0; d < D.num_objects(); ++d) probe_category(r, D.object_name(d), comma(f, d, side).category, N);
  return r;
}
}  // namespace detail

/// Every f↓d is nonempty, connected and acyclic through degree N.
inline CriterionReport verdier_check(const FunctorMap& f, std::size_t N) {
  return detail::comma_check(f, N, CommaSide::Left, "verdier");
}

/// Every d↓f is nonempty, connected and acyclic through degree N.
inline CriterionReport oberst_colim_check(const FunctorMap& f, std::size_t N) {
  return detail::comma_check(f, N, CommaSide::Right, "oberst");
}

/// Every f⟨α⟩ is nonempty, connected and acyclic through degree N.
inline CriterionReport bw_preservation_check(const FunctorMap& f, std::size_t N) {
  detail::require_level(N);
  CriterionReport r{"bw", N, std::nullopt, {}, {}};
  const FinCat& D = *f.target;
  for (MorId a = 0; a < D.num_morphisms(); ++a)
    detail::probe_category(r, D.morphism_name(a), f_angle(f, a).category, N);
  return r;
}

/// Lan along f^op x f of ZC compares isomorphically to ZD, and its derived values vanish in 1..N.
inline CriterionReport hm_preservation_check(const FunctorMap& f, std::size_t N) {
  detail::require_level(N);
  CriterionReport r{"hm", N, std::nullopt, {}, {}};
  const Diagram ZC = zc_bimodule(f.source);
  const Diagram ZD = zc_bimodule(f.target);
  const CatPtr opC = share(opposite(*f.source));
  const CatPtr opD = share(opposite(*f.target));
  const FunctorMap fop = opposite_functor(f, opC, opD);
  const FunctorMap g = product_functor(fop, f, ZC.base, ZD.base);
  const FinCat& P = *ZD.base;
  const auto comparison = compare_to(g, ZC, ZD);
  std::vector<std::vector<AbGroup>> derived(P.num_objects());
  for (std::size_t q = 0; q <= N; ++q) {
    const auto values = derived_lan_values(g, ZC, q);
    for (ObjId x = 0; x < P.num_objects(); ++x) derived[x].push_back(values[x]);
  }
  for (ObjId x = 0; x < P.num_objects(); ++x) {
    r.groups.push_back({P.object_name(x), derived[x]});
    if (!comparison[x].is_iso) {
      r.witnesses.push_back({P.object_name(x), Reason::ComparisonNotIso, std::nullopt});
      continue;
    }
    for (std::size_t q = 1; q <= N; ++q)
      if (!derived[x][q].is_zero()) {
        r.witnesses.push_back({P.object_name(x), Reason::DerivedLanNonzero, q});
        break;
      }
  }
  return r;
}

inline std::size_t default_simplex_bound(const FunctorMap& f) { return 2 * f.target->num_objects(); }

/// Every ←f(σ) with σ of length ≤ M is nonempty, connected and acyclic through degree N.
inline CriterionReport thomason_preservation_check(const FunctorMap& f, std::size_t N, std::size_t M) {
  detail::require_level(N);
  CriterionReport r{"thomason", N, M, {}, {}};
  const PathTable T(f.target, M);
  for (std::size_t n = 0; n <= M; ++n)
    for (const Path& sigma : T.paths(n)) {
      detail::probe_category(r, path_label(*f.target, sigma), share(simplex_pullback(f, sigma)), N);
    }
  return r;
}

inline CriterionReport thomason_preservation_check(const FunctorMap& f, std::size_t N) {
  return thomason_preservation_check(f, N, default_simplex_bound(f));
}

}  // namespace catcohom
