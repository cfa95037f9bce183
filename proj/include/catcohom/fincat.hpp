#pragma once
/**
 * Finite categories given by explicit object/morphism lists and a total
 * composition table, functors between them, and the derived categories
 * the cohomology theories are built on.
 *
 * Naming of derived categories:
 *   op(C)      same names as C
 *   prod(C,D)  objects "(a,b)", morphisms "(u,v)", identities "id_(a,b)"
 *   fact(C)    objects are morphism names of C, morphisms "u|v"
 *              (suffixed "@f" with the source object when ambiguous),
 *              identities "id_<object>"
 */

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catcohom/error.hpp"

namespace catcohom {

using ObjId = std::size_t;
using MorId = std::size_t;
inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct MorphismRecord {
  std::string name;
  ObjId dom;
  ObjId cod;
};

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

/// Component data kept for product categories, used to split morphisms.
struct ProductInfo {
  CatPtr left;
  CatPtr right;
  std::vector<std::pair<ObjId, ObjId>> objects;
  std::vector<std::pair<MorId, MorId>> morphisms;
};

class FinCat {
 public:
  FinCat() = default;

  /**
   * Builds a category from complete tables and checks every axiom.
   * `comp[g * m + f]` is g∘f for composable pairs and kNone otherwise.
   */
  FinCat(std::string name, std::vector<std::string> objects, std::vector<MorphismRecord> morphisms,
         std::vector<MorId> identities, std::vector<MorId> comp)
      : name_(std::move(name)),
        objects_(std::move(objects)),
        morphisms_(std::move(morphisms)),
        identity_(std::move(identities)),
        comp_(std::move(comp)) {
    index();
    check_axioms();
  }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::size_t num_objects() const noexcept { return objects_.size(); }
  std::size_t num_morphisms() const noexcept { return morphisms_.size(); }
  bool empty() const noexcept { return objects_.empty(); }

  const std::string& object_name(ObjId a) const { return objects_.at(a); }
  const std::string& morphism_name(MorId m) const { return morphisms_.at(m).name; }
  const MorphismRecord& morphism(MorId m) const { return morphisms_.at(m); }
  ObjId dom(MorId m) const { return morphisms_[m].dom; }
  ObjId cod(MorId m) const { return morphisms_[m].cod; }
  MorId identity(ObjId a) const { return identity_.at(a); }
  bool is_identity(MorId m) const { return identity_[dom(m)] == m; }

  bool composable(MorId g, MorId f) const { return dom(g) == cod(f); }

  /// g∘f
  MorId compose(MorId g, MorId f) const {
    MorId h = comp_[g * num_morphisms() + f];
    if (h == kNone)
      throw Error(ErrorKind::InvalidArgument,
                  "morphisms " + morphism_name(g) + " and " + morphism_name(f) + " are not composable");
    return h;
  }

  std::span<const MorId> hom(ObjId a, ObjId b) const { return hom_[a * num_objects() + b]; }
  std::span<const MorId> outgoing(ObjId a) const { return out_[a]; }
  std::span<const MorId> incoming(ObjId b) const { return in_[b]; }

  std::optional<ObjId> find_object(const std::string& n) const {
    auto it = object_index_.find(n);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<MorId> find_morphism(const std::string& n) const {
    auto it = morphism_index_.find(n);
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
  }
  ObjId object(const std::string& n) const {
    if (auto o = find_object(n)) return *o;
    throw Error(ErrorKind::UnknownName, "no object '" + n + "' in category " + name_);
  }
  MorId morphism_id(const std::string& n) const {
    if (auto m = find_morphism(n)) return *m;
    throw Error(ErrorKind::UnknownName, "no morphism '" + n + "' in category " + name_);
  }

  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<MorphismRecord>& morphisms() const noexcept { return morphisms_; }
  const std::vector<MorId>& comp_table() const noexcept { return comp_; }
  const std::vector<MorId>& identities() const noexcept { return identity_; }

  const ProductInfo* product_info() const noexcept { return product_.get(); }
  void set_product_info(std::shared_ptr<const ProductInfo> info) { product_ = std::move(info); }

  /// Structural equality: names, endpoints and composition (the category name is ignored).
  friend bool operator==(const FinCat& a, const FinCat& b) {
    if (a.objects_ != b.objects_ || a.identity_ != b.identity_ || a.comp_ != b.comp_) return false;
    if (a.morphisms_.size() != b.morphisms_.size()) return false;
    for (std::size_t i = 0; i < a.morphisms_.size(); ++i) {
      const auto& x = a.morphisms_[i];
      const auto& y = b.morphisms_[i];
      if (x.name != y.name || x.dom != y.dom || x.cod != y.cod) return false;
    }
    return true;
  }

 private:
  void index() {
    const std::size_t n = objects_.size(), m = morphisms_.size();
    if (identity_.size() != n) throw Error(ErrorKind::IdentityViolation, "one identity per object required");
    if (comp_.size() != m * m) throw Error(ErrorKind::InvalidArgument, "composition table has wrong size");
    for (ObjId a = 0; a < n; ++a)
      if (!object_index_.emplace(objects_[a], a).second)
        throw Error(ErrorKind::InvalidArgument, "duplicate object name '" + objects_[a] + "'");
    hom_.assign(n * n, {});
    out_.assign(n, {});
    in_.assign(n, {});
    for (MorId f = 0; f < m; ++f) {
      const auto& r = morphisms_[f];
      if (r.dom >= n || r.cod >= n)
        throw Error(ErrorKind::DanglingEndpoint, "morphism '" + r.name + "' has an endpoint outside the object list");
      if (!morphism_index_.emplace(r.name, f).second)
        throw Error(ErrorKind::InvalidArgument, "duplicate morphism name '" + r.name + "'");
      hom_[r.dom * n + r.cod].push_back(f);
      out_[r.dom].push_back(f);
      in_[r.cod].push_back(f);
    }
  }

  void check_axioms() const {
    const std::size_t m = morphisms_.size();
    for (ObjId a = 0; a < objects_.size(); ++a) {
      const MorId i = identity_[a];
      if (i >= m || dom(i) != a || cod(i) != a)
        throw Error(ErrorKind::IdentityViolation, "identity of '" + objects_[a] + "' is not an endomorphism of it");
    }
    for (MorId g = 0; g < m; ++g)
      for (MorId f = 0; f < m; ++f) {
        const MorId h = comp_[g * m + f];
        if (!composable(g, f)) {
          if (h != kNone)
            throw Error(ErrorKind::DanglingEndpoint,
                        "composite recorded for non-composable pair (" + morphisms_[g].name + ", " +
                            morphisms_[f].name + ")");
          continue;
        }
        if (h == kNone)
          throw Error(ErrorKind::MissingComposite,
                      "no composite for (" + morphisms_[g].name + ", " + morphisms_[f].name + ")");
        if (h >= m || dom(h) != dom(f) || cod(h) != cod(g))
          throw Error(ErrorKind::DanglingEndpoint, "composite of (" + morphisms_[g].name + ", " +
                                                       morphisms_[f].name + ") has wrong endpoints");
      }
    for (MorId f = 0; f < m; ++f) {
      if (comp_[f * m + identity_[dom(f)]] != f || comp_[identity_[cod(f)] * m + f] != f)
        throw Error(ErrorKind::IdentityViolation, "identity law fails for '" + morphisms_[f].name + "'");
    }
    for (MorId h = 0; h < m; ++h)
      for (MorId g : in_[dom(h)])
        for (MorId f : in_[dom(g)]) {
          const MorId left = comp_[h * m + comp_[g * m + f]];
          const MorId right = comp_[comp_[h * m + g] * m + f];
          if (left != right)
            throw Error(ErrorKind::AssociativityViolation,
                        "(" + morphisms_[h].name + ", " + morphisms_[g].name + ", " + morphisms_[f].name + ")");
        }
  }

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<MorphismRecord> morphisms_;
  std::vector<MorId> identity_;
  std::vector<MorId> comp_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
  std::vector<std::vector<MorId>> hom_;
  std::vector<std::vector<MorId>> out_;
  std::vector<std::vector<MorId>> in_;
  std::shared_ptr<const ProductInfo> product_;
};

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

// ---------------------------------------------------------------------------
// Raw descriptions and validation

struct RawMorphism {
  std::string name;
  std::string dom;
  std::string cod;
};

struct RawComposite {
  std::string outer;  // g
  std::string inner;  // f
  std::string result;  // h = g∘f
};

struct RawCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<RawMorphism> morphisms;  // non-identity morphisms
  std::vector<RawComposite> composites;
};

inline std::string identity_name(const std::string& object) { return "id_" + object; }

/// Synthesizes identities, fills the composition table and checks all axioms.
inline FinCat validate(const RawCategory& raw) {
  std::vector<MorphismRecord> mors;
  std::vector<MorId> ids;
  std::unordered_map<std::string, ObjId> obj_index;
  for (ObjId a = 0; a < raw.objects.size(); ++a) obj_index.emplace(raw.objects[a], a);
  for (ObjId a = 0; a < raw.objects.size(); ++a) {
    ids.push_back(mors.size());
    mors.push_back({identity_name(raw.objects[a]), a, a});
  }
  std::unordered_map<std::string, MorId> mor_index;
  for (MorId i = 0; i < mors.size(); ++i) mor_index.emplace(mors[i].name, i);
  for (const auto& r : raw.morphisms) {
    auto d = obj_index.find(r.dom), c = obj_index.find(r.cod);
    if (d == obj_index.end() || c == obj_index.end())
      throw Error(ErrorKind::DanglingEndpoint, "morphism '" + r.name + "' refers to an unknown object");
    if (mor_index.count(r.name))
      throw Error(ErrorKind::InvalidArgument, "duplicate morphism name '" + r.name + "'");
    mor_index.emplace(r.name, mors.size());
    mors.push_back({r.name, d->second, c->second});
  }
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (mors[g].dom != mors[f].cod) continue;
      if (g == ids[mors[g].dom]) comp[g * m + f] = f;
      else if (f == ids[mors[f].dom]) comp[g * m + f] = g;
    }
  auto lookup = [&](const std::string& n) {
    auto it = mor_index.find(n);
    if (it == mor_index.end()) throw Error(ErrorKind::DanglingEndpoint, "composite mentions unknown morphism '" + n + "'");
    return it->second;
  };
  for (const auto& c : raw.composites) {
    const MorId g = lookup(c.outer), f = lookup(c.inner), h = lookup(c.result);
    const std::string triple = "(" + c.outer + ", " + c.inner + ", " + c.result + ")";
    if (mors[g].dom != mors[f].cod)
      throw Error(ErrorKind::DanglingEndpoint, "composite of non-composable pair " + triple);
    if (mors[h].dom != mors[f].dom || mors[h].cod != mors[g].cod)
      throw Error(ErrorKind::DanglingEndpoint, "composite has wrong endpoints " + triple);
    MorId& slot = comp[g * m + f];
    if (slot != kNone && slot != h) {
      const bool involves_identity = g == ids[mors[g].dom] || f == ids[mors[f].dom];
      throw Error(involves_identity ? ErrorKind::IdentityViolation : ErrorKind::InvalidArgument,
                  "conflicting composite " + triple);
    }
    slot = h;
  }
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (mors[g].dom == mors[f].cod && comp[g * m + f] == kNone)
        throw Error(ErrorKind::MissingComposite, "no composite declared for (" + mors[g].name + ", " + mors[f].name + ")");
  return FinCat(raw.name, raw.objects, std::move(mors), std::move(ids), std::move(comp));
}

// ---------------------------------------------------------------------------
// Functors

struct FunctorMap {
  std::string name;
  CatPtr source;
  CatPtr target;
  std::vector<ObjId> obj_map;
  std::vector<MorId> mor_map;

  ObjId obj(ObjId a) const { return obj_map[a]; }
  MorId mor(MorId f) const { return mor_map[f]; }
};

/// Exhaustive check of dom/cod, identities and composition.
inline void check_functor(const FunctorMap& F) {
  const FinCat& C = *F.source;
  const FinCat& D = *F.target;
  if (F.obj_map.size() != C.num_objects() || F.mor_map.size() != C.num_morphisms())
    throw Error(ErrorKind::NotFunctorial, "functor " + F.name + " is not defined everywhere");
  for (ObjId a = 0; a < C.num_objects(); ++a) {
    if (F.obj_map[a] >= D.num_objects())
      throw Error(ErrorKind::NotFunctorial, "object image out of range");
    if (F.mor_map[C.identity(a)] != D.identity(F.obj_map[a]))
      throw Error(ErrorKind::NotFunctorial, "identity of '" + C.object_name(a) + "' not preserved");
  }
  for (MorId f = 0; f < C.num_morphisms(); ++f) {
    const MorId u = F.mor_map[f];
    if (u >= D.num_morphisms() || D.dom(u) != F.obj_map[C.dom(f)] || D.cod(u) != F.obj_map[C.cod(f)])
      throw Error(ErrorKind::NotFunctorial, "endpoints of '" + C.morphism_name(f) + "' not preserved");
  }
  for (MorId g = 0; g < C.num_morphisms(); ++g)
    for (MorId f : C.incoming(C.dom(g)))
      if (F.mor_map[C.compose(g, f)] != D.compose(F.mor_map[g], F.mor_map[f]))
        throw Error(ErrorKind::NotFunctorial,
                    "composite (" + C.morphism_name(g) + ", " + C.morphism_name(f) + ") not preserved");
}

inline FunctorMap make_functor(std::string name, CatPtr source, CatPtr target, std::vector<ObjId> obj_map,
                               std::vector<MorId> mor_map) {
  FunctorMap F{std::move(name), std::move(source), std::move(target), std::move(obj_map), std::move(mor_map)};
  check_functor(F);
  return F;
}

inline FunctorMap identity_functor(const CatPtr& C) {
  std::vector<ObjId> o(C->num_objects());
  std::vector<MorId> m(C->num_morphisms());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
  return FunctorMap{"id", C, C, std::move(o), std::move(m)};
}

/// g∘f
inline FunctorMap compose(const FunctorMap& g, const FunctorMap& f) {
  if (!(*f.target == *g.source)) throw Error(ErrorKind::BaseMismatch, "functors are not composable");
  FunctorMap h{g.name + "." + f.name, f.source, g.target, {}, {}};
  for (ObjId a : f.obj_map) h.obj_map.push_back(g.obj_map[a]);
  for (MorId u : f.mor_map) h.mor_map.push_back(g.mor_map[u]);
  return h;
}

// ---------------------------------------------------------------------------
// Basic constructions

/// [n] = {0 < 1 < ... < n}; the morphism i -> j (i < j) is named "i<j".
inline FinCat ordinal(std::size_t n) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i <= n; ++i) objs.push_back(std::to_string(i));
  std::vector<MorphismRecord> mors;
  std::vector<MorId> ids(n + 1);
  std::map<std::pair<std::size_t, std::size_t>, MorId> at;
  for (std::size_t i = 0; i <= n; ++i) {
    ids[i] = mors.size();
    at[{i, i}] = mors.size();
    mors.push_back({identity_name(objs[i]), i, i});
  }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      at[{i, j}] = mors.size();
      mors.push_back({objs[i] + "<" + objs[j], i, j});
    }
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (mors[g].dom == mors[f].cod) comp[g * m + f] = at[{mors[f].dom, mors[g].cod}];
  return FinCat("[" + std::to_string(n) + "]", std::move(objs), std::move(mors), std::move(ids), std::move(comp));
}

inline FinCat opposite(const FinCat& C) {
  std::vector<MorphismRecord> mors;
  for (const auto& r : C.morphisms()) mors.push_back({r.name, r.cod, r.dom});
  const std::size_t m = C.num_morphisms();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (mors[g].dom == mors[f].cod) comp[g * m + f] = C.compose(f, g);
  return FinCat("op(" + C.name() + ")", C.objects(), std::move(mors), C.identities(), std::move(comp));
}

inline FinCat product(const CatPtr& C, const CatPtr& D) {
  auto info = std::make_shared<ProductInfo>();
  info->left = C;
  info->right = D;
  std::vector<std::string> objs;
  for (ObjId a = 0; a < C->num_objects(); ++a)
    for (ObjId b = 0; b < D->num_objects(); ++b) {
      objs.push_back("(" + C->object_name(a) + "," + D->object_name(b) + ")");
      info->objects.emplace_back(a, b);
    }
  const std::size_t nd = D->num_objects(), md = D->num_morphisms();
  std::vector<MorphismRecord> mors;
  for (MorId u = 0; u < C->num_morphisms(); ++u)
    for (MorId v = 0; v < md; ++v) {
      const ObjId dom = C->dom(u) * nd + D->dom(v);
      const ObjId cod = C->cod(u) * nd + D->cod(v);
      const bool is_id = C->is_identity(u) && D->is_identity(v);
      mors.push_back({is_id ? identity_name(objs[dom]) : "(" + C->morphism_name(u) + "," + D->morphism_name(v) + ")",
                      dom, cod});
      info->morphisms.emplace_back(u, v);
    }
  std::vector<MorId> ids;
  for (const auto& [a, b] : info->objects) ids.push_back(C->identity(a) * md + D->identity(b));
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (mors[g].dom == mors[f].cod) {
        const auto [gu, gv] = info->morphisms[g];
        const auto [fu, fv] = info->morphisms[f];
        comp[g * m + f] = C->compose(gu, fu) * md + D->compose(gv, fv);
      }
  FinCat P("prod(" + C->name() + "," + D->name() + ")", std::move(objs), std::move(mors), std::move(ids),
           std::move(comp));
  P.set_product_info(std::move(info));
  return P;
}

/// Coproduct; object and morphism names get the suffixes ".1" / ".2" when they collide.
inline FinCat disjoint_union(const FinCat& C, const FinCat& D) {
  auto clash = [&](const std::string& n, bool obj) {
    return obj ? (C.find_object(n) && D.find_object(n)) : (C.find_morphism(n) && D.find_morphism(n));
  };
  std::vector<std::string> objs;
  for (const auto& o : C.objects()) objs.push_back(clash(o, true) ? o + ".1" : o);
  for (const auto& o : D.objects()) objs.push_back(clash(o, true) ? o + ".2" : o);
  std::vector<MorphismRecord> mors;
  const std::size_t nc = C.num_objects(), mc = C.num_morphisms();
  for (MorId f = 0; f < mc; ++f) {
    const auto& r = C.morphism(f);
    mors.push_back({C.is_identity(f) ? identity_name(objs[r.dom]) : (clash(r.name, false) ? r.name + ".1" : r.name),
                    r.dom, r.cod});
  }
  for (MorId f = 0; f < D.num_morphisms(); ++f) {
    const auto& r = D.morphism(f);
    mors.push_back({D.is_identity(f) ? identity_name(objs[nc + r.dom])
                                     : (clash(r.name, false) ? r.name + ".2" : r.name),
                    nc + r.dom, nc + r.cod});
  }
  std::vector<MorId> ids = C.identities();
  for (MorId i : D.identities()) ids.push_back(mc + i);
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < mc; ++g)
    for (MorId f : C.incoming(C.dom(g))) comp[g * m + f] = C.compose(g, f);
  for (MorId g = 0; g < D.num_morphisms(); ++g)
    for (MorId f : D.incoming(D.dom(g))) comp[(mc + g) * m + mc + f] = mc + D.compose(g, f);
  return FinCat(C.name() + "+" + D.name(), std::move(objs), std::move(mors), std::move(ids), std::move(comp));
}

inline FunctorMap opposite_functor(const FunctorMap& F, const CatPtr& source_op, const CatPtr& target_op) {
  return FunctorMap{"op(" + F.name + ")", source_op, target_op, F.obj_map, F.mor_map};
}

/// F×G between product categories built with `product`.
inline FunctorMap product_functor(const FunctorMap& F, const FunctorMap& G, const CatPtr& source, const CatPtr& target) {
  const ProductInfo* si = source->product_info();
  const ProductInfo* ti = target->product_info();
  if (!si || !ti) throw Error(ErrorKind::InvalidArgument, "product_functor needs product categories");
  const std::size_t nd = ti->right->num_objects(), md = ti->right->num_morphisms();
  FunctorMap H{"(" + F.name + "x" + G.name + ")", source, target, {}, {}};
  for (const auto& [a, b] : si->objects) H.obj_map.push_back(F.obj(a) * nd + G.obj(b));
  for (const auto& [u, v] : si->morphisms) H.mor_map.push_back(F.mor(u) * md + G.mor(v));
  return H;
}

// ---------------------------------------------------------------------------
// Factorization category

struct Factorization {
  CatPtr category;
  FunctorMap dom_cod;  // fact(C) -> op(C) x C
  FunctorMap cod;      // fact(C) -> C
  /// Per morphism of fact(C): the pair (u, v) of C with target = v∘source∘u.
  std::vector<std::pair<MorId, MorId>> squares;

  /// Morphism (u, v) out of object `source`, or kNone.
  MorId square(ObjId source, MorId u, MorId v) const {
    auto it = index.find({source, u, v});
    return it == index.end() ? kNone : it->second;
  }
  std::map<std::tuple<ObjId, MorId, MorId>, MorId> index;
};

inline Factorization factorization(const CatPtr& Cp) {
  const FinCat& C = *Cp;
  const std::size_t mc = C.num_morphisms();
  std::vector<std::string> objs;
  for (MorId f = 0; f < mc; ++f) objs.push_back(C.morphism_name(f));

  Factorization F;
  struct Raw {
    ObjId src, dst;
    MorId u, v;
  };
  std::vector<Raw> raws;
  std::map<std::pair<MorId, MorId>, std::size_t> pair_count;
  for (MorId f = 0; f < mc; ++f)
    for (MorId u : C.incoming(C.dom(f)))
      for (MorId v : C.outgoing(C.cod(f))) {
        const MorId g = C.compose(v, C.compose(f, u));
        raws.push_back({f, g, u, v});
        ++pair_count[{u, v}];
      }
  std::vector<MorphismRecord> mors;
  std::vector<MorId> ids(mc, kNone);
  for (std::size_t k = 0; k < raws.size(); ++k) {
    const auto& r = raws[k];
    const bool is_id = C.is_identity(r.u) && C.is_identity(r.v);
    std::string n;
    if (is_id) {
      n = identity_name(objs[r.src]);
      ids[r.src] = k;
    } else {
      n = C.morphism_name(r.u) + "|" + C.morphism_name(r.v);
      if (pair_count[{r.u, r.v}] > 1) n += "@" + objs[r.src];
    }
    mors.push_back({std::move(n), r.src, r.dst});
    F.squares.emplace_back(r.u, r.v);
    F.index[{r.src, r.u, r.v}] = k;
  }
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  // (u',v')∘(u,v) = (u∘u', v'∘v)
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (mors[g].dom != mors[f].cod) continue;
      const auto [u, v] = F.squares[f];
      const auto [u2, v2] = F.squares[g];
      comp[g * m + f] = F.index.at({mors[f].dom, C.compose(u, u2), C.compose(v2, v)});
    }
  F.category = share(FinCat("fact(" + C.name() + ")", std::move(objs), std::move(mors), std::move(ids), std::move(comp)));

  auto opC = share(opposite(C));
  auto prod = share(product(opC, Cp));
  F.dom_cod = FunctorMap{"(dom,cod)", F.category, prod, {}, {}};
  F.cod = FunctorMap{"cod", F.category, Cp, {}, {}};
  const std::size_t nc = C.num_objects();
  for (MorId f = 0; f < mc; ++f) {
    F.dom_cod.obj_map.push_back(C.dom(f) * nc + C.cod(f));
    F.cod.obj_map.push_back(C.cod(f));
  }
  for (const auto& [u, v] : F.squares) {
    F.dom_cod.mor_map.push_back(u * mc + v);
    F.cod.mor_map.push_back(v);
  }
  check_functor(F.dom_cod);
  check_functor(F.cod);
  return F;
}

/// The functor fact(f): fact(C) -> fact(D), m ↦ f(m), (u,v) ↦ (f(u), f(v)).
inline FunctorMap factorization_of_functor(const FunctorMap& f, const Factorization& FC, const Factorization& FD) {
  FunctorMap out{"fact(" + f.name + ")", FC.category, FD.category, {}, {}};
  for (MorId m = 0; m < f.source->num_morphisms(); ++m) out.obj_map.push_back(f.mor(m));
  for (MorId k = 0; k < FC.squares.size(); ++k) {
    const auto [u, v] = FC.squares[k];
    const ObjId src = FC.category->dom(k);
    const MorId img = FD.square(f.mor(src), f.mor(u), f.mor(v));
    if (img == kNone) throw Error(ErrorKind::NotFunctorial, "square image missing");
    out.mor_map.push_back(img);
  }
  check_functor(out);
  return out;
}

// ---------------------------------------------------------------------------
// Comma categories, factorizations through f, simplex pullbacks

enum class CommaSide { Left, Right };

struct CommaCategory {
  CatPtr category;
  FunctorMap projection;  // to f.source
  /// Object k is (source object, structure morphism in the target).
  std::vector<std::pair<ObjId, MorId>> objects;
};

/**
 * Left: f↓d with objects (c, b: f(c) -> d), morphisms a: c -> c' with b'∘f(a) = b.
 * Right: d↓f with objects (c, b: d -> f(c)), morphisms a with f(a)∘b = b'.
 */
inline CommaCategory comma(const FunctorMap& f, ObjId anchor, CommaSide side) {
  const FinCat& C = *f.source;
  const FinCat& D = *f.target;
  if (anchor >= D.num_objects()) throw Error(ErrorKind::InvalidArgument, "anchor outside target");
  CommaCategory K;
  std::vector<std::string> objs;
  for (ObjId c = 0; c < C.num_objects(); ++c) {
    auto homs = side == CommaSide::Left ? D.hom(f.obj(c), anchor) : D.hom(anchor, f.obj(c));
    for (MorId b : homs) {
      K.objects.emplace_back(c, b);
      objs.push_back("(" + C.object_name(c) + "," + D.morphism_name(b) + ")");
    }
  }
  std::map<std::pair<ObjId, MorId>, ObjId> obj_at;
  for (ObjId k = 0; k < K.objects.size(); ++k) obj_at[K.objects[k]] = k;
  std::vector<MorphismRecord> mors;
  std::vector<MorId> under;  // underlying morphism of C
  std::map<std::tuple<ObjId, ObjId, MorId>, MorId> mor_at;
  std::vector<MorId> ids(K.objects.size(), kNone);
  for (ObjId s = 0; s < K.objects.size(); ++s)
    for (ObjId t = 0; t < K.objects.size(); ++t) {
      const auto [c, b] = K.objects[s];
      const auto [c2, b2] = K.objects[t];
      for (MorId a : C.hom(c, c2)) {
        const bool ok = side == CommaSide::Left ? D.compose(b2, f.mor(a)) == b : D.compose(f.mor(a), b) == b2;
        if (!ok) continue;
        const bool is_id = s == t && C.is_identity(a);
        if (is_id) ids[s] = mors.size();
        mor_at[{s, t, a}] = mors.size();
        mors.push_back({is_id ? identity_name(objs[s]) : C.morphism_name(a) + ":" + objs[s] + "->" + objs[t], s, t});
        under.push_back(a);
      }
    }
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId h = 0; h < m; ++h)
      if (mors[g].dom == mors[h].cod)
        comp[g * m + h] = mor_at.at({mors[h].dom, mors[g].cod, C.compose(under[g], under[h])});
  const std::string label = side == CommaSide::Left ? f.name + "/" + D.object_name(anchor)
                                                    : D.object_name(anchor) + "/" + f.name;
  K.category = share(FinCat(label, std::move(objs), std::move(mors), std::move(ids), std::move(comp)));
  K.projection = FunctorMap{"Q", K.category, f.source, {}, under};
  for (const auto& [c, b] : K.objects) K.projection.obj_map.push_back(c);
  return K;
}

struct AngleCategory {
  CatPtr category;
  /// Object k is (b, c, b') with b: d -> f(c), b': f(c) -> d', b'∘b = alpha.
  std::vector<std::tuple<MorId, ObjId, MorId>> objects;
  std::vector<MorId> underlying;  // per morphism, the morphism ν of the source
};

/// f⟨alpha⟩: factorizations of alpha through images of f.
inline AngleCategory f_angle(const FunctorMap& f, MorId alpha) {
  const FinCat& C = *f.source;
  const FinCat& D = *f.target;
  const ObjId d = D.dom(alpha), d2 = D.cod(alpha);
  AngleCategory A;
  std::vector<std::string> objs;
  for (ObjId c = 0; c < C.num_objects(); ++c)
    for (MorId b : D.hom(d, f.obj(c)))
      for (MorId b2 : D.hom(f.obj(c), d2))
        if (D.compose(b2, b) == alpha) {
          A.objects.emplace_back(b, c, b2);
          objs.push_back("(" + D.morphism_name(b) + "," + C.object_name(c) + "," + D.morphism_name(b2) + ")");
        }
  std::vector<MorphismRecord> mors;
  std::map<std::tuple<ObjId, ObjId, MorId>, MorId> mor_at;
  std::vector<MorId> ids(A.objects.size(), kNone);
  for (ObjId s = 0; s < A.objects.size(); ++s)
    for (ObjId t = 0; t < A.objects.size(); ++t) {
      const auto [b, c, b2] = A.objects[s];
      const auto [g, c2, g2] = A.objects[t];
      for (MorId nu : C.hom(c, c2)) {
        if (D.compose(f.mor(nu), b) != g || D.compose(g2, f.mor(nu)) != b2) continue;
        const bool is_id = s == t && C.is_identity(nu);
        if (is_id) ids[s] = mors.size();
        mor_at[{s, t, nu}] = mors.size();
        mors.push_back({is_id ? identity_name(objs[s]) : C.morphism_name(nu) + ":" + objs[s] + "->" + objs[t], s, t});
        A.underlying.push_back(nu);
      }
    }
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId h = 0; h < m; ++h)
      if (mors[g].dom == mors[h].cod)
        comp[g * m + h] = mor_at.at({mors[h].dom, mors[g].cod, C.compose(A.underlying[g], A.underlying[h])});
  A.category = share(FinCat(f.name + "<" + D.morphism_name(alpha) + ">", std::move(objs), std::move(mors),
                            std::move(ids), std::move(comp)));
  return A;
}

/// A composable path: start object plus arrows (empty for a 0-simplex).
struct Path {
  ObjId start = 0;
  std::vector<MorId> arrows;

  std::size_t length() const noexcept { return arrows.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

inline ObjId path_object(const FinCat& C, const Path& p, std::size_t i) {
  return i == 0 ? p.start : C.cod(p.arrows[i - 1]);
}

/// Composite of the arrows i+1..j (identity when i == j).
inline MorId path_segment(const FinCat& C, const Path& p, std::size_t i, std::size_t j) {
  MorId acc = C.identity(path_object(C, p, i));
  for (std::size_t k = i; k < j; ++k) acc = C.compose(p.arrows[k], acc);
  return acc;
}

inline MorId path_composite(const FinCat& C, const Path& p) { return path_segment(C, p, 0, p.length()); }

inline Path map_path(const FunctorMap& f, const Path& p) {
  Path q{f.obj(p.start), {}};
  for (MorId a : p.arrows) q.arrows.push_back(f.mor(a));
  return q;
}

inline std::string path_label(const FinCat& C, const Path& p) {
  if (p.arrows.empty()) return C.object_name(p.start);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i > 0) s += ";";
    s += C.morphism_name(p.arrows[i]);
  }
  return s;
}

/// ←f(σ): objects (c, i) with f(c) = σ(i); morphisms (a, i ≤ j) with f(a) = σ(i ≤ j).
inline FinCat simplex_pullback(const FunctorMap& f, const Path& sigma) {
  const FinCat& C = *f.source;
  const FinCat& D = *f.target;
  const std::size_t n = sigma.length();
  std::vector<std::pair<ObjId, std::size_t>> objs_raw;
  std::vector<std::string> objs;
  for (std::size_t i = 0; i <= n; ++i)
    for (ObjId c = 0; c < C.num_objects(); ++c)
      if (f.obj(c) == path_object(D, sigma, i)) {
        objs_raw.emplace_back(c, i);
        objs.push_back("(" + C.object_name(c) + "," + std::to_string(i) + ")");
      }
  std::vector<MorphismRecord> mors;
  std::vector<MorId> under;
  std::map<std::tuple<ObjId, ObjId, MorId>, MorId> mor_at;
  std::vector<MorId> ids(objs_raw.size(), kNone);
  for (ObjId s = 0; s < objs_raw.size(); ++s)
    for (ObjId t = 0; t < objs_raw.size(); ++t) {
      const auto [c, i] = objs_raw[s];
      const auto [c2, j] = objs_raw[t];
      if (i > j) continue;
      const MorId seg = path_segment(D, sigma, i, j);
      for (MorId a : C.hom(c, c2)) {
        if (f.mor(a) != seg) continue;
        const bool is_id = s == t && C.is_identity(a);
        if (is_id) ids[s] = mors.size();
        mor_at[{s, t, a}] = mors.size();
        mors.push_back({is_id ? identity_name(objs[s]) : C.morphism_name(a) + ":" + objs[s] + "->" + objs[t], s, t});
        under.push_back(a);
      }
    }
  const std::size_t m = mors.size();
  std::vector<MorId> comp(m * m, kNone);
  for (MorId g = 0; g < m; ++g)
    for (MorId h = 0; h < m; ++h)
      if (mors[g].dom == mors[h].cod)
        comp[g * m + h] = mor_at.at({mors[h].dom, mors[g].cod, C.compose(under[g], under[h])});
  return FinCat(f.name + "<-(" + path_label(D, sigma) + ")", std::move(objs), std::move(mors), std::move(ids),
                std::move(comp));
}

// ---------------------------------------------------------------------------
// Elementary properties

/// No composite of two non-identity morphisms is an identity.
inline bool is_retraction_free(const FinCat& C) {
  for (MorId g = 0; g < C.num_morphisms(); ++g) {
    if (C.is_identity(g)) continue;
    for (MorId f : C.incoming(C.dom(g)))
      if (!C.is_identity(f) && C.is_identity(C.compose(g, f))) return false;
  }
  return true;
}

/// Blocks of objects connected by zigzags, each block sorted, blocks ordered by first object.
inline std::vector<std::vector<ObjId>> connected_components(const FinCat& C) {
  std::vector<ObjId> parent(C.num_objects());
  for (ObjId a = 0; a < parent.size(); ++a) parent[a] = a;
  auto find = [&](ObjId a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& r : C.morphisms()) {
    ObjId x = find(r.dom), y = find(r.cod);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::map<ObjId, std::vector<ObjId>> blocks;
  for (ObjId a = 0; a < parent.size(); ++a) blocks[find(a)].push_back(a);
  std::vector<std::vector<ObjId>> out;
  for (auto& [root, b] : blocks) out.push_back(std::move(b));
  return out;
}

}  // namespace catcohom
