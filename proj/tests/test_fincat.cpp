#include <gtest/gtest.h>

#include "generators.hpp"

using namespace catcohom;
using testsupport::Rng;

namespace {

RawCategory raw_v() {
  return {"V", {"a", "b", "c"}, {{"alpha", "a", "c"}, {"beta", "b", "c"}}, {}};
}

RawCategory raw_e() { return {"E", {"1"}, {{"e", "1", "1"}}, {{"e", "e", "e"}}}; }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

FunctorMap point_into_arrow(ObjId target) {
  auto C = share(ordinal(0));
  auto D = share(ordinal(1));
  return make_functor("f", C, D, {target}, {D->identity(target)});
}

}  // namespace

TEST(Validate, ExampleCategories) {
  const FinCat V = validate(raw_v());
  EXPECT_EQ(V.num_objects(), 3u);
  EXPECT_EQ(V.num_morphisms(), 5u);
  EXPECT_EQ(V.morphism_name(V.identity(V.object("b"))), "id_b");
  EXPECT_EQ(V.hom(V.object("a"), V.object("c")).size(), 1u);
  EXPECT_TRUE(V.hom(V.object("a"), V.object("b")).empty());
  EXPECT_TRUE(is_retraction_free(V));

  const FinCat E = validate(raw_e());
  const MorId e = E.morphism_id("e");
  EXPECT_EQ(E.compose(e, e), e);
  EXPECT_EQ(E.compose(e, E.identity(0)), e);
  EXPECT_TRUE(is_retraction_free(E));
}

TEST(Validate, Errors) {
  RawCategory r = raw_e();
  r.composites.clear();
  EXPECT_EQ(kind_of([&] { validate(r); }), ErrorKind::MissingComposite);

  r = raw_v();
  r.morphisms.push_back({"gamma", "a", "zz"});
  EXPECT_EQ(kind_of([&] { validate(r); }), ErrorKind::DanglingEndpoint);

  r = raw_e();
  r.composites.push_back({"e", "id_1", "id_1"});
  EXPECT_EQ(kind_of([&] { validate(r); }), ErrorKind::IdentityViolation);

  // one-object monoids on {1, p, q}; the last table makes p an involution and breaks associativity
  RawCategory m{"M", {"x"}, {{"p", "x", "x"}, {"q", "x", "x"}},
                {{"p", "p", "p"}, {"q", "q", "q"}, {"p", "q", "q"}, {"q", "p", "q"}}};
  EXPECT_NO_THROW(validate(m));
  m.composites = {{"p", "p", "p"}, {"q", "q", "q"}, {"p", "q", "p"}, {"q", "p", "p"}};
  EXPECT_NO_THROW(validate(m));
  m.composites = {{"p", "p", "id_x"}, {"q", "q", "q"}, {"p", "q", "q"}, {"q", "p", "p"}};
  EXPECT_EQ(kind_of([&] { validate(m); }), ErrorKind::AssociativityViolation);
}

TEST(Constructions, OrdinalOppositeProduct) {
  const FinCat two = ordinal(2);
  EXPECT_EQ(two.num_objects(), 3u);
  EXPECT_EQ(two.num_morphisms(), 6u);
  EXPECT_TRUE(two.find_morphism("0<2").has_value());

  const FinCat op = opposite(two);
  EXPECT_EQ(op.dom(op.morphism_id("0<2")), op.object("2"));
  EXPECT_EQ(opposite(op), two);

  auto A = share(ordinal(1));
  auto B = share(validate(raw_e()));
  const FinCat P = product(A, B);
  EXPECT_EQ(P.num_objects(), 2u);
  EXPECT_EQ(P.num_morphisms(), 6u);
  EXPECT_TRUE(P.find_object("(1,1)").has_value());
  ASSERT_NE(P.product_info(), nullptr);
  const MorId k = P.morphism_id("(0<1,e)");
  EXPECT_EQ(P.product_info()->morphisms[k], std::make_pair(A->morphism_id("0<1"), B->morphism_id("e")));
  EXPECT_EQ(P.compose(k, P.identity(P.object("(0,1)"))), k);

  const FinCat U = disjoint_union(ordinal(0), validate(raw_e()));
  EXPECT_EQ(U.num_objects(), 2u);
  EXPECT_EQ(connected_components(U).size(), 2u);
}

TEST(Factorization, MonoidE) {
  auto E = share(validate(raw_e()));
  const Factorization F = factorization(E);
  EXPECT_EQ(F.category->num_objects(), 2u);
  EXPECT_EQ(F.category->num_morphisms(), 8u);
  EXPECT_TRUE(F.category->find_morphism("e|id_1@e").has_value());
  EXPECT_TRUE(F.category->find_morphism("id_1|e@id_1").has_value());
  check_functor(F.dom_cod);
  check_functor(F.cod);
}

TEST(Factorization, ArrowCategory) {
  auto D = share(ordinal(1));
  const Factorization F = factorization(D);
  // objects id_0, 0<1, id_1; squares into 0<1 from both identities
  EXPECT_EQ(F.category->num_objects(), 3u);
  EXPECT_EQ(F.category->num_morphisms(), 5u);
  const ObjId g = F.category->object("0<1");
  EXPECT_EQ(F.category->incoming(g).size(), 3u);
  EXPECT_TRUE(F.category->outgoing(g).size() == 1u);
}

TEST(Comma, PointIntoArrow) {
  const FunctorMap f = point_into_arrow(0);
  EXPECT_EQ(comma(f, 0, CommaSide::Left).category->num_objects(), 1u);
  EXPECT_EQ(comma(f, 1, CommaSide::Left).category->num_objects(), 1u);
  EXPECT_EQ(comma(f, 0, CommaSide::Right).category->num_objects(), 1u);
  EXPECT_TRUE(comma(f, 1, CommaSide::Right).category->empty());

  const FunctorMap g = point_into_arrow(1);
  EXPECT_TRUE(comma(g, 0, CommaSide::Left).category->empty());
  EXPECT_EQ(comma(g, 1, CommaSide::Right).category->num_objects(), 1u);
}

TEST(Angle, PointIntoArrow) {
  const FunctorMap f = point_into_arrow(0);
  const FinCat& D = *f.target;
  EXPECT_EQ(f_angle(f, D.morphism_id("id_0")).category->num_objects(), 1u);
  EXPECT_EQ(f_angle(f, D.morphism_id("0<1")).category->num_objects(), 1u);
  EXPECT_TRUE(f_angle(f, D.morphism_id("id_1")).category->empty());
}

TEST(Angle, IdentityHasInitialObject) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto R = testsupport::random_category(rng);
    const FunctorMap id = identity_functor(R.cat);
    for (MorId a = 0; a < R.cat->num_morphisms(); ++a) {
      const AngleCategory A = f_angle(id, a);
      // (id, dom, alpha) maps uniquely to every other factorization
      const ObjId d = R.cat->dom(a);
      bool found = false;
      for (ObjId k = 0; k < A.objects.size(); ++k) {
        const auto [b, c, b2] = A.objects[k];
        if (b != R.cat->identity(d) || c != d) continue;
        found = true;
        for (ObjId t2 = 0; t2 < A.objects.size(); ++t2) EXPECT_EQ(A.category->hom(k, t2).size(), 1u);
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(SimplexPullback, Shapes) {
  const FunctorMap f = point_into_arrow(0);
  const FinCat& D = *f.target;
  EXPECT_TRUE(simplex_pullback(f, Path{1, {}}).empty());
  const FinCat P = simplex_pullback(f, Path{0, {D.identity(0)}});
  EXPECT_EQ(P.num_objects(), 2u);
  EXPECT_EQ(P.num_morphisms(), 3u);
  EXPECT_EQ(connected_components(P).size(), 1u);
  EXPECT_EQ(simplex_pullback(f, Path{0, {D.morphism_id("0<1")}}).num_objects(), 1u);

  const FunctorMap id = identity_functor(share(ordinal(2)));
  const FinCat Q = simplex_pullback(id, Path{0, {id.target->morphism_id("0<1"), id.target->morphism_id("1<2")}});
  EXPECT_EQ(Q.num_objects(), 3u);
  EXPECT_EQ(Q.num_morphisms(), 6u);
  EXPECT_TRUE(is_retraction_free(Q));
}

TEST(Functors, CheckAndCompose) {
  auto C = share(ordinal(1));
  auto D = share(validate(raw_e()));
  EXPECT_EQ(kind_of([&] { make_functor("bad", C, C, {1, 0}, {C->identity(1), C->identity(0), 2}); }),
            ErrorKind::NotFunctorial);
  const FunctorMap collapse = make_functor("k", C, D, {0, 0}, {0, 0, D->morphism_id("e")});
  const FunctorMap both = compose(identity_functor(D), collapse);
  EXPECT_EQ(both.mor_map, collapse.mor_map);
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto A = testsupport::random_category(rng);
    const auto B = testsupport::random_category(rng);
    const auto Cc = testsupport::random_category(rng);
    const FunctorMap f = testsupport::random_functor(rng, A.cat, B.cat);
    const FunctorMap g = testsupport::random_functor(rng, B.cat, Cc.cat);
    EXPECT_NO_THROW(check_functor(compose(g, f)));
    const FunctorMap fop = opposite_functor(f, share(opposite(*A.cat)), share(opposite(*B.cat)));
    EXPECT_NO_THROW(check_functor(fop));
  }
}

TEST(Retractions, Detection) {
  // two points and a one-point set with maps both ways: r∘s = id
  const auto R = testsupport::generated_category("S", {1, 2}, {{0, 1, {0}}, {1, 0, {0, 0}}}, 16);
  ASSERT_TRUE(R.has_value());
  EXPECT_FALSE(is_retraction_free(*R->cat));
  EXPECT_TRUE(is_retraction_free(ordinal(3)));
}

TEST(Nerve, Counts) {
  auto D = share(ordinal(1));
  const PathTable T(D, 3);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(T.count(n), n + 2);
  const PathTable N(D, 3, true);
  EXPECT_EQ(N.count(0), 2u);
  EXPECT_EQ(N.count(1), 1u);
  EXPECT_EQ(N.count(2), 0u);
  EXPECT_EQ(path_label(*D, T.path(1, 0)), "id_0");
}

TEST(Nerve, Cap) {
  auto E = share(validate(raw_e()));
  EXPECT_EQ(kind_of([&] { PathTable(E, 6, false, 20); }), ErrorKind::PathCapExceeded);
}

TEST(Nerve, SimplicialIdentities) {
  Rng rng(17);
  for (int t = 0; t < 25; ++t) {
    const auto R = testsupport::random_category(rng);
    const PathTable T(R.cat, 4);
    for (std::size_t n = 2; n <= 3; ++n)
      for (std::size_t k = 0; k < T.count(n); ++k) {
        for (std::size_t j = 1; j <= n; ++j)
          for (std::size_t i = 0; i < j; ++i)
            EXPECT_EQ(T.face(n - 1, T.face(n, k, j), i), T.face(n - 1, T.face(n, k, i), j - 1));
        for (std::size_t j = 0; j <= n; ++j) {
          const std::size_t s = T.degeneracy(n, k, j);
          EXPECT_EQ(T.face(n + 1, s, j), k);
          EXPECT_EQ(T.face(n + 1, s, j + 1), k);
          EXPECT_TRUE(T.is_degenerate(n + 1, s));
          for (std::size_t i = 0; i < j; ++i)
            EXPECT_EQ(T.face(n + 1, s, i), T.degeneracy(n - 1, T.face(n, k, i), j - 1));
          for (std::size_t i = j + 2; i <= n + 1; ++i)
            EXPECT_EQ(T.face(n + 1, s, i), T.degeneracy(n - 1, T.face(n, k, i - 1), j));
        }
      }
  }
}

TEST(Components, MatchesZeroHomology) {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const auto A = testsupport::random_category(rng, 3, 6);
    const auto B = testsupport::random_category(rng, 2, 4);
    auto U = share(disjoint_union(*A.cat, *B.cat));
    EXPECT_EQ(nerve_integral_homology(U, 0), AbGroup::free(connected_components(*U).size()));
  }
}

TEST(Isocats, CommaOfFactorizationFunctor) {
  Rng rng(29);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const auto Cr = testsupport::random_category(rng, 3, 6, "C");
    const auto Dr = testsupport::random_category(rng, 3, 6, "D");
    const FunctorMap f = testsupport::random_functor(rng, Cr.cat, Dr.cat);
    const FinCat& D = *Dr.cat;
    const Factorization FC = factorization(Cr.cat);
    const Factorization FD = factorization(Dr.cat);
    const FunctorMap Ff = factorization_of_functor(f, FC, FD);
    for (MorId alpha = 0; alpha < D.num_morphisms(); ++alpha) {
      const CommaCategory K = comma(Ff, alpha, CommaSide::Left);
      const AngleCategory A = f_angle(f, alpha);
      const Factorization FA = factorization(A.category);
      ASSERT_EQ(K.category->num_objects(), FA.category->num_objects());
      ASSERT_EQ(K.category->num_morphisms(), FA.category->num_morphisms());
      std::map<std::tuple<MorId, ObjId, MorId>, ObjId> angle_obj;
      for (ObjId k = 0; k < A.objects.size(); ++k) angle_obj[A.objects[k]] = k;
      auto angle_mor = [&](ObjId s, ObjId t2, MorId nu) {
        for (MorId m : A.category->hom(s, t2))
          if (A.underlying[m] == nu) return m;
        return kNone;
      };
      FunctorMap iso{"iso", K.category, FA.category, {}, {}};
      auto node = [&](ObjId k) {
        const auto [beta, b] = K.objects[k];
        const auto [u, v] = FD.squares[b];
        const FinCat& C = *Cr.cat;
        const ObjId s = angle_obj.at({u, C.dom(beta), D.compose(v, f.mor(beta))});
        const ObjId t2 = angle_obj.at({D.compose(f.mor(beta), u), C.cod(beta), v});
        return angle_mor(s, t2, beta);
      };
      for (ObjId k = 0; k < K.objects.size(); ++k) iso.obj_map.push_back(node(k));
      for (MorId m = 0; m < K.category->num_morphisms(); ++m) {
        const auto [g, g2] = FC.squares[K.projection.mor(m)];
        const ObjId src = K.category->dom(m), dst = K.category->cod(m);
        const auto [beta, b] = K.objects[src];
        const auto [beta2, b2] = K.objects[dst];
        const auto [u, v] = FD.squares[b];
        const auto [u2, v2] = FD.squares[b2];
        const FinCat& C = *Cr.cat;
        const MorId gm = angle_mor(angle_obj.at({u2, C.dom(beta2), D.compose(v2, f.mor(beta2))}),
                                   angle_obj.at({u, C.dom(beta), D.compose(v, f.mor(beta))}), g);
        const MorId gm2 = angle_mor(angle_obj.at({D.compose(f.mor(beta), u), C.cod(beta), v}),
                                    angle_obj.at({D.compose(f.mor(beta2), u2), C.cod(beta2), v2}), g2);
        iso.mor_map.push_back(FA.square(iso.obj_map[src], gm, gm2));
      }
      EXPECT_NO_THROW(check_functor(iso));
      std::vector<ObjId> objs = iso.obj_map;
      std::sort(objs.begin(), objs.end());
      EXPECT_TRUE(std::adjacent_find(objs.begin(), objs.end()) == objs.end());
      std::vector<MorId> mors = iso.mor_map;
      std::sort(mors.begin(), mors.end());
      EXPECT_TRUE(std::adjacent_find(mors.begin(), mors.end()) == mors.end());
      EXPECT_TRUE(std::find(mors.begin(), mors.end(), kNone) == mors.end());
      ++checked;
    }
  }
  EXPECT_GE(checked, 50);
}
