#include <gtest/gtest.h>

#include "generators.hpp"

using namespace catcohom;
using testsupport::Rng;

namespace {

FunctorMap point_into_arrow(ObjId target) {
  auto C = share(ordinal(0));
  auto D = share(ordinal(1));
  return make_functor(target == 0 ? "f" : "g", C, D, {target}, {D->identity(target)});
}

void expect_single_witness(const CriterionReport& r, const std::string& anchor, Reason reason) {
  ASSERT_FALSE(r.pass());
  ASSERT_EQ(r.witnesses.size(), 1u) << report_json(r).dump();
  EXPECT_EQ(r.witnesses[0].anchor, anchor);
  EXPECT_EQ(r.witnesses[0].reason, reason);
}

/// An isomorphic copy of C with objects and morphisms relabeled and reordered.
std::pair<CatPtr, FunctorMap> relabeled(Rng& rng, const CatPtr& Cp) {
  const FinCat& C = *Cp;
  RawCategory raw{"C2", {}, {}, {}};
  std::vector<std::size_t> perm(C.num_objects());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i : perm) raw.objects.push_back("o" + C.object_name(i));
  auto oname = [&](ObjId a) { return "o" + C.object_name(a); };
  auto mname = [&](MorId m) { return C.is_identity(m) ? identity_name(oname(C.dom(m))) : "n" + C.morphism_name(m); };
  for (MorId m = 0; m < C.num_morphisms(); ++m)
    if (!C.is_identity(m)) raw.morphisms.push_back({mname(m), oname(C.dom(m)), oname(C.cod(m))});
  for (MorId g = 0; g < C.num_morphisms(); ++g)
    for (MorId f = 0; f < C.num_morphisms(); ++f)
      if (!C.is_identity(g) && !C.is_identity(f) && C.composable(g, f))
        raw.composites.push_back({mname(g), mname(f), mname(C.compose(g, f))});
  auto D = share(validate(raw));
  std::vector<ObjId> obj;
  std::vector<MorId> mor;
  for (ObjId a = 0; a < C.num_objects(); ++a) obj.push_back(D->object(oname(a)));
  for (MorId m = 0; m < C.num_morphisms(); ++m) mor.push_back(D->morphism_id(mname(m)));
  return {D, make_functor("iso", Cp, D, obj, mor)};
}

}  // namespace

TEST(Verdier, PointIntoArrow) {
  EXPECT_TRUE(verdier_check(point_into_arrow(0), 2).pass());
  expect_single_witness(verdier_check(point_into_arrow(1), 1), "0", Reason::Empty);
}

TEST(Oberst, PointIntoArrow) {
  EXPECT_TRUE(oberst_colim_check(point_into_arrow(1), 2).pass());
  expect_single_witness(oberst_colim_check(point_into_arrow(0), 1), "1", Reason::Empty);
}

TEST(Bw, PointIntoArrow) {
  expect_single_witness(bw_preservation_check(point_into_arrow(0), 1), "id_1", Reason::Empty);
  expect_single_witness(bw_preservation_check(point_into_arrow(1), 1), "id_0", Reason::Empty);
}

TEST(Hm, PointIntoArrow) {
  const CriterionReport r = hm_preservation_check(point_into_arrow(0), 1);
  ASSERT_FALSE(r.pass());
  bool at_11 = false;
  for (const auto& w : r.witnesses) at_11 = at_11 || (w.anchor == "(1,1)" && w.reason == Reason::ComparisonNotIso);
  EXPECT_TRUE(at_11);
  EXPECT_FALSE(hm_preservation_check(point_into_arrow(1), 1).pass());
}

TEST(Thomason, PointIntoArrow) {
  const CriterionReport r = thomason_preservation_check(point_into_arrow(0), 1, 1);
  ASSERT_FALSE(r.pass());
  EXPECT_EQ(r.witnesses[0].anchor, "1");
  EXPECT_EQ(r.witnesses[0].reason, Reason::Empty);
  EXPECT_EQ(r.simplex_bound, std::optional<std::size_t>(1));
  EXPECT_FALSE(thomason_preservation_check(point_into_arrow(0), 1, 2).pass());
  EXPECT_EQ(thomason_preservation_check(point_into_arrow(0), 1).simplex_bound, std::optional<std::size_t>(4));
}

TEST(Criteria, IdentityPassesEverywhere) {
  Rng rng(103);
  for (int t = 0; t < 15; ++t) {
    const auto R = testsupport::random_category(rng, 3, 6);
    const FunctorMap id = identity_functor(R.cat);
    for (std::size_t N = 1; N <= 2; ++N) {
      EXPECT_TRUE(verdier_check(id, N).pass());
      EXPECT_TRUE(oberst_colim_check(id, N).pass());
      EXPECT_TRUE(bw_preservation_check(id, N).pass());
      EXPECT_TRUE(hm_preservation_check(id, N).pass());
      EXPECT_TRUE(thomason_preservation_check(id, N, 2).pass());
    }
  }
}

TEST(Criteria, IsomorphismsPass) {
  Rng rng(107);
  for (int t = 0; t < 15; ++t) {
    const auto R = testsupport::random_category(rng, 3, 6);
    const auto [D, f] = relabeled(rng, R.cat);
    EXPECT_TRUE(verdier_check(f, 2).pass());
    EXPECT_TRUE(oberst_colim_check(f, 2).pass());
    EXPECT_TRUE(bw_preservation_check(f, 2).pass());
    EXPECT_TRUE(hm_preservation_check(f, 1).pass());
    EXPECT_TRUE(thomason_preservation_check(f, 1, 2).pass());
  }
}

TEST(Criteria, LevelMustBePositive) {
  EXPECT_THROW(verdier_check(point_into_arrow(0), 0), Error);
  EXPECT_THROW(bw_preservation_check(point_into_arrow(0), 0), Error);
}

TEST(Criteria, BwAgreesWithVerdierOnFactorizations) {
  Rng rng(109);
  int failing = 0;
  for (int t = 0; t < 40; ++t) {
    const auto C = testsupport::random_category(rng, 3, 6, "C");
    const auto D = testsupport::random_category(rng, 3, 6, "D");
    const FunctorMap f = testsupport::random_functor(rng, C.cat, D.cat);
    const FunctorMap Ff = factorization_of_functor(f, factorization(C.cat), factorization(D.cat));
    for (std::size_t N = 1; N <= 2; ++N) {
      const bool bw = bw_preservation_check(f, N).pass();
      EXPECT_EQ(bw, verdier_check(Ff, N).pass());
      failing += bw ? 0 : 1;
    }
  }
  EXPECT_GT(failing, 0);
}

TEST(Criteria, HomologyWitnessCarriesDegree) {
  // the target has a circle below the object t; f↓t sees it
  auto C = share(validate({"P", {"a", "b"}, {{"u", "a", "b"}, {"v", "a", "b"}}, {}}));
  auto D = share(validate({"Q", {"a", "b", "t"},
                           {{"u", "a", "b"}, {"v", "a", "b"}, {"x", "a", "t"}, {"y", "b", "t"}},
                           {{"y", "u", "x"}, {"y", "v", "x"}}}));
  const FunctorMap f = make_functor("inc", C, D, {0, 1},
                                    {D->identity(0), D->identity(1), D->morphism_id("u"), D->morphism_id("v")});
  const CriterionReport r = verdier_check(f, 2);
  expect_single_witness(r, "t", Reason::HomologyNonzero);
  EXPECT_EQ(r.witnesses[0].degree, std::optional<std::size_t>(1));
  const Json j = report_json(r);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["witnesses"][0]["degree"], 1);
}

TEST(Criteria, DisconnectedWitness) {
  auto C = share(disjoint_union(ordinal(0), ordinal(0)));
  auto D = share(ordinal(0));
  const FunctorMap f = make_functor("k", C, D, {0, 0}, {0, 0});
  expect_single_witness(verdier_check(f, 1), "0", Reason::Disconnected);
}
