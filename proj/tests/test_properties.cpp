#include <gtest/gtest.h>

#include "properties.hpp"

using namespace catcohom;
using namespace testsupport;

TEST(Properties, DifferentialsSquareToZero) {
  Rng rng(201);
  const Outcome o = dd_zero_suite(rng, 40);
  EXPECT_TRUE(o.ok(40)) << o.summary();
}

TEST(Properties, ReducedAndNormalizedMatchFull) {
  Rng rng(203);
  const Outcome o = reduced_vs_full_suite(rng, 30);
  EXPECT_TRUE(o.ok(30)) << o.summary();
}

TEST(Properties, NormalizedNerve) {
  Rng rng(205);
  const Outcome o = normalized_nerve_suite(rng, 30);
  EXPECT_TRUE(o.ok(30)) << o.summary();
}

TEST(Properties, ThomasonConstantIsLim) {
  Rng rng(207);
  const Outcome o = thomason_constant_suite(rng, 20);
  EXPECT_TRUE(o.ok(20)) << o.summary();
}

TEST(Properties, BwIsLimOnFactorization) {
  Rng rng(209);
  const Outcome o = bw_vs_factorization_suite(rng, 30);
  EXPECT_TRUE(o.ok(30)) << o.summary();
}

TEST(Properties, BarExt) {
  Rng rng(211);
  const Outcome a = bar_ext_constant_suite(rng, 15);
  EXPECT_TRUE(a.ok(15)) << a.summary();
  const Outcome b = bar_ext_bimodule_suite(rng, 6);
  EXPECT_TRUE(b.ok(6)) << b.summary();
}

TEST(Properties, CommaOfFactorizationFunctor) {
  Rng rng(213);
  const Outcome o = isocats_suite(rng, 30);
  EXPECT_TRUE(o.ok(30)) << o.summary();
}

TEST(Properties, SmithAndHomology) {
  Rng rng(215);
  const Outcome s = snf_suite(rng, 60);
  EXPECT_TRUE(s.ok(60)) << s.summary();
  const Outcome h = two_step_homology_suite(rng, 40);
  EXPECT_TRUE(h.ok(40)) << h.summary();
}

TEST(Properties, BwCriterionIsVerdierOnFactorization) {
  Rng rng(217);
  const Outcome o = bw_vs_verdier_suite(rng, 18);
  EXPECT_TRUE(o.ok(36)) << o.summary();
}

TEST(Properties, CriteriaAgreeWithMaps) {
  Rng rng(219);
  const CrossValidation cv = cross_validation_suite(rng, 18, 2);
  EXPECT_TRUE(cv.outcome.ok(1)) << cv.outcome.summary();
  for (const char* name : {"verdier", "oberst", "bw", "hm", "thomason"}) {
    EXPECT_GT(cv.tally.at(name).pass, 0u) << name;
    EXPECT_GT(cv.tally.at(name).fail, 0u) << name;
  }
}
