#include <gtest/gtest.h>

#include "brickchain/brickchain.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace brickchain;
namespace fx = brickchain::fixtures;

TEST(Algebra, RejectsBadPresentations) {
  const Field f(2);
  EXPECT_THROW(Algebra(f, {"1", "1"}, {}, {}), MalformedInput);
  EXPECT_THROW(Algebra(f, {"1"}, {{"a", 0, 3}}, {}), MalformedInput);
  EXPECT_THROW(Algebra(f, {"1", "2"}, {{"a", 0, 1}, {"a", 1, 0}}, {}), MalformedInput);
  // a : 1 -> 2 cannot be followed by itself
  EXPECT_THROW(Algebra(f, {"1", "2"}, {{"a", 0, 1}}, {Relation{{RelationTerm{1, {0, 0}}}}}), MalformedInput);
  // terms with different endpoints
  EXPECT_THROW(Algebra(f, {"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}},
                       {Relation{{RelationTerm{1, {0}}, RelationTerm{1, {1}}}}}),
               MalformedInput);
}

TEST(Representation, ShapeErrorNamesTheArrow) {
  const auto alg = fx::a2();
  try {
    Representation(alg, {1, 1}, {Matrix(alg->field(), 1, 2)});
    FAIL() << "expected MalformedInput";
  } catch (const MalformedInput& e) {
    EXPECT_NE(std::string(e.what()).find("arrow a"), std::string::npos);
  }
}

TEST(Representation, ValidateFindsViolatedRelations) {
  const auto alg = fx::n2();
  EXPECT_TRUE(validate(fx::uniserial(alg, "1", 3)).valid);
  // length four uniserial needs a b a ≠ 0
  const auto cn = fx::cn2();
  const auto long_one = fx::uniserial(cn, "1", 4);
  EXPECT_TRUE(validate(long_one).valid);
  const Representation over_n2(alg, long_one.dims(), long_one.maps());
  const auto report = validate(over_n2);
  EXPECT_FALSE(report.valid);
  EXPECT_EQ(report.violated_relations, std::vector<std::size_t>{0});
}

TEST(Fixtures, AllFixtureModulesSatisfyTheirRelations) {
  EXPECT_TRUE(validate(fx::uniserial(fx::cn2(), "2", 5)).valid);
  EXPECT_TRUE(validate(fx::node_injective(fx::node())).valid);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_TRUE(validate(fx::loop_serial(fx::loop(), n)).valid);
  for (std::int64_t l = 0; l < 3; ++l) EXPECT_TRUE(validate(fx::k2_regular2(fx::k2(3), l)).valid);
}

TEST(Fixtures, NodeInjectiveHasTheExpectedSocleLayers) {
  const auto alg = fx::node();
  const auto m = fx::node_injective(alg);
  // socle: vectors killed by every arrow
  auto socle_of = [](const Representation& r) {
    std::vector<Subspace> spaces;
    for (std::size_t v = 0; v < r.dims().size(); ++v) {
      Matrix stacked(r.field(), 0, r.dim(v));
      for (std::size_t a = 0; a < r.maps().size(); ++a)
        if (r.algebra()->arrows()[a].source == v) stacked = Matrix::vstack(stacked, r.map(a));
      spaces.push_back(solve_kernel(stacked));
    }
    return SubRepresentation(r, spaces);
  };
  const auto soc1 = socle_of(m);
  EXPECT_EQ(soc1.dims(), (std::vector<std::size_t>{1, 0}));
  const auto q1 = sub_quotient(soc1).quotient;
  const auto soc2 = socle_of(q1);
  EXPECT_EQ(soc2.dims(), (std::vector<std::size_t>{0, 2}));
  const auto q2 = sub_quotient(soc2).quotient;
  EXPECT_EQ(q2.dims(), (std::vector<std::size_t>{1, 0}));
}

TEST(SubRepresentation, RejectsFamiliesThatAreNotClosed) {
  const auto alg = fx::a2();
  const auto p2 = fx::a2_p2(alg);
  const Field& f = alg->field();
  EXPECT_THROW(SubRepresentation(p2, {Subspace::zero(f, 1), Subspace::full(f, 1)}), NotClosed);
  EXPECT_NO_THROW(SubRepresentation(p2, {Subspace::full(f, 1), Subspace::zero(f, 1)}));
}

TEST(SubQuotient, RoundTripOnAllSubmodules) {
  corpus::Sampler s(11);
  for (const auto& a : corpus::fixture_algebras()) {
    const auto alg = a.make(2);
    for (int k = 0; k < 10; ++k) {
      const auto m = s.sample(alg, 4);
      for (const auto& sub : all_submodules(m)) {
        const auto sq = sub_quotient(sub);
        for (std::size_t v = 0; v < m.dims().size(); ++v) EXPECT_EQ(sq.sub.dim(v) + sq.quotient.dim(v), m.dim(v));
        EXPECT_TRUE(compose(sq.projection, sq.inclusion).is_zero());
        EXPECT_TRUE(is_homomorphism(sq.sub, m, sq.inclusion));
        EXPECT_TRUE(is_homomorphism(m, sq.quotient, sq.projection));
        EXPECT_TRUE(validate(sq.sub).valid);
        EXPECT_TRUE(validate(sq.quotient).valid);
        EXPECT_EQ(pull_back(sq, m, SubRepresentation::zero(sq.quotient)), sub);
        EXPECT_EQ(push_forward(sq, m, SubRepresentation::full(sq.sub)), sub);
      }
    }
  }
}

TEST(Submodules, LibraryEnumerationMatchesElementSets) {
  corpus::Sampler s(12);
  for (const auto& a : corpus::fixture_algebras()) {
    for (std::uint32_t p : {2u, 3u}) {
      const auto alg = a.make(p);
      for (int k = 0; k < 6; ++k) {
        const auto m = s.sample(alg, p == 2 ? 4 : 3);
        const auto lib = all_submodules(m);
        const auto brute = oracle::submodules(m);
        ASSERT_EQ(lib.size(), brute.size()) << canonical_string(m);
        for (const auto& b : brute) EXPECT_NE(std::find(lib.begin(), lib.end(), b), lib.end());
      }
    }
  }
}

TEST(Duality, DualChainHasDualFactorsInReverse) {
  corpus::Sampler s(13);
  for (const auto& a : corpus::fixture_algebras()) {
    const auto alg = a.make(2);
    const auto opp = make_algebra(alg->opposite());
    for (int k = 0; k < 8; ++k) {
      const auto m = s.sample(alg, 4);
      const auto dm = dualize(m, opp).module;
      EXPECT_TRUE(validate(dm).valid);
      const auto subs = all_submodules(m);
      for (const auto& lower : subs)
        for (const auto& upper : subs) {
          if (!upper.contains(lower) || upper == lower) continue;
          const auto dl = dual_of_submodule(upper, dm);
          const auto du = dual_of_submodule(lower, dm);
          ASSERT_TRUE(du.contains(dl));
          const auto factor = stage_factor(lower, upper);
          const auto dual_factor = stage_factor(dl, du);
          EXPECT_TRUE(iso_test(dualize(factor, opp).module, dual_factor));
        }
      EXPECT_EQ(dualize(dm, alg).module, m);
    }
  }
}

TEST(DirectSum, DimensionsAdd) {
  const auto alg = fx::k2();
  const auto m = direct_sum(fx::k2_regular(alg, 0), fx::k2_regular(alg, 1));
  EXPECT_EQ(m.dims(), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(hom_dim(m, m), 2u);
}
