#include <gtest/gtest.h>

#include "brickchain/brickchain.hpp"
#include "support/corpus.hpp"
#include "support/criteria.hpp"
#include "support/oracles.hpp"

using namespace brickchain;
namespace fx = brickchain::fixtures;

namespace {

TorsionalFiltration socle_chain(const Representation& m, const SubRepresentation& mid, BrickChain type) {
  return {m, {SubRepresentation::zero(m), mid, SubRepresentation::full(m)}, std::move(type), {}};
}

}  // namespace

TEST(Filtration, CyclicNakayamaLengthFive) {
  const auto cn = fx::cn2();
  const auto m = fx::uniserial(cn, "2", 5);
  const auto e = enumerate_filtrations(m);
  ASSERT_EQ(e.filtrations.size(), 1u);
  const auto& f = e.filtrations.front();
  ASSERT_EQ(f.chain.size(), 3u);
  EXPECT_EQ(f.chain[1].total_dim(), 1u);
  EXPECT_TRUE(iso_test(f.type.bricks[0], fx::simple(cn, "2")));
  EXPECT_TRUE(iso_test(f.type.bricks[1], fx::uniserial(cn, "2", 2)));
  ASSERT_EQ(f.certificates.size(), 2u);
  EXPECT_EQ(f.certificates[1].factor.chain.size(), 3u);
}

TEST(Filtration, NodeInjectiveHasTwo) {
  const auto e = enumerate_filtrations(fx::node_injective(fx::node()));
  EXPECT_EQ(e.filtrations.size(), 2u);
  EXPECT_EQ(e.report.phi, 2u);
  for (const auto& f : e.filtrations) EXPECT_TRUE(verify_filtration(f).ok);
}

TEST(Filtration, BricksHaveOnlyTheTrivialOne) {
  for (const auto& m : criteria::fixture_modules()) {
    if (!is_brick(m)) continue;
    const auto e = enumerate_filtrations(m);
    ASSERT_EQ(e.filtrations.size(), 1u);
    EXPECT_EQ(e.filtrations.front().chain.size(), 2u);
    EXPECT_TRUE(iso_test(e.filtrations.front().type.bricks.front(), m));
  }
}

TEST(Filtration, ZeroModule) {
  const auto z = Representation::zero(fx::a2());
  const auto r = count_phi(z);
  EXPECT_EQ(r.phi, 1u);
  const auto e = enumerate_filtrations(z);
  ASSERT_EQ(e.filtrations.size(), 1u);
  EXPECT_TRUE(e.filtrations.front().type.bricks.empty());
}

TEST(Filtration, AgreesWithBruteForceOnA2AndN2) {
  for (const auto& alg : {fx::a2(), fx::n2()})
    for (const auto& m : corpus::all_representations(alg, 3))
      EXPECT_EQ(criteria::oracle_difference(m), "") << canonical_string(m);
}

TEST(Filtration, AgreesWithBruteForceOnOtherFixtures) {
  for (const auto& alg : {fx::cn2(), fx::node(), fx::k2()})
    for (const auto& m : corpus::all_representations(alg, 3))
      EXPECT_EQ(criteria::oracle_difference(m), "") << canonical_string(m);
}

TEST(Filtration, RecursionTraceIsConsistent) {
  corpus::Sampler s(51);
  for (const auto& a : corpus::fixture_algebras())
    for (std::uint32_t p : {2u, 3u})
      for (int k = 0; k < 15; ++k) {
        const auto m = s.sample(a.make(p), 6);
        const auto r = count_phi(m);
        EXPECT_TRUE(criteria::recursion_is_consistent(r)) << canonical_string(m);
        EXPECT_EQ(r.phi, enumerate_filtrations(m).filtrations.size());
      }
}

TEST(Filtration, MemoSharesEqualModules) {
  const auto a2 = fx::a2();
  const auto s1 = fx::simple(a2, "1");
  const auto r = count_phi(direct_sum({s1, s1, fx::simple(a2, "2")}));
  std::set<std::string> keys;
  for (const auto& n : r.nodes) keys.insert(canonical_string(n.module));
  EXPECT_EQ(keys.size(), r.nodes.size());
}

TEST(Filtration, LastTypeIsTopBrick) {
  corpus::Sampler s(52);
  for (const auto& a : corpus::fixture_algebras())
    for (int k = 0; k < 20; ++k) {
      const auto m = s.sample(a.make(2), 6);
      const auto tops = top_bricks(m);
      std::vector<Representation> list;
      for (const auto& tb : tops.bricks) list.push_back(tb.brick);
      for (const auto& f : enumerate_filtrations(m).filtrations)
        EXPECT_TRUE(criteria::has_iso(list, f.type.bricks.back())) << canonical_string(m);
    }
}

TEST(Filtration, TypeIsBrickChainAndStagesTorsional) {
  corpus::Sampler s(53);
  for (const auto& a : corpus::fixture_algebras())
    for (int k = 0; k < 20; ++k) {
      const auto m = s.sample(a.make(3), 5);
      for (const auto& f : enumerate_filtrations(m).filtrations) {
        EXPECT_TRUE(is_brick_chain(f.type));
        for (std::size_t i = 1; i < f.chain.size(); ++i)
          EXPECT_TRUE(is_in_torsion(stage_module(f.chain[i - 1]), stage_module(f.chain[i])));
      }
    }
}

TEST(Verify, RejectsSocleChainOfA2Projective) {
  const auto a2 = fx::a2();
  const auto p2 = fx::a2_p2(a2);
  const auto soc = generated_submodule(p2, {Subspace::full(a2->field(), 1), Subspace::zero(a2->field(), 1)});
  const auto f = socle_chain(p2, soc, {{fx::simple(a2, "1"), fx::simple(a2, "2")}});
  const auto v = verify_filtration(f);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.reason, FiltrationReason::not_torsional);
  EXPECT_EQ(v.step, 2u);
  EXPECT_TRUE(verify_filtration(f, kDefaultBudget, FiltrationMode::brick_chain).ok);
  const auto g = socle_chain(p2, soc, {{fx::simple(a2, "2"), fx::simple(a2, "1")}});
  EXPECT_EQ(verify_filtration(g, kDefaultBudget, FiltrationMode::brick_chain).reason, FiltrationReason::factor_not_in_EB);
  const auto h = socle_chain(p2, soc, {{p2, fx::simple(a2, "2")}});
  EXPECT_EQ(verify_filtration(h).reason, FiltrationReason::brick_chain_hom);
}

TEST(Verify, StructuralFailures) {
  const auto a2 = fx::a2();
  const auto p2 = fx::a2_p2(a2);
  const auto s1 = fx::simple(a2, "1");
  TorsionalFiltration f{p2, {SubRepresentation::full(p2)}, {}, {}};
  EXPECT_EQ(verify_filtration(f).reason, FiltrationReason::bad_endpoints);
  f.chain = {SubRepresentation::zero(p2), SubRepresentation::full(p2)};
  EXPECT_EQ(verify_filtration(f).reason, FiltrationReason::type_length);
  f.type.bricks = {direct_sum(s1, s1)};
  EXPECT_EQ(verify_filtration(f).reason, FiltrationReason::not_brick);
  f.type.bricks = {p2};
  EXPECT_TRUE(verify_filtration(f).ok);
  f.chain = {SubRepresentation::zero(p2), SubRepresentation::zero(p2), SubRepresentation::full(p2)};
  EXPECT_EQ(verify_filtration(f).reason, FiltrationReason::not_increasing);
  f.chain = {SubRepresentation::zero(s1), SubRepresentation::full(s1)};
  EXPECT_EQ(verify_filtration(f).reason, FiltrationReason::wrong_parent);
}

TEST(Verify, BudgetExhaustionIsReported) {
  const auto k = fx::k2(3);
  const auto r1 = fx::k2_regular(k, 1);
  const auto m = direct_sum({r1, r1, r1});
  TorsionalFiltration f{m, {SubRepresentation::zero(m), SubRepresentation::full(m)}, {{r1}}, {}};
  EXPECT_TRUE(verify_filtration(f).ok);
  EXPECT_EQ(verify_filtration(f, 1).reason, FiltrationReason::budget_exhausted);
}

TEST(Dual, SerialN2ModuleLosesTorsionality) { EXPECT_TRUE(criteria::dual_failure_reproduces()); }

TEST(Dual, DoubleDualRecoversTheChain) {
  corpus::Sampler s(54);
  for (const auto& a : corpus::fixture_algebras())
    for (int k = 0; k < 10; ++k) {
      const auto m = s.sample(a.make(2), 5);
      const auto opp = make_algebra(m.algebra()->opposite());
      for (const auto& f : enumerate_filtrations(m).filtrations) {
        const auto d = dual_filtration(f, opp);
        EXPECT_TRUE(verify_filtration(d, kDefaultBudget, FiltrationMode::brick_chain).ok);
        const auto dd = dual_filtration(d, m.algebra());
        ASSERT_EQ(dd.chain.size(), f.chain.size());
        for (std::size_t i = 0; i < f.chain.size(); ++i) EXPECT_EQ(dd.chain[i].dims(), f.chain[i].dims());
        EXPECT_TRUE(iso_test(dd.module, m));
      }
    }
}
