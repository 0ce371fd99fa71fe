#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brickchain/brickchain.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace brickchain;
namespace fx = brickchain::fixtures;

namespace {

std::size_t power(std::size_t p, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= p;
  return r;
}

/// Same module written in a random basis.
Representation conjugate(const Representation& m, std::mt19937_64& rng) {
  const Field& f = m.field();
  std::vector<Matrix> change, inv;
  for (auto d : m.dims()) {
    Matrix g(f, d, d);
    do {
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) g(r, c) = static_cast<Residue>(rng() % f.prime());
    } while (!is_invertible(g));
    inv.push_back(inverse(g));
    change.push_back(std::move(g));
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arrow = m.algebra()->arrows()[a];
    maps.push_back(change[arrow.target] * m.map(a) * inv[arrow.source]);
  }
  return Representation(m.algebra(), m.dims(), std::move(maps));
}

}  // namespace

TEST(Hom, DimensionMatchesExhaustiveCount) {
  for (const auto& make : {fx::a2, fx::n2, fx::k2}) {
    const auto alg = make(2);
    const auto reps = corpus::all_representations(alg, 3);
    for (std::size_t i = 0; i < reps.size(); i += 3)
      for (std::size_t j = 0; j < reps.size(); j += 5)
        EXPECT_EQ(power(2, hom_dim(reps[i], reps[j])), oracle::hom_count(reps[i], reps[j]));
  }
  corpus::Sampler s(31);
  for (const auto& a : corpus::fixture_algebras()) {
    const auto alg = a.make(2);
    for (int k = 0; k < 20; ++k) {
      const auto m = s.sample(alg, 4), n = s.sample(alg, 4);
      std::size_t entries = 0;
      for (std::size_t v = 0; v < m.dims().size(); ++v) entries += m.dim(v) * n.dim(v);
      if (entries > 16) continue;
      EXPECT_EQ(power(2, hom_dim(m, n)), oracle::hom_count(m, n));
    }
  }
}

TEST(Hom, BasisElementsAreHomomorphisms) {
  corpus::Sampler s(32);
  for (const auto& a : corpus::fixture_algebras()) {
    const auto alg = a.make(3);
    for (int k = 0; k < 10; ++k) {
      const auto m = s.sample(alg, 5), n = s.sample(alg, 5);
      const HomBasis h(m, n);
      for (const auto& f : h.basis()) {
        EXPECT_TRUE(is_homomorphism(m, n, f));
        EXPECT_TRUE(h.contains(f));
      }
    }
  }
}

TEST(Hom, EndomorphismAlgebraHasUnitAndAssociativeProduct) {
  corpus::Sampler s(33);
  for (const auto& a : corpus::fixture_algebras()) {
    const auto alg = a.make(2);
    for (int k = 0; k < 8; ++k) {
      const auto m = s.sample(alg, 4);
      const EndAlgebra e(m);
      EXPECT_TRUE(e.element(e.unit()) == Morphism::identity(m));
      for (std::size_t i = 0; i < e.dim(); ++i)
        for (std::size_t j = 0; j < e.dim(); ++j) {
          const auto lhs = e.element(e.multiply(e.basis_vector(i), e.basis_vector(j)));
          const auto rhs = compose(e.hom().element(i), e.hom().element(j));
          EXPECT_EQ(lhs.components, rhs.components);
        }
    }
  }
}

TEST(Hom, TraceAndRejectAreSubmodules) {
  corpus::Sampler s(34);
  for (const auto& a : corpus::fixture_algebras()) {
    const auto alg = a.make(2);
    for (int k = 0; k < 15; ++k) {
      const auto m = s.sample(alg, 5), n = s.sample(alg, 5);
      EXPECT_TRUE(trace_submodule(m, n).is_closed());
      EXPECT_TRUE(reject_submodule(m, n).is_closed());
    }
  }
}

TEST(Hom, EnumerationOrderAndBudget) {
  const auto alg = fx::a2(3);
  const auto m = direct_sum(fx::simple(alg, "1"), fx::simple(alg, "1"));
  const HomBasis h(m, fx::simple(alg, "1"));
  ASSERT_EQ(h.dim(), 2u);
  std::vector<Vector> seen;
  const auto count = enumerate_elements(h, 100, [&](const Vector& c, const Morphism& f) {
    seen.push_back(c);
    EXPECT_EQ(f.components, h.combination(c).components);
    return false;
  });
  EXPECT_EQ(count, 9u);
  EXPECT_EQ(seen.front(), (Vector{0, 0}));
  EXPECT_EQ(seen[1], (Vector{0, 1}));
  EXPECT_EQ(seen[3], (Vector{1, 0}));
  EXPECT_THROW(enumerate_elements(h, 8, [](const Vector&, const Morphism&) { return false; }), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_elements(h, 9, [](const Vector&, const Morphism&) { return false; }));
}

TEST(Decompose, SummandsReassembleAndAreIndecomposable) {
  corpus::Sampler s(35);
  for (const auto& a : corpus::fixture_algebras()) {
    for (std::uint32_t p : {2u, 3u}) {
      const auto alg = a.make(p);
      for (int k = 0; k < 15; ++k) {
        const auto m = s.sample(alg, 6);
        const auto d = decompose(m);
        std::vector<Representation> parts;
        Morphism sum = Morphism::zero(m, m);
        for (const auto& sm : d.summands) {
          parts.push_back(sm.module);
          EXPECT_TRUE(is_indecomposable(sm.module));
          EXPECT_TRUE(is_homomorphism(sm.module, m, sm.inclusion));
          EXPECT_TRUE(is_homomorphism(m, sm.module, sm.projection));
          EXPECT_TRUE(compose(sm.projection, sm.inclusion) == Morphism::identity(sm.module));
          sum += compose(sm.inclusion, sm.projection);
        }
        EXPECT_TRUE(sum == Morphism::identity(m));
        const auto whole = direct_sum(parts);
        const double elements = std::pow(double(p), double(hom_dim(whole, m)));
        if (elements < 1e5) EXPECT_TRUE(iso_test_exhaustive(whole, m));
        EXPECT_TRUE(iso_test(whole, m));
      }
    }
  }
}

TEST(Decompose, KrullSchmidtUnderBaseChange) {
  std::mt19937_64 rng(36);
  corpus::Sampler s(37);
  for (const auto& a : corpus::fixture_algebras()) {
    const auto alg = a.make(3);
    for (int k = 0; k < 10; ++k) {
      const auto m = s.sample(alg, 6);
      const auto n = conjugate(m, rng);
      EXPECT_TRUE(iso_test(m, n));
      const auto dm = decompose(m), dn = decompose(n);
      ASSERT_EQ(dm.summands.size(), dn.summands.size());
      for (std::size_t i = 0; i < dm.summands.size(); ++i)
        EXPECT_EQ(dm.summands[i].module.dims(), dn.summands[i].module.dims());
    }
  }
}

TEST(IsoTest, AgreesWithExhaustiveSearch) {
  for (const auto& make : {fx::a2, fx::n2}) {
    const auto reps = corpus::all_representations(make(2), 3);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i; j < reps.size(); j += 2)
        if (reps[i].dims() == reps[j].dims()) {
          EXPECT_EQ(iso_test(reps[i], reps[j]), iso_test_exhaustive(reps[i], reps[j]));
          EXPECT_EQ(iso_test(reps[i], reps[j]), oracle::isomorphic(reps[i], reps[j]));
        }
  }
}

TEST(IsoTest, KroneckerRegularModulesAreDistinguished) {
  const auto alg = fx::k2(3);
  for (std::int64_t l = 0; l < 3; ++l)
    for (std::int64_t m = 0; m < 3; ++m)
      EXPECT_EQ(iso_test(fx::k2_regular(alg, l), fx::k2_regular(alg, m)), l == m);
}

TEST(Fitting, RejectsBadWitness) {
  const auto alg = fx::a2();
  const auto p2 = fx::a2_p2(alg);
  EXPECT_THROW(fitting_split(p2, Morphism::identity(p2)), BadWitness);
}
