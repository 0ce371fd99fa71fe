#pragma once

// Acceptance checks shared by the unit tests and the acceptance runner. Each
// returns an Outcome listing the first few failures.

#include <cstdint>
#include <string>
#include <vector>

#include "brickchain/brickchain.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace criteria {

using namespace brickchain;
namespace fx = brickchain::fixtures;

struct Outcome {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty() && checked > 0; }
  void fail(std::string why) {
    if (failures.size() < 8) failures.push_back(std::move(why));
    else if (failures.size() == 8) failures.push_back("...");
  }
  void expect(bool ok, const std::string& why) {
    ++checked;
    if (!ok) fail(why);
  }
};

inline bool same_type(const std::vector<Representation>& a, const std::vector<Representation>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!iso_test(a[i], b[i])) return false;
  return true;
}

inline bool has_iso(const std::vector<Representation>& list, const Representation& m) {
  for (const auto& x : list)
    if (iso_test(x, m)) return true;
  return false;
}

/// Empty when the library's filtrations of M coincide with the definition
/// level brute force, chain by chain and type by type.
inline std::string oracle_difference(const Representation& m) {
  const auto lib = enumerate_filtrations(m).filtrations;
  const auto orc = oracle::filtrations(m);
  std::size_t expected = 0;
  for (const auto& o : orc) expected += o.types.size();
  if (lib.size() != expected)
    return std::to_string(lib.size()) + " filtrations against " + std::to_string(expected) + " by brute force";
  std::vector<std::vector<bool>> used(orc.size());
  for (std::size_t i = 0; i < orc.size(); ++i) used[i].assign(orc[i].types.size(), false);
  for (const auto& f : lib) {
    bool matched = false;
    for (std::size_t i = 0; i < orc.size() && !matched; ++i) {
      if (orc[i].chain != f.chain) continue;
      for (std::size_t t = 0; t < orc[i].types.size() && !matched; ++t) {
        if (used[i][t] || !same_type(orc[i].types[t], f.type.bricks)) continue;
        used[i][t] = true;
        matched = true;
      }
    }
    if (!matched) return "a filtration is missing from the brute force set";
  }
  return {};
}

/// The CN2 indecomposables: uniserials of length 1 to 5 with either top.
inline std::vector<Representation> cn2_indecomposables(const AlgebraPtr& cn) {
  std::vector<Representation> out;
  for (const char* top : {"1", "2"})
    for (std::size_t len = 1; len <= 5; ++len) out.push_back(fx::uniserial(cn, top, len));
  return out;
}

inline std::vector<Representation> fixture_modules() {
  const auto a2 = fx::a2(), k2 = fx::k2(3), cn = fx::cn2(), n2 = fx::n2(), node = fx::node(), loop = fx::loop();
  std::vector<Representation> out{fx::simple(a2, "1"), fx::simple(a2, "2"), fx::a2_p2(a2),
                                  fx::k2_regular(k2, 1), fx::k2_regular2(k2, 1), fx::uniserial(cn, "2", 5),
                                  fx::uniserial(cn, "2", 2), fx::uniserial(n2, "1", 3), fx::node_injective(node)};
  for (std::size_t n = 0; n <= 5; ++n) out.push_back(fx::loop_serial(loop, n));
  return out;
}

inline std::vector<Representation> full_corpus(std::size_t per_algebra = 200) {
  std::vector<Representation> out;
  for (const auto& a : corpus::fixture_algebras()) {
    auto part = corpus::random_corpus(a, per_algebra);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// 1
inline Outcome existence_and_finiteness(const std::vector<Representation>& modules) {
  Outcome o;
  for (const auto& m : modules) {
    const auto e = enumerate_filtrations(m);
    bool ok = !e.filtrations.empty() && e.report.phi == e.filtrations.size();
    for (const auto& f : e.filtrations) ok = ok && verify_filtration(f).ok;
    o.expect(ok, canonical_string(m));
  }
  return o;
}

// 2
inline Outcome oracle_equivalence(std::size_t bound = 4) {
  Outcome o;
  for (const auto& alg : {fx::a2(2), fx::n2(2)})
    for (const auto& m : corpus::all_representations(alg, bound)) {
      const auto diff = oracle_difference(m);
      o.expect(diff.empty(), canonical_string(m) + ": " + diff);
    }
  return o;
}

inline bool recursion_is_consistent(const CountReport& r) {
  for (const auto& n : r.nodes) {
    if (n.module.is_zero()) {
      if (n.phi != 1 || !n.children.empty()) return false;
      continue;
    }
    if (n.children.empty() || n.children.size() != n.top_bricks.size() || n.submodules.size() != n.children.size())
      return false;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const auto& child = r.nodes[n.children[i]];
      if (canonical_string(child.module) != canonical_string(stage_module(n.submodules[i]))) return false;
      if (n.submodules[i].is_full()) return false;
      sum += child.phi;
    }
    if (sum != n.phi) return false;
  }
  return r.phi == r.nodes.front().phi;
}

// 3
inline Outcome phi_recursion(const std::vector<Representation>& modules) {
  Outcome o;
  for (const auto& m : modules) {
    const auto r = count_phi(m);
    o.expect(recursion_is_consistent(r), "recursion trace of " + canonical_string(m));
    if (is_brick(m)) o.expect(r.phi == 1, "phi of brick " + canonical_string(m));
  }
  for (const auto& b : fixture_modules())
    if (is_brick(b)) o.expect(count_phi(b).phi == 1, "phi of brick " + canonical_string(b));
  o.expect(count_phi(fx::node_injective(fx::node())).phi == 2, "phi(I(1)) on NODE");
  for (const auto& m : cn2_indecomposables(fx::cn2())) o.expect(count_phi(m).phi == 1, "phi on CN2 " + canonical_string(m));
  return o;
}

inline bool dual_failure_reproduces() {
  const auto n2 = fx::n2();
  const auto m = fx::uniserial(n2, "1", 3);
  const auto e = enumerate_filtrations(m);
  if (e.filtrations.size() != 1) return false;
  const auto& f = e.filtrations.front();
  if (f.chain.size() != 3 || f.chain[1].total_dim() != 1) return false;
  const auto d = dual_filtration(f);
  const auto torsional = verify_filtration(d);
  const auto chain_only = verify_filtration(d, kDefaultBudget, FiltrationMode::brick_chain);
  return !torsional.ok && torsional.reason == FiltrationReason::not_torsional && torsional.step == 2 && chain_only.ok;
}

// 4
inline Outcome worked_examples() {
  Outcome o;
  const auto cn = fx::cn2();
  const auto e = enumerate_filtrations(fx::uniserial(cn, "2", 5));
  o.expect(e.filtrations.size() == 1 &&
               same_type(e.filtrations.front().type.bricks, {fx::simple(cn, "2"), fx::uniserial(cn, "2", 2)}),
           "CN2 length 5 type (S2, H)");
  const auto k2 = fx::k2(3);
  for (std::int64_t l = 0; l < 3; ++l)
    o.expect(iso_test(endotop(fx::k2_regular2(k2, l)).module, fx::k2_regular(k2, l)),
             "et R2 = R for lambda " + std::to_string(l));
  const auto loop = fx::loop();
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto tower = iterated_endotop(fx::loop_serial(loop, n));
    bool ok = tower.stages.size() == n + 1;
    for (std::size_t i = 0; ok && i <= n; ++i) ok = iso_test(tower.stages[i].module, fx::loop_serial(loop, n - i));
    o.expect(ok, "et^i M[" + std::to_string(n) + "]");
  }
  o.expect(dual_failure_reproduces(), "dual filtration of 1/2/1 over N2");
  return o;
}

// 5
inline Outcome semibrick_bijection() {
  Outcome o;
  struct Case {
    AlgebraPtr alg;
    std::size_t bound;
    std::size_t expected;
  };
  for (const auto& c : {Case{fx::a2(), 2, 5}, Case{fx::n2(), 3, 0}}) {
    const auto t = enumerate_torsion_classes(build_universe(c.alg, c.bound, kDefaultBudget, true));
    const auto r = check_bijection(t);
    o.expect(r.ok(), "bijection at bound " + std::to_string(c.bound));
    if (c.expected)
      o.expect(r.semibricks.size() == c.expected && t.classes.size() == c.expected,
               std::to_string(r.semibricks.size()) + " semibricks, " + std::to_string(t.classes.size()) + " classes");
    else
      o.expect(r.semibricks.size() == t.classes.size(), "semibrick and class counts differ");
  }
  return o;
}

// 6
inline Outcome lower_neighbors(const AlgebraPtr& alg = fx::a2(), std::size_t bound = 2) {
  Outcome o;
  const auto t = enumerate_torsion_classes(build_universe(alg, bound, kDefaultBudget, true));
  const std::size_t n = t.universe.size();
  for (ClassMask s = 1; s < (ClassMask{1} << n); ++s) {
    const auto r = check_lower_neighbors(t, assemble(t.universe, indices_of(s)));
    o.expect(r.ok(), "generator " + std::to_string(s) + (r.failures.empty() ? "" : ": " + r.failures.front()));
  }
  return o;
}

// 7
inline Outcome lemma_suite(const std::vector<Representation>& modules, std::size_t lemma43_bound = 4) {
  Outcome o;
  std::vector<Representation> all = fixture_modules();
  all.insert(all.end(), modules.begin(), modules.end());
  for (const auto& m : all) {
    const std::string name = canonical_string(m);
    const TorsionHandle t(m);
    const auto et = endotop(m);
    // T(M) = T(et M)
    o.expect(in_torsion(et.module, t).verdict && is_in_torsion(m, et.module), "T(M) = T(et M) for " + name);
    // the kernel of M -> et^inf M is torsional
    const auto tower = iterated_endotop(m);
    o.expect(in_torsion(stage_module(kernel(m, tower.limit_projection())), t).verdict, "kernel to et^inf for " + name);
    // Hom(M, N) != 0 for nonzero N in T(M)
    for (const auto& n : {et.module, tower.limit()})
      if (!n.is_zero()) o.expect(hom_dim(m, n) >= 1, "Hom(M, N) for N in T(M), " + name);
    // nonzero maps to a top brick are onto
    const auto tops = top_bricks_of_semibrick(m, tower.limit(), kDefaultBudget);
    for (const auto& tb : tops.bricks) {
      bool onto = true;
      enumerate_elements(HomBasis(m, tb.brick), kDefaultBudget, [&](const Vector&, const Morphism& f) {
        if (!f.is_zero() && !f.is_surjective()) onto = false;
        return !onto;
      });
      o.expect(onto, "nonzero map to a top brick not onto, " + name);
    }
    // the last type entry is a top brick
    std::vector<Representation> top_list;
    for (const auto& tb : tops.bricks) top_list.push_back(tb.brick);
    for (const auto& f : enumerate_filtrations(m).filtrations)
      o.expect(!f.type.bricks.empty() && has_iso(top_list, f.type.bricks.back()), "last type brick of " + name);
    // brick iff no proper torsional submodule
    if (m.total_dim() <= lemma43_bound) {
      bool torsional_sub = false;
      for (const auto& s : all_submodules(m))
        if (!s.is_zero() && !s.is_full() && in_torsion(stage_module(s), t).verdict) torsional_sub = true;
      o.expect(is_brick(m) == !torsional_sub, "brick criterion for " + name);
    }
  }
  // Hom(B', B) = 0 for bricks B' in T(B), over the bricks seen per algebra
  std::vector<Representation> bricks;
  for (const auto& m : all)
    for (const auto& tb : top_bricks(m).bricks) {
      bool dup = false;
      for (const auto& b : bricks) dup = dup || (same_algebra(b.algebra(), tb.brick.algebra()) && iso_test(b, tb.brick));
      if (!dup && bricks.size() < 400) bricks.push_back(tb.brick);
    }
  for (const auto& b : bricks)
    for (const auto& bp : bricks) {
      if (!same_algebra(b.algebra(), bp.algebra()) || iso_test(b, bp) || !is_in_torsion(bp, b)) continue;
      o.expect(hom_dim(bp, b) == 0 && hom_dim(b, bp) >= 1, "brick pair " + canonical_string(bp));
    }
  return o;
}

/// Everything the runs compute, as one canonical string.
inline std::string report_string(const std::vector<Representation>& modules) {
  json out = json::array();
  for (const auto& m : modules) {
    const auto e = enumerate_filtrations(m);
    json fs = json::array();
    for (const auto& f : e.filtrations) {
      json chain = json::array();
      for (const auto& s : f.chain) chain.push_back(subrep_to_json(s));
      json type = json::array();
      for (const auto& b : f.type.bricks) type.push_back(module_to_json(b));
      fs.push_back({{"chain", chain}, {"type", type}});
    }
    out.push_back({{"module", module_to_json(m)}, {"phi", e.report.phi}, {"filtrations", fs}});
  }
  for (const auto& [alg, bound] : {std::pair{fx::a2(), std::size_t{2}}, std::pair{fx::n2(), std::size_t{3}}}) {
    const auto t = enumerate_torsion_classes(build_universe(alg, bound, kDefaultBudget, true));
    out.push_back(lattice_to_json(t));
    out.push_back(lattice_to_dot(t));
  }
  return out.dump();
}

}  // namespace criteria
