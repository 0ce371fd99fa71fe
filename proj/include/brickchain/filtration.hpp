#pragma once

// Torsional brick chain filtrations: enumeration by the M^(i) recursion,
// the count φ, independent verification, and transport through duality.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/endotop.hpp"
#include "brickchain/errors.hpp"
#include "brickchain/hom.hpp"
#include "brickchain/io.hpp"
#include "brickchain/quiver.hpp"
#include "brickchain/torsion.hpp"

namespace brickchain {

/// (B_1, ..., B_m) with Hom(B_i, B_j) = 0 for i < j.
struct BrickChain {
  std::vector<Representation> bricks;
  std::size_t size() const { return bricks.size(); }
};

struct StepCertificate {
  MembershipCertificate torsionality;  // M_{i-1} in T(M_i)
  EBCertificate factor;                // M_i / M_{i-1} in E(B_i)
};

/// 0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_m = M of type (B_1, ..., B_m). Certificates are
/// empty until the filtration has been checked.
struct TorsionalFiltration {
  Representation module;
  std::vector<SubRepresentation> chain;
  BrickChain type;
  std::vector<StepCertificate> certificates;
};

enum class FiltrationReason {
  ok,
  wrong_parent,
  not_closed,
  bad_endpoints,
  not_increasing,
  type_length,
  not_brick,
  brick_chain_hom,
  not_torsional,
  factor_not_in_EB,
  budget_exhausted,
};

inline const char* to_string(FiltrationReason r) {
  switch (r) {
    case FiltrationReason::ok: return "ok";
    case FiltrationReason::wrong_parent: return "wrong_parent";
    case FiltrationReason::not_closed: return "not_closed";
    case FiltrationReason::bad_endpoints: return "bad_endpoints";
    case FiltrationReason::not_increasing: return "not_increasing";
    case FiltrationReason::type_length: return "type_length";
    case FiltrationReason::not_brick: return "not_brick";
    case FiltrationReason::brick_chain_hom: return "brick_chain_hom";
    case FiltrationReason::not_torsional: return "not_torsional";
    case FiltrationReason::factor_not_in_EB: return "factor_not_in_EB";
    case FiltrationReason::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

struct FiltrationVerdict {
  bool ok = false;
  FiltrationReason reason = FiltrationReason::ok;
  std::size_t step = 0;  // 1-based stage where the check failed, 0 if global
};

enum class FiltrationMode { torsional, brick_chain };

/// The stage M_k as a module in its own right.
inline Representation stage_module(const SubRepresentation& s) { return sub_quotient(s).sub; }

/// upper / lower, for lower ⊆ upper ⊆ M.
inline Representation stage_factor(const SubRepresentation& lower, const SubRepresentation& upper) {
  const auto sq = sub_quotient(lower);
  return sub_quotient(map_sub(sq.quotient, sq.projection, upper)).sub;
}

inline bool is_brick_chain(const BrickChain& c, std::uint64_t budget = kDefaultBudget) {
  for (const auto& b : c.bricks)
    if (!is_brick(b, budget)) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (hom_dim(c.bricks[i], c.bricks[j]) != 0) return false;
  return true;
}

namespace detail {

inline FiltrationVerdict fail(FiltrationReason r, std::size_t step = 0) { return {false, r, step}; }

/// Runs every check and fills f.certificates along the way.
inline FiltrationVerdict certify(TorsionalFiltration& f, std::uint64_t budget, FiltrationMode mode) {
  f.certificates.clear();
  const auto& chain = f.chain;
  if (chain.empty()) return fail(FiltrationReason::bad_endpoints);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (!(chain[k].parent() == f.module)) return fail(FiltrationReason::wrong_parent, k);
    if (!chain[k].is_closed()) return fail(FiltrationReason::not_closed, k);
  }
  if (!chain.front().is_zero() || !chain.back().is_full()) return fail(FiltrationReason::bad_endpoints);
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (!chain[k].contains(chain[k - 1]) || chain[k].total_dim() == chain[k - 1].total_dim())
      return fail(FiltrationReason::not_increasing, k);
  if (f.type.size() + 1 != chain.size()) return fail(FiltrationReason::type_length);
  for (const auto& b : f.type.bricks)
    if (!same_algebra(b.algebra(), f.module.algebra())) return fail(FiltrationReason::wrong_parent);
  for (std::size_t i = 0; i < f.type.size(); ++i)
    if (!is_brick(f.type.bricks[i], budget)) return fail(FiltrationReason::not_brick, i + 1);
  for (std::size_t i = 0; i < f.type.size(); ++i)
    for (std::size_t j = i + 1; j < f.type.size(); ++j)
      if (hom_dim(f.type.bricks[i], f.type.bricks[j]) != 0) return fail(FiltrationReason::brick_chain_hom, j + 1);
  for (std::size_t k = 1; k < chain.size(); ++k) {
    StepCertificate cert;
    if (mode == FiltrationMode::torsional) {
      cert.torsionality = in_torsion(stage_module(chain[k - 1]), TorsionHandle(stage_module(chain[k])));
      if (!cert.torsionality.verdict) return fail(FiltrationReason::not_torsional, k);
    }
    cert.factor = verify_EB_certificate(stage_factor(chain[k - 1], chain[k]), f.type.bricks[k - 1], budget);
    if (!cert.factor.verdict) return fail(FiltrationReason::factor_not_in_EB, k);
    f.certificates.push_back(std::move(cert));
  }
  return {true, FiltrationReason::ok, 0};
}

}  // namespace detail

/// Re-checks a filtration from scratch; hand-written input is fine.
inline FiltrationVerdict verify_filtration(const TorsionalFiltration& f, std::uint64_t budget = kDefaultBudget,
                                           FiltrationMode mode = FiltrationMode::torsional) {
  TorsionalFiltration copy{f.module, f.chain, f.type, {}};
  try {
    return detail::certify(copy, budget, mode);
  } catch (const BudgetExceeded&) {
    return detail::fail(FiltrationReason::budget_exhausted);
  }
}

/// One visited module of the recursion.
struct CountNode {
  Representation module;
  std::vector<Representation> top_bricks;
  std::vector<SubRepresentation> submodules;  // M^(i), one per top brick
  std::vector<std::size_t> children;          // node of M^(i)
  std::uint64_t phi = 0;
};

/// Node 0 is the input module; equal modules share a node.
struct CountReport {
  Representation module;
  std::uint64_t phi = 0;
  std::vector<CountNode> nodes;
};

namespace detail {

class PhiRecursion {
 public:
  explicit PhiRecursion(std::uint64_t budget) : budget_(budget) {}

  std::size_t visit(const Representation& m) {
    const std::string key = canonical_string(m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    CountNode node;
    node.module = m;
    if (m.is_zero()) {
      node.phi = 1;
      return store(key, std::move(node));
    }
    const TorsionHandle t(m);
    auto tops = top_bricks(m, budget_);
    for (auto& tb : tops.bricks) {
      auto sub = intersection_torsion_part(m, t, tb.brick);
      if (sub.is_full()) throw CertificateFailure("M^(i) is not a proper submodule");
      const auto sq = sub_quotient(sub);
      if (!verify_EB(sq.quotient, tb.brick, budget_)) throw CertificateFailure("M/M^(i) is not in E(T_i)");
      node.top_bricks.push_back(std::move(tb.brick));
      node.submodules.push_back(std::move(sub));
    }
    for (const auto& sub : node.submodules) {
      const std::size_t child = visit(stage_module(sub));
      node.children.push_back(child);
      node.phi += nodes_[child].phi;
    }
    return store(key, std::move(node));
  }

  std::vector<CountNode>& nodes() { return nodes_; }

  /// Chains and types for node k, chains living in that node's module.
  const std::vector<std::pair<std::vector<SubRepresentation>, BrickChain>>& chains(std::size_t k) {
    if (auto it = chains_.find(k); it != chains_.end()) return it->second;
    const CountNode& node = nodes_[k];
    std::vector<std::pair<std::vector<SubRepresentation>, BrickChain>> out;
    if (node.module.is_zero()) {
      out.push_back({{SubRepresentation::zero(node.module)}, {}});
    } else {
      for (std::size_t i = 0; i < node.submodules.size(); ++i) {
        const auto sq = sub_quotient(node.submodules[i]);
        for (const auto& [sub_chain, sub_type] : chains(node.children[i])) {
          std::vector<SubRepresentation> chain;
          for (const auto& s : sub_chain) chain.push_back(push_forward(sq, node.module, s));
          chain.push_back(SubRepresentation::full(node.module));
          BrickChain type = sub_type;
          type.bricks.push_back(node.top_bricks[i]);
          out.push_back({std::move(chain), std::move(type)});
        }
      }
    }
    return chains_.emplace(k, std::move(out)).first->second;
  }

 private:
  std::size_t store(const std::string& key, CountNode node) {
    nodes_.push_back(std::move(node));
    memo_[key] = nodes_.size() - 1;
    return nodes_.size() - 1;
  }

  std::uint64_t budget_;
  std::vector<CountNode> nodes_;
  std::map<std::string, std::size_t> memo_;
  std::map<std::size_t, std::vector<std::pair<std::vector<SubRepresentation>, BrickChain>>> chains_;
};

inline CountReport make_report(const Representation& m, PhiRecursion& rec, std::size_t root) {
  // root first, others in visit order
  auto& nodes = rec.nodes();
  std::vector<std::size_t> order{root};
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (k != root) order.push_back(k);
  std::vector<std::size_t> position(nodes.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
  CountReport report{m, nodes[root].phi, {}};
  for (std::size_t k : order) {
    CountNode n = nodes[k];
    for (auto& c : n.children) c = position[c];
    report.nodes.push_back(std::move(n));
  }
  return report;
}

}  // namespace detail

/// φ(M) by the recursion φ(M) = Σ_i φ(M^(i)), φ(0) = 1.
inline CountReport count_phi(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  detail::PhiRecursion rec(budget);
  const std::size_t root = rec.visit(m);
  return detail::make_report(m, rec, root);
}

struct FiltrationEnumeration {
  std::vector<TorsionalFiltration> filtrations;
  CountReport report;
};

/// All torsional brick chain filtrations of M, each with certificates.
inline FiltrationEnumeration enumerate_filtrations(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  detail::PhiRecursion rec(budget);
  const std::size_t root = rec.visit(m);
  FiltrationEnumeration out;
  for (const auto& [chain, type] : rec.chains(root)) {
    TorsionalFiltration f{m, chain, type, {}};
    const auto verdict = detail::certify(f, budget, FiltrationMode::torsional);
    if (!verdict.ok)
      throw CertificateFailure(std::string("emitted filtration fails verification: ") + to_string(verdict.reason));
    out.filtrations.push_back(std::move(f));
  }
  out.report = detail::make_report(m, rec, root);
  if (out.report.phi != out.filtrations.size()) throw CertificateFailure("phi differs from the number of filtrations");
  return out;
}

/// The chain D(M/M_{m-i}) ⊂ D M of type (D B_m, ..., D B_1). Torsionality is
/// not asserted; the brick chain conditions are.
inline TorsionalFiltration dual_filtration(const TorsionalFiltration& f, AlgebraPtr opposite = nullptr) {
  if (!opposite) opposite = make_algebra(f.module.algebra()->opposite());
  const auto dm = dualize(f.module, opposite).module;
  TorsionalFiltration out;
  out.module = dm;
  for (auto it = f.chain.rbegin(); it != f.chain.rend(); ++it) out.chain.push_back(dual_of_submodule(*it, dm));
  for (auto it = f.type.bricks.rbegin(); it != f.type.bricks.rend(); ++it)
    out.type.bricks.push_back(dualize(*it, opposite).module);
  if (!is_brick_chain(out.type)) throw CertificateFailure("dual type is not a brick chain");
  return out;
}

}  // namespace brickchain
