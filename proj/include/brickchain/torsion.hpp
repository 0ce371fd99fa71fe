#pragma once

// Oracles for finitely generated torsion classes T(G): membership, the
// T(G)-torsion submodule, the largest submodule in ⊥B, their intersection,
// and membership in E(B) (modules filtered by copies of B).

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/hom.hpp"
#include "brickchain/io.hpp"
#include "brickchain/quiver.hpp"

namespace brickchain {

/// Handle on T(G), the smallest torsion class containing G.
struct TorsionHandle {
  Representation generator;
  std::string label;

  explicit TorsionHandle(Representation g) : generator(std::move(g)), label(canonical_string(generator)) {}
};

/// Ascending chain 0 = N_0 ⊂ N_1 ⊂ ... in N, where N_{k+1} / N_k is the trace
/// of G in N / N_k. The verdict is whether the chain reaches N.
struct MembershipCertificate {
  Representation module;
  std::vector<SubRepresentation> chain;
  bool verdict = false;
};

namespace detail {

/// The stabilized trace closure of G inside U.
inline MembershipCertificate trace_closure(const Representation& u, const Representation& g) {
  MembershipCertificate cert{u, {SubRepresentation::zero(u)}, false};
  while (true) {
    const auto& current = cert.chain.back();
    if (current.is_full()) break;
    const auto sq = sub_quotient(current);
    const auto tr = trace_submodule(g, sq.quotient);
    if (tr.is_zero()) break;
    cert.chain.push_back(pull_back(sq, u, tr));
  }
  cert.verdict = cert.chain.back().is_full();
  return cert;
}

}  // namespace detail

inline MembershipCertificate in_torsion(const Representation& n, const TorsionHandle& t) {
  if (!same_algebra(n.algebra(), t.generator.algebra())) throw MalformedInput("membership across algebras");
  return detail::trace_closure(n, t.generator);
}

inline bool is_in_torsion(const Representation& n, const Representation& g) {
  return in_torsion(n, TorsionHandle(g)).verdict;
}

/// Largest submodule of U lying in T(G).
inline SubRepresentation torsion_part(const Representation& u, const TorsionHandle& t) {
  return detail::trace_closure(u, t.generator).chain.back();
}

/// Largest submodule of M lying in ⊥B: iterate the reject until no nonzero
/// map to B remains.
inline SubRepresentation perp_part(const Representation& m, const Representation& b) {
  SubRepresentation current = SubRepresentation::full(m);
  while (true) {
    const auto sq = sub_quotient(current);
    const auto rej = reject_submodule(sq.sub, b);
    if (rej.is_full()) return current;
    current = push_forward(sq, m, rej);
  }
}

/// Largest submodule of M in T ∩ ⊥B, by alternating the two closures until
/// neither moves.
inline SubRepresentation intersection_torsion_part(const Representation& m, const TorsionHandle& t,
                                                   const Representation& b) {
  SubRepresentation current = SubRepresentation::full(m);
  while (true) {
    const auto sq = sub_quotient(current);
    const auto perp = push_forward(sq, m, perp_part(sq.sub, b));
    const auto sq2 = sub_quotient(perp);
    const auto tors = push_forward(sq2, m, torsion_part(sq2.sub, t));
    if (tors == current) return current;
    current = tors;
  }
}

/// Witness that F lies in E(B): F = K_0 ⊃ K_1 ⊃ ... ⊃ K_r = 0 with every
/// K_i / K_{i+1} ≅ B, as submodules of F.
struct EBCertificate {
  bool verdict = false;
  std::vector<SubRepresentation> chain;
};

namespace detail {

inline bool dims_multiple(const Representation& f, const Representation& b) {
  if (b.is_zero()) return f.is_zero();
  std::size_t k = 0;
  bool have_k = false;
  for (std::size_t v = 0; v < f.dims().size(); ++v) {
    if (b.dim(v) == 0) {
      if (f.dim(v) != 0) return false;
      continue;
    }
    if (f.dim(v) % b.dim(v) != 0) return false;
    const std::size_t q = f.dim(v) / b.dim(v);
    if (have_k && q != k) return false;
    k = q;
    have_k = true;
  }
  return true;
}

class EBSearch {
 public:
  EBSearch(const Representation& b, std::uint64_t budget) : b_(b), budget_(budget) {}

  /// Chain in F from F down to 0, or empty on failure.
  std::vector<SubRepresentation> search(const Representation& f) {
    if (f.is_zero()) return {SubRepresentation::zero(f)};
    if (!dims_multiple(f, b_)) return {};
    const std::string key = canonical_string(f);
    if (failures_.count(key)) return {};
    const HomBasis h(f, b_);
    std::vector<SubRepresentation> seen;
    std::vector<SubRepresentation> result;
    enumerate_elements(h, budget_, [&](const Vector&, const Morphism& g) {
      if (!g.is_surjective()) return false;
      const auto k = kernel(f, g);
      for (const auto& s : seen)
        if (s == k) return false;
      seen.push_back(k);
      const auto sq = sub_quotient(k);
      auto inner = search(sq.sub);
      if (inner.empty()) return false;
      result.push_back(SubRepresentation::full(f));
      for (const auto& s : inner) result.push_back(push_forward(sq, f, s));
      return true;
    });
    if (result.empty()) failures_.insert(key);
    return result;
  }

 private:
  Representation b_;
  std::uint64_t budget_;
  std::set<std::string> failures_;
};

}  // namespace detail

inline EBCertificate verify_EB_certificate(const Representation& f, const Representation& b,
                                           std::uint64_t budget = kDefaultBudget) {
  if (!same_algebra(f.algebra(), b.algebra())) throw MalformedInput("E(B) test across algebras");
  detail::EBSearch search(b, budget);
  auto chain = search.search(f);
  EBCertificate cert;
  cert.verdict = !chain.empty();
  cert.chain = std::move(chain);
  return cert;
}

inline bool verify_EB(const Representation& f, const Representation& b, std::uint64_t budget = kDefaultBudget) {
  return verify_EB_certificate(f, b, budget).verdict;
}

}  // namespace brickchain
