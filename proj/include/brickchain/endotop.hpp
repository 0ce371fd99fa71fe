#pragma once

// Radical of endomorphism algebras, brick and semibrick tests, the endotop
// et M = M / (rad End M) M, its iterates, and top bricks.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/errors.hpp"
#include "brickchain/hom.hpp"
#include "brickchain/linalg.hpp"
#include "brickchain/quiver.hpp"

namespace brickchain {

enum class RadicalMethod {
  /// Lifted power traces on a faithful matrix representation; polynomial time.
  trace_lift,
  /// Every element whose generated two-sided ideal is nilpotent; p^dim work.
  exhaustive,
};

struct RadicalBasis {
  Subspace span;  // in coordinates of the EndAlgebra basis
  std::size_t nilpotency_index = 0;

  std::size_t dim() const { return span.dim(); }
  bool is_zero() const { return span.is_zero(); }
};

namespace detail {

/// Integer matrix power mod `modulus` of a residue matrix.
inline std::vector<std::uint64_t> power_mod(const Matrix& m, std::uint64_t exponent, std::uint64_t modulus) {
  const std::size_t n = m.rows();
  std::vector<std::uint64_t> base(m.data().begin(), m.data().end());
  std::vector<std::uint64_t> result(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) result[i * n + i] = 1 % modulus;
  auto mult = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t aik = a[i * n + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + aik * b[k * n + j]) % modulus;
      }
    return c;
  };
  for (; exponent; exponent >>= 1) {
    if (exponent & 1) result = mult(result, base);
    base = mult(base, base);
  }
  return result;
}

/// Radical of the F_p-algebra spanned by the given n x n matrices (closed
/// under products, containing a faithful image). Computes the descending
/// ideals I_i = {x ∈ I_{i-1} : g_i(x y) = 0 for all y}, where
/// g_i(z) = Tr(z~^{p^i}) / p^i mod p for an integer lift z~, down to
/// i = floor(log_p n). Coordinates refer to the given spanning list.
inline Subspace matrix_algebra_radical(const Field& field, const std::vector<Matrix>& basis, std::size_t n) {
  const std::size_t d = basis.size();
  const std::uint64_t p = field.prime();
  if (d == 0 || n == 0) return Subspace::full(field, d);
  std::size_t levels = 0;
  for (std::uint64_t q = p; q <= n; q *= p) ++levels;

  std::vector<Vector> ideal;  // coordinates of a basis of I_{i-1}
  for (std::size_t k = 0; k < d; ++k) {
    Vector e(d, 0);
    e[k] = 1;
    ideal.push_back(std::move(e));
  }
  auto as_matrix = [&](const Vector& coords) {
    Matrix m(field, n, n);
    for (std::size_t k = 0; k < d; ++k) m.add_scaled(basis[k], coords[k]);
    return m;
  };

  std::uint64_t pi = 1;  // p^i
  for (std::size_t i = 0; i <= levels && !ideal.empty(); ++i, pi *= p) {
    const std::uint64_t modulus = pi * p;
    Matrix forms(field, ideal.size(), d);
    for (std::size_t j = 0; j < ideal.size(); ++j) {
      const Matrix x = as_matrix(ideal[j]);
      for (std::size_t k = 0; k < d; ++k) {
        const auto z = power_mod(x * basis[k], pi, modulus);
        std::uint64_t tr = 0;
        for (std::size_t t = 0; t < n; ++t) tr = (tr + z[t * n + t]) % modulus;
        if (tr % pi != 0) throw CertificateFailure("lifted trace not divisible by p^i");
        forms(j, k) = static_cast<Residue>((tr / pi) % p);
      }
    }
    // combinations Σ c_j x_j killed by every form
    const Subspace kept = solve_kernel(forms.transpose());
    std::vector<Vector> next;
    for (std::size_t r = 0; r < kept.dim(); ++r) {
      const Vector c = kept.vector(r);
      Vector combo(d, 0);
      for (std::size_t j = 0; j < ideal.size(); ++j)
        for (std::size_t k = 0; k < d; ++k) combo[k] = field.add(combo[k], field.mul(c[j], ideal[j][k]));
      next.push_back(std::move(combo));
    }
    ideal = std::move(next);
  }
  return Subspace::span(field, d, ideal);
}

/// Span of products {a b : a ∈ A, b ∈ B} for subspaces given in algebra coordinates.
inline Subspace product_span(const EndAlgebra& e, const Subspace& a, const Subspace& b) {
  std::vector<Vector> prods;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) prods.push_back(e.multiply(a.vector(i), b.vector(j)));
  return Subspace::span(e.field(), e.dim(), prods);
}

}  // namespace detail

/// Smallest k with I^k = 0 (0 for I = 0), or nullopt when I is not nilpotent.
inline std::optional<std::size_t> ideal_nilpotency_index(const EndAlgebra& e, const Subspace& ideal) {
  if (ideal.is_zero()) return 0;
  Subspace power = ideal;
  std::size_t k = 1;
  while (!power.is_zero()) {
    const Subspace next = detail::product_span(e, power, ideal);
    if (next == power) return std::nullopt;
    power = next;
    ++k;
  }
  return k;
}

/// Two-sided ideal E x E generated by x.
inline Subspace generated_ideal(const EndAlgebra& e, const Vector& x) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    const Vector left = e.multiply(e.basis_vector(i), x);
    for (std::size_t j = 0; j < e.dim(); ++j) gens.push_back(e.multiply(left, e.basis_vector(j)));
  }
  return Subspace::span(e.field(), e.dim(), gens);
}

inline bool is_two_sided_ideal(const EndAlgebra& e, const Subspace& s) {
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t i = 0; i < e.dim(); ++i) {
      if (!s.contains(e.multiply(e.basis_vector(i), s.vector(r)))) return false;
      if (!s.contains(e.multiply(s.vector(r), e.basis_vector(i)))) return false;
    }
  return true;
}

inline Subspace radical_exhaustive(const EndAlgebra& e, std::uint64_t budget) {
  std::vector<Vector> members;
  enumerate_elements(e.hom(), budget, [&](const Vector& coeffs, const Morphism&) {
    if (ideal_nilpotency_index(e, generated_ideal(e, coeffs))) members.push_back(coeffs);
    return false;
  });
  return Subspace::span(e.field(), e.dim(), members);
}

inline Subspace radical_trace_lift(const EndAlgebra& e) {
  std::vector<Matrix> mats;
  for (const auto& f : e.hom().basis()) mats.push_back(f.total_matrix());
  return detail::matrix_algebra_radical(e.field(), mats, e.module().total_dim());
}

/// Structure constants of E / I on the complement basis of I (the non-pivot
/// unit vectors), as left-regular matrices.
inline std::vector<Matrix> quotient_regular_representation(const EndAlgebra& e, const Subspace& ideal) {
  const Field& f = e.field();
  const Matrix proj = ideal.quotient_projection();
  const auto free = ideal.non_pivots();
  const std::size_t q = free.size();
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < q; ++a) {
    Matrix left(f, q, q);
    for (std::size_t b = 0; b < q; ++b) {
      const Vector prod = proj.apply(e.multiply(e.basis_vector(free[a]), e.basis_vector(free[b])));
      for (std::size_t r = 0; r < q; ++r) left(r, b) = prod[r];
    }
    out.push_back(std::move(left));
  }
  return out;
}

/// The invariants a radical must satisfy: two-sided ideal, nilpotent, and
/// E / rad semisimple (its own radical, computed on the regular
/// representation, vanishes).
inline bool check_radical(const EndAlgebra& e, const Subspace& rad) {
  if (!is_two_sided_ideal(e, rad)) return false;
  if (!ideal_nilpotency_index(e, rad)) return false;
  const auto reg = quotient_regular_representation(e, rad);
  return detail::matrix_algebra_radical(e.field(), reg, reg.size()).is_zero();
}

inline RadicalBasis radical(const EndAlgebra& e, std::uint64_t budget = kDefaultBudget,
                            RadicalMethod method = RadicalMethod::trace_lift) {
  RadicalBasis out;
  out.span = method == RadicalMethod::exhaustive ? radical_exhaustive(e, budget) : radical_trace_lift(e);
  const auto index = ideal_nilpotency_index(e, out.span);
  if (!index) throw CertificateFailure("computed radical is not nilpotent");
  out.nilpotency_index = *index;
  return out;
}

inline RadicalBasis radical(const Representation& m, std::uint64_t budget = kDefaultBudget,
                            RadicalMethod method = RadicalMethod::trace_lift) {
  return radical(EndAlgebra(m), budget, method);
}

/// Every nonzero endomorphism invertible, checked element by element.
inline bool is_brick(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  if (m.is_zero()) return false;
  const HomBasis end(m, m);
  if (end.dim() == 1) return true;
  bool brick = true;
  enumerate_elements(end, budget, [&](const Vector&, const Morphism& f) {
    if (!f.is_zero() && !f.is_invertible()) {
      brick = false;
      return true;
    }
    return false;
  });
  return brick;
}

/// End(M) semisimple.
inline bool is_semibrick(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  return radical(m, budget).is_zero();
}

struct Endotop {
  Representation module;
  Morphism projection;       // M -> et M
  SubRepresentation kernel;  // (rad E) M
};

inline SubRepresentation radical_image(const EndAlgebra& e, const RadicalBasis& rad) {
  const Representation& m = e.module();
  SubRepresentation acc = SubRepresentation::zero(m);
  for (std::size_t r = 0; r < rad.dim(); ++r) acc = sub_sum(acc, image(m, e.element(rad.span.vector(r))));
  return acc;
}

inline Endotop endotop(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  const EndAlgebra e(m);
  const auto rad = radical(e, budget);
  const auto sub = radical_image(e, rad);
  const auto sq = sub_quotient(sub);
  return {sq.quotient, sq.projection, sub};
}

struct EndotopStage {
  Representation module;
  Morphism from_previous;  // stage i-1 -> stage i; identity for stage 0
};

struct EndotopTower {
  std::vector<EndotopStage> stages;
  std::size_t limit_index = 0;

  const Representation& limit() const { return stages.back().module; }
  /// M -> et^∞ M
  Morphism limit_projection() const {
    Morphism acc = stages.front().from_previous;
    for (std::size_t i = 1; i < stages.size(); ++i) acc = compose(stages[i].from_previous, acc);
    return acc;
  }
};

inline EndotopTower iterated_endotop(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  EndotopTower tower;
  tower.stages.push_back({m, Morphism::identity(m)});
  while (true) {
    const auto& current = tower.stages.back().module;
    const EndAlgebra e(current);
    const auto rad = radical(e, budget);
    if (rad.is_zero()) break;
    const auto sq = sub_quotient(radical_image(e, rad));
    if (sq.quotient.total_dim() >= current.total_dim())
      throw CertificateFailure("endotop did not shrink a module with nonzero radical");
    tower.stages.push_back({sq.quotient, sq.projection});
  }
  tower.limit_index = tower.stages.size() - 1;
  return tower;
}

struct TopBrick {
  Representation brick;
  std::size_t multiplicity = 0;
};

struct TopBrickSet {
  Representation module;
  std::vector<TopBrick> bricks;  // pairwise non-isomorphic, canonical order
};

inline TopBrickSet top_bricks_of_semibrick(const Representation& module, const Representation& limit,
                                           std::uint64_t budget) {
  TopBrickSet out{module, {}};
  const auto dec = decompose(limit, budget);
  std::vector<Representation> summands;
  for (const auto& s : dec.summands) summands.push_back(s.module);
  const auto cls = iso_classes(summands);
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (cls[i] < out.bricks.size()) {
      ++out.bricks[cls[i]].multiplicity;
      continue;
    }
    if (!is_brick(summands[i], budget))
      throw CertificateFailure("summand of the iterated endotop is not a brick");
    out.bricks.push_back({summands[i], 1});
  }
  return out;
}

inline TopBrickSet top_bricks(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  if (m.is_zero()) return {m, {}};
  const auto tower = iterated_endotop(m, budget);
  return top_bricks_of_semibrick(m, tower.limit(), budget);
}

}  // namespace brickchain
