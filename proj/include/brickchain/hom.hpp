#pragma once

// Hom spaces between representations, endomorphism algebras with structure
// constants, deterministic element search, Fitting splitting, decomposition
// into indecomposables and isomorphism testing.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/errors.hpp"
#include "brickchain/io.hpp"
#include "brickchain/linalg.hpp"
#include "brickchain/quiver.hpp"

namespace brickchain {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

class HomBasis {
 public:
  HomBasis() = default;

  /// Solves f_t M_a = N_a f_s for every arrow a: s -> t. Unknowns are the
  /// entries of each f_v, vertex by vertex, row-major.
  HomBasis(Representation source, Representation target)
      : source_(std::move(source)), target_(std::move(target)) {
    if (!same_algebra(source_.algebra(), target_.algebra())) throw MalformedInput("hom between different algebras");
    const Field& f = source_.field();
    const std::size_t nv = source_.dims().size();
    offsets_.assign(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) offsets_[v + 1] = offsets_[v] + target_.dim(v) * source_.dim(v);
    const std::size_t nvars = offsets_[nv];

    const auto& arrows = source_.algebra()->arrows();
    std::size_t neq = 0;
    for (const auto& a : arrows) neq += target_.dim(a.target) * source_.dim(a.source);
    Matrix system(f, neq, nvars);
    std::size_t row = 0;
    for (std::size_t ai = 0; ai < arrows.size(); ++ai) {
      const auto& a = arrows[ai];
      const Matrix& ma = source_.map(ai);
      const Matrix& na = target_.map(ai);
      const std::size_t ms = source_.dim(a.source), mt = source_.dim(a.target), ns = target_.dim(a.source);
      for (std::size_t r = 0; r < target_.dim(a.target); ++r) {
        for (std::size_t c = 0; c < ms; ++c, ++row) {
          // (f_t M_a)[r][c] = sum_k f_t[r][k] M_a[k][c]
          for (std::size_t k = 0; k < mt; ++k)
            system(row, var(a.target, r, k)) = f.add(system(row, var(a.target, r, k)), ma(k, c));
          // - (N_a f_s)[r][c] = - sum_k N_a[r][k] f_s[k][c]
          for (std::size_t k = 0; k < ns; ++k)
            system(row, var(a.source, k, c)) = f.sub(system(row, var(a.source, k, c)), na(r, k));
        }
      }
    }
    solutions_ = solve_kernel(system);
    for (std::size_t i = 0; i < solutions_.dim(); ++i) basis_.push_back(unflatten(solutions_.vector(i)));
  }

  const Representation& source() const { return source_; }
  const Representation& target() const { return target_; }
  const std::vector<Morphism>& basis() const { return basis_; }
  const Morphism& element(std::size_t i) const { return basis_[i]; }
  std::size_t dim() const { return basis_.size(); }
  const Field& field() const { return source_.field(); }

  Vector flatten(const Morphism& m) const {
    Vector v(offsets_.back(), 0);
    for (std::size_t vert = 0; vert + 1 < offsets_.size(); ++vert)
      std::copy(m.components[vert].data().begin(), m.components[vert].data().end(),
                v.begin() + static_cast<std::ptrdiff_t>(offsets_[vert]));
    return v;
  }
  Morphism unflatten(const Vector& v) const {
    Morphism m;
    for (std::size_t vert = 0; vert + 1 < offsets_.size(); ++vert) {
      Matrix c(field(), target_.dim(vert), source_.dim(vert));
      for (std::size_t r = 0; r < c.rows(); ++r)
        for (std::size_t k = 0; k < c.cols(); ++k) c(r, k) = v[var(vert, r, k)];
      m.components.push_back(std::move(c));
    }
    return m;
  }

  /// Coordinates of a homomorphism in the echelon basis.
  Vector coordinates(const Morphism& m) const { return solutions_.coordinates(flatten(m)); }
  bool contains(const Morphism& m) const { return solutions_.contains(flatten(m)); }

  Morphism combination(const Vector& coeffs) const {
    Morphism m = Morphism::zero(source_, target_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) m.add_scaled(basis_[i], coeffs[i]);
    return m;
  }

 private:
  std::size_t var(std::size_t v, std::size_t r, std::size_t c) const {
    return offsets_[v] + r * source_.dim(v) + c;
  }

  Representation source_, target_;
  std::vector<std::size_t> offsets_;
  Subspace solutions_;
  std::vector<Morphism> basis_;
};

inline HomBasis hom_basis(const Representation& m, const Representation& n) { return HomBasis(m, n); }

inline std::size_t hom_dim(const Representation& m, const Representation& n) { return HomBasis(m, n).dim(); }

/// End(M) with structure constants: f_i ∘ f_j = Σ_k c_ijk f_k.
class EndAlgebra {
 public:
  EndAlgebra() = default;
  explicit EndAlgebra(const Representation& m) : hom_(m, m) {
    const std::size_t d = hom_.dim();
    mult_.assign(d, std::vector<Vector>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) mult_[i][j] = hom_.coordinates(compose(hom_.element(i), hom_.element(j)));
    unit_ = hom_.coordinates(Morphism::identity(m));
  }

  const Representation& module() const { return hom_.source(); }
  const HomBasis& hom() const { return hom_; }
  std::size_t dim() const { return hom_.dim(); }
  const Field& field() const { return hom_.field(); }
  const Vector& unit() const { return unit_; }
  const Vector& structure(std::size_t i, std::size_t j) const { return mult_[i][j]; }

  Vector multiply(const Vector& x, const Vector& y) const {
    const Field& f = field();
    Vector z(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j] == 0) continue;
        const Residue c = f.mul(x[i], y[j]);
        for (std::size_t k = 0; k < dim(); ++k) z[k] = f.add(z[k], f.mul(c, mult_[i][j][k]));
      }
    }
    return z;
  }

  Morphism element(const Vector& coords) const { return hom_.combination(coords); }
  Vector basis_vector(std::size_t i) const {
    Vector e(dim(), 0);
    e[i] = 1;
    return e;
  }

 private:
  HomBasis hom_;
  std::vector<std::vector<Vector>> mult_;
  Vector unit_;
};

inline EndAlgebra end_algebra(const Representation& m) { return EndAlgebra(m); }

/// Σ_f Im f over f ∈ Hom(M, N), as a subrepresentation of N.
inline SubRepresentation trace_submodule(const Representation& m, const Representation& n) {
  const HomBasis h(m, n);
  SubRepresentation acc = SubRepresentation::zero(n);
  for (const auto& f : h.basis()) acc = sub_sum(acc, image(n, f));
  return acc;
}

/// ∩_f ker f over f ∈ Hom(M, B), as a subrepresentation of M.
inline SubRepresentation reject_submodule(const Representation& m, const Representation& b) {
  const HomBasis h(m, b);
  SubRepresentation acc = SubRepresentation::full(m);
  for (const auto& f : h.basis()) acc = sub_intersect(acc, kernel(m, f));
  return acc;
}

enum class ElementPredicate { invertible, surjective, injective, neither_invertible_nor_nilpotent, nonzero };

inline bool satisfies(const Morphism& f, ElementPredicate pred) {
  switch (pred) {
    case ElementPredicate::invertible:
      return f.is_invertible();
    case ElementPredicate::surjective:
      return f.is_surjective();
    case ElementPredicate::injective:
      return f.is_injective();
    case ElementPredicate::neither_invertible_nor_nilpotent:
      return !f.is_invertible() && !is_nilpotent(f);
    case ElementPredicate::nonzero:
      return !f.is_zero();
  }
  return false;
}

/// Visits the elements Σ c_i f_i of a hom space in lexicographic order of
/// (c_0, ..., c_{d-1}), c_0 most significant, until the visitor returns true.
/// Examining more than `budget` elements throws BudgetExceeded. Returns the
/// number of elements visited.
inline std::uint64_t enumerate_elements(const HomBasis& h, std::uint64_t budget,
                                        const std::function<bool(const Vector&, const Morphism&)>& visit) {
  const Field& f = h.field();
  const std::size_t d = h.dim();
  Vector coeffs(d, 0);
  Morphism current = Morphism::zero(h.source(), h.target());
  std::uint64_t visited = 0;
  while (true) {
    if (visited == budget)
      throw BudgetExceeded("more than " + std::to_string(budget) + " elements in a hom space of dimension " +
                           std::to_string(d) + " over F_" + std::to_string(f.prime()));
    ++visited;
    if (visit(coeffs, current)) return visited;
    // increment the base-p counter; every digit step adds one copy of f_i
    std::size_t k = d;
    while (k > 0) {
      --k;
      current.add_scaled(h.element(k), 1);
      coeffs[k] = f.add(coeffs[k], 1);
      if (coeffs[k] != 0) break;
      if (k == 0) return visited;
    }
    if (d == 0) return visited;
  }
}

inline std::optional<Morphism> find_element(const HomBasis& h, ElementPredicate pred,
                                            std::uint64_t budget = kDefaultBudget) {
  std::optional<Morphism> found;
  enumerate_elements(h, budget, [&](const Vector&, const Morphism& m) {
    if (!satisfies(m, pred)) return false;
    found = m;
    return true;
  });
  return found;
}

struct Summand {
  Representation module;
  Morphism inclusion;   // summand -> M
  Morphism projection;  // M -> summand
};

struct FittingSplit {
  Summand kernel_part;
  Summand image_part;
};

inline Morphism power(const Morphism& f, std::size_t n) {
  Morphism out;
  for (const auto& c : f.components) {
    Matrix p = Matrix::identity(c.field(), c.rows());
    for (std::size_t k = 0; k < n; ++k) p = p * c;
    out.components.push_back(std::move(p));
  }
  return out;
}

/// M = ker(f^n) ⊕ im(f^n) with n = total_dim(M).
inline FittingSplit fitting_split(const Representation& m, const Morphism& f) {
  if (!is_homomorphism(m, m, f)) throw BadWitness("not an endomorphism");
  if (f.is_invertible()) throw BadWitness("endomorphism is invertible");
  if (is_nilpotent(f)) throw BadWitness("endomorphism is nilpotent");
  const Morphism g = power(f, m.total_dim());
  const auto ker = sub_quotient(kernel(m, g));
  const auto img = sub_quotient(image(m, g));
  FittingSplit out;
  out.kernel_part.module = ker.sub;
  out.kernel_part.inclusion = ker.inclusion;
  out.image_part.module = img.sub;
  out.image_part.inclusion = img.inclusion;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    const Matrix& ki = ker.inclusion.components[v];
    const Matrix& ii = img.inclusion.components[v];
    const Matrix inv = inverse(Matrix::hstack(ki, ii));
    out.kernel_part.projection.components.push_back(inv.block(0, 0, ki.cols(), m.dim(v)));
    out.image_part.projection.components.push_back(inv.block(ki.cols(), 0, ii.cols(), m.dim(v)));
  }
  return out;
}

struct Decomposition {
  Representation module;
  std::vector<Summand> summands;
};

/// Splitting witness in End(M), or nullopt when End(M) is local.
inline std::optional<Morphism> splitting_witness(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  return find_element(HomBasis(m, m), ElementPredicate::neither_invertible_nor_nilpotent, budget);
}

inline bool is_indecomposable(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  return !m.is_zero() && !splitting_witness(m, budget);
}

namespace detail {

inline void decompose_into(const Representation& n, const Morphism& incl, const Morphism& proj,
                           std::uint64_t budget, std::vector<Summand>& out) {
  if (n.is_zero()) return;
  const auto witness = splitting_witness(n, budget);
  if (!witness) {
    out.push_back({n, incl, proj});
    return;
  }
  const auto split = fitting_split(n, *witness);
  for (const Summand* part : {&split.kernel_part, &split.image_part})
    decompose_into(part->module, compose(incl, part->inclusion), compose(part->projection, proj), budget, out);
}

}  // namespace detail

inline Decomposition decompose(const Representation& m, std::uint64_t budget = kDefaultBudget) {
  Decomposition d{m, {}};
  detail::decompose_into(m, Morphism::identity(m), Morphism::identity(m), budget, d.summands);
  std::stable_sort(d.summands.begin(), d.summands.end(),
                   [](const Summand& a, const Summand& b) { return canonical_less(a.module, b.module); });
  return d;
}

/// Isomorphism test for an indecomposable a against any b: a ≅ b iff some
/// composite g_j ∘ f_i of basis elements of Hom(a,b) and Hom(b,a) is
/// invertible, because the non-invertible part of the local ring End(a) is a
/// subspace.
inline bool iso_to_indecomposable(const Representation& a, const Representation& b) {
  if (a.dims() != b.dims()) return false;
  if (a.is_zero()) return true;
  const HomBasis ab(a, b), ba(b, a);
  for (const auto& f : ab.basis())
    for (const auto& g : ba.basis())
      if (compose(g, f).is_invertible()) return true;
  return false;
}

/// Groups indecomposable modules into isomorphism classes; returns one class
/// index per input, classes numbered in order of first appearance.
inline std::vector<std::size_t> iso_classes(const std::vector<Representation>& indecomposables) {
  std::vector<std::size_t> cls(indecomposables.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < indecomposables.size(); ++i) {
    std::size_t k = 0;
    for (; k < reps.size(); ++k)
      if (iso_to_indecomposable(indecomposables[reps[k]], indecomposables[i])) break;
    if (k == reps.size()) reps.push_back(i);
    cls[i] = k;
  }
  return cls;
}

/// Krull-Schmidt comparison of the indecomposable summands.
inline bool iso_test(const Representation& m, const Representation& n, std::uint64_t budget = kDefaultBudget) {
  if (!same_algebra(m.algebra(), n.algebra())) return false;
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  const auto dm = decompose(m, budget), dn = decompose(n, budget);
  if (dm.summands.size() != dn.summands.size()) return false;
  std::vector<bool> used(dn.summands.size(), false);
  for (const auto& s : dm.summands) {
    bool matched = false;
    for (std::size_t k = 0; k < dn.summands.size() && !matched; ++k) {
      if (used[k] || !iso_to_indecomposable(s.module, dn.summands[k].module)) continue;
      used[k] = true;
      matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

/// Direct search for an invertible element of Hom(M, N).
inline bool iso_test_exhaustive(const Representation& m, const Representation& n,
                                std::uint64_t budget = kDefaultBudget) {
  if (m.dims() != n.dims()) return false;
  return find_element(HomBasis(m, n), ElementPredicate::invertible, budget).has_value();
}

}  // namespace brickchain
