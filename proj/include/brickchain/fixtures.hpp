#pragma once

// The fixture algebras and modules shipped with the library. Vertex names
// are "1", "2"; the JSON copies under fixtures/ are dumps of these values.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/quiver.hpp"

namespace brickchain::fixtures {

namespace detail {

inline std::vector<std::size_t> path_of(const Algebra& alg, std::initializer_list<const char*> names) {
  std::vector<std::size_t> out;
  for (const char* n : names) out.push_back(alg.arrow_index(n));
  return out;
}

inline Relation monomial(std::vector<std::size_t> path) { return Relation{{RelationTerm{1, std::move(path)}}}; }

/// Alternating path a, b, a, ... (or starting with b) of the given length on 1 ⇄ 2.
inline std::vector<std::size_t> alternating(std::size_t first, std::size_t length) {
  std::vector<std::size_t> path;
  for (std::size_t k = 0; k < length; ++k) path.push_back((first + k) % 2);
  return path;
}

inline AlgebraPtr two_cycle(std::uint32_t p, std::size_t relation_length) {
  // arrow 0 = a : 1 -> 2, arrow 1 = b : 2 -> 1
  std::vector<Relation> rels{monomial(alternating(0, relation_length)), monomial(alternating(1, relation_length))};
  return make_algebra(Algebra(Field(p), {"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}}, std::move(rels)));
}

}  // namespace detail

/// 1 ← 2, no relations.
inline AlgebraPtr a2(std::uint32_t p = 2) {
  return make_algebra(Algebra(Field(p), {"1", "2"}, {{"a", 1, 0}}, {}));
}

/// Kronecker quiver: two arrows 2 → 1.
inline AlgebraPtr k2(std::uint32_t p = 2) {
  return make_algebra(Algebra(Field(p), {"1", "2"}, {{"a", 1, 0}, {"b", 1, 0}}, {}));
}

/// Cyclic Nakayama algebra 1 ⇄ 2 with all paths of length 5 zero.
inline AlgebraPtr cn2(std::uint32_t p = 2) { return detail::two_cycle(p, 5); }

/// 1 ⇄ 2 with all paths of length 3 zero.
inline AlgebraPtr n2(std::uint32_t p = 2) { return detail::two_cycle(p, 3); }

/// Vertices 1, 2; arrows a1, a2 : 2 → 1 and c : 1 → 2. The relations
/// a_i then c vanish (the glued node), and c then a2 vanishes.
inline AlgebraPtr node(std::uint32_t p = 2) {
  Algebra shell(Field(p), {"1", "2"}, {{"a1", 1, 0}, {"a2", 1, 0}, {"c", 0, 1}}, {});
  std::vector<Relation> rels{detail::monomial(detail::path_of(shell, {"a1", "c"})),
                             detail::monomial(detail::path_of(shell, {"a2", "c"})),
                             detail::monomial(detail::path_of(shell, {"c", "a2"}))};
  return make_algebra(Algebra(Field(p), shell.vertices(), shell.arrows(), std::move(rels)));
}

/// Loop x at 1, b : 1 → 2, g : 2 → 1; x then b, g then b, and x^6 vanish.
/// Carries the serial modules M[n] with factors (1, ..., 1, 2, 1) going up.
inline AlgebraPtr loop(std::uint32_t p = 2) {
  Algebra shell(Field(p), {"1", "2"}, {{"x", 0, 0}, {"b", 0, 1}, {"g", 1, 0}}, {});
  std::vector<Relation> rels{detail::monomial(detail::path_of(shell, {"x", "b"})),
                             detail::monomial(detail::path_of(shell, {"g", "b"})),
                             detail::monomial(detail::path_of(shell, {"x", "x", "x", "x", "x", "x"}))};
  return make_algebra(Algebra(Field(p), shell.vertices(), shell.arrows(), std::move(rels)));
}

/// One vertex, no arrows.
inline AlgebraPtr one(std::uint32_t p = 2) { return make_algebra(Algebra(Field(p), {"1"}, {}, {})); }

inline Representation simple(const AlgebraPtr& alg, const std::string& vertex) {
  return Representation::simple(alg, alg->vertex_index(vertex));
}

/// P2 over A2: dims (1, 1), a = [1].
inline Representation a2_p2(const AlgebraPtr& alg) {
  return Representation(alg, {1, 1}, {Matrix::identity(alg->field(), 1)});
}

/// Kronecker R_λ: dims (1, 1), a = [1], b = [λ].
inline Representation k2_regular(const AlgebraPtr& alg, std::int64_t lambda) {
  const Field& f = alg->field();
  return Representation(alg, {1, 1}, {Matrix::identity(f, 1), Matrix::from_rows(f, 1, 1, {{lambda}})});
}

/// Kronecker R^(2)_λ: dims (2, 2), a = identity, b = Jordan block J(λ, 2).
inline Representation k2_regular2(const AlgebraPtr& alg, std::int64_t lambda) {
  const Field& f = alg->field();
  return Representation(alg, {2, 2},
                        {Matrix::identity(f, 2), Matrix::from_rows(f, 2, 2, {{lambda, 1}, {0, lambda}})});
}

/// Uniserial module over a 1 ⇄ 2 algebra (CN2 or N2) with the given top
/// vertex ("1" or "2") and length. Basis vectors run from the top down.
inline Representation uniserial(const AlgebraPtr& alg, const std::string& top, std::size_t length) {
  const Field& f = alg->field();
  const std::size_t top_v = alg->vertex_index(top);
  std::vector<std::size_t> vertex_of(length), index_in_vertex(length);
  std::vector<std::size_t> dims(2, 0);
  for (std::size_t k = 0; k < length; ++k) {
    vertex_of[k] = (top_v + k) % 2;
    index_in_vertex[k] = dims[vertex_of[k]]++;
  }
  std::vector<Matrix> maps;
  for (const auto& arrow : alg->arrows()) maps.emplace_back(f, dims[arrow.target], dims[arrow.source]);
  for (std::size_t k = 0; k + 1 < length; ++k) {
    const std::size_t v = vertex_of[k];
    const std::size_t arrow = v == 0 ? alg->arrow_index("a") : alg->arrow_index("b");
    maps[arrow](index_in_vertex[k + 1], index_in_vertex[k]) = 1;
  }
  return Representation(alg, std::move(dims), std::move(maps));
}

/// The injective I(1) over the node algebra: V1 = <u, s>, V2 = <w1, w2>,
/// c(u) = w1, a1(w1) = s, a2(w2) = s, everything else zero.
inline Representation node_injective(const AlgebraPtr& alg) {
  const Field& f = alg->field();
  return Representation(alg, {2, 2},
                        {Matrix::from_rows(f, 2, 2, {{0, 0}, {1, 0}}), Matrix::from_rows(f, 2, 2, {{0, 0}, {0, 1}}),
                         Matrix::from_rows(f, 2, 2, {{1, 0}, {0, 0}})});
}

/// M[n] over the loop algebra: V1 = <u, s_n, ..., s_1>, V2 = <w>,
/// b(u) = w, g(w) = s_n, x(s_j) = s_{j-1}, x(s_1) = x(u) = 0.
inline Representation loop_serial(const AlgebraPtr& alg, std::size_t n) {
  const Field& f = alg->field();
  Matrix x(f, n + 1, n + 1), b(f, 1, n + 1), g(f, n + 1, 1);
  b(0, 0) = 1;
  if (n > 0) g(1, 0) = 1;
  for (std::size_t j = 1; j < n; ++j) x(j + 1, j) = 1;
  return Representation(alg, {n + 1, 1}, {x, b, g});
}

}  // namespace brickchain::fixtures
