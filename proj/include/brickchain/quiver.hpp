#pragma once

// Quivers with relations over F_p and their finite-dimensional
// representations. A path [a, b] means "apply a first, then b"; a matrix for
// an arrow s -> t has shape dims(t) x dims(s) and acts on column vectors.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/errors.hpp"
#include "brickchain/linalg.hpp"

namespace brickchain {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

struct RelationTerm {
  Residue coeff = 1;
  std::vector<std::size_t> path;  // arrow indices, first applied first
};

struct Relation {
  std::vector<RelationTerm> terms;
};

class Algebra {
 public:
  Algebra(Field field, std::vector<std::string> vertices, std::vector<Arrow> arrows,
          std::vector<Relation> relations)
      : field_(field),
        vertices_(std::move(vertices)),
        arrows_(std::move(arrows)),
        relations_(std::move(relations)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (std::size_t j = i + 1; j < vertices_.size(); ++j)
        if (vertices_[i] == vertices_[j]) throw MalformedInput("duplicate vertex " + vertices_[i]);
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      if (arrows_[i].source >= vertices_.size() || arrows_[i].target >= vertices_.size())
        throw MalformedInput("arrow " + arrows_[i].name + " has an unknown endpoint");
      for (std::size_t j = i + 1; j < arrows_.size(); ++j)
        if (arrows_[i].name == arrows_[j].name) throw MalformedInput("duplicate arrow " + arrows_[i].name);
    }
    for (auto& rel : relations_) {
      if (rel.terms.empty()) throw MalformedInput("empty relation");
      std::optional<std::pair<std::size_t, std::size_t>> ends;
      for (auto& term : rel.terms) {
        term.coeff = field_.reduce(term.coeff);
        if (term.path.empty()) throw MalformedInput("relation term with empty path");
        for (std::size_t a : term.path)
          if (a >= arrows_.size()) throw MalformedInput("relation uses unknown arrow");
        for (std::size_t k = 0; k + 1 < term.path.size(); ++k)
          if (arrows_[term.path[k]].target != arrows_[term.path[k + 1]].source)
            throw MalformedInput("relation path is not composable");
        std::pair<std::size_t, std::size_t> e{arrows_[term.path.front()].source,
                                              arrows_[term.path.back()].target};
        if (ends && *ends != e) throw MalformedInput("relation terms do not share endpoints");
        ends = e;
      }
    }
  }

  const Field& field() const { return field_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Relation>& relations() const { return relations_; }

  std::size_t vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == name) return i;
    throw MalformedInput("unknown vertex " + name);
  }
  std::size_t arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == name) return i;
    throw MalformedInput("unknown arrow " + name);
  }

  /// Opposite quiver: every arrow reversed, every relation path reversed.
  Algebra opposite() const {
    std::vector<Arrow> arrows;
    for (const auto& a : arrows_) arrows.push_back({a.name, a.target, a.source});
    std::vector<Relation> relations = relations_;
    for (auto& rel : relations)
      for (auto& term : rel.terms) std::reverse(term.path.begin(), term.path.end());
    return Algebra(field_, vertices_, std::move(arrows), std::move(relations));
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    if (!(a.field_ == b.field_) || a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size() ||
        a.relations_.size() != b.relations_.size())
      return false;
    for (std::size_t i = 0; i < a.arrows_.size(); ++i)
      if (a.arrows_[i].name != b.arrows_[i].name || a.arrows_[i].source != b.arrows_[i].source ||
          a.arrows_[i].target != b.arrows_[i].target)
        return false;
    for (std::size_t i = 0; i < a.relations_.size(); ++i) {
      const auto& x = a.relations_[i].terms;
      const auto& y = b.relations_[i].terms;
      if (x.size() != y.size()) return false;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k].coeff != y[k].coeff || x[k].path != y[k].path) return false;
    }
    return true;
  }

 private:
  Field field_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<Relation> relations_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline AlgebraPtr make_algebra(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || *a == *b; }

/// A representation: one space F_p^{dims(v)} per vertex, one matrix per arrow.
class Representation {
 public:
  Representation() = default;
  Representation(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> maps)
      : algebra_(std::move(algebra)), dims_(std::move(dims)), maps_(std::move(maps)) {
    if (!algebra_) throw MalformedInput("representation without algebra");
    if (dims_.size() != algebra_->vertex_count()) throw MalformedInput("dimension vector has wrong length");
    if (maps_.size() != algebra_->arrows().size()) throw MalformedInput("wrong number of arrow matrices");
    for (std::size_t a = 0; a < maps_.size(); ++a) {
      const auto& arrow = algebra_->arrows()[a];
      if (maps_[a].rows() != dims_[arrow.target] || maps_[a].cols() != dims_[arrow.source])
        throw MalformedInput("matrix for arrow " + arrow.name + " has shape " +
                             std::to_string(maps_[a].rows()) + "x" + std::to_string(maps_[a].cols()) +
                             ", expected " + std::to_string(dims_[arrow.target]) + "x" +
                             std::to_string(dims_[arrow.source]));
      if (!(maps_[a].field() == algebra_->field())) throw MalformedInput("matrix over the wrong field");
    }
  }

  static Representation zero(AlgebraPtr algebra) {
    std::vector<std::size_t> dims(algebra->vertex_count(), 0);
    return with_zero_maps(std::move(algebra), std::move(dims));
  }
  static Representation with_zero_maps(AlgebraPtr algebra, std::vector<std::size_t> dims) {
    std::vector<Matrix> maps;
    for (const auto& a : algebra->arrows()) maps.emplace_back(algebra->field(), dims.at(a.target), dims.at(a.source));
    return Representation(std::move(algebra), std::move(dims), std::move(maps));
  }
  /// The simple module at a vertex.
  static Representation simple(AlgebraPtr algebra, std::size_t vertex) {
    std::vector<std::size_t> dims(algebra->vertex_count(), 0);
    dims.at(vertex) = 1;
    return with_zero_maps(std::move(algebra), std::move(dims));
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const Field& field() const { return algebra_->field(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  const std::vector<Matrix>& maps() const { return maps_; }
  const Matrix& map(std::size_t arrow) const { return maps_[arrow]; }

  std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
  bool is_zero() const { return total_dim() == 0; }

  /// Offset of each vertex space inside the total space ⊕_v F_p^{dims(v)}.
  std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> out(dims_.size(), 0);
    for (std::size_t v = 1; v < dims_.size(); ++v) out[v] = out[v - 1] + dims_[v - 1];
    return out;
  }

  /// Matrix of a path (arrow indices in application order) as dims(t) x dims(s).
  Matrix path_matrix(const std::vector<std::size_t>& path) const {
    Matrix m = Matrix::identity(field(), dims_[algebra_->arrows().at(path.front()).source]);
    for (std::size_t a : path) m = maps_[a] * m;
    return m;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    return same_algebra(a.algebra_, b.algebra_) && a.dims_ == b.dims_ && a.maps_ == b.maps_;
  }

 private:
  AlgebraPtr algebra_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::size_t> violated_relations;
};

/// Shapes are checked when a Representation is built; this evaluates every
/// relation on the representation.
inline ValidationReport validate(const Representation& rep) {
  ValidationReport report;
  const auto& alg = *rep.algebra();
  for (std::size_t r = 0; r < alg.relations().size(); ++r) {
    const auto& terms = alg.relations()[r].terms;
    const auto& first = alg.arrows()[terms.front().path.front()];
    const auto& last = alg.arrows()[terms.front().path.back()];
    Matrix sum(rep.field(), rep.dim(last.target), rep.dim(first.source));
    for (const auto& term : terms) sum.add_scaled(rep.path_matrix(term.path), term.coeff);
    if (!sum.is_zero()) report.violated_relations.push_back(r);
  }
  report.valid = report.violated_relations.empty();
  return report;
}

inline ValidationReport validate(const Algebra& alg, const Representation& rep) {
  if (!(alg == *rep.algebra())) throw MalformedInput("module belongs to a different algebra");
  return validate(rep);
}

/// A homomorphism of representations: one matrix per vertex, shape
/// dims_target(v) x dims_source(v).
struct Morphism {
  std::vector<Matrix> components;

  static Morphism zero(const Representation& source, const Representation& target) {
    Morphism f;
    for (std::size_t v = 0; v < source.dims().size(); ++v)
      f.components.emplace_back(source.field(), target.dim(v), source.dim(v));
    return f;
  }
  static Morphism identity(const Representation& m) {
    Morphism f;
    for (std::size_t v = 0; v < m.dims().size(); ++v) f.components.push_back(Matrix::identity(m.field(), m.dim(v)));
    return f;
  }

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const Matrix& m) { return m.is_zero(); });
  }
  bool is_injective() const {
    return std::all_of(components.begin(), components.end(),
                       [](const Matrix& m) { return rank(m) == m.cols(); });
  }
  bool is_surjective() const {
    return std::all_of(components.begin(), components.end(),
                       [](const Matrix& m) { return rank(m) == m.rows(); });
  }
  bool is_invertible() const {
    return std::all_of(components.begin(), components.end(), [](const Matrix& m) { return brickchain::is_invertible(m); });
  }

  Morphism& operator+=(const Morphism& o) {
    for (std::size_t v = 0; v < components.size(); ++v) components[v] += o.components[v];
    return *this;
  }
  void add_scaled(const Morphism& o, Residue c) {
    for (std::size_t v = 0; v < components.size(); ++v) components[v].add_scaled(o.components[v], c);
  }

  /// Block-diagonal matrix on total spaces.
  Matrix total_matrix() const {
    std::size_t rows = 0, cols = 0;
    for (const auto& c : components) rows += c.rows(), cols += c.cols();
    Matrix m(components.empty() ? Field{} : components.front().field(), rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& comp : components) {
      m.set_block(r, c, comp);
      r += comp.rows();
      c += comp.cols();
    }
    return m;
  }

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// g ∘ f
inline Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h;
  for (std::size_t v = 0; v < f.components.size(); ++v) h.components.push_back(g.components[v] * f.components[v]);
  return h;
}

inline bool is_homomorphism(const Representation& source, const Representation& target, const Morphism& f) {
  const auto& arrows = source.algebra()->arrows();
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto& ar = arrows[a];
    if (!(f.components[ar.target] * source.map(a) == target.map(a) * f.components[ar.source])) return false;
  }
  return true;
}

/// Endomorphism nilpotency on a module of total dimension n: f^n = 0.
inline bool is_nilpotent(const Morphism& f) {
  Matrix m = f.total_matrix();
  if (m.rows() == 0) return true;
  Matrix power = m;
  for (std::size_t k = 1; k < m.rows(); ++k) power = power * m;
  return power.is_zero();
}

/// A subrepresentation, as a family of subspaces of the parent's vertex spaces.
class SubRepresentation {
 public:
  SubRepresentation() = default;
  SubRepresentation(Representation parent, std::vector<Subspace> spaces)
      : parent_(std::move(parent)), spaces_(std::move(spaces)) {
    if (spaces_.size() != parent_.dims().size()) throw MalformedInput("subspace family has wrong length");
    for (std::size_t v = 0; v < spaces_.size(); ++v)
      if (spaces_[v].ambient_dim() != parent_.dim(v)) throw MalformedInput("subspace ambient mismatch");
    if (!is_closed()) throw NotClosed("subspaces are not mapped into each other by the arrows");
  }

  static SubRepresentation zero(const Representation& parent) {
    std::vector<Subspace> spaces;
    for (std::size_t d : parent.dims()) spaces.push_back(Subspace::zero(parent.field(), d));
    return SubRepresentation(parent, std::move(spaces), Unchecked{});
  }
  static SubRepresentation full(const Representation& parent) {
    std::vector<Subspace> spaces;
    for (std::size_t d : parent.dims()) spaces.push_back(Subspace::full(parent.field(), d));
    return SubRepresentation(parent, std::move(spaces), Unchecked{});
  }

  const Representation& parent() const { return parent_; }
  const std::vector<Subspace>& spaces() const { return spaces_; }
  const Subspace& space(std::size_t v) const { return spaces_[v]; }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& s : spaces_) out.push_back(s.dim());
    return out;
  }
  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& s : spaces_) n += s.dim();
    return n;
  }
  bool is_zero() const { return total_dim() == 0; }
  bool is_full() const { return total_dim() == parent_.total_dim(); }

  bool is_closed() const {
    const auto& arrows = parent_.algebra()->arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a)
      if (!spaces_[arrows[a].target].contains(map_subspace(parent_.map(a), spaces_[arrows[a].source])))
        return false;
    return true;
  }
  bool contains(const SubRepresentation& other) const {
    for (std::size_t v = 0; v < spaces_.size(); ++v)
      if (!spaces_[v].contains(other.spaces_[v])) return false;
    return true;
  }

  /// Same subspaces (the parent is not compared).
  friend bool operator==(const SubRepresentation& a, const SubRepresentation& b) { return a.spaces_ == b.spaces_; }

  struct Unchecked {};
  SubRepresentation(Representation parent, std::vector<Subspace> spaces, Unchecked)
      : parent_(std::move(parent)), spaces_(std::move(spaces)) {}

 private:
  Representation parent_;
  std::vector<Subspace> spaces_;
};

inline SubRepresentation sub_sum(const SubRepresentation& a, const SubRepresentation& b) {
  std::vector<Subspace> spaces;
  for (std::size_t v = 0; v < a.spaces().size(); ++v) spaces.push_back(subspace_sum(a.space(v), b.space(v)));
  return SubRepresentation(a.parent(), std::move(spaces), SubRepresentation::Unchecked{});
}

inline SubRepresentation sub_intersect(const SubRepresentation& a, const SubRepresentation& b) {
  std::vector<Subspace> spaces;
  for (std::size_t v = 0; v < a.spaces().size(); ++v) spaces.push_back(subspace_intersect(a.space(v), b.space(v)));
  return SubRepresentation(a.parent(), std::move(spaces), SubRepresentation::Unchecked{});
}

/// Image of a homomorphism, as a subrepresentation of its target.
inline SubRepresentation image(const Representation& target, const Morphism& f) {
  std::vector<Subspace> spaces;
  for (const auto& c : f.components) spaces.push_back(Subspace::image(c));
  return SubRepresentation(target, std::move(spaces), SubRepresentation::Unchecked{});
}

inline SubRepresentation kernel(const Representation& source, const Morphism& f) {
  std::vector<Subspace> spaces;
  for (const auto& c : f.components) spaces.push_back(solve_kernel(c));
  return SubRepresentation(source, std::move(spaces), SubRepresentation::Unchecked{});
}

/// Smallest subrepresentation containing the given vertex subspaces.
inline SubRepresentation generated_submodule(const Representation& parent, std::vector<Subspace> spaces) {
  const auto& arrows = parent.algebra()->arrows();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      const auto img = map_subspace(parent.map(a), spaces[arrows[a].source]);
      auto& tgt = spaces[arrows[a].target];
      if (!tgt.contains(img)) {
        tgt = subspace_sum(tgt, img);
        changed = true;
      }
    }
  }
  return SubRepresentation(parent, std::move(spaces), SubRepresentation::Unchecked{});
}

/// Submodule, quotient and the witnessing inclusion and projection.
struct SubQuotient {
  Representation sub;
  Representation quotient;
  Morphism inclusion;   // sub -> parent
  Morphism projection;  // parent -> quotient
};

/// The submodule uses the echelon basis of each subspace; the quotient uses
/// the non-pivot coordinates (see Subspace::quotient_projection).
inline SubQuotient sub_quotient(const SubRepresentation& s) {
  if (!s.is_closed()) throw NotClosed("sub_quotient needs an arrow-closed family");
  const Representation& rep = s.parent();
  const Field& f = rep.field();
  const auto& arrows = rep.algebra()->arrows();
  SubQuotient out;
  std::vector<std::size_t> sub_dims, quot_dims;
  for (std::size_t v = 0; v < rep.dims().size(); ++v) {
    const auto& space = s.space(v);
    sub_dims.push_back(space.dim());
    quot_dims.push_back(rep.dim(v) - space.dim());
    out.inclusion.components.push_back(space.basis().transpose());
    out.projection.components.push_back(space.quotient_projection());
  }
  std::vector<Matrix> sub_maps, quot_maps;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto& src = s.space(arrows[a].source);
    const auto& tgt = s.space(arrows[a].target);
    Matrix sm(f, tgt.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
      const Vector coords = tgt.coordinates(rep.map(a).apply(src.vector(j)));
      for (std::size_t i = 0; i < coords.size(); ++i) sm(i, j) = coords[i];
    }
    sub_maps.push_back(std::move(sm));
    quot_maps.push_back(out.projection.components[arrows[a].target] * rep.map(a) * src.complement_section());
  }
  out.sub = Representation(rep.algebra(), std::move(sub_dims), std::move(sub_maps));
  out.quotient = Representation(rep.algebra(), std::move(quot_dims), std::move(quot_maps));
  return out;
}

/// Pulls a subrepresentation of the quotient back to the parent.
inline SubRepresentation pull_back(const SubQuotient& sq, const Representation& parent,
                                   const SubRepresentation& in_quotient) {
  std::vector<Subspace> spaces;
  for (std::size_t v = 0; v < in_quotient.spaces().size(); ++v)
    spaces.push_back(preimage(sq.projection.components[v], in_quotient.space(v)));
  return SubRepresentation(parent, std::move(spaces), SubRepresentation::Unchecked{});
}

/// Pushes a subrepresentation of the submodule forward into the parent.
inline SubRepresentation push_forward(const SubQuotient& sq, const Representation& parent,
                                      const SubRepresentation& in_sub) {
  std::vector<Subspace> spaces;
  for (std::size_t v = 0; v < in_sub.spaces().size(); ++v)
    spaces.push_back(map_subspace(sq.inclusion.components[v], in_sub.space(v)));
  return SubRepresentation(parent, std::move(spaces), SubRepresentation::Unchecked{});
}

/// Image of a subrepresentation of `source` under f, inside `target`.
inline SubRepresentation map_sub(const Representation& target, const Morphism& f, const SubRepresentation& s) {
  std::vector<Subspace> spaces;
  for (std::size_t v = 0; v < f.components.size(); ++v) spaces.push_back(map_subspace(f.components[v], s.space(v)));
  return SubRepresentation(target, std::move(spaces), SubRepresentation::Unchecked{});
}

inline Representation direct_sum(const std::vector<Representation>& reps) {
  if (reps.empty()) throw MalformedInput("direct_sum of an empty list has no algebra");
  Representation acc = reps.front();
  for (std::size_t k = 1; k < reps.size(); ++k) {
    const auto& r = reps[k];
    if (!same_algebra(acc.algebra(), r.algebra())) throw MalformedInput("direct_sum over different algebras");
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < acc.dims().size(); ++v) dims.push_back(acc.dim(v) + r.dim(v));
    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < acc.maps().size(); ++a) maps.push_back(Matrix::block_diagonal(acc.map(a), r.map(a)));
    acc = Representation(acc.algebra(), std::move(dims), std::move(maps));
  }
  return acc;
}

inline Representation direct_sum(const Representation& a, const Representation& b) { return direct_sum({a, b}); }

struct Dualized {
  AlgebraPtr algebra;
  Representation module;
};

/// D M over the opposite algebra: arrows reversed, matrices transposed.
inline Dualized dualize(const Representation& rep, AlgebraPtr opposite = nullptr) {
  if (!opposite) opposite = make_algebra(rep.algebra()->opposite());
  std::vector<Matrix> maps;
  for (const auto& m : rep.maps()) maps.push_back(m.transpose());
  return {opposite, Representation(opposite, rep.dims(), std::move(maps))};
}

/// The annihilator of a subrepresentation U ⊆ M, i.e. (M/U)* as a
/// subrepresentation of D M. Reverses inclusions.
inline SubRepresentation dual_of_submodule(const SubRepresentation& s, const Representation& dual_parent) {
  std::vector<Subspace> spaces;
  for (const auto& sp : s.spaces()) spaces.push_back(sp.annihilator());
  return SubRepresentation(dual_parent, std::move(spaces));
}

inline SubRepresentation dual_of_submodule(const SubRepresentation& s) {
  return dual_of_submodule(s, dualize(s.parent()).module);
}

}  // namespace brickchain
