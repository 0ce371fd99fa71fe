#pragma once

// Finite universes of indecomposables for tiny algebras, and the torsion
// class lattice they carry: semibricks, Hasse pairs with brick labels,
// the semibrick/torsion class bijection and the lower neighbor description.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/endotop.hpp"
#include "brickchain/errors.hpp"
#include "brickchain/hom.hpp"
#include "brickchain/io.hpp"
#include "brickchain/quiver.hpp"

namespace brickchain {

/// Every subspace of F_p^n, by dimension then pivot set then free entries.
inline std::vector<Subspace> all_subspaces(const Field& f, std::size_t n) {
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = pivots[r] + 1; c < n; ++c)
          if (!std::binary_search(pivots.begin(), pivots.end(), c)) free.emplace_back(r, c);
      std::vector<Residue> digits(free.size(), 0);
      while (true) {
        Matrix m(f, k, n);
        for (std::size_t r = 0; r < k; ++r) m(r, pivots[r]) = 1;
        for (std::size_t i = 0; i < free.size(); ++i) m(free[i].first, free[i].second) = digits[i];
        out.push_back(Subspace::row_space(m));
        std::size_t i = free.size();
        while (i > 0 && digits[i - 1] + 1 == f.prime()) digits[--i] = 0;
        if (i == 0) break;
        ++digits[i - 1];
      }
      // next pivot combination
      std::size_t i = k;
      while (i > 0 && pivots[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pivots[i - 1];
      for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
  }
  return out;
}

/// Every subrepresentation of M.
inline std::vector<SubRepresentation> all_submodules(const Representation& m) {
  std::vector<std::vector<Subspace>> per_vertex;
  for (std::size_t d : m.dims()) per_vertex.push_back(all_subspaces(m.field(), d));
  std::vector<SubRepresentation> out;
  std::vector<Subspace> current;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == per_vertex.size()) {
      SubRepresentation s(m, current, SubRepresentation::Unchecked{});
      if (s.is_closed()) out.push_back(std::move(s));
      return;
    }
    for (const auto& sp : per_vertex[v]) {
      current.push_back(sp);
      rec(v + 1);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

struct ModuleUniverse {
  AlgebraPtr algebra;
  std::size_t max_total_dim = 0;
  std::vector<Representation> indecomposables;  // canonical order
  bool complete = false;

  std::size_t size() const { return indecomposables.size(); }
};

namespace detail {

/// Dimension vectors with 1 <= total <= bound, canonical order.
inline std::vector<std::vector<std::size_t>> dimension_vectors(std::size_t vertices, std::size_t bound) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> d(vertices, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t left) {
    if (v == vertices) {
      out.push_back(d);
      return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
      d[v] = x;
      rec(v + 1, left - x);
    }
    d[v] = 0;
  };
  rec(0, bound);
  auto total = [](const std::vector<std::size_t>& x) {
    std::size_t n = 0;
    for (auto y : x) n += y;
    return n;
  };
  out.erase(std::remove_if(out.begin(), out.end(), [&](const auto& x) { return total(x) == 0; }), out.end());
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (total(a) != total(b)) return total(a) < total(b);
    return a > b;
  });
  return out;
}

}  // namespace detail

/// All indecomposables with total dimension <= bound, one lex-first
/// representative per iso class. The budget counts candidate matrix tuples.
inline ModuleUniverse build_universe(const AlgebraPtr& alg, std::size_t bound, std::uint64_t budget = kDefaultBudget,
                                     bool complete = false) {
  ModuleUniverse u{alg, bound, {}, complete};
  const Field& f = alg->field();
  const auto& arrows = alg->arrows();
  std::uint64_t examined = 0;
  for (const auto& dims : detail::dimension_vectors(alg->vertex_count(), bound)) {
    std::size_t entries = 0;
    for (const auto& a : arrows) entries += dims[a.target] * dims[a.source];
    std::vector<Residue> digits(entries, 0);
    std::vector<Representation> found;
    while (true) {
      if (examined == budget) throw BudgetExceeded("universe enumeration stopped after " + std::to_string(budget));
      ++examined;
      std::vector<Matrix> maps;
      std::size_t pos = 0;
      for (const auto& a : arrows) {
        Matrix m(f, dims[a.target], dims[a.source]);
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = digits[pos++];
        maps.push_back(std::move(m));
      }
      Representation rep(alg, dims, std::move(maps));
      if (validate(rep).valid && is_indecomposable(rep, budget)) {
        bool seen = false;
        for (const auto& g : found)
          if (iso_to_indecomposable(g, rep)) {
            seen = true;
            break;
          }
        if (!seen) found.push_back(std::move(rep));
      }
      std::size_t i = entries;
      while (i > 0 && digits[i - 1] + 1 == f.prime()) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
    for (auto& g : found) u.indecomposables.push_back(std::move(g));
  }
  std::stable_sort(u.indecomposables.begin(), u.indecomposables.end(), canonical_less);
  return u;
}

/// Universe indices of the indecomposable summands of M, sorted, with
/// multiplicity. Throws OutOfUniverse when a summand is missing.
inline std::vector<std::size_t> locate(const ModuleUniverse& u, const Representation& m,
                                       std::uint64_t budget = kDefaultBudget) {
  std::vector<std::size_t> out;
  if (m.is_zero()) return out;
  for (const auto& s : decompose(m, budget).summands) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < u.size() && !hit; ++i)
      if (u.indecomposables[i].dims() == s.module.dims() && iso_to_indecomposable(u.indecomposables[i], s.module))
        hit = i;
    if (!hit) throw OutOfUniverse("summand " + canonical_string(s.module) + " is not in the universe");
    out.push_back(*hit);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Direct sum of the universe members at the given indices.
inline Representation assemble(const ModuleUniverse& u, const std::vector<std::size_t>& indices) {
  if (indices.empty()) return Representation::zero(u.algebra);
  std::vector<Representation> parts;
  for (auto i : indices) parts.push_back(u.indecomposables[i]);
  return direct_sum(parts);
}

using ClassMask = std::uint64_t;

inline ClassMask mask_of(const std::vector<std::size_t>& indices) {
  ClassMask m = 0;
  for (auto i : indices) m |= ClassMask{1} << i;
  return m;
}

inline std::vector<std::size_t> indices_of(ClassMask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i)
    if (m >> i & 1) out.push_back(i);
  return out;
}

inline bool subset_of(ClassMask a, ClassMask b) { return (a & ~b) == 0; }

/// Submodule data of the universe: for each member Z and each submodule
/// W ⊆ Z, the summand sets of W and Z/W. Also the Hom dimension table.
struct UniverseData {
  std::vector<std::vector<std::pair<ClassMask, ClassMask>>> pieces;
  std::vector<std::vector<std::size_t>> hom;  // hom[i][j] = dim Hom(M_i, M_j)
  std::vector<bool> brick;
};

inline UniverseData analyze_universe(const ModuleUniverse& u, std::uint64_t budget = kDefaultBudget) {
  if (u.size() > 64) throw MalformedInput("universe too large for subset scans");
  UniverseData d;
  for (const auto& z : u.indecomposables) {
    std::vector<std::pair<ClassMask, ClassMask>> pieces;
    for (const auto& w : all_submodules(z)) {
      const auto sq = sub_quotient(w);
      pieces.emplace_back(mask_of(locate(u, sq.sub, budget)), mask_of(locate(u, sq.quotient, budget)));
    }
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    d.pieces.push_back(std::move(pieces));
    d.brick.push_back(is_brick(z, budget));
  }
  for (const auto& a : u.indecomposables) {
    std::vector<std::size_t> row;
    for (const auto& b : u.indecomposables) row.push_back(hom_dim(a, b));
    d.hom.push_back(std::move(row));
  }
  return d;
}

/// add C is closed under quotients and extensions.
inline bool is_torsion_class(const UniverseData& d, ClassMask c) {
  for (std::size_t z = 0; z < d.pieces.size(); ++z) {
    const bool member = c >> z & 1;
    for (const auto& [w, q] : d.pieces[z]) {
      if (member && !subset_of(q, c)) return false;
      if (!member && subset_of(w, c) && subset_of(q, c)) return false;
    }
  }
  return true;
}

/// Smallest torsion class containing the given members.
inline ClassMask torsion_closure(const UniverseData& d, ClassMask seed) {
  ClassMask c = seed;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t z = 0; z < d.pieces.size(); ++z) {
      const bool member = c >> z & 1;
      for (const auto& [w, q] : d.pieces[z]) {
        ClassMask next = c;
        if (member) next |= q;
        else if (subset_of(w, c) && subset_of(q, c)) next |= ClassMask{1} << z;
        if (next != c) {
          c = next;
          moved = true;
          break;
        }
      }
    }
  }
  return c;
}

/// {Z in C : Hom(Z, B) = 0}
inline ClassMask perp_within(const UniverseData& d, ClassMask c, std::size_t b) {
  ClassMask out = 0;
  for (auto z : indices_of(c))
    if (d.hom[z][b] == 0) out |= ClassMask{1} << z;
  return out;
}

/// Basic semibricks as sorted index lists, the empty one first.
inline std::vector<std::vector<std::size_t>> enumerate_semibricks(const ModuleUniverse& u, const UniverseData& d) {
  std::vector<std::size_t> bricks;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (d.brick[i]) bricks.push_back(i);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    out.push_back(current);
    for (std::size_t k = from; k < bricks.size(); ++k) {
      const auto b = bricks[k];
      bool orthogonal = true;
      for (auto c : current)
        if (d.hom[c][b] != 0 || d.hom[b][c] != 0) orthogonal = false;
      if (!orthogonal) continue;
      current.push_back(b);
      rec(k + 1);
      current.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

inline std::vector<std::vector<std::size_t>> enumerate_semibricks(const ModuleUniverse& u,
                                                                  std::uint64_t budget = kDefaultBudget) {
  return enumerate_semibricks(u, analyze_universe(u, budget));
}

struct HassePair {
  std::size_t lower;
  std::size_t upper;
  std::size_t label;  // universe index of the labeling brick
};

struct TorsionLattice {
  ModuleUniverse universe;
  UniverseData data;
  std::vector<ClassMask> classes;  // by size, then index list
  std::vector<HassePair> hasse;

  std::vector<std::size_t> members(std::size_t k) const { return indices_of(classes[k]); }
  std::optional<std::size_t> find(ClassMask c) const {
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (classes[k] == c) return k;
    return std::nullopt;
  }
};

inline void require_complete(const ModuleUniverse& u) {
  if (!u.complete) throw IncompleteUniverse("the universe is not marked complete");
}

inline TorsionLattice enumerate_torsion_classes(const ModuleUniverse& u, std::uint64_t budget = kDefaultBudget) {
  require_complete(u);
  TorsionLattice t{u, analyze_universe(u, budget), {}, {}};
  if (u.size() > 24) throw MalformedInput("too many indecomposables for a subset scan");
  const ClassMask limit = ClassMask{1} << u.size();
  for (ClassMask c = 0; c < limit; ++c)
    if (is_torsion_class(t.data, c)) t.classes.push_back(c);
  std::sort(t.classes.begin(), t.classes.end(), [](ClassMask a, ClassMask b) {
    const auto ia = indices_of(a), ib = indices_of(b);
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    return ia < ib;
  });
  for (std::size_t hi = 0; hi < t.classes.size(); ++hi) {
    for (std::size_t lo = 0; lo < t.classes.size(); ++lo) {
      const ClassMask l = t.classes[lo], h = t.classes[hi];
      if (l == h || !subset_of(l, h)) continue;
      bool between = false;
      for (ClassMask m : t.classes)
        if (m != l && m != h && subset_of(l, m) && subset_of(m, h)) between = true;
      if (between) continue;
      std::vector<std::size_t> labels;
      for (auto b : indices_of(h))
        if (t.data.brick[b] && perp_within(t.data, h, b) == l) labels.push_back(b);
      if (labels.size() != 1)
        throw CertificateFailure("neighbor pair has " + std::to_string(labels.size()) + " labeling bricks");
      t.hasse.push_back({lo, hi, labels.front()});
    }
  }
  return t;
}

struct BijectionReport {
  std::vector<std::vector<std::size_t>> semibricks;
  std::vector<std::size_t> image;  // class index of T(X) per semibrick
  std::size_t class_count = 0;
  bool bijective = false;
  bool tops_recovered = false;
  std::vector<std::string> failures;

  bool ok() const { return bijective && tops_recovered && failures.empty(); }
};

/// X ↦ T(X) against the enumerated lattice, plus recovery of X as the top
/// bricks of the generators ⊕X and ⊕T(X).
inline BijectionReport check_bijection(const TorsionLattice& t, std::uint64_t budget = kDefaultBudget) {
  require_complete(t.universe);
  BijectionReport r;
  r.semibricks = enumerate_semibricks(t.universe, t.data);
  r.class_count = t.classes.size();
  std::vector<bool> hit(t.classes.size(), false);
  bool injective = true;
  for (const auto& x : r.semibricks) {
    const ClassMask c = torsion_closure(t.data, mask_of(x));
    const auto k = t.find(c);
    if (!k) {
      r.failures.push_back("closure of a semibrick is not an enumerated class");
      r.image.push_back(t.classes.size());
      continue;
    }
    if (hit[*k]) injective = false;
    hit[*k] = true;
    r.image.push_back(*k);
    for (const auto& gen : {x, indices_of(c)}) {
      std::vector<std::size_t> tops;
      for (const auto& tb : top_bricks(assemble(t.universe, gen), budget).bricks) {
        const auto loc = locate(t.universe, tb.brick, budget);
        tops.insert(tops.end(), loc.begin(), loc.end());
      }
      std::sort(tops.begin(), tops.end());
      if (tops != x) r.failures.push_back("top bricks of a generator differ from the semibrick");
    }
  }
  r.bijective = injective && r.semibricks.size() == t.classes.size() &&
                std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  r.tops_recovered = r.failures.empty();
  return r;
}

struct LowerNeighborReport {
  std::vector<std::size_t> generator;  // universe indices of M's summands
  std::size_t torsion_class = 0;       // T(M)
  std::vector<std::size_t> top_bricks;
  std::vector<std::size_t> predicted;  // class of T(M) ∩ ⊥B per top brick
  std::vector<std::size_t> lower_neighbors;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline LowerNeighborReport check_lower_neighbors(const TorsionLattice& t, const Representation& m,
                                                 std::uint64_t budget = kDefaultBudget) {
  require_complete(t.universe);
  LowerNeighborReport r;
  r.generator = locate(t.universe, m, budget);
  const ClassMask tm = torsion_closure(t.data, mask_of(r.generator));
  const auto k = t.find(tm);
  if (!k) {
    r.failures.push_back("T(M) is not an enumerated class");
    return r;
  }
  r.torsion_class = *k;
  for (const auto& tb : top_bricks(m, budget).bricks) {
    const auto loc = locate(t.universe, tb.brick, budget);
    if (loc.size() != 1) {
      r.failures.push_back("top brick is not indecomposable");
      continue;
    }
    r.top_bricks.push_back(loc.front());
  }
  for (auto b : r.top_bricks) {
    const auto lower = t.find(perp_within(t.data, tm, b));
    if (!lower) {
      r.failures.push_back("T(M) ∩ ⊥B is not an enumerated class");
      continue;
    }
    r.predicted.push_back(*lower);
    bool labeled = false;
    for (const auto& h : t.hasse)
      if (h.upper == *k && h.lower == *lower) labeled = h.label == b;
    if (!labeled) r.failures.push_back("pair T(M) ∩ ⊥B ⊂ T(M) is not a neighbor labeled by B");
  }
  for (const auto& h : t.hasse)
    if (h.upper == *k) r.lower_neighbors.push_back(h.lower);
  auto predicted = r.predicted;
  std::sort(predicted.begin(), predicted.end());
  if (std::adjacent_find(predicted.begin(), predicted.end()) != predicted.end())
    r.failures.push_back("two top bricks give the same lower neighbor");
  auto actual = r.lower_neighbors;
  std::sort(actual.begin(), actual.end());
  if (predicted != actual) r.failures.push_back("lower neighbors differ from the top brick prediction");
  for (ClassMask c : t.classes) {
    if (c == tm || !subset_of(c, tm)) continue;
    bool covered = false;
    for (auto lo : r.lower_neighbors)
      if (subset_of(c, t.classes[lo])) covered = true;
    if (!covered) r.failures.push_back("a proper subclass of T(M) lies under no lower neighbor");
  }
  return r;
}

/// A minimal member of upper ∖ lower; it must be a brick with Hom(lower, it) = 0.
inline std::size_t minimal_brick_between(const TorsionLattice& t, std::size_t lower, std::size_t upper) {
  const ClassMask l = t.classes[lower], h = t.classes[upper];
  if (l == h || !subset_of(l, h)) throw MalformedInput("minimal_brick_between needs lower ⊊ upper");
  std::optional<std::size_t> best;
  for (auto z : indices_of(h & ~l))
    if (!best || t.universe.indecomposables[z].total_dim() < t.universe.indecomposables[*best].total_dim()) best = z;
  if (!t.data.brick[*best]) throw CertificateFailure("minimal module between two classes is not a brick");
  for (auto w : indices_of(l))
    if (t.data.hom[w][*best] != 0) throw CertificateFailure("lower class maps to the minimal module");
  return *best;
}

inline std::string member_name(std::size_t i) { return "M" + std::to_string(i); }

inline json universe_to_json(const ModuleUniverse& u) {
  json members = json::array();
  for (const auto& m : u.indecomposables) members.push_back(module_to_json(m));
  return {{"max_total_dim", u.max_total_dim}, {"complete", u.complete}, {"indecomposables", members}};
}

inline json lattice_to_json(const TorsionLattice& t) {
  json classes = json::array();
  for (std::size_t k = 0; k < t.classes.size(); ++k) classes.push_back(t.members(k));
  json hasse = json::array();
  for (const auto& h : t.hasse) hasse.push_back({{"lower", h.lower}, {"upper", h.upper}, {"label", h.label}});
  json bricks = json::array();
  for (std::size_t i = 0; i < t.universe.size(); ++i)
    if (t.data.brick[i]) bricks.push_back(i);
  return {{"universe", universe_to_json(t.universe)}, {"bricks", bricks}, {"classes", classes}, {"hasse", hasse}};
}

/// Hasse diagram, upper → lower, edges labeled by bricks.
inline std::string lattice_to_dot(const TorsionLattice& t) {
  std::ostringstream out;
  out << "digraph torsion_classes {\n  rankdir=TB;\n";
  for (std::size_t k = 0; k < t.classes.size(); ++k) {
    out << "  c" << k << " [label=\"{";
    const auto ms = t.members(k);
    for (std::size_t i = 0; i < ms.size(); ++i) out << (i ? "," : "") << member_name(ms[i]);
    out << "}\"];\n";
  }
  for (const auto& h : t.hasse)
    out << "  c" << h.upper << " -> c" << h.lower << " [label=\"" << member_name(h.label) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace brickchain
