#pragma once

// JSON interchange for algebras, modules and submodules. Dumps are compact
// with sorted object keys, so equal values serialize to identical bytes.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "brickchain/errors.hpp"
#include "brickchain/quiver.hpp"

namespace brickchain {

using json = nlohmann::json;

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Field& field, std::size_t rows, std::size_t cols, const json& j,
                               const std::string& what) {
  if (!j.is_array()) throw MalformedInput(what + ": matrix must be a list of rows");
  // A matrix with no rows carries no column information.
  if (j.size() != rows) throw MalformedInput(what + ": expected " + std::to_string(rows) + " rows");
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw MalformedInput(what + ": expected " + std::to_string(cols) + " columns");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number_integer()) throw MalformedInput(what + ": entries must be integers");
      m(i, c) = field.reduce(row[c].get<std::int64_t>());
    }
  }
  return m;
}

inline json algebra_to_json(const Algebra& alg) {
  json arrows = json::array();
  for (const auto& a : alg.arrows())
    arrows.push_back({{"name", a.name}, {"from", alg.vertices()[a.source]}, {"to", alg.vertices()[a.target]}});
  json relations = json::array();
  for (const auto& rel : alg.relations()) {
    json terms = json::array();
    for (const auto& t : rel.terms) {
      json path = json::array();
      for (std::size_t a : t.path) path.push_back(alg.arrows()[a].name);
      terms.push_back({{"coeff", t.coeff}, {"path", path}});
    }
    relations.push_back({{"terms", terms}});
  }
  return {{"field", {{"p", alg.field().prime()}}},
          {"vertices", alg.vertices()},
          {"arrows", arrows},
          {"relations", relations}};
}

inline Algebra algebra_from_json(const json& j) {
  try {
    if (!j.is_object()) throw MalformedInput("algebra must be an object");
    const Field field(j.at("field").at("p").get<std::uint32_t>());
    const auto vertices = j.at("vertices").get<std::vector<std::string>>();
    auto index_of = [&](const std::string& name) {
      for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return i;
      throw MalformedInput("unknown vertex " + name);
    };
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("arrows"))
      arrows.push_back({a.at("name").get<std::string>(), index_of(a.at("from").get<std::string>()),
                        index_of(a.at("to").get<std::string>())});
    auto arrow_of = [&](const std::string& name) {
      for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return i;
      throw MalformedInput("unknown arrow " + name);
    };
    std::vector<Relation> relations;
    if (j.contains("relations")) {
      for (const auto& r : j.at("relations")) {
        Relation rel;
        for (const auto& t : r.at("terms")) {
          RelationTerm term;
          term.coeff = field.reduce(t.at("coeff").get<std::int64_t>());
          for (const auto& name : t.at("path")) term.path.push_back(arrow_of(name.get<std::string>()));
          rel.terms.push_back(std::move(term));
        }
        relations.push_back(std::move(rel));
      }
    }
    return Algebra(field, vertices, std::move(arrows), std::move(relations));
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("algebra json: ") + e.what());
  }
}

inline json module_to_json(const Representation& rep) {
  const auto& alg = *rep.algebra();
  json dims = json::object();
  for (std::size_t v = 0; v < alg.vertex_count(); ++v) dims[alg.vertices()[v]] = rep.dim(v);
  json maps = json::object();
  for (std::size_t a = 0; a < alg.arrows().size(); ++a) maps[alg.arrows()[a].name] = matrix_to_json(rep.map(a));
  return {{"dims", dims}, {"maps", maps}};
}

inline Representation module_from_json(const AlgebraPtr& alg, const json& j) {
  try {
    if (!j.is_object()) throw MalformedInput("module must be an object");
    const auto& dj = j.at("dims");
    if (!dj.is_object()) throw MalformedInput("dims must be an object");
    std::vector<std::size_t> dims(alg->vertex_count(), 0);
    for (auto it = dj.begin(); it != dj.end(); ++it) {
      if (!it.value().is_number_integer() || it.value().get<std::int64_t>() < 0)
        throw MalformedInput("dimension of " + it.key() + " must be a nonnegative integer");
      dims[alg->vertex_index(it.key())] = it.value().get<std::size_t>();
    }
    const auto& mj = j.at("maps");
    if (!mj.is_object()) throw MalformedInput("maps must be an object");
    for (auto it = mj.begin(); it != mj.end(); ++it) alg->arrow_index(it.key());
    std::vector<Matrix> maps;
    for (const auto& a : alg->arrows()) {
      const std::size_t rows = dims[a.target], cols = dims[a.source];
      if (mj.contains(a.name))
        maps.push_back(matrix_from_json(alg->field(), rows, cols, mj.at(a.name), "arrow " + a.name));
      else if (rows == 0 || cols == 0)
        maps.emplace_back(alg->field(), rows, cols);
      else
        throw MalformedInput("missing matrix for arrow " + a.name);
    }
    return Representation(alg, std::move(dims), std::move(maps));
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("module json: ") + e.what());
  }
}

/// {vertex: echelon basis rows}
inline json subrep_to_json(const SubRepresentation& s) {
  const auto& alg = *s.parent().algebra();
  json out = json::object();
  for (std::size_t v = 0; v < alg.vertex_count(); ++v) out[alg.vertices()[v]] = matrix_to_json(s.space(v).basis());
  return out;
}

inline SubRepresentation subrep_from_json(const Representation& parent, const json& j) {
  try {
    const auto& alg = *parent.algebra();
    std::vector<Subspace> spaces;
    for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
      const std::string& name = alg.vertices()[v];
      if (!j.contains(name)) {
        spaces.push_back(Subspace::zero(parent.field(), parent.dim(v)));
        continue;
      }
      const auto& rows = j.at(name);
      spaces.push_back(Subspace::row_space(
          matrix_from_json(parent.field(), rows.size(), parent.dim(v), rows, "subspace at " + name)));
    }
    return SubRepresentation(parent, std::move(spaces));
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("submodule json: ") + e.what());
  }
}

inline std::string canonical_dump(const json& j) { return j.dump(); }

inline std::string canonical_string(const Representation& rep) { return module_to_json(rep).dump(); }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

/// Canonical module order: total dimension, then dimension vector
/// (larger leading entries first), then serialized matrices.
inline bool canonical_less(const Representation& a, const Representation& b) {
  if (a.total_dim() != b.total_dim()) return a.total_dim() < b.total_dim();
  if (a.dims() != b.dims()) return a.dims() > b.dims();
  return canonical_string(a) < canonical_string(b);
}

}  // namespace brickchain
