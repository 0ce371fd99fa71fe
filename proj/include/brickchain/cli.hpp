#pragma once

// Command-line front end. run() parses arguments, executes one subcommand
// and writes a JSON report (or DOT for `lattice --format dot`).
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 budget exhausted.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "brickchain/endotop.hpp"
#include "brickchain/errors.hpp"
#include "brickchain/filtration.hpp"
#include "brickchain/hom.hpp"
#include "brickchain/io.hpp"
#include "brickchain/lattice.hpp"
#include "brickchain/quiver.hpp"
#include "brickchain/torsion.hpp"

namespace brickchain::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kInputError = 2, kBudgetExhausted = 3 };

inline json morphism_to_json(const Representation& source, const Morphism& f) {
  json out = json::object();
  const auto& alg = *source.algebra();
  for (std::size_t v = 0; v < alg.vertex_count(); ++v) out[alg.vertices()[v]] = matrix_to_json(f.components[v]);
  return out;
}

inline json filtration_to_json(const TorsionalFiltration& f) {
  json chain = json::array();
  for (const auto& s : f.chain) chain.push_back(subrep_to_json(s));
  json type = json::array();
  for (const auto& b : f.type.bricks) type.push_back(module_to_json(b));
  return {{"chain", chain}, {"type", type}};
}

inline TorsionalFiltration filtration_from_json(const Representation& m, const json& j) {
  try {
    TorsionalFiltration f;
    f.module = m;
    for (const auto& s : j.at("chain")) f.chain.push_back(subrep_from_json(m, s));
    for (const auto& b : j.at("type")) f.type.bricks.push_back(module_from_json(m.algebra(), b));
    return f;
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("filtration json: ") + e.what());
  }
}

inline json count_report_to_json(const CountReport& r) {
  json nodes = json::array();
  for (const auto& n : r.nodes) {
    json branches = json::array();
    for (std::size_t i = 0; i < n.top_bricks.size(); ++i)
      branches.push_back({{"top_brick", module_to_json(n.top_bricks[i])},
                          {"submodule", subrep_to_json(n.submodules[i])},
                          {"child", n.children[i]}});
    nodes.push_back({{"module", module_to_json(n.module)}, {"phi", n.phi}, {"branches", branches}});
  }
  return {{"phi", r.phi}, {"tree", nodes}};
}

struct Options {
  std::string command;
  std::string algebra_file;
  std::string module_file;
  std::string second_file;
  std::string out_file;
  std::string format = "json";
  std::uint64_t budget = kDefaultBudget;
  std::size_t max_dim = 2;
  bool count_only = false;
  bool complete = false;
  bool timing = false;
};

struct Context {
  const Options& opt;
  AlgebraPtr algebra;
  std::optional<Representation> module;
  std::optional<Representation> second;
  json inputs = json::object();
  json outputs = json::object();
  json assertions = json::array();
  std::string raw;  // non-JSON payload (DOT)
  int code = kOk;

  void assertion(const std::string& name, bool pass) {
    assertions.push_back({{"name", name}, {"pass", pass}});
    if (!pass) code = kVerificationFailure;
  }
};

inline Representation load_module(const AlgebraPtr& alg, const std::string& path) {
  auto m = module_from_json(alg, read_json_file(path));
  const auto report = validate(m);
  if (!report.valid) throw MalformedInput(path + ": module violates the relations");
  return m;
}

inline const Representation& need_module(Context& c) {
  if (!c.module) throw MalformedInput(c.opt.command + " needs --module");
  return *c.module;
}

inline const Representation& need_second(Context& c) {
  if (!c.second) throw MalformedInput(c.opt.command + " needs --second");
  return *c.second;
}

inline ModuleUniverse universe_for(Context& c) {
  return build_universe(c.algebra, c.opt.max_dim, c.opt.budget, c.opt.complete);
}

inline void dispatch(Context& c) {
  const auto& cmd = c.opt.command;
  const auto budget = c.opt.budget;
  if (cmd == "check") {
    if (c.opt.module_file.empty()) throw MalformedInput("check needs --module");
    auto m = module_from_json(c.algebra, read_json_file(c.opt.module_file));
    c.inputs["module"] = module_to_json(m);
    const auto report = validate(m);
    c.outputs["valid"] = report.valid;
    c.outputs["violated_relations"] = report.violated_relations;
    c.assertion("relations hold", report.valid);
  } else if (cmd == "hom") {
    const auto& m = need_module(c);
    const HomBasis h(m, need_second(c));
    json basis = json::array();
    for (const auto& f : h.basis()) basis.push_back(morphism_to_json(m, f));
    c.outputs["dim"] = h.dim();
    c.outputs["basis"] = basis;
  } else if (cmd == "end") {
    const auto& m = need_module(c);
    const EndAlgebra e(m);
    json basis = json::array();
    for (const auto& f : e.hom().basis()) basis.push_back(morphism_to_json(m, f));
    const auto rad = radical(e, budget);
    c.outputs["dim"] = e.dim();
    c.outputs["basis"] = basis;
    c.outputs["radical"] = matrix_to_json(rad.span.basis());
    c.outputs["radical_nilpotency_index"] = rad.nilpotency_index;
  } else if (cmd == "endotop") {
    const auto& m = need_module(c);
    const auto tower = iterated_endotop(m, budget);
    json stages = json::array();
    for (const auto& s : tower.stages) stages.push_back(module_to_json(s.module));
    c.outputs["endotop"] = module_to_json(tower.stages.size() > 1 ? tower.stages[1].module : m);
    c.outputs["tower"] = stages;
    c.outputs["limit"] = module_to_json(tower.limit());
  } else if (cmd == "top-bricks") {
    json bricks = json::array();
    for (const auto& tb : top_bricks(need_module(c), budget).bricks)
      bricks.push_back({{"brick", module_to_json(tb.brick)}, {"multiplicity", tb.multiplicity}});
    c.outputs["top_bricks"] = bricks;
  } else if (cmd == "is-brick") {
    c.outputs["brick"] = is_brick(need_module(c), budget);
  } else if (cmd == "is-semibrick") {
    c.outputs["semibrick"] = is_semibrick(need_module(c), budget);
  } else if (cmd == "in-torsion") {
    const auto cert = in_torsion(need_module(c), TorsionHandle(need_second(c)));
    json chain = json::array();
    for (const auto& s : cert.chain) chain.push_back(subrep_to_json(s));
    c.outputs["member"] = cert.verdict;
    c.outputs["chain"] = chain;
  } else if (cmd == "torsion-part") {
    const auto s = torsion_part(need_module(c), TorsionHandle(need_second(c)));
    c.outputs["submodule"] = subrep_to_json(s);
    c.outputs["module"] = module_to_json(stage_module(s));
  } else if (cmd == "perp-part") {
    const auto s = perp_part(need_module(c), need_second(c));
    c.outputs["submodule"] = subrep_to_json(s);
    c.outputs["module"] = module_to_json(stage_module(s));
  } else if (cmd == "filtrations") {
    const auto& m = need_module(c);
    if (c.opt.count_only) {
      c.outputs = count_report_to_json(count_phi(m, budget));
    } else {
      const auto e = enumerate_filtrations(m, budget);
      c.outputs = count_report_to_json(e.report);
      json fs = json::array();
      for (const auto& f : e.filtrations) fs.push_back(filtration_to_json(f));
      c.outputs["filtrations"] = fs;
    }
  } else if (cmd == "verify-filtration") {
    const auto& m = need_module(c);
    if (c.opt.second_file.empty()) throw MalformedInput("verify-filtration needs --second FILTRATION");
    const auto f = filtration_from_json(m, read_json_file(c.opt.second_file));
    const auto v = verify_filtration(f, budget);
    c.outputs["ok"] = v.ok;
    c.outputs["reason"] = to_string(v.reason);
    c.outputs["step"] = v.step;
    c.assertion("torsional brick chain filtration", v.ok);
  } else if (cmd == "dualize") {
    const auto d = dualize(need_module(c));
    c.outputs["algebra"] = algebra_to_json(*d.algebra);
    c.outputs["module"] = module_to_json(d.module);
  } else if (cmd == "universe") {
    c.outputs = universe_to_json(universe_for(c));
  } else if (cmd == "lattice") {
    const auto t = enumerate_torsion_classes(universe_for(c), budget);
    if (c.opt.format == "dot") c.raw = lattice_to_dot(t);
    else c.outputs = lattice_to_json(t);
  } else if (cmd == "check-2.2") {
    const auto t = enumerate_torsion_classes(universe_for(c), budget);
    const auto r = check_bijection(t, budget);
    json sb = json::array();
    for (const auto& x : r.semibricks) sb.push_back(x);
    c.outputs["semibricks"] = sb;
    c.outputs["torsion_classes"] = r.class_count;
    c.outputs["image"] = r.image;
    c.outputs["failures"] = r.failures;
    c.assertion("semibricks and torsion classes are in bijection", r.bijective);
    c.assertion("semibricks are the top bricks of generators", r.tops_recovered);
  } else if (cmd == "check-2.5") {
    const auto t = enumerate_torsion_classes(universe_for(c), budget);
    std::vector<Representation> generators;
    if (c.module) {
      generators.push_back(*c.module);
    } else {
      for (ClassMask s = 0; s < ClassMask{1} << t.universe.size(); ++s)
        generators.push_back(assemble(t.universe, indices_of(s)));
    }
    json reports = json::array();
    bool all_ok = true;
    for (const auto& g : generators) {
      const auto r = check_lower_neighbors(t, g, budget);
      all_ok = all_ok && r.ok();
      reports.push_back({{"generator", r.generator},
                         {"torsion_class", r.torsion_class},
                         {"top_bricks", r.top_bricks},
                         {"lower_neighbors", r.lower_neighbors},
                         {"failures", r.failures}});
    }
    c.outputs["generators"] = reports;
    c.assertion("lower neighbors are T(M) ∩ ⊥B over the top bricks B", all_ok);
  } else {
    throw MalformedInput("unknown command " + cmd);
  }
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "check",        "hom",          "end",         "endotop",     "top-bricks",        "is-brick",
      "is-semibrick", "in-torsion",   "torsion-part", "perp-part",  "filtrations",       "verify-filtration",
      "dualize",      "universe",     "lattice",      "check-2.2",  "check-2.5"};
  return names;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Torsional brick chain filtrations over F_p", "brickchain"};
  app.require_subcommand(1);
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--algebra", opt.algebra_file, "algebra JSON")->required();
    sub->add_option("--module", opt.module_file, "module JSON");
    sub->add_option("--second", opt.second_file, "second module, or filtration for verify-filtration");
    sub->add_option("--budget", opt.budget, "element enumeration budget");
    sub->add_option("--max-dim", opt.max_dim, "universe bound on total dimension");
    sub->add_option("--out", opt.out_file, "write the report here");
    sub->add_option("--format", opt.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    sub->add_flag("--count-only", opt.count_only, "filtrations: report phi only");
    sub->add_flag("--complete", opt.complete, "assert the universe holds every indecomposable");
    sub->add_flag("--timing", opt.timing, "append wall-clock timing");
    sub->callback([&opt, name] { opt.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  json report;
  int code = kOk;
  std::string raw;
  try {
    auto alg = make_algebra(algebra_from_json(read_json_file(opt.algebra_file)));
    Context c{opt, alg, std::nullopt, std::nullopt};
    if (opt.command != "check") {
      if (!opt.module_file.empty()) c.module = load_module(alg, opt.module_file);
      if (!opt.second_file.empty() && opt.command != "verify-filtration")
        c.second = load_module(alg, opt.second_file);
    }
    c.inputs["algebra"] = algebra_to_json(*alg);
    if (c.module) c.inputs["module"] = module_to_json(*c.module);
    if (c.second) c.inputs["second"] = module_to_json(*c.second);
    dispatch(c);
    code = c.code;
    raw = c.raw;
    report = {{"inputs", c.inputs}, {"outputs", c.outputs}, {"assertions", c.assertions}};
  } catch (const BudgetExceeded& e) {
    code = kBudgetExhausted;
    report = {{"error", {{"kind", "budget_exhausted"}, {"message", e.what()}}}};
  } catch (const CertificateFailure& e) {
    code = kVerificationFailure;
    report = {{"error", {{"kind", "certificate_failure"}, {"message", e.what()}}}};
  } catch (const Error& e) {
    code = kInputError;
    report = {{"error", {{"kind", "input_error"}, {"message", e.what()}}}};
  } catch (const json::exception& e) {
    code = kInputError;
    report = {{"error", {{"kind", "input_error"}, {"message", e.what()}}}};
  }
  report["command"] = {{"name", opt.command}, {"args", std::vector<std::string>(argv + 1, argv + argc)}};
  report["exit_code"] = code;
  if (opt.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = {{"wall_ms", ms}};
  }

  const std::string payload = raw.empty() || code != kOk ? report.dump() + "\n" : raw;
  if (opt.out_file.empty()) {
    out << payload;
  } else {
    std::ofstream f(opt.out_file);
    if (!f) {
      err << "cannot write " << opt.out_file << "\n";
      return kInputError;
    }
    f << payload;
  }
  if (code == kInputError && report.contains("error")) err << report["error"]["message"].get<std::string>() << "\n";
  return code;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"brickchain"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace brickchain::cli
