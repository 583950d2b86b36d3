// Command-line front end: reads program / complex / simplicial documents,
// runs the analysis pipeline, and emits reports. Exit codes: 0 success,
// 2 malformed or inconsistent input, 3 analysis incomplete (the model
// contains an unresolved part; a partial report is still written).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvspace/cubical.hpp"
#include "pvspace/homology.hpp"
#include "pvspace/json_io.hpp"
#include "pvspace/pathspace.hpp"
#include "pvspace/program.hpp"
#include "pvspace/rewrite.hpp"
#include "pvspace/simplicial.hpp"

namespace {

using pvspace::json;

struct Options {
  std::string out;
  std::string format = "json";
  std::string box_spec;
  long long cap = 1000000;
  bool no_oracle = false;
};

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pvspace::input_error("cannot open file: " + path);
  return json::parse(in);  // parse_error carries line/column
}

void emit(const std::string& text, const Options& opt) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out);
  if (!out) throw pvspace::input_error("cannot write file: " + opt.out);
  out << text;
}

void emit_json(const json& j, const Options& opt) { emit(j.dump(2) + "\n", opt); }

pvspace::Box parse_box_spec(const std::string& spec, int n) {
  auto sep = spec.find("..");
  if (sep == std::string::npos)
    throw pvspace::input_error("--box expects the form lo..hi");
  int lo = 0, hi = 0;
  try {
    lo = std::stoi(spec.substr(0, sep));
    hi = std::stoi(spec.substr(sep + 2));
  } catch (const std::exception&) {
    throw pvspace::input_error("--box expects integer bounds");
  }
  if (lo > hi) throw pvspace::input_error("--box bounds out of order");
  return pvspace::Box{pvspace::IVec(n, lo), pvspace::IVec(n, hi)};
}

std::string homology_to_text(const pvspace::HomologyProfile& profile) {
  std::string out;
  for (size_t d = 0; d < profile.groups.size(); ++d) {
    const auto& g = profile.groups[d];
    if (g.betti == 0 && g.torsion.empty()) continue;
    if (!out.empty()) out += "  ";
    out += "H" + std::to_string(d) + "=";
    std::string term;
    if (g.betti == 1) term = "Z";
    if (g.betti > 1) term = "Z^" + std::to_string(g.betti);
    for (long long t : g.torsion) term += (term.empty() ? "" : "+") + ("Z/" + std::to_string(t));
    out += term.empty() ? "0" : term;
  }
  return out.empty() ? "trivial" : out;
}

std::string model_to_text(const pvspace::PathSpaceModel& m) {
  using Kind = pvspace::PathSpaceModel::Kind;
  switch (m.kind) {
    case Kind::Empty:
      return "empty";
    case Kind::Contractible:
      return "point";
    case Kind::Complex:
      return "complex(" + std::to_string(m.complex.n) + " vertices, " +
             std::to_string(m.complex.simplices.size()) + " simplices)";
    case Kind::Product:
    case Kind::DisjointUnion: {
      std::string out = m.kind == Kind::Product ? "product[" : "union[";
      for (size_t i = 0; i < m.parts.size(); ++i)
        out += (i ? ", " : "") + model_to_text(m.parts[i]);
      return out + "]";
    }
    case Kind::Unknown:
      return "unknown(" + m.diagnostic + ")";
  }
  return "?";
}

int cmd_analyze(const std::string& file, const Options& opt) {
  pvspace::PVProgram q = pvspace::program_from_json(load_file(file));
  if (q.process_count() == 0) throw pvspace::input_error("program has no processes");

  pvspace::Box window =
      opt.box_spec.empty() ? pvspace::default_window(q)
                           : parse_box_spec(opt.box_spec, q.process_count());
  pvspace::ValidityReport validity = pvspace::validate(q);
  pvspace::EuclideanComplex K = pvspace::state_space(q, window);

  auto bot = q.start_corner();
  auto top = q.finish_corner();
  pvspace::IVec a(q.process_count()), b(q.process_count());
  for (int j = 0; j < q.process_count(); ++j) {
    a[j] = static_cast<int>(bot[j]);
    b[j] = static_cast<int>(top[j]);
  }

  std::vector<pvspace::IVec> dead = pvspace::deadlocks(K, a, b);
  pvspace::PathSpaceModel m = pvspace::model(K, a, b);
  auto hom = pvspace::homology_of_model(m);

  json report;
  report["schema"] = pvspace::kReportSchema;
  report["command"] = "analyze";
  pvspace::CapacityProfile caps = pvspace::capacity_profile(q);
  json capacities = json::object();
  for (int r = 0; r < q.resources.size(); ++r)
    capacities[q.resources.names[r]] = q.resources.capacities[r];
  report["program"] = {{"processes", q.process_count()},
                       {"resources", q.resources.size()},
                       {"capacity_max", caps.max},
                       {"capacities", capacities}};
  report["validity"] = pvspace::validity_to_json(validity, q.resources);
  json counts = json::object();
  for (const auto& [d, c] : K.counts_by_dim()) counts[std::to_string(d)] = c;
  report["state_space"] = {{"box", pvspace::box_to_json(K.box)},
                           {"cubes", K.cubes.size()},
                           {"by_dim", counts}};
  report["deadlocks"] = json::array();
  for (const pvspace::IVec& v : dead) report["deadlocks"].push_back(pvspace::ivec_to_json(v));
  report["model"] = pvspace::model_to_json(m);
  if (hom) {
    report["homology"] = {{"available", true}, {"groups", pvspace::homology_to_json(*hom)}};
  } else {
    report["homology"] = {{"available", false}};
  }

  json warnings = json::array();
  if (m.contains_unknown())
    warnings.push_back("path-space model incomplete: " + m.diagnostic);

  auto components = pvspace::path_component_count(m);
  if (opt.no_oracle) {
    report["oracle"] = {{"ran", false}, {"reason", "disabled"}};
  } else {
    try {
      pvspace::FlipClasses fc = pvspace::flip_oracle(K, a, b, opt.cap);
      json jo = {{"ran", true}, {"paths", fc.path_count}, {"classes", fc.class_count}};
      if (components) {
        jo["model_components"] = *components;
        jo["agree"] = *components == fc.class_count;
        if (*components != fc.class_count)
          warnings.push_back("oracle class count disagrees with the model");
      }
      report["oracle"] = jo;
    } catch (const std::runtime_error& e) {
      report["oracle"] = {{"ran", false}, {"reason", e.what()}};
    }
  }
  report["warnings"] = warnings;

  if (opt.format == "text") {
    std::ostringstream os;
    os << "program: " << q.process_count() << " processes, " << q.resources.size()
       << " resources, max capacity " << caps.max << "\n";
    os << "validity: " << (validity.valid() ? "valid" : "invalid")
       << (validity.elementary_valid() ? ", elementary valid" : "") << "\n";
    os << "state space: " << K.cubes.size() << " cubes\n";
    os << "deadlocks:";
    for (const pvspace::IVec& v : dead) {
      os << " (";
      for (int i = 0; i < v.n; ++i) os << (i ? "," : "") << v[i];
      os << ")";
    }
    if (dead.empty()) os << " none";
    os << "\n";
    os << "model: " << model_to_text(m) << "\n";
    if (hom) os << "homology: " << homology_to_text(*hom) << "\n";
    for (const auto& w : warnings) os << "warning: " << w.get<std::string>() << "\n";
    emit(os.str(), opt);
  } else {
    emit_json(report, opt);
  }
  return m.contains_unknown() ? 3 : 0;
}

int cmd_realize(const std::string& file, const Options& opt) {
  pvspace::SimplicialComplex L = pvspace::simplicial_from_json(load_file(file));
  if (L.n < 2) throw pvspace::input_error("realize: complex needs at least 2 vertices");
  pvspace::PVProgram q = pvspace::build_QL(L);

  std::vector<pvspace::PathSpaceModel> pieces;
  if (!L.empty()) pieces.push_back(pvspace::PathSpaceModel::from_complex(L));
  pieces.push_back(
      pvspace::PathSpaceModel::from_complex(pvspace::boundary_simplex(L.n)));
  pvspace::PathSpaceModel predicted = pvspace::PathSpaceModel::disjoint_union(pieces);
  auto hom = pvspace::homology_of_model(predicted);

  json report;
  report["schema"] = pvspace::kReportSchema;
  report["command"] = "realize";
  pvspace::CapacityProfile caps = pvspace::capacity_profile(q);
  report["program"] = pvspace::program_to_json(q);
  report["stats"] = {{"processes", q.process_count()},
                     {"resources", q.resources.size()},
                     {"capacity_max", caps.max}};
  report["prediction"] = {{"model", pvspace::model_to_json(predicted)},
                          {"homology", hom ? pvspace::homology_to_json(*hom) : json()}};
  json warnings = json::array();
  for (int v = 1; v <= L.n; ++v)
    if (!L.contains(pvspace::Simplex{1} << (v - 1)))
      warnings.push_back("vertex " + std::to_string(v) +
                         " is not in the complex (deleted by a singleton nonface)");
  report["warnings"] = warnings;

  if (opt.format == "text") {
    std::ostringstream os;
    os << "program: " << q.process_count() << " processes, " << q.resources.size()
       << " resources, capacity " << caps.max << "\n";
    os << "predicted execution-space component: " << model_to_text(predicted) << "\n";
    if (hom) os << "predicted homology: " << homology_to_text(*hom) << "\n";
    emit(os.str(), opt);
  } else {
    emit_json(report, opt);
  }
  return 0;
}

int cmd_statespace(const std::string& file, const Options& opt) {
  pvspace::PVProgram q = pvspace::program_from_json(load_file(file));
  pvspace::Box window =
      opt.box_spec.empty() ? pvspace::default_window(q)
                           : parse_box_spec(opt.box_spec, q.process_count());
  pvspace::EuclideanComplex K = pvspace::state_space(q, window);
  json out;
  out["schema"] = pvspace::kReportSchema;
  out["command"] = "statespace";
  out["complex"] = pvspace::complex_to_json(K);
  emit_json(out, opt);
  return 0;
}

int cmd_compile(const std::string& file, const Options& opt) {
  pvspace::ComplexDocument doc = pvspace::complex_from_json(load_file(file));
  pvspace::HoleSet holes;
  try {
    holes = doc.holes ? *doc.holes : pvspace::holes_of(doc.complex);
  } catch (const std::invalid_argument& e) {
    throw pvspace::input_error(e.what());
  }
  pvspace::PVProgram q;
  try {
    q = pvspace::compile_program(holes);
  } catch (const std::invalid_argument& e) {
    throw pvspace::input_error(e.what());
  }
  json out;
  out["schema"] = pvspace::kReportSchema;
  out["command"] = "compile";
  out["holes"] = pvspace::holes_to_json(holes);
  out["program"] = pvspace::program_to_json(q);
  emit_json(out, opt);
  return 0;
}

int cmd_reduce(const std::string& file, const Options& opt) {
  pvspace::PVProgram q = pvspace::program_from_json(load_file(file));
  pvspace::PVProgram reduced = q;
  json traces = json::array();
  for (pvspace::PVProcess& p : reduced.processes) {
    auto [el, trace] = pvspace::elementarize(p);
    traces.push_back(pvspace::trace_to_json(trace));
    p = pvspace::canonical_progression(pvspace::reduce(p));
  }
  json out;
  out["schema"] = pvspace::kReportSchema;
  out["command"] = "reduce";
  out["program"] = pvspace::program_to_json(reduced);
  out["elementarization_traces"] = traces;
  if (opt.format == "text") {
    std::ostringstream os;
    for (int i = 0; i < reduced.process_count(); ++i)
      os << "process " << i << ": " << reduced.processes[i].length()
         << " operations after reduction\n";
    emit(os.str(), opt);
  } else {
    emit_json(out, opt);
  }
  return 0;
}

int cmd_equiv(const std::string& f1, const std::string& f2, const Options& opt) {
  pvspace::PVProgram a = pvspace::program_from_json(load_file(f1));
  pvspace::PVProgram b = pvspace::program_from_json(load_file(f2));
  bool eq = false;
  try {
    eq = pvspace::equivalent_programs(a, b);
  } catch (const std::invalid_argument& e) {
    throw pvspace::input_error(e.what());
  }
  if (opt.format == "text") {
    emit(eq ? "equivalent\n" : "not equivalent\n", opt);
  } else {
    json out;
    out["schema"] = pvspace::kReportSchema;
    out["command"] = "equiv";
    out["equivalent"] = eq;
    emit_json(out, opt);
  }
  return 0;
}

int cmd_oracle(const std::string& file, const Options& opt) {
  pvspace::ComplexDocument doc = pvspace::complex_from_json(load_file(file));
  const pvspace::EuclideanComplex& K = doc.complex;
  pvspace::FlipClasses fc;
  try {
    fc = pvspace::flip_oracle(K, K.box.lo, K.box.hi, opt.cap);
  } catch (const std::runtime_error& e) {
    throw pvspace::input_error(e.what());
  }
  json out;
  out["schema"] = pvspace::kReportSchema;
  out["command"] = "oracle";
  out["paths"] = fc.path_count;
  out["classes"] = fc.class_count;
  out["representatives"] = fc.representatives;
  if (opt.format == "text") {
    emit(std::to_string(fc.class_count) + " classes over " +
             std::to_string(fc.path_count) + " paths\n",
         opt);
  } else {
    emit_json(out, opt);
  }
  return 0;
}

int cmd_plot(const std::string& file, const Options& opt) {
  pvspace::ComplexDocument doc = pvspace::complex_from_json(load_file(file));
  emit(pvspace::render_svg(doc.complex), opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State spaces, deadlocks, and execution-space models of PV programs"};
  app.require_subcommand(1);

  Options opt;
  std::string in1, in2;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "write output to FILE instead of stdout");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* analyze = app.add_subcommand("analyze", "full analysis of a program");
  analyze->add_option("program", in1, "program JSON file")->required();
  analyze->add_option("--box", opt.box_spec, "analysis window lo..hi for all coordinates");
  analyze->add_option("--cap", opt.cap, "path cap for the flip oracle");
  analyze->add_flag("--no-oracle", opt.no_oracle, "skip the flip oracle");
  add_common(analyze);

  CLI::App* realize = app.add_subcommand(
      "realize", "compile a simplicial complex into a program realizing it");
  realize->add_option("simplicial", in1, "simplicial JSON file")->required();
  add_common(realize);

  CLI::App* statespace = app.add_subcommand("statespace", "state space of a program");
  statespace->add_option("program", in1, "program JSON file")->required();
  statespace->add_option("--box", opt.box_spec, "analysis window lo..hi");
  add_common(statespace);

  CLI::App* compile = app.add_subcommand("compile", "program whose state space is a complex");
  compile->add_option("complex", in1, "complex JSON file")->required();
  add_common(compile);

  CLI::App* reduce = app.add_subcommand("reduce", "normal forms of every process");
  reduce->add_option("program", in1, "program JSON file")->required();
  add_common(reduce);

  CLI::App* equiv = app.add_subcommand("equiv", "decide execution equivalence");
  equiv->add_option("first", in1, "program JSON file")->required();
  equiv->add_option("second", in2, "program JSON file")->required();
  add_common(equiv);

  CLI::App* oracle = app.add_subcommand("oracle", "flip classes of monotone paths");
  oracle->add_option("complex", in1, "complex JSON file")->required();
  oracle->add_option("--cap", opt.cap, "path cap");
  add_common(oracle);

  CLI::App* plot = app.add_subcommand("plot", "SVG figure of a planar complex");
  plot->add_option("complex", in1, "complex JSON file")->required();
  add_common(plot);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(in1, opt);
    if (realize->parsed()) return cmd_realize(in1, opt);
    if (statespace->parsed()) return cmd_statespace(in1, opt);
    if (compile->parsed()) return cmd_compile(in1, opt);
    if (reduce->parsed()) return cmd_reduce(in1, opt);
    if (equiv->parsed()) return cmd_equiv(in1, in2, opt);
    if (oracle->parsed()) return cmd_oracle(in1, opt);
    if (plot->parsed()) return cmd_plot(in1, opt);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const pvspace::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
