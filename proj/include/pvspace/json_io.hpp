#pragma once

// JSON document formats for programs, complexes, and simplicial complexes,
// plus serializers for analysis results and a small SVG emitter for planar
// complexes. Key order is fixed everywhere so identical inputs produce
// byte-identical output.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvspace/cubical.hpp"
#include "pvspace/homology.hpp"
#include "pvspace/pathspace.hpp"
#include "pvspace/program.hpp"
#include "pvspace/rewrite.hpp"
#include "pvspace/simplicial.hpp"

namespace pvspace {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "pv-report/1";

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline const json& unwrap(const json& j, const char* key) {
  if (j.is_object() && j.contains(key)) return j.at(key);
  return j;
}

inline void expect(bool cond, const std::string& what) {
  if (!cond) throw input_error(what);
}

inline long long as_int(const json& j, const std::string& what) {
  expect(j.is_number_integer(), what + " must be an integer");
  return j.get<long long>();
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// programs

inline PVProgram program_from_json(const json& doc) {
  using io_detail::as_int;
  using io_detail::expect;
  const json& j = io_detail::unwrap(doc, "program");
  expect(j.is_object(), "program document must be an object");
  expect(j.contains("resources") && j.at("resources").is_array(),
         "program document needs a \"resources\" array");
  expect(j.contains("processes") && j.at("processes").is_array(),
         "program document needs a \"processes\" array");

  PVProgram q;
  for (const json& r : j.at("resources")) {
    expect(r.is_object() && r.contains("name") && r.contains("capacity"),
           "each resource needs \"name\" and \"capacity\"");
    expect(r.at("name").is_string(), "resource name must be a string");
    long long cap = as_int(r.at("capacity"), "resource capacity");
    expect(cap >= 1, "resource capacity must be >= 1");
    try {
      q.resources.add(r.at("name").get<std::string>(), cap);
    } catch (const std::invalid_argument& e) {
      throw input_error(e.what());
    }
  }

  auto resource_index = [&](const json& name) {
    expect(name.is_string(), "resource reference must be a string");
    int idx = q.resources.index_of(name.get<std::string>());
    expect(idx >= 0, "unknown resource: " + name.get<std::string>());
    return idx;
  };

  for (const json& jp : j.at("processes")) {
    expect(jp.is_array(), "each process must be an array of operations");
    PVProcess p;
    for (const json& jo : jp) {
      expect(jo.is_object(), "each operation must be an object");
      PVOperation op;
      if (jo.contains("P"))
        for (const json& name : jo.at("P")) op.add_acquire(resource_index(name), 1);
      if (jo.contains("V"))
        for (const json& name : jo.at("V")) op.add_release(resource_index(name), 1);
      auto index_by_name = [&](const std::string& name) {
        int idx = q.resources.index_of(name);
        if (idx < 0) throw input_error("unknown resource: " + name);
        return idx;
      };
      if (jo.contains("Pmulti"))
        for (auto it = jo.at("Pmulti").begin(); it != jo.at("Pmulti").end(); ++it)
          op.add_acquire(index_by_name(it.key()), as_int(it.value(), "Pmulti entry"));
      if (jo.contains("Vmulti"))
        for (auto it = jo.at("Vmulti").begin(); it != jo.at("Vmulti").end(); ++it)
          op.add_release(index_by_name(it.key()), as_int(it.value(), "Vmulti entry"));
      p.ops.push_back(op);
    }
    q.processes.push_back(p);
  }

  if (j.contains("progressions") && !j.at("progressions").is_null()) {
    const json& all = j.at("progressions");
    expect(all.is_array() && all.size() == q.processes.size(),
           "\"progressions\" must list one progression per process");
    for (size_t i = 0; i < q.processes.size(); ++i) {
      std::vector<long long> prog;
      for (const json& t : all.at(i)) prog.push_back(as_int(t, "progression entry"));
      q.processes[i].progression = prog;
      try {
        q.processes[i].check_progression();
      } catch (const std::invalid_argument& e) {
        throw input_error(e.what());
      }
    }
  } else {
    for (PVProcess& p : q.processes) p = canonical_progression(std::move(p));
  }
  return q;
}

inline json operation_to_json(const PVOperation& op, const ResourceSet& rs) {
  json jo;
  json p = json::array(), v = json::array();
  json pm = json::object(), vm = json::object();
  for (const auto& [r, m] : op.acquire) {
    if (m == 1)
      p.push_back(rs.names[r]);
    else
      pm[rs.names[r]] = m;
  }
  for (const auto& [r, m] : op.release) {
    if (m == 1)
      v.push_back(rs.names[r]);
    else
      vm[rs.names[r]] = m;
  }
  jo["P"] = p;
  jo["V"] = v;
  if (!pm.empty()) jo["Pmulti"] = pm;
  if (!vm.empty()) jo["Vmulti"] = vm;
  return jo;
}

inline json program_to_json(const PVProgram& q) {
  json j;
  j["resources"] = json::array();
  for (int r = 0; r < q.resources.size(); ++r)
    j["resources"].push_back(
        {{"name", q.resources.names[r]}, {"capacity", q.resources.capacities[r]}});
  j["processes"] = json::array();
  for (const PVProcess& p : q.processes) {
    json jp = json::array();
    for (const PVOperation& op : p.ops) jp.push_back(operation_to_json(op, q.resources));
    j["processes"].push_back(jp);
  }
  j["progressions"] = json::array();
  for (const PVProcess& p : q.processes) {
    if (p.progression)
      j["progressions"].push_back(*p.progression);
    else
      j["progressions"].push_back(nullptr);
  }
  return j;
}

// ---------------------------------------------------------------------------
// complexes

inline json ivec_to_json(const IVec& v) {
  json out = json::array();
  for (int i = 0; i < v.n; ++i) out.push_back(v[i]);
  return out;
}

inline IVec ivec_from_json(const json& j, int expect_n = -1) {
  io_detail::expect(j.is_array(), "coordinate vector must be an array");
  io_detail::expect(j.size() <= static_cast<size_t>(kMaxDim), "dimension out of range");
  IVec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    long long x = io_detail::as_int(j.at(i), "coordinate");
    io_detail::expect(x > -1000000 && x < 1000000, "coordinate out of supported range");
    v[static_cast<int>(i)] = static_cast<int>(x);
  }
  if (expect_n >= 0 && v.n != expect_n)
    throw input_error("coordinate vector has wrong dimension");
  return v;
}

inline json box_to_json(const Box& b) {
  return json::array({ivec_to_json(b.lo), ivec_to_json(b.hi)});
}

inline Box box_from_json(const json& j, int n) {
  io_detail::expect(j.is_array() && j.size() == 2, "box must be a pair of corners");
  return Box{ivec_from_json(j.at(0), n), ivec_from_json(j.at(1), n)};
}

struct ComplexDocument {
  EuclideanComplex complex;
  std::optional<HoleSet> holes;  // present when the document was hole-based
};

inline ComplexDocument complex_from_json(const json& doc) {
  using io_detail::expect;
  const json& j = io_detail::unwrap(doc, "complex");
  expect(j.is_object(), "complex document must be an object");
  expect(j.contains("n"), "complex document needs \"n\"");
  int n = static_cast<int>(io_detail::as_int(j.at("n"), "n"));
  expect(n >= 1 && n <= kMaxDim, "complex dimension out of range");
  expect(j.contains("holes") != j.contains("cubes"),
         "complex document needs exactly one of \"holes\" or \"cubes\"");

  if (j.contains("holes")) {
    HoleSet h;
    h.n = n;
    for (const json& jh : j.at("holes")) h.holes.push_back(box_from_json(jh, n));
    try {
      h.check();
      Box window;
      if (j.contains("box")) {
        window = box_from_json(j.at("box"), n);
      } else {
        window = h.hull();
        for (int i = 0; i < n; ++i) {
          window.lo[i] -= 1;
          window.hi[i] += 1;
        }
      }
      return {from_holes(h, window), h};
    } catch (const std::invalid_argument& e) {
      throw input_error(e.what());
    }
  }

  expect(j.contains("box"), "explicit cube lists need a \"box\"");
  EuclideanComplex K;
  K.n = n;
  K.box = box_from_json(j.at("box"), n);
  try {
    K.box.check_window();
    for (const json& jc : j.at("cubes")) {
      expect(jc.is_array() && jc.size() == 2, "each cube must be a pair of corners");
      Cube c{ivec_from_json(jc.at(0), n), ivec_from_json(jc.at(1), n)};
      c.check();
      expect(K.box.contains_cube(c), "cube outside the declared box");
      K.cubes.insert(c);
    }
  } catch (const std::invalid_argument& e) {
    throw input_error(e.what());
  }
  if (!K.face_closed()) throw input_error("cube list is not face-closed");
  return {K, std::nullopt};
}

inline json complex_to_json(const EuclideanComplex& K) {
  json j;
  j["n"] = K.n;
  j["box"] = box_to_json(K.box);
  j["cubes"] = json::array();
  for (const Cube& c : K.cubes)
    j["cubes"].push_back(json::array({ivec_to_json(c.lo), ivec_to_json(c.hi)}));
  return j;
}

inline json holes_to_json(const HoleSet& h) {
  json j = json::array();
  for (const Box& b : h.holes) j.push_back(box_to_json(b));
  return j;
}

// ---------------------------------------------------------------------------
// simplicial complexes

inline SimplicialComplex simplicial_from_json(const json& doc) {
  using io_detail::expect;
  const json& j = io_detail::unwrap(doc, "simplicial");
  expect(j.is_object(), "simplicial document must be an object");
  expect(j.contains("nonfaces") != j.contains("facets"),
         "simplicial document needs exactly one of \"nonfaces\" or \"facets\"");

  auto read_sets = [&](const json& arr) {
    std::vector<Simplex> out;
    expect(arr.is_array(), "vertex set list must be an array");
    for (const json& js : arr) {
      std::vector<int> verts;
      for (const json& v : js)
        verts.push_back(static_cast<int>(io_detail::as_int(v, "vertex label")));
      out.push_back(simplex_of(verts));
    }
    return out;
  };

  try {
    if (j.contains("nonfaces")) {
      expect(j.contains("n"), "nonface-based documents need \"n\"");
      int n = static_cast<int>(io_detail::as_int(j.at("n"), "n"));
      return from_minimal_nonfaces(n, read_sets(j.at("nonfaces")));
    }
    auto facets = read_sets(j.at("facets"));
    int n = 0;
    for (Simplex f : facets)
      for (int v : simplex_vertices(f)) n = std::max(n, v);
    if (j.contains("n")) n = static_cast<int>(io_detail::as_int(j.at("n"), "n"));
    return from_facets(n, facets);
  } catch (const std::invalid_argument& e) {
    throw input_error(e.what());
  }
}

inline json simplicial_to_json(const SimplicialComplex& L) {
  json j;
  j["n"] = L.n;
  j["facets"] = json::array();
  for (Simplex f : L.facets()) j["facets"].push_back(simplex_vertices(f));
  return j;
}

// ---------------------------------------------------------------------------
// analysis results

inline json homology_to_json(const HomologyProfile& profile) {
  json j = json::array();
  for (size_t d = 0; d < profile.groups.size(); ++d)
    j.push_back({{"degree", d},
                 {"betti", profile.groups[d].betti},
                 {"torsion", profile.groups[d].torsion}});
  return j;
}

inline json model_to_json(const PathSpaceModel& m) {
  json j;
  switch (m.kind) {
    case PathSpaceModel::Kind::Empty:
      j["kind"] = "empty";
      break;
    case PathSpaceModel::Kind::Contractible:
      j["kind"] = "contractible";
      break;
    case PathSpaceModel::Kind::Complex:
      j["kind"] = "complex";
      j["complex"] = simplicial_to_json(m.complex);
      break;
    case PathSpaceModel::Kind::Product:
    case PathSpaceModel::Kind::DisjointUnion:
      j["kind"] = m.kind == PathSpaceModel::Kind::Product ? "product" : "disjoint_union";
      j["parts"] = json::array();
      for (const PathSpaceModel& p : m.parts) j["parts"].push_back(model_to_json(p));
      break;
    case PathSpaceModel::Kind::Unknown:
      j["kind"] = "unknown";
      j["diagnostic"] = m.diagnostic;
      j["vertex"] = ivec_to_json(m.at);
      break;
  }
  return j;
}

inline json validity_to_json(const ValidityReport& report, const ResourceSet& rs) {
  json j;
  j["valid"] = report.valid();
  j["elementary"] = report.elementary();
  j["elementary_valid"] = report.elementary_valid();
  j["processes"] = json::array();
  for (const ProcessValidity& p : report.processes) {
    json jp;
    jp["valid"] = p.valid;
    jp["elementary"] = p.elementary;
    jp["elementary_valid"] = p.elementary_valid;
    jp["violations"] = json::array();
    for (const Violation& v : p.violations) {
      const char* kind = v.kind == ViolationKind::NegativePotential ? "negative_potential"
                         : v.kind == ViolationKind::UnreleasedResource
                             ? "unreleased_resource"
                             : "not_zero_one";
      jp["violations"].push_back({{"resource", rs.names[v.resource]},
                                  {"at", rat_to_string(v.at)},
                                  {"value", v.value},
                                  {"kind", kind}});
    }
    j["processes"].push_back(jp);
  }
  return j;
}

inline json trace_to_json(const RewriteTrace& trace) {
  json j = json::array();
  for (const RewriteStep& s : trace.steps) {
    json js;
    js["rule"] = s.rule == RewriteRule::E ? "E" : s.rule == RewriteRule::V ? "V" : "P";
    js["dir"] = s.dir == RewriteDir::Merge ? "merge" : "split";
    js["pos"] = s.pos;
    if (s.resource >= 0) js["resource"] = s.resource;
    j.push_back(js);
  }
  return j;
}

// ---------------------------------------------------------------------------
// SVG rendering (planar complexes only)

inline std::string render_svg(const EuclideanComplex& K) {
  if (K.n != 2) throw input_error("SVG rendering is only available for n = 2");
  const int scale = 40, margin = 20;
  const int w = (K.box.hi[0] - K.box.lo[0]) * scale + 2 * margin;
  const int h = (K.box.hi[1] - K.box.lo[1]) * scale + 2 * margin;
  auto X = [&](int x) { return margin + (x - K.box.lo[0]) * scale; };
  auto Y = [&](int y) { return h - margin - (y - K.box.lo[1]) * scale; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Cube& c : K.cubes) {
    if (c.dim() != 2) continue;
    svg += "<rect x=\"" + std::to_string(X(c.lo[0])) + "\" y=\"" +
           std::to_string(Y(c.hi[1])) + "\" width=\"" + std::to_string(scale) +
           "\" height=\"" + std::to_string(scale) + "\" fill=\"#cfe3f5\"/>\n";
  }
  for (const Cube& c : K.cubes) {
    if (c.dim() != 1) continue;
    svg += "<line x1=\"" + std::to_string(X(c.lo[0])) + "\" y1=\"" +
           std::to_string(Y(c.lo[1])) + "\" x2=\"" + std::to_string(X(c.hi[0])) +
           "\" y2=\"" + std::to_string(Y(c.hi[1])) +
           "\" stroke=\"#36618e\" stroke-width=\"2\"/>\n";
  }
  for (const Cube& c : K.cubes) {
    if (c.dim() != 0) continue;
    svg += "<circle cx=\"" + std::to_string(X(c.lo[0])) + "\" cy=\"" +
           std::to_string(Y(c.lo[1])) + "\" r=\"3\" fill=\"#1d3752\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace pvspace
