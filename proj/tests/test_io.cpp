#include <gtest/gtest.h>

#include "pvspace/json_io.hpp"

using namespace pvspace;

namespace {

PVProgram multiplicities_program() {
  PVProgram q;
  q.resources.add("a", 2);
  q.resources.add("b", 1);
  PVOperation op1;
  op1.add_acquire(0, 2);
  op1.add_acquire(1, 1);
  PVOperation op2;
  op2.add_release(0, 2);
  op2.add_release(1, 1);
  PVProcess p;
  p.ops = {op1, op2};
  q.processes = {canonical_progression(p)};
  return q;
}

}  // namespace

TEST(ProgramJson, RoundTripWithMultiplicities) {
  PVProgram q = multiplicities_program();
  json doc = program_to_json(q);
  EXPECT_EQ(doc.at("processes").at(0).at(0).at("Pmulti").at("a"), 2);
  EXPECT_EQ(doc.at("processes").at(0).at(0).at("P"), json::parse("[\"b\"]"));
  PVProgram back = program_from_json(doc);
  EXPECT_EQ(back.resources, q.resources);
  EXPECT_EQ(back.processes, q.processes);
}

TEST(ProgramJson, MissingProgressionsDefaultToCanonical) {
  json doc = json::parse(R"({
    "resources": [{"name": "a", "capacity": 1}],
    "processes": [[{"P": ["a"]}, {"V": ["a"]}]]
  })");
  PVProgram q = program_from_json(doc);
  EXPECT_EQ(*q.processes[0].progression, (std::vector<long long>{0, 1}));
}

TEST(ProgramJson, RepeatedNamesAccumulate) {
  json doc = json::parse(R"({
    "resources": [{"name": "a", "capacity": 2}],
    "processes": [[{"P": ["a", "a"]}, {"V": [], "Vmulti": {"a": 2}}]]
  })");
  PVProgram q = program_from_json(doc);
  EXPECT_EQ(q.processes[0].ops[0].acquires(0), 2);
  EXPECT_EQ(q.processes[0].ops[1].releases(0), 2);
}

TEST(ProgramJson, Errors) {
  EXPECT_THROW(program_from_json(json::parse(R"({"resources": []})")), input_error);
  EXPECT_THROW(program_from_json(json::parse(
                   R"({"resources": [{"name": "a", "capacity": 0}], "processes": []})")),
               input_error);
  EXPECT_THROW(program_from_json(json::parse(
                   R"({"resources": [{"name": "a", "capacity": 1}],
                       "processes": [[{"P": ["zz"]}]]})")),
               input_error);
  EXPECT_THROW(program_from_json(json::parse(
                   R"({"resources": [{"name": "a", "capacity": 1}],
                       "processes": [[{"P": ["a"]}]],
                       "progressions": [[3, 1]]})")),
               input_error);
}

TEST(ProgramJson, UnwrapsReportEnvelope) {
  json envelope;
  envelope["command"] = "realize";
  envelope["program"] = program_to_json(multiplicities_program());
  PVProgram q = program_from_json(envelope);
  EXPECT_EQ(q.resources.size(), 2);
}

TEST(ComplexJson, HoleAndCubeForms) {
  json holes_doc = json::parse(R"({"n": 2, "box": [[0,0],[2,2]],
                                   "holes": [[[0,0],[1,1]]]})");
  ComplexDocument byholes = complex_from_json(holes_doc);
  ASSERT_TRUE(byholes.holes.has_value());
  EXPECT_EQ(byholes.complex.cubes.size(), 24u);  // full grid minus the one cell

  json cube_doc = complex_to_json(byholes.complex);
  ComplexDocument bycubes = complex_from_json(cube_doc);
  EXPECT_FALSE(bycubes.holes.has_value());
  EXPECT_EQ(bycubes.complex, byholes.complex);
}

TEST(ComplexJson, HoleHullGetsDefaultMargin) {
  json doc = json::parse(R"({"n": 2, "holes": [[[0,0],[1,1]]]})");
  ComplexDocument cd = complex_from_json(doc);
  EXPECT_EQ(cd.complex.box, (Box{IVec::of({-1, -1}), IVec::of({2, 2})}));
}

TEST(ComplexJson, Errors) {
  // both representations at once
  EXPECT_THROW(complex_from_json(json::parse(
                   R"({"n": 2, "box": [[0,0],[1,1]], "holes": [], "cubes": []})")),
               input_error);
  // cube list missing a face
  EXPECT_THROW(complex_from_json(json::parse(
                   R"({"n": 2, "box": [[0,0],[1,1]],
                       "cubes": [[[0,0],[1,0]]]})")),
               input_error);
  // coordinate out of range
  EXPECT_THROW(complex_from_json(json::parse(
                   R"({"n": 2, "box": [[0,0],[99999999,1]], "holes": []})")),
               input_error);
}

TEST(SimplicialJson, NonfacesAndFacets) {
  SimplicialComplex by_nonfaces =
      simplicial_from_json(json::parse(R"({"n": 3, "nonfaces": [[1,2,3]]})"));
  EXPECT_EQ(by_nonfaces, boundary_simplex(3));

  SimplicialComplex by_facets =
      simplicial_from_json(json::parse(R"({"facets": [[1,2],[2,3],[1,3]]})"));
  EXPECT_EQ(by_facets, boundary_simplex(3));  // n derived from the labels

  json round = simplicial_to_json(by_nonfaces);
  EXPECT_EQ(simplicial_from_json(round), by_nonfaces);
}

TEST(SimplicialJson, Errors) {
  EXPECT_THROW(simplicial_from_json(json::parse(R"({"n": 3})")), input_error);
  EXPECT_THROW(simplicial_from_json(json::parse(R"({"n": 3, "nonfaces": [[]]})")),
               input_error);
}

TEST(ModelJson, AllKindsSerialize) {
  EXPECT_EQ(model_to_json(PathSpaceModel::empty()).at("kind"), "empty");
  EXPECT_EQ(model_to_json(PathSpaceModel::contractible()).at("kind"), "contractible");
  PathSpaceModel c = PathSpaceModel::from_complex(boundary_simplex(2));
  EXPECT_EQ(model_to_json(c).at("complex").at("n"), 2);
  std::vector<PathSpaceModel> parts;
  parts.push_back(c);
  parts.push_back(c);
  json du = model_to_json(PathSpaceModel::disjoint_union(parts));
  EXPECT_EQ(du.at("kind"), "disjoint_union");
  EXPECT_EQ(du.at("parts").size(), 2u);
  json unk = model_to_json(PathSpaceModel::unknown("why", IVec(2, 1)));
  EXPECT_EQ(unk.at("diagnostic"), "why");
  EXPECT_EQ(unk.at("vertex"), json::parse("[1,1]"));
}

TEST(SvgRender, PlanarOnly) {
  HoleSet h;
  h.n = 2;
  EuclideanComplex K = from_holes(h, Box{IVec(2, 0), IVec(2, 1)});
  std::string svg = render_svg(K);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EuclideanComplex K3;
  K3.n = 3;
  K3.box = Box{IVec(3, 0), IVec(3, 1)};
  EXPECT_THROW(render_svg(K3), input_error);
}

TEST(RatToString, IntegersAndHalves) {
  EXPECT_EQ(rat_to_string(Rat(3)), "3");
  EXPECT_EQ(rat_to_string(Rat(3, 2)), "3/2");
  EXPECT_EQ(rat_to_string(Rat(-1, 2)), "-1/2");
}
