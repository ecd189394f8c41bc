#include <doctest.h>

#include <cstring>
#include <string>

#include "qkit/io.hpp"
#include "qkit/random.hpp"
#include "qkit/scenarios.hpp"
#include "support.hpp"

#ifndef QKIT_FIXTURES
#define QKIT_FIXTURES "fixtures"
#endif

using namespace qkit;

namespace {

std::string fixture(const char* name) { return std::string(QKIT_FIXTURES) + "/" + name; }

std::string pointer_of(const Json& j) {
  try {
    parse_doc(j);
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("bell fixture parses to the Bell projector") {
  const auto doc = parse_doc(read_json(fixture("bell.json")));
  CHECK(doc.kind == DocKind::Density);
  CHECK(doc.dims == SystemDims{2, 2});
  CHECK(oracle::max_abs(doc.matrices[0] - oracle::bell_projector()) == 0.0);
  const auto rho = doc_to_state(doc);
  CHECK(rho.dims().factors() == 2);
}

TEST_CASE("golden fixtures survive parse then emit") {
  for (const char* name : {"bell.json", "trine.json", "depolarizing_0.25.json", "depolarizing_0.75.json",
                           "depolarizing_0.75_superop.json"}) {
    const Json j = read_json(fixture(name));
    CHECK_MESSAGE(emit_doc(parse_doc(j)) == j, name);
  }
}

TEST_CASE("emit then parse is bit exact for random doubles") {
  Rng rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix m = random_ginibre(rng, 3, 3) * std::pow(10.0, rng.uniform() * 20 - 10);
    const MatrixDoc doc{DocKind::Unitary, SystemDims{3}, {}, {m}};
    const auto text = emit_doc(doc).dump();
    const auto back = parse_doc(Json::parse(text));
    CHECK(back.matrices[0] == m);
  }
  const CVector v = random_pure_state(rng, 4);
  const auto sv = parse_doc(Json::parse(emit_doc({DocKind::State, SystemDims{2, 2}, {}, {CMatrix(v)}}).dump()));
  CHECK(CVector(sv.matrices[0].col(0)) == v);
}

TEST_CASE("fixture interpretations") {
  const auto trine = doc_to_povm(parse_doc(read_json(fixture("trine.json"))));
  for (std::size_t x = 0; x < 3; ++x) CHECK(oracle::max_abs(trine.elements[x] - trine_povm().elements[x]) <= 1e-15);
  CHECK(trine.labels == std::vector<std::string>{"0", "1", "2"});

  const auto dep = doc_to_channel(parse_doc(read_json(fixture("depolarizing_0.25.json"))));
  CHECK(same_channel(dep, depolarizing(0.25)));
  const auto sup = doc_to_channel(parse_doc(read_json(fixture("depolarizing_0.75_superop.json"))));
  CHECK(same_channel(sup, depolarizing(0.75)));
  CHECK(sup.size() <= 4);
}

TEST_CASE("schema errors name the offending path") {
  Json j = read_json(fixture("bell.json"));
  j["dims"] = Json::array({2, -1});
  CHECK(pointer_of(j) == "/dims/1");

  j = read_json(fixture("bell.json"));
  j["dims"] = Json::array({2, 3});
  CHECK(pointer_of(j) == "/data");

  j = read_json(fixture("bell.json"));
  j["data"][2][1] = Json::array({0.0});
  CHECK(pointer_of(j) == "/data/2/1");

  j = read_json(fixture("trine.json"));
  j["ops"][1][0][0][1] = "x";
  CHECK(pointer_of(j) == "/ops/1/0/0/1");

  j = read_json(fixture("trine.json"));
  j.erase("dims");
  CHECK(pointer_of(j) == "/dims");

  CHECK(pointer_of(Json::parse(R"({"kind": "banana", "dims": [2]})")) == "/kind");
  CHECK(pointer_of(Json::parse(R"({"kind": "kraus", "d": 2, "ops": [[[[1,0]]]]})")) == "/ops/0");
  CHECK(pointer_of(Json::parse(R"([1, 2])")) == "/");
  CHECK_THROWS_AS(read_json(fixture("does-not-exist.json")), SchemaError);
}

TEST_CASE("kind mismatches are schema errors") {
  const auto bell = parse_doc(read_json(fixture("bell.json")));
  CHECK_THROWS_AS(doc_to_channel(bell), SchemaError);
  CHECK_THROWS_AS(doc_to_povm(bell), SchemaError);
  Json bad = read_json(fixture("trine.json"));
  bad["ops"][0][0][0][0] = 0.9;
  CHECK_THROWS_AS(doc_to_povm(parse_doc(bad)), SchemaError);
}

TEST_CASE("scenario reports") {
  ScenarioOptions opts;
  opts.state = fixture("bell.json");
  const auto ppt = run_scenario("ppt", opts);
  CHECK(ppt.pass());
  CHECK(ppt.outputs["min_eig"].get<double>() == doctest::Approx(-0.5));
  CHECK(ppt.outputs["npt"].get<bool>());

  ScenarioOptions dep;
  dep.gamma = 0.75;
  dep.state = "random";
  dep.seed = 3;
  const auto d = run_scenario("depolarize", dep);
  CHECK(d.pass());
  bool saw_endpoint = false;
  for (const auto& c : d.checks) saw_endpoint |= c.name == "output_is_maximally_mixed" && c.pass;
  CHECK(saw_endpoint);

  ScenarioOptions nm;
  nm.instrument = fixture("trine.json");
  const auto n = run_scenario("naimark", nm);
  CHECK(n.pass());
  for (const auto& c : n.checks) {
    if (c.name == "recovery_residual") CHECK(c.actual.get<double>() <= 1e-8);
  }

  for (const auto& name : scenario_names()) {
    if (name == "joint-demo") continue;
    ScenarioOptions o;
    o.seed = 5;
    o.shots = 20000;
    const auto r = run_scenario(name, o);
    CHECK_MESSAGE(r.pass(), name << "\n" << r.summary());
    CHECK(r.to_json()["pass"].get<bool>() == r.pass());
  }
  CHECK_FALSE(is_scenario("teleport"));
  CHECK_THROWS_AS(run_scenario("teleport", {}), Error);
}

TEST_CASE("scenario reports are deterministic for a seed") {
  ScenarioOptions o;
  o.seed = 42;
  o.shots = 10000;
  for (const char* name : {"sample", "choi", "dilate", "purify"}) {
    CHECK(run_scenario(name, o).to_json().dump() == run_scenario(name, o).to_json().dump());
  }
}

TEST_CASE("failing checks flip the report verdict") {
  Report r;
  r.scenario = "x";
  r.checks.push_back({"a", 1.0, 1.0, 0.0, true});
  CHECK(r.pass());
  r.checks.push_back({"b", 0.0, 2.0, 1.0, false});
  CHECK_FALSE(r.pass());
  CHECK(r.summary().find("FAIL  b") != std::string::npos);
}
