#include "doctest.h"

#include <fstream>
#include <sstream>

#include "ntfp/instance.hpp"

using namespace ntfp;

namespace {

// A coupled instance on the 3-chain with F constant at b, all ways explicit.
Json chain_instance() {
  return Json::parse(R"({
    "name": "chain-demo",
    "n": 2,
    "star": {"preset": "coupled"},
    "space": {"finite": {
      "elements": ["a", "b", "c"],
      "dist": [[0, 1, 2], [1, 0, 1], [2, 1, 0]],
      "leq": [["a", "b"], ["b", "c"]],
      "closure": true}},
    "F": {"table": {"flat": ["b", "b", "b", "b", "b", "b", "b", "b", "b"]}},
    "g": "identity",
    "phi": {"name": "linear", "alpha": "1/2"},
    "contraction_form": "sum",
    "mode": "compatible",
    "initial": ["a", "c"]
  })");
}

Json real_instance() {
  return Json::parse(R"({
    "name": "line-demo",
    "n": 2,
    "star": {"preset": "coupled"},
    "space": {"real": {"lo": -1, "hi": 1}},
    "F": {"builtin": {"name": "weighted-sum", "coeffs": [0.25, -0.25], "constant": 0}},
    "g": "identity",
    "phi": {"name": "linear", "alpha": "1/2"},
    "contraction_form": "pointwise-sum",
    "mode": "fixed-point",
    "initial": [-1, 1],
    "samples": 500,
    "seed": 11
  })");
}

}  // namespace

TEST_CASE("rational positions parse exactly from every accepted form") {
  CHECK(rational_from_json(Json(3), "t") == Rational(3));
  CHECK(rational_from_json(Json(-2), "t") == Rational(-2));
  CHECK(rational_from_json(Json("3/4"), "t") == Rational(3, 4));
  CHECK(rational_from_json(Json("-7/2"), "t") == Rational(-7, 2));
  CHECK(rational_from_json(Json("0.25"), "t") == Rational(1, 4));
  CHECK(rational_from_json(Json(0.25), "t") == Rational(1, 4));
  CHECK(rational_from_json(Json(0.1), "t") == Rational(1, 10));  // shortest decimal, exactly
  CHECK(rational_from_json(Json(1.5), "t") == Rational(3, 2));

  CHECK_THROWS_AS(rational_from_json(Json("1/0"), "t"), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("abc"), "t"), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json(true), "t"), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json::array(), "t"), ParseError);
}

TEST_CASE("rational serialization: integers collapse, proper fractions stay strings") {
  CHECK(json_rational(Rational(2)) == Json(2));
  CHECK(json_rational(Rational(4, 2)) == Json(2));
  CHECK(json_rational(Rational(3, 2)) == Json("3/2"));
  CHECK(json_rational(Rational(-1, 3)) == Json("-1/3"));
  CHECK(json_rational(Rational(0)) == Json(0));
}

TEST_CASE("matrix and partition readers") {
  BinaryOp op = matrix_from_json(Json::parse("[[1,2],[2,1]]"));
  CHECK(op.rows() == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[2]]")), ShapeMismatch);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[1,2]")), ParseError);

  Partition part = partition_from_json(Json::parse(R"({"A": [1, 3], "B": [2]})"), 3);
  CHECK(part.A() == std::vector<int>{1, 3});
  CHECK_THROWS_AS(partition_from_json(Json::parse(R"({"A": [1]})"), 2), ParseError);
  CHECK_THROWS_AS(partition_from_json(Json::parse(R"({"A": [1], "B": [2], "C": []})"), 2),
                  ParseError);
}

TEST_CASE("finite instance parses into exact tables") {
  Instance inst = parse_instance(chain_instance());
  CHECK(inst.name == "chain-demo");
  REQUIRE(inst.finite());
  const FiniteProblem& p = inst.fin();

  CHECK(p.space.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(p.space.dist(0, 2) == Rational(2));
  CHECK(p.space.leq(0, 2));  // closure applied
  CHECK(p.op.rows() == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
  CHECK(p.part == Partition(2, {1}, {2}));
  CHECK(p.F(std::vector<int>{0, 2}) == 1);
  CHECK(p.g.is_identity());
  CHECK(p.phi.eval(Rational(1)) == Rational(1, 2));
  CHECK(p.form == ContractionForm::SumAvg);
  CHECK(p.mode == SolveMode::Compatible);
  REQUIRE(p.initial.has_value());
  CHECK(*p.initial == std::vector<int>{0, 2});
  CHECK(p.E.empty());
  CHECK(p.in_E(0));
}

TEST_CASE("finite instance variants") {
  SUBCASE("sparse entries with a default") {
    Json j = chain_instance();
    j["F"] = Json::parse(R"({"table": {
      "entries": [{"args": ["a", "c"], "value": "c"}],
      "default": "a"}})");
    auto p = parse_instance(j).fin();
    CHECK(p.F(std::vector<int>{0, 2}) == 2);
    CHECK(p.F(std::vector<int>{1, 1}) == 0);
  }
  SUBCASE("entries without a default must cover the grid") {
    Json j = chain_instance();
    j["F"] = Json::parse(R"({"table": {"entries": [{"args": ["a", "a"], "value": "b"}]}})");
    CHECK_THROWS_AS(parse_instance(j), PartialMapping);
  }
  SUBCASE("conflicting entries are rejected") {
    Json j = chain_instance();
    j["F"] = Json::parse(R"({"table": {
      "entries": [{"args": ["a", "a"], "value": "b"}, {"args": ["a", "a"], "value": "c"}],
      "default": "a"}})");
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("g as an explicit table, with a gap") {
    Json j = chain_instance();
    j["g"] = Json::parse(R"({"table": {"a": "a", "b": "a", "c": "c"}})");
    auto p = parse_instance(j).fin();
    CHECK(p.g(1) == 0);
    j["g"] = Json::parse(R"({"table": {"a": "a"}})");
    CHECK_THROWS_AS(parse_instance(j), PartialMapping);
  }
  SUBCASE("explicit matrix with an explicit partition") {
    Json j = chain_instance();
    j["star"] = Json::parse(R"({"matrix": [[1, 2], [2, 1]]})");
    j["partition"] = Json::parse(R"({"A": [2], "B": [1]})");
    auto p = parse_instance(j).fin();
    CHECK(p.part == Partition(2, {2}, {1}));
    // A bare matrix without a partition has no canonical choice.
    j.erase("partition");
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("target subspace by labels") {
    Json j = chain_instance();
    j["E"] = Json::parse(R"(["b"])");
    j["mode"] = "range";
    auto p = parse_instance(j).fin();
    CHECK(p.mode == SolveMode::Range);
    CHECK_FALSE(p.in_E(0));
    CHECK(p.in_E(1));
  }
  SUBCASE("declared assumption flags are recorded as declared") {
    Json j = chain_instance();
    j["assumptions"] = Json::parse(R"({"o_complete": true, "g_one_one": true})");
    auto p = parse_instance(j).fin();
    CHECK(p.assumptions.o_complete.value);
    CHECK(p.assumptions.o_complete.prov == Provenance::Declared);
    CHECK(p.assumptions.g_one_one.value);
    CHECK_FALSE(p.assumptions.commuting.value);
  }
  SUBCASE("weighted-linear weights") {
    Json j = chain_instance();
    j["contraction_form"] = "weighted-linear";
    j["weights"] = Json::parse(R"(["1/4", "1/4"])");
    auto p = parse_instance(j).fin();
    CHECK(p.form == ContractionForm::WeightedLinear);
    CHECK(p.weights == std::vector<Rational>{Rational(1, 4), Rational(1, 4)});
  }
  SUBCASE("phi shorthands") {
    Json j = chain_instance();
    j["phi"] = "ratio";
    CHECK(parse_instance(j).fin().phi.eval(Rational(1)) == Rational(1, 2));
    j["phi"] = "quad-clamped";
    CHECK(parse_instance(j).fin().phi.eval(Rational(3)) == Rational(0));
    j["phi"] = Json::parse(R"({"name": "piecewise-linear", "breaks": [1],
                               "alphas": ["1/2", "1/4"], "declared_class": "Psi"})");
    auto p = parse_instance(j).fin();
    CHECK(p.phi.eval(Rational(2)) == Rational(1, 2));
    CHECK(p.phi.declared_class() == PhiClass::Psi);
  }
}

TEST_CASE("instance validation rejections") {
  SUBCASE("unknown keys at every level") {
    Json j = chain_instance();
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_instance(j), ParseError);

    j = chain_instance();
    j["space"]["finite"]["bogus"] = 1;
    CHECK_THROWS_AS(parse_instance(j), ParseError);

    j = chain_instance();
    j["star"]["huh"] = 1;
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("missing required keys") {
    for (const char* key : {"n", "star", "space", "F", "g"}) {
      Json j = chain_instance();
      j.erase(key);
      CHECK_THROWS_AS(parse_instance(j), ParseError);
    }
  }
  SUBCASE("unknown labels") {
    Json j = chain_instance();
    j["initial"] = Json::parse(R"(["a", "zz"])");
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("flat table length must be m^n") {
    Json j = chain_instance();
    j["F"] = Json::parse(R"({"table": {"flat": ["b", "b", "b"]}})");
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("arity disagreement between n and the preset") {
    Json j = chain_instance();
    j["n"] = 3;
    CHECK_THROWS_AS(parse_instance(j), BadArity);
  }
  SUBCASE("sampling keys are a real-line feature") {
    Json j = chain_instance();
    j["samples"] = 100;
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
  SUBCASE("the target subspace is a finite-carrier feature") {
    Json j = real_instance();
    j["E"] = Json::parse(R"([0.5])");
    CHECK_THROWS_AS(parse_instance(j), ParseError);
  }
}

TEST_CASE("real instance parses into the sampling problem") {
  Instance inst = parse_instance(real_instance());
  REQUIRE_FALSE(inst.finite());
  const RealProblem& p = inst.real();
  CHECK(p.space.lo() == -1.0);
  CHECK(p.space.hi() == 1.0);
  CHECK(p.F.kind == RealNMap::Kind::WeightedSum);
  CHECK(p.F.coeffs == std::vector<double>{0.25, -0.25});
  CHECK(p.g.is_identity());
  CHECK(p.form == ContractionForm::PointwiseSum);
  CHECK(p.mode == SolveMode::FixedPoint);
  CHECK(p.samples == 500);
  CHECK(p.seed == 11);
  REQUIRE(p.initial.has_value());
  CHECK(*p.initial == std::vector<double>{-1.0, 1.0});

  Json j = real_instance();
  j["g"] = Json::parse(R"({"builtin": {"name": "affine", "a": 2, "b": 1}})");
  auto q = parse_instance(j).real();
  CHECK(q.g(1.0) == doctest::Approx(3.0));
  j["g"]["builtin"]["a"] = 0;
  CHECK_THROWS_AS(parse_instance(j), ParseError);

  j = real_instance();
  j["F"] = Json::parse(R"({"builtin": {"name": "product", "scale": 0.125}})");
  auto r = parse_instance(j).real();
  CHECK(r.F.kind == RealNMap::Kind::Product);
  CHECK(r.F(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.03125));
}

TEST_CASE("classification report shape is frozen") {
  auto pr = preset("forward-cyclic", 3);
  Json j = classify_json("demo", pr.op, pr.part);
  CHECK(j["name"] == "demo");
  CHECK(j["n"] == 3);
  CHECK(j["matrix"] == Json::parse("[[1,2,3],[2,3,1],[3,1,2]]"));
  CHECK(j["partition"]["A"] == Json::parse("[1,3]"));
  CHECK(j["member_of_U"] == false);
  REQUIRE(j["violations"].size() == 3);
  CHECK(j["violations"][0]["i"] == 2);
  CHECK(j["violations"][0]["k"] == 3);
  CHECK(j["violations"][0]["value"] == 1);
  CHECK(j["violations"][0]["condition"] == "BxA->B");
  CHECK(j["violations"][1]["i"] == 3);
  CHECK(j["violations"][1]["k"] == 2);
  CHECK(j["violations"][2]["i"] == 3);
  CHECK(j["violations"][2]["k"] == 3);
  CHECK(j["violations"][2]["value"] == 2);
  CHECK(j["permuted"] == true);
  CHECK(j["selectors"] == j["matrix"]);

  auto bb = preset("berinde-borcut", 3);
  Json jb = classify_json("", bb.op, bb.part);
  CHECK(jb["member_of_U"] == true);
  CHECK(jb["violations"].empty());
  CHECK(jb["permuted"] == false);
  CHECK(jb["first_bad_row"] == 2);
}

TEST_CASE("solve report carries gates, iteration and labeled answer") {
  Instance inst = parse_instance(chain_instance());
  auto out = solve(inst.fin());
  Json j = solve_json(inst.fin(), out);
  CHECK(j["mode"] == "compatible");
  CHECK(j["gates"]["membership"]["holds"] == true);
  CHECK(j["gates"]["mixed_monotone"]["holds"] == true);
  CHECK(j["gates"]["mixed_monotone"]["provenance"] == "machine-verified");
  CHECK(j["gates"]["contraction"]["holds"] == true);
  CHECK(j["gates"]["initial_point"]["found"] == true);
  CHECK(j["gates"]["initial_point"]["orientation"] == "up");
  CHECK(j["failed_gate"].is_null());
  CHECK(j["iteration"]["status"] == "converged");
  CHECK(j["iteration"]["steps"] == 2);
  CHECK(j["converged"] == true);
  CHECK(j["answer"] == Json::parse(R"(["b","b"])"));

  // A failing gate nulls the downstream sections and names itself.
  Json bad = chain_instance();
  bad["star"] = Json::parse(R"({"preset": "forward-cyclic"})");
  bad["n"] = 3;
  bad["F"] = Json::parse(R"({"table": {"entries": [], "default": "b"}})");
  bad["initial"] = Json::parse(R"(["a", "c", "a"])");
  Instance bi = parse_instance(bad);
  auto bout = solve(bi.fin());
  Json bj = solve_json(bi.fin(), bout);
  CHECK(bj["failed_gate"] == "membership");
  CHECK(bj["converged"] == false);
  CHECK(bj["answer"].is_null());
}

TEST_CASE("certificate report mirrors the certificate") {
  Instance inst = parse_instance(chain_instance());
  auto cert = certify_theorem(inst.fin(), TheoremId::T3);
  Json j = certificate_json(inst.fin().space, cert);
  CHECK(j["theorem"] == "T3");
  CHECK(j["hypotheses_hold"] == true);
  CHECK(j["certified"] == true);
  CHECK(j["conclusion"]["holds"] == true);
  CHECK(j["enumeration"]["coincidence_count"] == 1);
  CHECK(j["enumeration"]["points_of_coincidence_count"] == 1);
  CHECK(j["enumeration"]["common_fixed_count"] == 1);
  CHECK(j["enumeration"]["coincidence_tuples"][0] == Json::parse(R"(["b","b"])"));
  for (const auto& h : j["hypotheses"]) {
    CHECK(h.contains("name"));
    CHECK(h.contains("holds"));
    CHECK(h.contains("provenance"));
  }
}

TEST_CASE("law suite report serializes deterministically") {
  LemmaSuiteConfig config;
  config.max_n = 2;
  config.trials = 10;
  config.op_samples = 50;
  Json a = lemma_suite_json(lemma_suite(config));
  Json b = lemma_suite_json(lemma_suite(config));
  CHECK(a.dump() == b.dump());
  CHECK(a["all_hold"] == true);
  CHECK(a["laws"].size() == 15);
  CHECK(a["config"]["seed"] == 7);
  CHECK(a["total_cases"].get<long long>() > 0);
}

TEST_CASE("orbit traces are line-delimited with residuals from step one") {
  Instance inst = parse_instance(chain_instance());
  auto out = solve(inst.fin());
  REQUIRE(out.trace.has_value());
  std::ostringstream os;
  write_trace(os, inst.fin().space, *out.trace);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    Json j = Json::parse(line);
    CHECK(j["m"] == rows);
    CHECK(j["tuple"].is_array());
    CHECK(j.contains("delta_residual") == (rows > 0));
    ++rows;
  }
  CHECK(rows == 3);

  // Real traces carry numbers instead of labels.
  Instance rinst = parse_instance(real_instance());
  auto rout = solve(rinst.real());
  REQUIRE(rout.trace.has_value());
  std::ostringstream ros;
  write_trace(ros, *rout.trace);
  std::istringstream ris(ros.str());
  REQUIRE(std::getline(ris, line));
  Json first = Json::parse(line);
  CHECK(first["tuple"][0] == -1.0);
}

TEST_CASE("instance files load with I/O errors distinguished from parse errors") {
  CHECK_THROWS_AS(load_instance("/nonexistent/nowhere.json"), IoError);

  const std::string path = "/tmp/ntfp_test_bad_instance.json";
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK_THROWS_AS(load_instance(path), ParseError);

  {
    std::ofstream f(path);
    f << chain_instance().dump();
  }
  Instance inst = load_instance(path);
  CHECK(inst.name == "chain-demo");
}
