#include <doctest.h>

#include <json.hpp>

#include "chiral/driver.hpp"
#include "chiral/error.hpp"

using namespace chiral;

namespace {

std::string model_path(const std::string& name) { return std::string(CHIRAL_MODELS_DIR) + "/" + name; }
std::string data_path(const std::string& name) { return std::string(CHIRAL_TEST_DATA_DIR) + "/" + name; }

RunOptions options(int w, int p) {
  RunOptions o;
  o.max_weight = w;
  o.max_poly_degree = p;
  return o;
}

const CheckResult* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("bundled model files load") {
  for (const char* f : {"weil_line.json", "weil_affine.json", "euler.json", "affine_line.json", "plane_tangent.json",
                        "commutative_line.json", "trivial_tensor.json", "euler_atlas.json"}) {
    INFO(f);
    CHECK_NOTHROW(load_model_file(model_path(f)));
  }
  CHECK(load_model_file(model_path("euler_atlas.json")).kind == ModelKind::Atlas);
}

TEST_CASE("malformed and inconsistent model files are rejected") {
  CHECK_THROWS_AS(load_model_file(data_path("bad_jacobi.json")), ValidationError);
  CHECK_THROWS_AS(load_model_file(data_path("bad_anchor.json")), ValidationError);
  CHECK_THROWS_AS(parse_model_file("{not json"), InputError);
  CHECK_THROWS_AS(parse_model_file(R"({"kind": "weil"})"), InputError);
  CHECK_THROWS_AS(parse_model_file(R"({"kind": "weil", "lie": {"dim": 2, "brackets": [[1, 3, 1, "1"]]}})"), InputError);
  CHECK_THROWS_AS(parse_model_file(R"({"kind": "sheaf"})"), InputError);
  CHECK_THROWS_AS(load_model_file(data_path("missing.json")), InputError);
}

TEST_CASE("an inconsistent chart presentation fails the gluing checks") {
  ModelFile mf = load_model_file(data_path("inconsistent_atlas.json"));
  RunResult r = run_verify(mf, "atlas", options(1, 2));
  CHECK_FALSE(r.report.passed());
  ModelFile good = load_model_file(model_path("euler_atlas.json"));
  CHECK(run_verify(good, "atlas", options(1, 2)).report.passed());
}

TEST_CASE("unknown suites, targets and bad options are input errors") {
  ModelFile mf = load_model_file(model_path("weil_line.json"));
  CHECK_THROWS_AS(run_verify(mf, "nonsense", options(1, 0)), InputError);
  CHECK_THROWS_AS(run_cohomology(mf, "nonsense", options(1, 0)), InputError);
  CHECK_THROWS_AS(run_verify(mf, "weil", options(-1, 0)), InputError);
  ModelFile affine = load_model_file(model_path("affine_line.json"));
  CHECK_THROWS_AS(run_cohomology(affine, "small-cartan", options(1, 1)), InputError);
}

TEST_CASE("commutative action: equivariant cohomology is the function sector") {
  ModelFile mf = load_model_file(model_path("commutative_line.json"));
  RunResult r = run_cohomology(mf, "equivariant", options(1, 2));
  CHECK(r.report.passed());
  const CheckResult* c = find_check(r.report, "commutative action: H_G is the function sector in degree 0");
  REQUIRE(c != nullptr);
  CHECK(c->passed);
}

TEST_CASE("Euler transformation algebroid: basic and equivariant cohomology are the constants") {
  ModelFile mf = load_model_file(model_path("euler.json"));
  for (const char* target : {"basic", "equivariant", "small-cartan"}) {
    INFO(target);
    RunResult r = run_cohomology(mf, target, options(1, 2));
    CHECK(r.report.passed());
    REQUIRE_FALSE(r.report.tables.empty());
    for (const auto& e : r.report.tables[0].entries)
      CHECK(e.dimension == (e.key.weight == 0 && e.key.degree == 0 && e.key.poly_degree == 0 ? 1u : 0u));
  }
}

TEST_CASE("report JSON shape and determinism across job counts") {
  ModelFile mf = load_model_file(model_path("weil_affine.json"));
  RunOptions a = options(1, 0), b = options(1, 0);
  b.jobs = 4;
  RunResult ra = run_verify(mf, "weil", a), rb = run_verify(mf, "weil", b);
  CHECK(ra.json == rb.json);
  auto j = nlohmann::json::parse(ra.json);
  CHECK(j.at("schema") == "chiral-report/1");
  CHECK(j.at("passed") == true);
  CHECK(j.at("degree-window").is_object());
  CHECK(j.at("checks").size() == ra.report.checks.size());
  CHECK_FALSE(j.contains("seconds"));
}
