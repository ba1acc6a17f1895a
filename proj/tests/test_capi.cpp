#include <doctest.h>

#include <string>

#include "chiral/chiral.h"

namespace {

std::string model_path(const std::string& f) { return std::string(CHIRAL_MODELS_DIR) + "/" + f; }

chiral_options opts(int w, int p) {
  chiral_options o;
  chiral_options_init(&o);
  o.max_weight = w;
  o.max_poly_degree = p;
  return o;
}

}  // namespace

TEST_CASE("C API: load, verify and read the report") {
  chiral_model* m = nullptr;
  REQUIRE(chiral_model_load(model_path("weil_line.json").c_str(), &m) == CHIRAL_OK);
  CHECK(std::string(chiral_model_kind(m)) == "weil");
  chiral_options o = opts(2, 0);
  chiral_report* r = nullptr;
  REQUIRE(chiral_verify(m, "weil", &o, &r) == CHIRAL_OK);
  CHECK(chiral_report_passed(r) == 1);
  CHECK(chiral_report_check_count(r) > 0);
  CHECK(std::string(chiral_report_json(r)).find("\"chiral-report/1\"") != std::string::npos);
  CHECK(chiral_report_seconds(r) >= 0);
  chiral_report_free(r);
  chiral_model_free(m);
}

TEST_CASE("C API: error codes") {
  chiral_model* m = nullptr;
  CHECK(chiral_model_load(nullptr, &m) == CHIRAL_ERR_ARGUMENT);
  CHECK(chiral_model_load("/nonexistent/model.json", &m) == CHIRAL_ERR_INPUT);
  CHECK(std::string(chiral_last_error()).find("cannot open") != std::string::npos);
  CHECK(chiral_model_parse("{\"kind\": \"weil\", \"lie\": {\"dim\": 0}}", &m) == CHIRAL_ERR_INPUT);
  CHECK(chiral_model_parse(R"({"kind": "weil", "lie": {"dim": 3, "brackets": [[1, 2, 1, "1"], [1, 3, 2, "1"]]}})", &m) ==
        CHIRAL_ERR_VALIDATION);
  CHECK(m == nullptr);

  REQUIRE(chiral_model_parse(R"({"kind": "weil", "lie": {"dim": 1}})", &m) == CHIRAL_OK);
  chiral_report* r = nullptr;
  chiral_options o = opts(2, 0);
  CHECK(chiral_verify(m, "no-such-suite", &o, &r) == CHIRAL_ERR_INPUT);
  CHECK(chiral_verify(m, "weil", nullptr, &r) == CHIRAL_ERR_ARGUMENT);
  o.max_weight = -1;
  CHECK(chiral_verify(m, "weil", &o, &r) == CHIRAL_ERR_INPUT);
  CHECK(r == nullptr);
  chiral_model_free(m);
  chiral_model_free(nullptr);
  chiral_report_free(nullptr);
  CHECK(std::string(chiral_status_name(CHIRAL_ERR_CAP)).size() > 0);
}
