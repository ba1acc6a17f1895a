// Acceptance run: criteria 1-10 through the C API only.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/chiral.h"

namespace {

using nlohmann::json;

struct Run {
  std::string model;  // file under the models directory
  bool verify = true;
  std::string suite;  // suite or target
  int max_weight = 0;
  int max_poly_degree = 0;
  std::vector<std::string> required;          // checks that must be present and pass
  std::function<std::string(const json&)> extra;  // empty string on success
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::vector<Run> runs;
};

struct Outcome {
  bool ok = true;
  std::string why;
  std::vector<std::string> reports;
};

std::string model_path(const std::string& f) { return std::string(CHIRAL_MODELS_DIR) + "/" + f; }

std::string run_label(const Run& r) { return (r.verify ? "verify " : "cohomology ") + r.suite + " on " + r.model; }

Outcome execute(const Criterion& c, int jobs) {
  Outcome out;
  for (const Run& r : c.runs) {
    auto fail = [&](const std::string& msg) {
      if (out.ok) out.why = run_label(r) + ": " + msg;
      out.ok = false;
    };
    chiral_model* model = nullptr;
    if (chiral_model_load(model_path(r.model).c_str(), &model) != CHIRAL_OK) {
      fail(std::string("load failed: ") + chiral_last_error());
      out.reports.emplace_back();
      continue;
    }
    chiral_options opt;
    chiral_options_init(&opt);
    opt.max_weight = r.max_weight;
    opt.max_poly_degree = r.max_poly_degree;
    opt.jobs = jobs;
    chiral_report* rep = nullptr;
    chiral_status st = r.verify ? chiral_verify(model, r.suite.c_str(), &opt, &rep)
                                : chiral_cohomology(model, r.suite.c_str(), &opt, &rep);
    if (st != CHIRAL_OK) {
      fail(std::string(chiral_status_name(st)) + ": " + chiral_last_error());
      out.reports.emplace_back();
      chiral_model_free(model);
      continue;
    }
    std::string text = chiral_report_json(rep);
    out.reports.push_back(text);
    json j = json::parse(text);
    if (!chiral_report_passed(rep)) {
      for (const auto& ch : j.at("checks"))
        if (ch.at("status") != "pass") {
          fail("check \"" + ch.at("name").get<std::string>() + "\" failed: " + ch.value("witness", std::string()));
          break;
        }
    }
    for (const auto& name : r.required) {
      bool found = false;
      for (const auto& ch : j.at("checks"))
        if (ch.at("name") == name) found = ch.at("status") == "pass" && ch.at("checked").get<long>() > 0;
      if (!found) fail("required check \"" + name + "\" missing, empty or failing");
    }
    if (r.extra) {
      std::string msg = r.extra(j);
      if (!msg.empty()) fail(msg);
    }
    chiral_report_free(rep);
    chiral_model_free(model);
  }
  return out;
}

const json* table(const json& j, const std::string& name) {
  for (const auto& t : j.at("tables"))
    if (t.at("name") == name) return &t;
  return nullptr;
}

// Blockwise K at weight 0, degree 0 and zero elsewhere, up to the given weight.
std::string acyclic(const json& j, int max_weight) {
  const json* t = table(j, "W'");
  if (!t) return "table W' missing";
  int top = -1;
  for (const auto& e : t->at("entries")) {
    int w = e.at("weight"), d = e.at("degree");
    long dim = e.at("dimension");
    top = std::max(top, w);
    if (dim != (w == 0 && d == 0 ? 1 : 0))
      return "W' block (" + std::to_string(w) + ", " + std::to_string(d) + ") has dimension " + std::to_string(dim);
  }
  if (top != max_weight) return "W' table stops at weight " + std::to_string(top);
  return {};
}

std::vector<Criterion> criteria() {
  const std::vector<std::string> free_checks{"supercommutator table", "mode relations on states",
                                             "super-Jacobi on sampled triples"};
  const std::vector<std::string> gamma_checks{"[beta, f] = (d f / d x)", "[gamma, f] = 0", "[f, g] = 0",
                                              "derivative relation", "(fg)(z) = :f(z)g(z):", "1(z) = id"};
  const std::vector<std::string> weil_checks{"d^2 = 0", "d on c", "d on gamma", "Theta-c operator product",
                                             "Theta-c mode commutators", "Theta brackets"};
  const std::vector<std::string> algebroid_checks{"D^2 = 0", "weight 0 matches the classical complex",
                                                  "Cartan relation [L, iota] = iota_[X,Y]",
                                                  "Cartan relation [L, L] = L_[X,Y]",
                                                  "Cartan relation [D, L + iota] = L"};
  const std::vector<std::string> wstar_common{"hypothesis [c, [d, c]] = 0", "hypothesis and axiom (3): iota-c pairing",
                                              "hypothesis [iota, gamma] = 0",
                                              "axiom (1): d-compatibility on <c, gamma>",
                                              "axiom (2): coadjoint action on c"};
  auto with = [](std::vector<std::string> v, const std::string& extra) {
    v.push_back(extra);
    return v;
  };
  const std::vector<std::string> cartan_checks{"phi inverse", "conjugation of d", "conjugation of L",
                                               "conjugation of iota"};
  const std::vector<std::string> atlas_checks{"transition data cocycle", "theta_{ll} = id",
                                              "theta_{lm} theta_{mn} = theta_{ln}", "D intertwines on generators",
                                              "D intertwines on window states", "global sections match the chart"};

  std::vector<Criterion> out;
  out.push_back({1, "free-field relations", 10,
                 {{"weil_line.json", true, "free-fields", 2, 0, free_checks, {}},
                  {"weil_affine.json", true, "free-fields", 2, 0, free_checks, {}},
                  {"plane_tangent.json", true, "free-fields", 2, 2, free_checks, {}}}});
  out.push_back({2, "coefficient field suite", 120,
                 {{"euler.json", true, "gamma", 3, 4, gamma_checks, {}},
                  {"plane_tangent.json", true, "gamma", 3, 4, gamma_checks, {}}}});
  out.push_back({3, "Weil suite", 120,
                 {{"weil_line.json", true, "weil", 3, 0, weil_checks, {}},
                  {"weil_affine.json", true, "weil", 3, 0, weil_checks, {}}}});
  out.push_back({4, "acyclicity of the c-gamma subalgebra", 60,
                 {{"weil_line.json", false, "chiral", 3, 0, {"W' is acyclic"}, [](const json& j) { return acyclic(j, 3); }},
                  {"weil_affine.json", false, "chiral", 3, 0, {"W' is acyclic"},
                   [](const json& j) { return acyclic(j, 3); }}}});
  out.push_back({5, "algebroid suite", 300,
                 {{"euler.json", true, "algebroid", 2, 3, algebroid_checks, {}},
                  {"affine_line.json", true, "algebroid", 2, 3, algebroid_checks, {}}}});
  out.push_back({6, "W*-module construction", 120,
                 {{"euler.json", true, "wstar", 2, 2, with(wstar_common, "gamma action vanishes"), {}},
                  {"affine_line.json", true, "wstar", 2, 2, with(wstar_common, "gamma action vanishes"), {}},
                  {"weil_affine.json", true, "wstar", 2, 0, with(wstar_common, "reconstructed gamma equals native gamma"),
                   {}}}});
  out.push_back({7, "Cartan-model conjugation formulas", 300,
                 {{"weil_line.json", true, "cartan", 2, 0, cartan_checks, {}},
                  {"weil_affine.json", true, "cartan", 2, 0, cartan_checks, {}},
                  {"euler.json", true, "cartan", 2, 2, cartan_checks, {}},
                  {"affine_line.json", true, "cartan", 2, 2, cartan_checks, {}}}});
  out.push_back({8, "abelian basic versus equivariant cohomology", 600,
                 {{"euler.json", false, "equivariant", 1, 2,
                   {"H_bas equals H_G", "H^0_bas equals the loop-algebra invariants", "H_bas vanishes in positive degree"},
                   [](const json& j) -> std::string {
                     if (!table(j, "H_G") || !table(j, "H_bas")) return "H_G or H_bas table missing";
                     return {};
                   }}}});
  out.push_back({9, "gluing on a three-chart atlas", 120,
                 {{"euler_atlas.json", true, "atlas", 1, 2, atlas_checks, {}}}});
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  bool all = true;
  std::vector<std::vector<std::string>> first_reports;
  for (const Criterion& c : criteria()) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = execute(c, 1);
    double secs = seconds_since(t0);
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.why = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s";
    }
    std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", c.number, o.ok ? "PASS" : "FAIL", c.title.c_str(), secs,
                o.ok ? "" : " -- ", o.why.c_str());
    std::fflush(stdout);
    all = all && o.ok;
    first_reports.push_back(o.reports);
  }

  auto t0 = std::chrono::steady_clock::now();
  bool same = true;
  std::string diff;
  std::size_t i = 0;
  for (const Criterion& c : criteria()) {
    Outcome o = execute(c, 8);
    for (std::size_t k = 0; k < o.reports.size(); ++k)
      if (k >= first_reports[i].size() || o.reports[k] != first_reports[i][k] || o.reports[k].empty()) {
        if (same) diff = "criterion " + std::to_string(c.number) + ", " + run_label(c.runs[k]);
        same = false;
      }
    ++i;
  }
  std::printf("criterion 10: %s  reports identical under 1 and 8 jobs (%.2f s)%s%s\n", same ? "PASS" : "FAIL",
              seconds_since(t0), same ? "" : " -- differs: ", diff.c_str());
  all = all && same;
  return all ? 0 : 1;
}
