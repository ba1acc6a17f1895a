#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chiral/chiral.h"

namespace {

struct Args {
  std::string model;
  std::string name;  // suite or target
  int max_weight = -1;
  int max_poly_degree = -1;
  int jobs = 1;
  std::optional<int> min_degree, max_degree;
  std::string out;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("--model", a.model, "model file (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--max-weight", a.max_weight, "weight cap N")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-poly-degree", a.max_poly_degree, "poly-degree cap P")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--jobs", a.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--min-degree", a.min_degree, "lowest cohomological degree swept");
  cmd->add_option("--max-degree", a.max_degree, "highest cohomological degree swept");
  cmd->add_option("--out", a.out, "write the report here instead of stdout");
}

int run(const Args& a, bool verify) {
  chiral_model* model = nullptr;
  chiral_status st = chiral_model_load(a.model.c_str(), &model);
  if (st != CHIRAL_OK) {
    std::cerr << "chiralc: " << chiral_status_name(st) << ": " << chiral_last_error() << "\n";
    return 2;
  }
  chiral_options opt;
  chiral_options_init(&opt);
  opt.max_weight = a.max_weight;
  opt.max_poly_degree = a.max_poly_degree;
  opt.jobs = a.jobs;
  if (a.min_degree) {
    opt.has_min_degree = 1;
    opt.min_degree = *a.min_degree;
  }
  if (a.max_degree) {
    opt.has_max_degree = 1;
    opt.max_degree = *a.max_degree;
  }
  chiral_report* rep = nullptr;
  st = verify ? chiral_verify(model, a.name.c_str(), &opt, &rep) : chiral_cohomology(model, a.name.c_str(), &opt, &rep);
  chiral_model_free(model);
  if (st != CHIRAL_OK) {
    std::cerr << "chiralc: " << chiral_status_name(st) << ": " << chiral_last_error() << "\n";
    return 2;
  }
  if (a.out.empty()) {
    std::cout << chiral_report_json(rep);
  } else {
    std::ofstream f(a.out);
    if (!f) {
      std::cerr << "chiralc: cannot write " << a.out << "\n";
      chiral_report_free(rep);
      return 2;
    }
    f << chiral_report_json(rep);
  }
  int passed = chiral_report_passed(rep);
  std::fprintf(stderr, "%s %s: %d checks, %s, %.2f s\n", verify ? "verify" : "cohomology", a.name.c_str(),
               chiral_report_check_count(rep), passed ? "all pass" : "FAILURES", chiral_report_seconds(rep));
  chiral_report_free(rep);
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiralc: checks and cohomology tables for chiral Lie algebroid models"};
  app.require_subcommand(1);
  Args va, ca;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, va);
  verify->add_option("--suite", va.name, "suite")
      ->required()
      ->check(CLI::IsMember({"free-fields", "gamma", "weil", "cartan", "algebroid", "atlas", "wstar"}));
  auto* coh = app.add_subcommand("cohomology", "compute a cohomology table");
  add_common(coh, ca);
  coh->add_option("--target", ca.name, "target")
      ->required()
      ->check(CLI::IsMember({"chiral", "basic", "equivariant", "small-cartan"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*verify) return run(va, true);
  return run(ca, false);
}
