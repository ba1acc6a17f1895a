#include "chiral/chiral.h"

#include <exception>
#include <string>

#include "chiral/driver.hpp"
#include "chiral/error.hpp"

struct chiral_model {
  chiral::ModelFile file;
  std::string kind;
};

struct chiral_report {
  chiral::RunResult result;
};

namespace {

thread_local std::string last_error;

chiral_status fail(chiral_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <typename Fn>
chiral_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return CHIRAL_OK;
  } catch (const chiral::InputError& e) {
    return fail(CHIRAL_ERR_INPUT, e.what());
  } catch (const chiral::ValidationError& e) {
    return fail(CHIRAL_ERR_VALIDATION, e.what());
  } catch (const chiral::CapOverflow& e) {
    return fail(CHIRAL_ERR_CAP, e.what());
  } catch (const chiral::ModelMismatch& e) {
    return fail(CHIRAL_ERR_MISMATCH, e.what());
  } catch (const std::exception& e) {
    return fail(CHIRAL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CHIRAL_ERR_INTERNAL, "unknown error");
  }
}

chiral::RunOptions to_options(const chiral_options* o) {
  chiral::RunOptions r;
  r.max_weight = o->max_weight;
  r.max_poly_degree = o->max_poly_degree;
  r.jobs = o->jobs;
  if (o->has_min_degree) r.min_degree = o->min_degree;
  if (o->has_max_degree) r.max_degree = o->max_degree;
  return r;
}

}  // namespace

extern "C" {

void chiral_options_init(chiral_options* opt) {
  if (!opt) return;
  *opt = chiral_options{-1, -1, 1, 0, 0, 0, 0};
}

chiral_status chiral_model_load(const char* path, chiral_model** out) {
  if (!path || !out) return fail(CHIRAL_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto m = new chiral_model{chiral::load_model_file(path), {}};
    m->kind = chiral::kind_name(m->file.kind);
    *out = m;
  });
}

chiral_status chiral_model_parse(const char* json_text, chiral_model** out) {
  if (!json_text || !out) return fail(CHIRAL_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto m = new chiral_model{chiral::parse_model_file(json_text), {}};
    m->kind = chiral::kind_name(m->file.kind);
    *out = m;
  });
}

void chiral_model_free(chiral_model* model) { delete model; }

const char* chiral_model_kind(const chiral_model* model) { return model ? model->kind.c_str() : ""; }

chiral_status chiral_verify(const chiral_model* model, const char* suite, const chiral_options* opt,
                            chiral_report** out) {
  if (!model || !suite || !opt || !out) return fail(CHIRAL_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new chiral_report{chiral::run_verify(model->file, suite, to_options(opt))}; });
}

chiral_status chiral_cohomology(const chiral_model* model, const char* target, const chiral_options* opt,
                                chiral_report** out) {
  if (!model || !target || !opt || !out) return fail(CHIRAL_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new chiral_report{chiral::run_cohomology(model->file, target, to_options(opt))}; });
}

int chiral_report_passed(const chiral_report* report) { return report && report->result.report.passed() ? 1 : 0; }

int chiral_report_check_count(const chiral_report* report) {
  return report ? static_cast<int>(report->result.report.checks.size()) : 0;
}

const char* chiral_report_json(const chiral_report* report) { return report ? report->result.json.c_str() : ""; }

double chiral_report_seconds(const chiral_report* report) { return report ? report->result.seconds : 0.0; }

void chiral_report_free(chiral_report* report) { delete report; }

const char* chiral_last_error(void) { return last_error.c_str(); }

const char* chiral_status_name(chiral_status status) {
  switch (status) {
    case CHIRAL_OK: return "ok";
    case CHIRAL_ERR_ARGUMENT: return "argument error";
    case CHIRAL_ERR_INPUT: return "input error";
    case CHIRAL_ERR_VALIDATION: return "validation error";
    case CHIRAL_ERR_CAP: return "cap overflow";
    case CHIRAL_ERR_MISMATCH: return "model mismatch";
    case CHIRAL_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

}  // extern "C"
