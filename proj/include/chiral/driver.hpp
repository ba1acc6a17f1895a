#pragma once

#include <optional>
#include <string>

#include "chiral/model_file.hpp"
#include "chiral/report.hpp"

namespace chiral {

struct RunOptions {
  int max_weight = -1;       // mandatory
  int max_poly_degree = -1;  // mandatory
  int jobs = 1;
  std::optional<int> min_degree;  // defaults depend on the suite and are echoed in the report
  std::optional<int> max_degree;
};

struct RunResult {
  Report report;
  std::string json;  // deterministic rendering; timing is kept out of it
  double seconds = 0;
};

// suite: free-fields | gamma | weil | cartan | algebroid | atlas | wstar
RunResult run_verify(const ModelFile& model, const std::string& suite, const RunOptions& opt);
// target: chiral | basic | equivariant | small-cartan
RunResult run_cohomology(const ModelFile& model, const std::string& target, const RunOptions& opt);

}  // namespace chiral
