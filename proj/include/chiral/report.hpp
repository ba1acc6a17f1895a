#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chiral/complex.hpp"

namespace chiral {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;  // number of (state, case) evaluations
  std::string witness;      // first counterexample, empty on success
  std::string block;        // block key of the witness state
  std::string note;
};

struct CohomologyTable {
  std::string name;
  std::vector<CohomologyEntry> entries;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<CohomologyTable> tables;
  std::vector<std::string> notes;
  bool passed() const;
  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void add(std::vector<CheckResult> rs);
};

// One operator identity lhs == rhs to be tested on a list of states.
struct OperatorCase {
  std::string label;
  std::function<State(const State&)> lhs;
  std::function<State(const State&)> rhs;
};

// Evaluates every case on every state; the reported witness is the first failure in
// (state, case) order regardless of the number of jobs.
CheckResult check_cases(const std::string& name, const std::vector<State>& states,
                        const std::vector<OperatorCase>& cases, int jobs = 1);

// Same, with a free-form predicate returning an empty string on success.
CheckResult check_states(const std::string& name, const std::vector<State>& states,
                         const std::function<std::string(const State&)>& pred, int jobs = 1);

CheckResult make_check(const std::string& name, bool ok, const std::string& witness = {},
                       std::size_t checked = 1);

std::string block_str(const State& s);

// Basis states of a sector in a truncation window, as states.
std::vector<State> window_states(const Model& model, const Sector& sector, int max_weight, int min_degree,
                                 int max_degree, int max_poly_degree);

}  // namespace chiral
