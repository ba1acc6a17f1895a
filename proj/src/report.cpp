#include "chiral/report.hpp"

#include <limits>

#include "chiral/error.hpp"
#include "chiral/parallel.hpp"

namespace chiral {

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void Report::add(std::vector<CheckResult> rs) {
  for (auto& r : rs) checks.push_back(std::move(r));
}

std::string block_str(const State& s) {
  if (s.is_zero()) return "zero";
  try {
    Grade g = grade_of(s);
    return "(w=" + std::to_string(g.weight) + ", deg=" + std::to_string(g.degree) +
           ", pd=" + std::to_string(g.poly_degree) + ")";
  } catch (const Error&) {
    return "inhomogeneous";
  }
}

CheckResult check_states(const std::string& name, const std::vector<State>& states,
                         const std::function<std::string(const State&)>& pred, int jobs) {
  std::vector<std::string> fails(states.size());
  parallel_for(states.size(), jobs, [&](std::size_t i) { fails[i] = pred(states[i]); });
  CheckResult r;
  r.name = name;
  r.checked = states.size();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (fails[i].empty()) continue;
    r.passed = false;
    r.witness = fails[i];
    r.block = block_str(states[i]);
    break;
  }
  return r;
}

CheckResult check_cases(const std::string& name, const std::vector<State>& states,
                        const std::vector<OperatorCase>& cases, int jobs) {
  CheckResult r = check_states(
      name, states,
      [&](const State& s) -> std::string {
        for (const auto& c : cases) {
          State a = c.lhs(s);
          State b = c.rhs(s);
          if (!(a == b)) {
            State diff = a - b;
            return c.label + " on " + s.str() + ": difference " + diff.str();
          }
        }
        return {};
      },
      jobs);
  r.checked = states.size() * cases.size();
  return r;
}

CheckResult make_check(const std::string& name, bool ok, const std::string& witness, std::size_t checked) {
  CheckResult r;
  r.name = name;
  r.passed = ok;
  r.checked = checked;
  if (!ok) r.witness = witness;
  return r;
}

std::vector<State> window_states(const Model& model, const Sector& sector, int max_weight, int min_degree,
                                 int max_degree, int max_poly_degree) {
  std::vector<State> out;
  for (const auto& k : enumerate_range(model, sector, max_weight, min_degree, max_degree, max_poly_degree))
    out.push_back(State::basis(model, k));
  return out;
}

}  // namespace chiral
