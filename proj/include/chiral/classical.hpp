#pragma once

#include <map>
#include <vector>

#include "chiral/algebroid.hpp"

namespace chiral {

// Algebroid n-form stored by its values on increasing frame tuples e_J.
struct ClassicalForm {
  int degree = 0;
  std::map<std::vector<int>, Polynomial> values;
  friend bool operator==(const ClassicalForm&, const ClassicalForm&) = default;
};

// omega(Y_1, ..., Y_n) for arbitrary sections, by multilinear expansion.
Polynomial evaluate_form(const AlgebroidData& a, const ClassicalForm& w, const std::vector<Section>& args);

// Invariant formulas for the algebroid differential, contraction and Lie derivative.
ClassicalForm classical_lie_algebroid_differential(const AlgebroidData& a, const ClassicalForm& w);
ClassicalForm classical_contraction(const AlgebroidData& a, const Section& X, const ClassicalForm& w);
ClassicalForm classical_lie_derivative(const AlgebroidData& a, const Section& X, const ClassicalForm& w);

// Weight-zero identification: omega <-> sum_J omega(e_J) c^{j_1}_0 ... c^{j_n}_0 |0>.
State form_to_state(const AlgebroidSystem& sys, const ClassicalForm& w);
ClassicalForm state_to_form(const AlgebroidSystem& sys, const State& s, int degree);

}  // namespace chiral
