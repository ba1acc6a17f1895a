#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chiral/operator.hpp"

namespace chiral {

// A_(n) B for states of one model, via the normal-ordered product recursion on the
// leading PBW mode of A. Results for basis vectors are memoised in the model.
State nth_product(const State& A, int n, const State& B);

// Operator B |-> A_(n) B, memoised per basis vector.
OpExpr field_mode(const State& A, int n);

// [A_(m), B_(k)] = sum_{i>=0} binom(m, i) (A_(i) B)_(m+k-i), as an operator.
OpExpr borcherds_commutator(const State& A, int m, const State& B, int k);

// How the generating fields of a source algebra act on a module.
struct GeneratorAction {
  // Mode a_(k) of the generator named by (species, index) of the source model; the Mode
  // passed in carries the source level k + shift.
  std::function<State(const Mode&, const State&)> apply;
  // Weight of the module states, used to truncate the recursion.
  std::function<int(const State&)> max_weight;
};

// Y(x, z) on a module, for a source state x with scalar coefficients, built from the
// generator fields by the same recursion as nth_product.
State module_nth_product(const State& x, int n, const State& v, const GeneratorAction& act);

struct GeneratorCheck {
  bool ok = true;
  std::string witness;
};

// D odd with D^2 = 0 on every generator state; the commutator [D, D] = 2 D^2 is a
// derivation, so this controls the whole generated subalgebra.
GeneratorCheck check_square_zero_via_generators(const OpExpr& D, const std::vector<State>& generators);

// phi(D1 g) == D2(phi(g)) for every generator g.
GeneratorCheck check_intertwines_on_generators(const std::function<State(const State&)>& phi,
                                               const OpExpr& D1, const OpExpr& D2,
                                               const std::vector<State>& generators);

}  // namespace chiral
