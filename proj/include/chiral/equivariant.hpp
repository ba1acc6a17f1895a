#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "chiral/algebroid.hpp"
#include "chiral/complex.hpp"
#include "chiral/report.hpp"
#include "chiral/weil.hpp"

namespace chiral {

// Differential module over the super loop algebra sg[t]: operators L_{a,(n)} (even) and
// iota_{a,(n)} (odd) for basis elements a of g, on a sector of a model.
struct SgtModule {
  const Model* model = nullptr;
  Sector sector;
  LieData lie;
  OpExpr d;
  std::function<OpExpr(int a, int n)> lie_derivative;
  std::function<OpExpr(int a, int n)> contraction;
  bool exact_poly_degree = true;
};

SgtModule weil_module(const WeilSystem& w);
// Algebroid complex on the gamma-c sector; basis element a acts through sections[a].
SgtModule algebroid_module(const AlgebroidSystem& sys, const LieData& lie, const std::vector<Section>& sections);
// Module with the given differential and zero action.
SgtModule trivial_module(const Model& model, const Sector& sector, const LieData& lie, OpExpr d);
// Both modules live on disjoint species of one model; operators add.
SgtModule tensor_module(const SgtModule& a, const SgtModule& b);

// Truncation window shared by sweeps and cohomology tables.
struct Window {
  int max_weight = 0;
  int max_poly_degree = 0;
  int min_degree = 0;
  int max_degree = 0;
};

// Operators annihilated by the basic condition at weight w: all L and iota modes with
// 0 <= n <= w. Higher modes lower the weight below zero.
Carrier horizontal_carrier(const SgtModule& m);
Carrier invariant_carrier(const SgtModule& m);
Carrier basic_carrier(const SgtModule& m);

GradedComplex module_complex(const SgtModule& m, const Carrier& carrier, const Window& w);

// Module with a <c, gamma>-action, field modes c^{j}_(n) and gamma^{j}_(n).
struct WStarCarrier {
  SgtModule module;
  std::function<OpExpr(int j, int n)> c;
  std::function<OpExpr(int j, int n)> gamma;
};

WStarCarrier weil_wstar(const WeilSystem& w);

// phi = sum_i sum_{n>=0} c^i_(-n-1) iota^B_{i,(n)} with the n-sum cut at the state weight.
OpExpr phi_generator(const WStarCarrier& a, const SgtModule& b);
// exp(sign * phi)(s); `order` receives the number of nonzero series terms.
State apply_phi(const WStarCarrier& a, const SgtModule& b, const State& s, int sign = 1, int* order = nullptr);

// Right-hand sides of the conjugation identities.
OpExpr conjugated_differential(const WStarCarrier& a, const SgtModule& b);
OpExpr conjugated_lie_derivative(const WStarCarrier& a, const SgtModule& b, int xi, int n);
OpExpr conjugated_contraction(const WStarCarrier& a, const SgtModule& b, int xi, int n);

std::vector<CheckResult> verify_transformation_formulas(const WStarCarrier& a, const SgtModule& b,
                                                        const std::vector<State>& states, int max_mode,
                                                        int jobs = 1);

// Extension of a <c>-action to <c, gamma> by gamma^j = [d, c^j] + 1/2 sum Gamma^j_{ik} :c^i c^k:.
struct WStarConstruction {
  WStarCarrier carrier;
  std::vector<CheckResult> checks;
};

struct WStarOptions {
  int min_mode = -2;
  int max_mode = 2;
  int jobs = 1;
  bool expect_zero_gamma = false;       // gamma action must vanish identically
  const WeilSystem* native = nullptr;   // compare with the native gamma modes of this factor
};

WStarConstruction construct_wstar_structure(const SgtModule& a, std::function<OpExpr(int j, int n)> c_action,
                                            const std::vector<State>& states, const WStarOptions& opt);

// Operator x_(n) on the module for x in the subalgebra <c, gamma> of a standalone W(g).
State wstar_module_product(const WStarCarrier& a, const WeilSystem& source, const State& x, int n,
                           const State& v);

// Chiral equivariant cohomology: basic cohomology of W(g) (x) B.
std::vector<CohomologyEntry> chiral_equivariant_cohomology(const WeilSystem& w, const SgtModule& b,
                                                           const Window& win, int jobs = 1);
std::vector<CohomologyEntry> basic_cohomology(const SgtModule& b, const Window& win, int jobs = 1);

// <gamma> (x) B_inv with the conjugated differential; requires abelian g.
GradedComplex small_cartan_model(const WeilSystem& w, const SgtModule& b, const Window& win);
// A_bas (x) <c, gamma> with the conjugated differential of the W*-module A against W(g).
GradedComplex cartan_prime_complex(const WStarCarrier& a, const WeilSystem& w, const Window& win);

// Combined models: W(g) with either a second W(g) or the sections of an algebroid.
struct EquivariantSetup {
  ModelPtr model;
  std::shared_ptr<WeilSystem> weil;
  std::shared_ptr<WeilSystem> weil_b;
  std::shared_ptr<AlgebroidSystem> algebroid;
  std::vector<Section> sections;
  SgtModule a, b;
  WStarCarrier a_star;
};

EquivariantSetup make_weil_weil_setup(const LieData& lie, const Caps& caps);
EquivariantSetup make_weil_algebroid_setup(const LieData& lie, const AlgebroidData& data,
                                           const std::vector<Section>& sections, const Caps& caps);

// Loop-algebra action on c-free sections of a transformation algebroid:
// xi_j t^n -> sum_{k>=0} sum_i anchor(i, j)_(n-k-1) beta^i_k.
OpExpr transformation_loop_action(const AlgebroidSystem& sys, int j, int n);

}  // namespace chiral
