#include <doctest.h>

#include "chiral/equivariant.hpp"
#include "chiral/linalg.hpp"
#include "chiral/verify.hpp"

using namespace chiral;

namespace {

LieData affine_plane() { return LieData::from_entries(2, {{0, 1, 1, Scalar(1)}}); }

bool all_pass(const Report& r) {
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << c.witness);
    CHECK(c.passed);
  }
  return r.passed();
}

bool has_species(const Model& model, const BasisKey& k, int species) {
  for (const Mode& m : k.word)
    if (m.species == species) return true;
  (void)model;
  return false;
}

}  // namespace

TEST_CASE("Weil differential on generators, abelian case") {
  auto wm = make_weil_model(LieData::abelian(1), Caps{6, 0});
  const WeilSystem& w = *wm.weil;
  CHECK(w.d()(w.c_state(0)) == w.gamma_state(0));
  CHECK(w.d()(w.gamma_state(0)).is_zero());
  CHECK(w.d()(State::vacuum(*wm.model)).is_zero());
  CHECK(w.d()(w.d()(w.b_state(0))).is_zero());
}

TEST_CASE("Weil differential squares to zero, nonabelian case") {
  auto wm = make_weil_model(affine_plane(), Caps{8, 0});
  const WeilSystem& w = *wm.weil;
  OpExpr d = w.d();
  for (const State& s : window_states(*wm.model, w.full_sector(), 2, -2, 2, 0)) {
    CHECK(d(d(s)).is_zero());
    State ds = d(s);
    if (!ds.is_zero()) {
      CHECK(grade_of(ds).weight == grade_of(s).weight);
      CHECK(grade_of(ds).degree == grade_of(s).degree + 1);
    }
  }
}

TEST_CASE("Weil suite passes on a two-dimensional algebra") {
  auto wm = make_weil_model(affine_plane(), Caps{6, 0});
  SuiteOptions opt;
  opt.max_weight = 2;
  opt.min_degree = -1;
  opt.max_degree = 2;
  CHECK(all_pass(verify_weil(*wm.weil, opt)));
}

TEST_CASE("the c-gamma subalgebra is acyclic") {
  auto wm = make_weil_model(affine_plane(), Caps{6, 0});
  SuiteOptions opt;
  opt.max_weight = 2;
  opt.max_degree = 4;
  Report r = verify_wprime_acyclicity(*wm.weil, opt);
  CHECK(all_pass(r));
  REQUIRE(r.tables.size() == 1);
  for (const auto& e : r.tables[0].entries)
    CHECK(e.dimension == (e.key.weight == 0 && e.key.degree == 0 ? 1u : 0u));
}

TEST_CASE("commutant subspaces") {
  auto wm = make_weil_model(LieData::abelian(2), Caps{6, 0});
  const Model& model = *wm.model;
  const WeilSystem& w = *wm.weil;
  Sector full = w.full_sector();

  SUBCASE("no operators gives the whole block") {
    for (int deg = 0; deg <= 3; ++deg) {
      BlockKey key{1, deg, 0};
      CHECK(commutant_subspace({}, model, full, key).size() ==
            enumerate_block(model, full, 1, deg, 0, 0).size());
    }
  }
  SUBCASE("contractions at weight 0 leave the c-free monomials") {
    std::vector<OpExpr> ops;
    for (int a = 0; a < 2; ++a)
      for (int n = 0; n <= 2; ++n) ops.push_back(w.contraction(a, n));
    for (int deg = 0; deg <= 4; ++deg) {
      auto block = enumerate_block(model, full, 0, deg, 0, 0);
      std::size_t c_free = 0;
      for (const auto& k : block) c_free += has_species(model, k, w.species().c) ? 0 : 1;
      auto kernel = commutant_subspace(ops, model, full, BlockKey{0, deg, 0});
      CHECK(kernel.size() == c_free);
      for (const State& v : kernel)
        for (const auto& [word, p] : v.terms()) CHECK_FALSE(has_species(model, BasisKey{word, {}}, w.species().c));
    }
  }
}

TEST_CASE("beta zero modes on coefficients: only constants commute") {
  auto gm = make_gamma_chiral_model(1, 0, Caps{4, 4});
  Sector sector{{gm.gamma.beta, gm.gamma.gamma}, true, "gamma"};
  std::vector<OpExpr> ops;
  for (int k = 0; k <= 2; ++k) ops.push_back(mode_op(*gm.model, Mode{static_cast<std::int16_t>(gm.gamma.beta), 0, k}));
  std::size_t total = 0;
  for (int p = 0; p <= 2; ++p) {
    auto kernel = commutant_subspace(ops, *gm.model, sector, BlockKey{0, 0, p});
    total += kernel.size();
    if (p == 0) CHECK(kernel.size() == 1);
  }
  CHECK(total == 1);
}

TEST_CASE("Phi moves the B-copy of c onto both copies") {
  EquivariantSetup s = make_weil_weil_setup(LieData::abelian(1), Caps{6, 0});
  State bc = s.weil_b->c_state(0);
  int order = 0;
  State out = apply_phi(s.a_star, s.b, bc, 1, &order);
  CHECK(out == s.weil->c_state(0) + bc);
  CHECK(apply_phi(s.a_star, s.b, out, -1) == bc);
}

TEST_CASE("transformation formulas hold for two Weil copies") {
  EquivariantSetup s = make_weil_weil_setup(affine_plane(), Caps{6, 0});
  SuiteOptions opt;
  opt.max_weight = 1;
  opt.min_degree = -1;
  opt.max_degree = 2;
  opt.max_poly_degree = 0;
  CHECK(all_pass(verify_cartan(s, opt)));
}

TEST_CASE("negative control: dropping the quadratic c term breaks conjugation of d") {
  EquivariantSetup s = make_weil_weil_setup(affine_plane(), Caps{6, 0});
  const WStarCarrier& a = s.a_star;
  const SgtModule& b = s.b;
  const int dim = b.lie.dim();
  OpExpr d0 = a.module.d + b.d;
  auto truncated = [&](const State& v) {
    State r = d0(v);
    const int W = v.max_weight();
    for (int i = 0; i < dim; ++i)
      for (int n = 0; n <= W; ++n) {
        r -= a.gamma(i, -n - 1)(b.contraction(i, n)(v));
        r += a.c(i, -n - 1)(b.lie_derivative(i, n)(v));
      }
    return r;
  };
  auto conj = [&](const State& v) { return apply_phi(a, b, d0(apply_phi(a, b, v, -1)), 1); };
  OpExpr full = conjugated_differential(a, b);
  // The quadratic term only sees states carrying b modes of the first copy.
  Sector both{{}, false, "both copies"};
  for (int i = 0; i < static_cast<int>(s.model->species().size()); ++i) both.species.push_back(i);
  bool any_difference = false;
  for (const State& v : window_states(*s.model, both, 1, -1, 1, 0)) {
    CHECK(conj(v) == full(v));
    if (!(conj(v) == truncated(v))) any_difference = true;
  }
  CHECK(any_difference);
}
