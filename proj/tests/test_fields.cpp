#include <doctest.h>

#include <random>

#include "chiral/error.hpp"
#include "chiral/gamma_chiral.hpp"
#include "chiral/ope.hpp"
#include "chiral/report.hpp"
#include "chiral/weil.hpp"

using namespace chiral;

namespace {

LieData affine_plane() { return LieData::from_entries(2, {{0, 1, 1, Scalar(1)}}); }

// Expected bracket of two modes, written out kind by kind.
Scalar expected_bracket(FieldKind ka, FieldKind kb, bool partners, int la, int lb) {
  if (!partners || la + lb != 0) return Scalar(0);
  if (ka == FieldKind::Beta && kb == FieldKind::Gamma) return Scalar(1);
  if (ka == FieldKind::Gamma && kb == FieldKind::Beta) return Scalar(-1);
  if ((ka == FieldKind::B && kb == FieldKind::C) || (ka == FieldKind::C && kb == FieldKind::B)) return Scalar(1);
  return Scalar(0);
}

std::vector<Mode> all_modes(const Model& model, int max_level) {
  std::vector<Mode> out;
  for (int s = 0; s < static_cast<int>(model.species().size()); ++s)
    for (int i = 0; i < model.species(s).rank; ++i)
      for (int l = -max_level; l <= max_level; ++l) out.push_back({static_cast<std::int16_t>(s), static_cast<std::int16_t>(i), l});
  return out;
}

bool parity(const State& s) { return grade_of(s).degree % 2 != 0; }

}  // namespace

TEST_CASE("supercommutator table of the free fields") {
  auto wm = make_weil_model(LieData::abelian(2), Caps{8, 8});
  const Model& model = *wm.model;
  for (const Mode& a : all_modes(model, 2))
    for (const Mode& b : all_modes(model, 2)) {
      const Species& sa = model.species(a.species);
      const Species& sb = model.species(b.species);
      bool partners = sa.partner == b.species && a.index == b.index;
      CHECK(mode_supercommutator(model, a, b) == expected_bracket(sa.kind, sb.kind, partners, a.level, b.level));
    }
}

TEST_CASE("mode parity and vacuum annihilation") {
  auto wm = make_weil_model(LieData::abelian(1), Caps{6, 6});
  const WeilSystem& w = *wm.weil;
  State vac = State::vacuum(*wm.model);
  for (int n = 0; n <= 3; ++n) {
    CHECK(apply_mode(w.beta(0, n), vac).is_zero());
    CHECK(apply_mode(w.b(0, n), vac).is_zero());
    CHECK(apply_mode(w.gamma(0, n + 1), vac).is_zero());
    CHECK(apply_mode(w.c(0, n + 1), vac).is_zero());
  }
  CHECK_FALSE(apply_mode(w.c(0, 0), vac).is_zero());
  // Odd modes square to zero.
  CHECK(apply_mode(w.c(0, -1), apply_mode(w.c(0, -1), vac)).is_zero());
  CHECK(wm.model->is_odd(w.b(0, 2)));
  CHECK_FALSE(wm.model->is_odd(w.gamma(0, 2)));
}

TEST_CASE("property: mode actions realise the supercommutator on states") {
  auto wm = make_weil_model(affine_plane(), Caps{8, 8});
  const Model& model = *wm.model;
  auto states = window_states(model, wm.weil->full_sector(), 2, -2, 2, 0);
  auto modes = all_modes(model, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick_mode(0, modes.size() - 1), pick_state(0, states.size() - 1);
  for (int trial = 0; trial < 400; ++trial) {
    const Mode& a = modes[pick_mode(rng)];
    const Mode& b = modes[pick_mode(rng)];
    const State& s = states[pick_state(rng)];
    Scalar sign = model.is_odd(a) && model.is_odd(b) ? Scalar(-1) : Scalar(1);
    State lhs = apply_mode(a, apply_mode(b, s)) - sign * apply_mode(b, apply_mode(a, s));
    CHECK(lhs == mode_supercommutator(model, a, b) * s);
  }
}

TEST_CASE("coefficient field modes on the vacuum") {
  auto gm = make_gamma_chiral_model(1, 0, Caps{6, 6});
  const Model& model = *gm.model;
  State vac = State::vacuum(model);
  Polynomial x2 = Polynomial::parse("x^2", 1);
  CHECK(f_mode_action(x2, -1, vac) == State::coefficient(model, x2));
  CHECK(f_mode_action(Polynomial::constant(1, Scalar(1)), -3, vac).is_zero());
  CHECK(f_mode_action(Polynomial::constant(1, Scalar(1)), -1, vac) == vac);

  // x_(-2)|0> = dx/dz = gamma at level -1.
  State expect(model);
  expect.add(Word{Mode{static_cast<std::int16_t>(gm.gamma.gamma), 0, -1}}, Polynomial::constant(1, Scalar(1)));
  CHECK(f_mode_action(Polynomial::variable(1, 0), -2, vac) == expect);
  // Non-negative modes annihilate the vacuum.
  for (int k = 0; k <= 2; ++k) CHECK(f_mode_action(x2, k, vac).is_zero());
}

TEST_CASE("property: translation covariance of coefficient fields") {
  auto gm = make_gamma_chiral_model(2, 0, Caps{6, 8});
  const Model& model = *gm.model;
  Sector sector{{gm.gamma.beta, gm.gamma.gamma}, true, "gamma"};
  auto states = window_states(model, sector, 2, 0, 0, 2);
  Polynomial f = Polynomial::parse("x*y + 2*x^2 - 1", 2);
  OpExpr T = translation_op();
  for (int k = -3; k <= 1; ++k) {
    OpExpr lhs = supercommutator(T, f_mode_op(f, k));
    OpExpr rhs = Scalar(-k) * f_mode_op(f, k - 1);
    for (const State& s : states) CHECK(lhs(s) == rhs(s));
  }
  CHECK(translation_operator(State::vacuum(model)).is_zero());
}

TEST_CASE("property: Borcherds commutator formula against composition") {
  auto wm = make_weil_model(affine_plane(), Caps{8, 8});
  const Model& model = *wm.model;
  const WeilSystem& w = *wm.weil;
  std::vector<State> fields{w.beta_state(0), w.gamma_state(1), w.b_state(1), w.c_state(0),
                            apply_mode(w.c(1, -1), w.gamma_state(0)), w.theta_state(1)};
  auto states = window_states(model, w.full_sector(), 1, -1, 2, 0);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pf(0, fields.size() - 1);
  std::uniform_int_distribution<int> pm(-1, 2);
  for (int trial = 0; trial < 25; ++trial) {
    const State& A = fields[pf(rng)];
    const State& B = fields[pf(rng)];
    int m = pm(rng), k = pm(rng);
    OpExpr direct = supercommutator(field_mode(A, m), field_mode(B, k));
    OpExpr formula = borcherds_commutator(A, m, B, k);
    for (const State& s : states) CHECK(direct(s) == formula(s));
  }
}

TEST_CASE("property: n-th products respect weight and the differential is a derivation") {
  auto wm = make_weil_model(affine_plane(), Caps{8, 8});
  const WeilSystem& w = *wm.weil;
  std::vector<State> fields{w.beta_state(1), w.gamma_state(0), w.b_state(0), w.c_state(1), w.theta_state(0)};
  OpExpr d = w.d();
  for (const State& A : fields)
    for (const State& B : fields)
      for (int n = -2; n <= 2; ++n) {
        State p = nth_product(A, n, B);
        if (!p.is_zero()) CHECK(grade_of(p).weight == grade_of(A).weight + grade_of(B).weight - n - 1);
        Scalar sign = parity(A) ? Scalar(-1) : Scalar(1);
        State lhs = d(p);
        State rhs = nth_product(d(A), n, B) + sign * nth_product(A, n, d(B));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("caps are enforced") {
  auto wm = make_weil_model(LieData::abelian(1), Caps{2, 0});
  const WeilSystem& w = *wm.weil;
  State s = apply_mode(w.beta(0, -2), State::vacuum(*wm.model));
  CHECK_THROWS_AS(enforce_caps(apply_mode(w.beta(0, -1), s)), CapOverflow);
  CHECK_NOTHROW(enforce_caps(s));
}
