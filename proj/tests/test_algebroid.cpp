#include <doctest.h>

#include "chiral/classical.hpp"
#include "chiral/error.hpp"
#include "chiral/verify.hpp"

using namespace chiral;

namespace {

AlgebroidData euler() {
  return AlgebroidData::transformation(LieData::abelian(1), {{Polynomial::parse("x", 1)}}, 1);
}

LieData affine_plane() { return LieData::from_entries(2, {{0, 1, 1, Scalar(1)}}); }

AlgebroidData affine_line() {
  return AlgebroidData::transformation(affine_plane(), {{Polynomial::parse("-x", 1)}, {Polynomial::parse("1", 1)}}, 1);
}

ClassicalForm form(int degree, std::map<std::vector<int>, Polynomial> values) { return {degree, std::move(values)}; }

}  // namespace

TEST_CASE("anchors that are not bracket morphisms are rejected") {
  // [x d, d] = -d, while the bracket [e1, e2] = e2 asks for +d.
  CHECK_THROWS_AS(AlgebroidData::transformation(affine_plane(), {{Polynomial::parse("x", 1)}, {Polynomial::parse("1", 1)}}, 1)
                      .validate(),
                  ValidationError);
  CHECK_NOTHROW(affine_line().validate());
  CHECK(euler().preserves_poly_degree());
  CHECK_FALSE(affine_line().preserves_poly_degree());
}

TEST_CASE("classical differential by hand") {
  AlgebroidData e = euler();
  // d(x^2)(e1) = x * 2x
  ClassicalForm df = classical_lie_algebroid_differential(e, form(0, {{{}, Polynomial::parse("x^2", 1)}}));
  CHECK(df.values.at({0}) == Polynomial::parse("2*x^2", 1));

  // For the dual of e2: d(e2*)(e1, e2) = -e2*([e1, e2]) = -1.
  AlgebroidData a = affine_line();
  ClassicalForm w = form(1, {{{1}, Polynomial::constant(1, Scalar(1))}});
  ClassicalForm dw = classical_lie_algebroid_differential(a, w);
  CHECK(evaluate_form(a, dw, {a.basis_section(0), a.basis_section(1)}) == Polynomial::constant(1, Scalar(-1)));
}

TEST_CASE("property: classical Cartan formula and d^2 = 0") {
  AlgebroidData a = affine_line();
  std::vector<ClassicalForm> forms{form(0, {{{}, Polynomial::parse("x^3 - x", 1)}}),
                                   form(1, {{{0}, Polynomial::parse("x", 1)}, {{1}, Polynomial::parse("x^2 + 1", 1)}}),
                                   form(2, {{{0, 1}, Polynomial::parse("2*x", 1)}})};
  Section xe1{Polynomial::parse("x", 1), Polynomial(1)};
  for (const auto& w : forms) {
    ClassicalForm dd = classical_lie_algebroid_differential(a, classical_lie_algebroid_differential(a, w));
    for (const auto& [k, v] : dd.values) CHECK(v.is_zero());
    for (const Section& X : {a.basis_section(0), a.basis_section(1), xe1}) {
      ClassicalForm L = classical_lie_derivative(a, X, w);
      ClassicalForm cartan = classical_contraction(a, X, classical_lie_algebroid_differential(a, w));
      if (w.degree > 0) {
        ClassicalForm di = classical_lie_algebroid_differential(a, classical_contraction(a, X, w));
        for (const auto& [k, v] : di.values) {
          auto it = cartan.values.try_emplace(k, Polynomial(1)).first;
          it->second += v;
        }
      }
      for (auto& [k, v] : L.values)
        CHECK(v == (cartan.values.count(k) ? cartan.values.at(k) : Polynomial(1)));
    }
  }
}

TEST_CASE("chiral differential at weight 0 reproduces the classical one") {
  for (const AlgebroidData& data : {euler(), affine_line()}) {
    AlgebroidModel am = make_algebroid_model(data, Caps{6, 8});
    const AlgebroidSystem& sys = *am.algebroid;
    ClassicalForm f = form(0, {{{}, Polynomial::parse("x^2 - 3", 1)}});
    CHECK(state_to_form(sys, sys.d()(form_to_state(sys, f)), 1) == classical_lie_algebroid_differential(data, f));
  }
}

TEST_CASE("algebroid suite passes on the Euler and affine examples") {
  SuiteOptions opt;
  opt.max_weight = 1;
  opt.max_poly_degree = 2;
  opt.min_degree = 0;
  opt.max_degree = 2;
  for (const AlgebroidData& data : {euler(), affine_line()}) {
    AlgebroidModel am = make_algebroid_model(data, Caps{5, 10});
    Report r = verify_algebroid(*am.algebroid, sample_sections(data), opt);
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.witness);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("D squares to zero on the gamma-c sector but not on b") {
  AlgebroidModel am = make_algebroid_model(euler(), Caps{6, 8});
  const AlgebroidSystem& sys = *am.algebroid;
  OpExpr D = sys.d();
  for (const State& s : window_states(*am.model, sys.gc_sector(), 2, 0, 2, 2)) CHECK(D(D(s)).is_zero());
  // On b the square is the Euler term: D^2 b_{-1} = -c_{-1}.
  State b = sys.b_state(0);
  State expect(*am.model);
  expect.add(Word{sys.c(0, -1)}, Polynomial::constant(1, Scalar(-1)));
  CHECK(D(D(b)) == expect);
}
