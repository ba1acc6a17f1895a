#include "chiral/verify.hpp"

#include <map>
#include <random>

#include "chiral/classical.hpp"
#include "chiral/error.hpp"
#include "chiral/ope.hpp"

namespace chiral {

namespace {

Mode mk(int s, int i, int level) {
  return Mode{static_cast<std::int16_t>(s), static_cast<std::int16_t>(i), level};
}

Sector all_species(const Model& model) {
  Sector s;
  for (int i = 0; i < static_cast<int>(model.species().size()); ++i) s.species.push_back(i);
  s.coefficients = model.gamma_factor().has_value();
  s.name = "all";
  return s;
}

std::string fmt_k(const char* name, int k) { return std::string(name) + "(" + std::to_string(k) + ")"; }

// Expected [a, b] from the defining relations, written independently of the model code.
Scalar canonical_bracket(const Model& model, const Mode& a, const Mode& b) {
  const Species& sa = model.species(a.species);
  const Species& sb = model.species(b.species);
  if (sa.factor != sb.factor || a.index != b.index || a.level + b.level != 0) return Scalar(0);
  if (sa.kind == FieldKind::Beta && sb.kind == FieldKind::Gamma) return Scalar(1);
  if (sa.kind == FieldKind::Gamma && sb.kind == FieldKind::Beta) return Scalar(-1);
  if ((sa.kind == FieldKind::B && sb.kind == FieldKind::C) || (sa.kind == FieldKind::C && sb.kind == FieldKind::B))
    return Scalar(1);
  return Scalar(0);
}

Polynomial random_polynomial(std::mt19937_64& rng, int nvars, int max_degree, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> var(0, nvars - 1);
  Polynomial p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponents e(nvars, 0);
    int d = deg(rng);
    for (int k = 0; k < d; ++k) e[var(rng)] += 1;
    p += Polynomial::monomial(e, Scalar(coef(rng)));
  }
  return p;
}

OpExpr combination(const std::vector<std::pair<Scalar, OpExpr>>& terms, bool odd) {
  if (terms.empty()) return OpExpr::zero(odd);
  return linear_combination(terms);
}

OpExpr op_of(std::function<State(const State&)> fn, bool odd, std::string name) {
  return OpExpr::function(std::move(fn), odd, std::move(name));
}

}  // namespace

Report verify_free_fields(const Model& model, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "free-fields";
  std::vector<Mode> modes;
  for (int sp = 0; sp < static_cast<int>(model.species().size()); ++sp)
    for (int i = 0; i < model.species(sp).rank; ++i)
      for (int l = -opt.max_level; l <= opt.max_level; ++l) modes.push_back(mk(sp, i, l));

  std::size_t table = 0;
  std::string bad;
  for (const auto& a : modes)
    for (const auto& b : modes) {
      ++table;
      if (bad.empty() && !(mode_supercommutator(model, a, b) == canonical_bracket(model, a, b)))
        bad = "[" + model.mode_name(a) + ", " + model.mode_name(b) + "]";
    }
  rep.add(make_check("supercommutator table", bad.empty(), bad, table));

  auto states = window_states(model, all_species(model), opt.max_weight, opt.min_degree, opt.max_degree,
                              opt.max_poly_degree);
  CheckResult ops = check_states(
      "mode relations on states", states,
      [&](const State& s) -> std::string {
        std::vector<State> img;
        img.reserve(modes.size());
        for (const auto& m : modes) img.push_back(apply_mode(m, s));
        for (std::size_t i = 0; i < modes.size(); ++i)
          for (std::size_t j = 0; j < modes.size(); ++j) {
            const Mode& a = modes[i];
            const Mode& b = modes[j];
            State lhs = apply_mode(a, img[j]);
            State ba = apply_mode(b, img[i]);
            if (model.is_odd(a) && model.is_odd(b))
              lhs += ba;
            else
              lhs -= ba;
            if (!(lhs == canonical_bracket(model, a, b) * s))
              return "[" + model.mode_name(a) + ", " + model.mode_name(b) + "] on " + s.str();
          }
        return {};
      },
      opt.jobs);
  ops.checked = states.size() * modes.size() * modes.size();
  rep.add(ops);

  // Super-Jacobi for composite operators built from one or two modes.
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, modes.size() - 1);
  std::uniform_int_distribution<int> len(1, 2);
  auto sample = [&] {
    OpExpr x = mode_op(model, modes[pick(rng)]);
    if (len(rng) == 2) x = x * mode_op(model, modes[pick(rng)]);
    return x;
  };
  std::vector<OperatorCase> cases;
  for (int t = 0; t < 4 * opt.samples; ++t) {
    OpExpr a = sample(), b = sample(), c = sample();
    OpExpr lhs = supercommutator(a, supercommutator(b, c));
    OpExpr r1 = supercommutator(supercommutator(a, b), c);
    OpExpr r2 = supercommutator(b, supercommutator(a, c));
    OpExpr rhs = (a.odd() && b.odd()) ? r1 - r2 : r1 + r2;
    cases.push_back({"Jacobi for " + a.describe() + ", " + b.describe() + ", " + c.describe(),
                     [lhs](const State& s) { return lhs(s); }, [rhs](const State& s) { return rhs(s); }});
  }
  rep.add(check_cases("super-Jacobi on sampled triples", states, cases, opt.jobs));
  return rep;
}

Report verify_gamma_relations(const GammaChiralModel& gm, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "gamma";
  const Model& model = *gm.model;
  const int m = gm.gamma.m;
  if (m <= 0) throw InputError("the coefficient suite needs at least one even coordinate");
  auto states =
      window_states(model, all_species(model), opt.max_weight, opt.min_degree, opt.max_degree, opt.max_poly_degree);

  std::mt19937_64 rng(opt.seed);
  std::vector<Polynomial> fs, gs;
  for (int t = 0; t < opt.samples; ++t) {
    fs.push_back(random_polynomial(rng, m, 3, 3));
    gs.push_back(random_polynomial(rng, m, 3, 3));
  }
  const std::vector<int> ks = {-2, -1, 0, 1};
  const std::vector<int> ps = {-2, -1, 0, 1, 2};
  auto beta = [&](int i, int p) { return mk(gm.gamma.beta, i, p); };
  auto gamma = [&](int i, int p) { return mk(gm.gamma.gamma, i, p); };

  std::vector<OperatorCase> beta_cases, gamma_cases, fg_cases, deriv_cases, prod_cases, unit_cases, trans_cases,
      ope_cases;
  for (std::size_t t = 0; t < fs.size(); ++t) {
    const Polynomial f = fs[t];
    const Polynomial g = gs[t];
    const std::string fn = "f=" + f.str();
    for (int k : ks) {
      for (int i = 0; i < m; ++i)
        for (int p : ps) {
          Mode bm = beta(i, p), gmode = gamma(i, p);
          Polynomial df = f.partial(i);
          beta_cases.push_back({"[beta_" + std::to_string(p) + ", " + fmt_k("f", k) + "], " + fn,
                                [=](const State& s) {
                                  return apply_mode(bm, f_mode_action(f, k, s)) -
                                         f_mode_action(f, k, apply_mode(bm, s));
                                },
                                [=](const State& s) { return f_mode_action(df, p + k, s); }});
          gamma_cases.push_back({"[gamma_" + std::to_string(p) + ", " + fmt_k("f", k) + "], " + fn,
                                 [=](const State& s) {
                                   return apply_mode(gmode, f_mode_action(f, k, s)) -
                                          f_mode_action(f, k, apply_mode(gmode, s));
                                 },
                                 [&model](const State&) { return State(model); }});
        }
      for (int l : ks)
        fg_cases.push_back({"[" + fmt_k("f", k) + ", " + fmt_k("g", l) + "], " + fn + ", g=" + g.str(),
                            [=](const State& s) {
                              return f_mode_action(f, k, f_mode_action(g, l, s)) -
                                     f_mode_action(g, l, f_mode_action(f, k, s));
                            },
                            [&model](const State&) { return State(model); }});

      // (Tf)_(k) = -k f_(k-1) against the modes of sum_i :(d gamma^i/dz) (d_i f):, with
      // (d gamma/dz)_(p) = -p gamma_(p-1) = -p gamma at level p.
      deriv_cases.push_back(
          {"derivative relation at k=" + std::to_string(k) + ", " + fn,
           [=](const State& s) { return Scalar(-k) * f_mode_action(f, k - 1, s); },
           [=, &model](const State& s) {
             State out(model);
             if (s.is_zero()) return out;
             int W = s.max_weight();
             for (int i = 0; i < m; ++i) {
               Polynomial h = f.partial(i);
               if (h.is_zero()) continue;
               for (int p = k - W; p <= -1; ++p) {
                 State t = apply_mode(gamma(i, p), f_mode_action(h, k - p - 1, s));
                 out += Scalar(-p) * t;
               }
               for (int p = 1; p <= W; ++p) {
                 State t = f_mode_action(h, k - p - 1, apply_mode(gamma(i, p), s));
                 out += Scalar(-p) * t;
               }
             }
             return out;
           }});
      prod_cases.push_back({"(fg)_(" + std::to_string(k) + ") = :fg:, " + fn + ", g=" + g.str(),
                            [=](const State& s) { return f_mode_action(f * g, k, s); },
                            [=, &model](const State& s) {
                              State out(model);
                              if (s.is_zero()) return out;
                              int W = s.max_weight();
                              for (int p = k - W; p <= -1; ++p)
                                out += f_mode_action(f, p, f_mode_action(g, k - p - 1, s));
                              for (int p = 0; p <= W - 1; ++p)
                                out += f_mode_action(g, k - p - 1, f_mode_action(f, p, s));
                              return out;
                            }});
      trans_cases.push_back({"[T, " + fmt_k("f", k) + "], " + fn,
                             [=](const State& s) {
                               return translation_operator(f_mode_action(f, k, s)) -
                                      f_mode_action(f, k, translation_operator(s));
                             },
                             [=](const State& s) { return Scalar(-k) * f_mode_action(f, k - 1, s); }});
      ope_cases.push_back({"n-th product of f against the recursion, k=" + std::to_string(k) + ", " + fn,
                           [=, &model](const State& s) { return nth_product(State::coefficient(model, f), k, s); },
                           [=](const State& s) { return f_mode_action(f, k, s); }});
    }
  }
  Polynomial one = Polynomial::constant(m, Scalar(1));
  for (int k : {-3, -2, -1, 0, 1, 2})
    unit_cases.push_back({"1_(" + std::to_string(k) + ")", [=](const State& s) { return f_mode_action(one, k, s); },
                          [=, &model](const State& s) { return k == -1 ? s : State(model); }});

  rep.add(check_cases("[beta, f] = (d f / d x)", states, beta_cases, opt.jobs));
  rep.add(check_cases("[gamma, f] = 0", states, gamma_cases, opt.jobs));
  rep.add(check_cases("[f, g] = 0", states, fg_cases, opt.jobs));
  rep.add(check_cases("derivative relation", states, deriv_cases, opt.jobs));
  rep.add(check_cases("(fg)(z) = :f(z)g(z):", states, prod_cases, opt.jobs));
  rep.add(check_cases("1(z) = id", states, unit_cases, opt.jobs));
  rep.add(check_cases("translation covariance", states, trans_cases, opt.jobs));
  rep.add(check_cases("n-th products agree with the recursion", states, ope_cases, opt.jobs));

  // Vacuum: f_(k)|0> = 0 for k >= 0 and f_(-1)|0> = f.
  std::string bad;
  State vac = State::vacuum(model);
  for (const auto& f : fs) {
    if (!(f_mode_action(f, -1, vac) == State::coefficient(model, f))) bad = "f_(-1)|0> for f=" + f.str();
    for (int k = 0; k <= 2 && bad.empty(); ++k)
      if (!f_mode_action(f, k, vac).is_zero()) bad = fmt_k("f", k) + "|0> for f=" + f.str();
  }
  rep.add(make_check("vacuum axiom", bad.empty(), bad, fs.size() * 4));
  rep.notes.push_back("random polynomials: seed " + std::to_string(opt.seed) + ", degree <= 3");
  return rep;
}

Report verify_weil(const WeilSystem& w, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "weil";
  const Model& model = w.model();
  const LieData& g = w.lie();
  const int dim = g.dim();
  const int N = opt.max_weight;
  auto states = window_states(model, w.full_sector(), N, opt.min_degree, opt.max_degree, 0);
  OpExpr d = w.d();

  rep.add(check_states(
      "d^2 = 0", states,
      [&](const State& s) -> std::string {
        State dds = d(d(s));
        return dds.is_zero() ? std::string() : "d^2 on " + s.str() + " gives " + dds.str();
      },
      opt.jobs));
  rep.add(check_states(
      "d has weight 0 and degree 1", states,
      [&](const State& s) -> std::string {
        State ds = d(s);
        if (ds.is_zero()) return {};
        Grade a = grade_of(s), b = grade_of(ds);
        if (b.weight == a.weight && b.degree == a.degree + 1) return {};
        return "d on " + s.str() + " lands in " + block_str(ds);
      },
      opt.jobs));
  std::vector<State> gens;
  for (int i = 0; i < dim; ++i) {
    gens.push_back(w.beta_state(i));
    gens.push_back(w.gamma_state(i));
    gens.push_back(w.b_state(i));
    gens.push_back(w.c_state(i));
  }
  auto gc = check_square_zero_via_generators(d, gens);
  rep.add(make_check("d^2 = 0 on generators", gc.ok, gc.witness, gens.size()));

  // Expected images written from the structure constants, independent of J and K.
  State vac = State::vacuum(model);
  std::string bad;
  for (int j = 0; j < dim && bad.empty(); ++j) {
    State want = w.gamma_state(j);
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        Scalar co = g.coadjoint(i, j, k);
        if (co.is_zero()) continue;
        want += (Scalar(-1, 2) * co) * apply_modes({w.c(k, 0), w.c(i, 0)}, vac);
      }
    State got = d(w.c_state(j));
    if (!(got == want)) bad = "d c^" + std::to_string(j + 1) + " = " + got.str() + ", expected " + want.str();
  }
  rep.add(make_check("d on c", bad.empty(), bad, dim));
  bad.clear();
  for (int j = 0; j < dim && bad.empty(); ++j) {
    State want(model);
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        Scalar co = g.coadjoint(i, j, k);
        if (co.is_zero()) continue;
        want += co * apply_modes({w.gamma(k, 0), w.c(i, 0)}, vac);
      }
    State got = d(w.gamma_state(j));
    if (!(got == want)) bad = "d gamma^" + std::to_string(j + 1) + " = " + got.str() + ", expected " + want.str();
  }
  rep.add(make_check("d on gamma", bad.empty(), bad, dim));

  // Theta^a(z) c^j(w) ~ c^{ad*(a) j}(w) / (z - w): products and mode commutators.
  bad.clear();
  for (int a = 0; a < dim && bad.empty(); ++a)
    for (int j = 0; j < dim && bad.empty(); ++j) {
      State want(model);
      for (int i = 0; i < dim; ++i) want += g.coadjoint(a, j, i) * w.c_state(i);
      for (int n = 0; n <= 3 && bad.empty(); ++n) {
        State got = nth_product(w.theta_state(a), n, w.c_state(j));
        State expect = n == 0 ? want : State(model);
        if (!(got == expect)) bad = "Theta^" + std::to_string(a + 1) + "_(" + std::to_string(n) + ") c^" +
                                    std::to_string(j + 1) + " = " + got.str();
      }
    }
  rep.add(make_check("Theta-c operator product", bad.empty(), bad, dim * dim * 4));

  std::vector<OperatorCase> tc, tt, sg;
  for (int a = 0; a < dim; ++a)
    for (int j = 0; j < dim; ++j)
      for (int mm = 0; mm <= N; ++mm)
        for (int n = -N - 1; n <= N - 1; ++n) {
          OpExpr lhs = supercommutator(w.lie_derivative(a, mm), mode_op(model, w.c(j, n + 1)));
          std::vector<std::pair<Scalar, OpExpr>> terms;
          for (int i = 0; i < dim; ++i)
            if (!g.coadjoint(a, j, i).is_zero())
              terms.push_back({g.coadjoint(a, j, i), mode_op(model, w.c(i, mm + n + 1))});
          OpExpr rhs = combination(terms, true);
          tc.push_back({"[Theta^" + std::to_string(a + 1) + "_(" + std::to_string(mm) + "), c^" +
                            std::to_string(j + 1) + "_(" + std::to_string(n) + ")]",
                        [lhs](const State& s) { return lhs(s); }, [rhs](const State& s) { return rhs(s); }});
        }
  rep.add(check_cases("Theta-c mode commutators", states, tc, opt.jobs));

  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int mm = -1; mm <= N; ++mm)
        for (int k = -1; k <= N; ++k) {
          OpExpr lhs = supercommutator(w.lie_derivative(a, mm), w.lie_derivative(b, k));
          std::vector<std::pair<Scalar, OpExpr>> terms;
          for (int c = 0; c < dim; ++c)
            if (!g.bracket(a, b, c).is_zero()) terms.push_back({g.bracket(a, b, c), w.lie_derivative(c, mm + k)});
          OpExpr rhs = combination(terms, false);
          tt.push_back({"[Theta^" + std::to_string(a + 1) + "_(" + std::to_string(mm) + "), Theta^" +
                            std::to_string(b + 1) + "_(" + std::to_string(k) + ")]",
                        [lhs](const State& s) { return lhs(s); }, [rhs](const State& s) { return rhs(s); }});
        }
  rep.add(check_cases("Theta brackets", states, tt, opt.jobs));

  // sg[t]: [Theta_(m), b_(k)] = b_[,](m+k), [b, b] = 0, [d, b_(m)] = Theta_(m), [d, Theta_(m)] = 0.
  for (int a = 0; a < dim; ++a)
    for (int mm = 0; mm <= N; ++mm) {
      OpExpr th = w.lie_derivative(a, mm);
      OpExpr db = supercommutator(d, w.contraction(a, mm));
      sg.push_back({"[d, b^" + std::to_string(a + 1) + "_(" + std::to_string(mm) + ")]",
                    [db](const State& s) { return db(s); }, [th](const State& s) { return th(s); }});
      OpExpr dth = supercommutator(d, th);
      sg.push_back({"[d, Theta^" + std::to_string(a + 1) + "_(" + std::to_string(mm) + ")]",
                    [dth](const State& s) { return dth(s); }, [&model](const State&) { return State(model); }});
      for (int b = 0; b < dim; ++b)
        for (int k = 0; k <= N; ++k) {
          OpExpr lhs = supercommutator(th, w.contraction(b, k));
          std::vector<std::pair<Scalar, OpExpr>> terms;
          for (int c = 0; c < dim; ++c)
            if (!g.bracket(a, b, c).is_zero()) terms.push_back({g.bracket(a, b, c), w.contraction(c, mm + k)});
          OpExpr rhs = combination(terms, true);
          sg.push_back({"[Theta^" + std::to_string(a + 1) + "_(" + std::to_string(mm) + "), b^" +
                            std::to_string(b + 1) + "_(" + std::to_string(k) + ")]",
                        [lhs](const State& s) { return lhs(s); }, [rhs](const State& s) { return rhs(s); }});
          OpExpr bb = supercommutator(w.contraction(a, mm), w.contraction(b, k));
          sg.push_back({"[b, b]", [bb](const State& s) { return bb(s); },
                        [&model](const State&) { return State(model); }});
        }
    }
  rep.add(check_cases("sg[t] relations", states, sg, opt.jobs));
  return rep;
}

Report verify_wprime_acyclicity(const WeilSystem& w, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "wprime";
  GradedComplex c;
  c.model = &w.model();
  c.carrier = Carrier{w.wprime_sector(), {}};
  c.d = w.d();
  c.max_weight = opt.max_weight;
  c.min_degree = 0;
  c.max_degree = opt.max_degree;
  c.max_poly_degree = 0;
  auto entries = graded_cohomology(c, opt.jobs);
  std::string bad;
  for (const auto& e : entries) {
    std::size_t want = (e.key.weight == 0 && e.key.degree == 0) ? 1 : 0;
    if (e.dimension != want && bad.empty())
      bad = "H at (w=" + std::to_string(e.key.weight) + ", deg=" + std::to_string(e.key.degree) +
            ") has dimension " + std::to_string(e.dimension);
  }
  rep.add(make_check("W' is acyclic", bad.empty(), bad, entries.size()));
  rep.tables.push_back({"W'", entries});
  return rep;
}

std::vector<Section> sample_sections(const AlgebroidData& data) {
  std::vector<Section> out;
  for (int j = 0; j < data.r(); ++j) out.push_back(data.basis_section(j));
  if (data.m() > 0 && data.r() > 0) {
    Section x = data.zero_section();
    x[0] = Polynomial::variable(data.m(), 0);
    out.push_back(x);
  }
  return out;
}

Report verify_algebroid(const AlgebroidSystem& sys, const std::vector<Section>& sections, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "algebroid";
  const Model& model = sys.model();
  const AlgebroidData& data = sys.data();
  const int N = opt.max_weight;
  OpExpr D = sys.d();
  auto states = window_states(model, sys.gc_sector(), N, opt.min_degree, opt.max_degree, opt.max_poly_degree);

  // Generators of the gamma-c sector. On b and beta D^2 need not vanish once the anchor
  // is not constant (Euler: D^2 b_{-1}|0> = -c_{-1}|0>).
  std::vector<State> gens;
  for (int i = 0; i < data.m(); ++i) gens.push_back(State::coefficient(model, Polynomial::variable(data.m(), i)));
  for (int j = 0; j < data.r(); ++j) gens.push_back(sys.c_state(j));
  auto gc = check_square_zero_via_generators(D, gens);
  rep.add(make_check("D^2 = 0 on generators", gc.ok, gc.witness, gens.size()));
  rep.add(check_states(
      "D^2 = 0", states,
      [&](const State& s) -> std::string {
        State dd = D(D(s));
        return dd.is_zero() ? std::string() : "D^2 on " + s.str() + " gives " + dd.str();
      },
      opt.jobs));
  if (data.preserves_poly_degree())
    rep.add(check_states(
        "D preserves the grading", states,
        [&](const State& s) -> std::string {
          State ds = D(s);
          if (ds.is_zero()) return {};
          Grade a = grade_of(s), b = grade_of(ds);
          if (b.weight == a.weight && b.degree == a.degree + 1 && b.poly_degree == a.poly_degree) return {};
          return "D on " + s.str() + " lands in " + block_str(ds);
        },
        opt.jobs));
  else
    rep.notes.push_back("anchor is not homogeneous linear; D is checked without the poly-degree grading");

  // Weight zero against the classical complex, on monomial forms.
  std::vector<ClassicalForm> forms;
  auto monomials = enumerate_block(model, Sector{{}, true, "functions"}, 0, 0, 0, opt.max_poly_degree);
  for (int q = 0; q <= data.r(); ++q) {
    std::vector<int> J;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(J.size()) == q) {
        for (const auto& key : monomials) {
          ClassicalForm w;
          w.degree = q;
          w.values[J] = Polynomial::monomial(key.exps, Scalar(1));
          forms.push_back(w);
        }
        return;
      }
      for (int j = start; j < data.r(); ++j) {
        J.push_back(j);
        rec(j + 1);
        J.pop_back();
      }
    };
    rec(0);
  }
  std::string bad;
  for (const auto& w : forms) {
    if (!bad.empty()) break;
    ClassicalForm got = state_to_form(sys, D(form_to_state(sys, w)), w.degree + 1);
    if (!(got == classical_lie_algebroid_differential(data, w))) bad = "d on " + form_to_state(sys, w).str();
    for (const auto& X : sections) {
      if (!bad.empty()) break;
      if (w.degree > 0 && !(state_to_form(sys, sys.iota(X, 0)(form_to_state(sys, w)), w.degree - 1) ==
                            classical_contraction(data, X, w)))
        bad = "contraction on " + form_to_state(sys, w).str();
      else if (!(state_to_form(sys, sys.lie(X, 0)(form_to_state(sys, w)), w.degree) ==
                 classical_lie_derivative(data, X, w)))
        bad = "Lie derivative on " + form_to_state(sys, w).str();
    }
  }
  rep.add(make_check("weight 0 matches the classical complex", bad.empty(), bad, forms.size() * (1 + 2 * sections.size())));

  // Cartan relations for every pair of sections.
  std::map<std::pair<int, int>, OpExpr> iota, lie;
  std::vector<OperatorCase> c1, c2, c3;
  const int S = static_cast<int>(sections.size());
  for (int x = 0; x < S; ++x)
    for (int n = 0; n <= 2 * N; ++n) {
      iota[{x, n}] = sys.iota(sections[x], n);
      lie[{x, n}] = sys.lie(sections[x], n);
    }
  for (int x = 0; x < S; ++x)
    for (int y = 0; y < S; ++y) {
      Section br = data.bracket(sections[x], sections[y]);
      for (int n = 0; n <= N; ++n)
        for (int k = 0; k <= N; ++k) {
          std::string tag = "X" + std::to_string(x + 1) + "_(" + std::to_string(n) + "), X" + std::to_string(y + 1) +
                            "_(" + std::to_string(k) + ")";
          OpExpr i1 = supercommutator(lie[{x, n}], iota[{y, k}]);
          OpExpr r1 = sys.iota(br, n + k);
          c1.push_back({"[L, iota] at " + tag, [i1](const State& s) { return i1(s); },
                        [r1](const State& s) { return r1(s); }});
          OpExpr i2 = supercommutator(lie[{x, n}], lie[{y, k}]);
          OpExpr r2 = sys.lie(br, n + k);
          c2.push_back({"[L, L] at " + tag, [i2](const State& s) { return i2(s); },
                        [r2](const State& s) { return r2(s); }});
          // L is even and iota odd, so the bracket splits into two brackets of fixed parity.
          OpExpr dl = supercommutator(D, lie[{x, n}]);
          OpExpr di = supercommutator(D, iota[{y, k}]);
          OpExpr i3 = op_of([dl, di](const State& s) { return dl(s) + di(s); }, false, "[D, L + iota]");
          OpExpr r3 = lie[{y, k}];
          c3.push_back({"[D, L + iota] at " + tag, [i3](const State& s) { return i3(s); },
                        [r3](const State& s) { return r3(s); }});
        }
    }
  rep.add(check_cases("Cartan relation [L, iota] = iota_[X,Y]", states, c1, opt.jobs));
  rep.add(check_cases("Cartan relation [L, L] = L_[X,Y]", states, c2, opt.jobs));
  rep.add(check_cases("Cartan relation [D, L + iota] = L", states, c3, opt.jobs));
  std::string names;
  for (int x = 0; x < S; ++x) {
    names += (x ? "; X" : "X") + std::to_string(x + 1) + " = (";
    for (int j = 0; j < data.r(); ++j) names += (j ? ", " : "") + sections[x][j].str();
    names += ")";
  }
  rep.notes.push_back("sections: " + names);
  return rep;
}

Report verify_cartan(const EquivariantSetup& s, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "cartan";
  SgtModule ab = tensor_module(s.a, s.b);
  auto states =
      window_states(*s.model, ab.sector, opt.max_weight, opt.min_degree, opt.max_degree, opt.max_poly_degree);
  rep.add(verify_transformation_formulas(s.a_star, s.b, states, opt.max_weight, opt.jobs));
  return rep;
}

Report verify_wstar(const EquivariantSetup& s, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "wstar";
  WStarOptions o;
  o.min_mode = -opt.max_weight;
  o.max_mode = opt.max_weight;
  o.jobs = opt.jobs;
  if (s.algebroid) {
    auto states =
        window_states(*s.model, s.b.sector, opt.max_weight, opt.min_degree, opt.max_degree, opt.max_poly_degree);
    const AlgebroidSystem* sys = s.algebroid.get();
    o.expect_zero_gamma = true;
    auto wc = construct_wstar_structure(
        s.b, [sys](int j, int n) { return mode_op(sys->model(), sys->c(j, n + 1)); }, states, o);
    rep.add(wc.checks);
    rep.notes.push_back("module: algebroid sections with c acting by its own modes");
  } else {
    auto states = window_states(*s.model, s.a.sector, opt.max_weight, opt.min_degree, opt.max_degree, 0);
    o.native = s.weil.get();
    auto wc = construct_wstar_structure(s.a, s.a_star.c, states, o);
    rep.add(wc.checks);
    rep.notes.push_back("module: W(g) with its own c; gamma compared with the native modes");
  }
  return rep;
}

Report verify_atlas(const AtlasSystem& sys, const SuiteOptions& opt) {
  Report rep;
  rep.suite = "atlas";
  AtlasWindow w{opt.max_weight, opt.max_poly_degree};
  rep.add(verify_cocycle(sys, w, opt.jobs));
  rep.add(glued_differential_check(sys, w, opt.jobs));
  auto glued = global_cohomology(sys, w, opt.jobs);
  rep.add(glued.closed);

  std::string bad;
  for (const auto& e : glued.entries)
    if (e.block_dim != e.carrier_dim && bad.empty())
      bad = "block (w=" + std::to_string(e.key.weight) + ", deg=" + std::to_string(e.key.degree) +
            "): chart " + std::to_string(e.block_dim) + ", global " + std::to_string(e.carrier_dim);
  rep.add(make_check("global sections match the chart", bad.empty(), bad, glued.entries.size()));

  GradedComplex c;
  c.model = sys.model.get();
  c.carrier = Carrier{sys.sector(), {}};
  c.d = sys.charts[0]->d();
  c.max_weight = w.max_weight;
  c.min_degree = 0;
  c.max_degree = sys.atlas->r() + w.max_weight;
  c.max_poly_degree = w.max_poly_degree;
  c.exact_poly_degree = false;
  auto single = graded_cohomology(c, opt.jobs);
  bad.clear();
  std::map<BlockKey, std::size_t> dims;
  for (const auto& e : single) dims[e.key] = e.dimension;
  for (const auto& e : glued.entries) {
    auto it = dims.find(e.key);
    if ((it == dims.end() || it->second != e.dimension) && bad.empty())
      bad = "block (w=" + std::to_string(e.key.weight) + ", deg=" + std::to_string(e.key.degree) + ")";
  }
  rep.add(make_check("glued cohomology matches the chart", bad.empty(), bad, glued.entries.size()));
  rep.tables.push_back({"glued", glued.entries});
  rep.tables.push_back({"chart " + sys.atlas->ids()[0], single});
  return rep;
}

std::vector<State> commutant_subspace(const std::vector<OpExpr>& ops, const Model& model, const Sector& sector,
                                      const BlockKey& key) {
  BlockSpace block(model, enumerate_block(model, sector, key.weight, key.degree, key.poly_degree, key.poly_degree));
  Carrier c{sector, [ops](int) { return ops; }};
  std::vector<State> out;
  for (const auto& v : carrier_basis(c, block)) out.push_back(block.combination(v));
  return out;
}

}  // namespace chiral
