#include "chiral/equivariant.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "chiral/error.hpp"
#include "chiral/gamma_chiral.hpp"
#include "chiral/ope.hpp"

namespace chiral {

namespace {

// Thread-safe memo over (basis index, mode index) so cached operators are reused.
std::function<OpExpr(int, int)> memo_family(std::function<OpExpr(int, int)> make) {
  struct Table {
    std::mutex mu;
    std::map<std::pair<int, int>, OpExpr> ops;
  };
  auto t = std::make_shared<Table>();
  return [t, make = std::move(make)](int a, int n) {
    std::lock_guard<std::mutex> lock(t->mu);
    auto it = t->ops.find({a, n});
    if (it != t->ops.end()) return it->second;
    OpExpr op = make(a, n);
    t->ops.emplace(std::make_pair(a, n), op);
    return op;
  };
}

// iota^B of the bracket [xi_i, xi_j], mode n.
State bracket_contraction(const SgtModule& b, int i, int j, int n, const State& s) {
  State r(s.model());
  for (int k = 0; k < b.lie.dim(); ++k) {
    const Scalar& g = b.lie.bracket(i, j, k);
    if (g.is_zero()) continue;
    State t = b.contraction(k, n)(s);
    if (t.is_zero()) continue;
    t *= g;
    r += t;
  }
  return r;
}

Sector merge_sectors(const Sector& a, const Sector& b, const std::string& name) {
  Sector s;
  s.species = a.species;
  for (int x : b.species)
    if (std::find(s.species.begin(), s.species.end(), x) == s.species.end()) s.species.push_back(x);
  std::sort(s.species.begin(), s.species.end());
  s.coefficients = a.coefficients || b.coefficients;
  s.name = name;
  return s;
}

std::vector<int> mode_range(int lo, int hi) {
  std::vector<int> r;
  for (int n = lo; n <= hi; ++n) r.push_back(n);
  return r;
}

}  // namespace

SgtModule weil_module(const WeilSystem& w) {
  SgtModule m;
  m.model = &w.model();
  m.sector = w.full_sector();
  m.lie = w.lie();
  m.d = w.d();
  const WeilSystem* wp = &w;
  m.lie_derivative = memo_family([wp](int a, int n) { return wp->lie_derivative(a, n); });
  m.contraction = [wp](int a, int n) { return wp->contraction(a, n); };
  m.exact_poly_degree = true;
  return m;
}

SgtModule algebroid_module(const AlgebroidSystem& sys, const LieData& lie, const std::vector<Section>& sections) {
  if (static_cast<int>(sections.size()) != lie.dim())
    throw InputError("need one section per basis element of the Lie algebra");
  const AlgebroidData& data = sys.data();
  // The sections must realise a Lie algebra morphism into the algebroid.
  for (int a = 0; a < lie.dim(); ++a)
    for (int b = 0; b < lie.dim(); ++b) {
      Section lhs = data.bracket(sections[a], sections[b]);
      Section rhs = data.zero_section();
      for (int k = 0; k < lie.dim(); ++k)
        for (int j = 0; j < data.r(); ++j) rhs[j] += sections[k][j] * lie.bracket(a, b, k);
      if (lhs != rhs)
        throw ValidationError("sections do not bracket like the Lie algebra at (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
    }
  SgtModule m;
  m.model = &sys.model();
  m.sector = sys.gc_sector();
  m.lie = lie;
  m.d = sys.d();
  const AlgebroidSystem* sp = &sys;
  m.lie_derivative = memo_family([sp, sections](int a, int n) { return sp->lie(sections[a], n); });
  m.contraction = memo_family([sp, sections](int a, int n) { return sp->iota(sections[a], n); });
  m.exact_poly_degree = data.preserves_poly_degree();
  return m;
}

SgtModule trivial_module(const Model& model, const Sector& sector, const LieData& lie, OpExpr d) {
  SgtModule m;
  m.model = &model;
  m.sector = sector;
  m.lie = lie;
  m.d = std::move(d);
  m.lie_derivative = [](int, int) { return OpExpr::zero(false); };
  m.contraction = [](int, int) { return OpExpr::zero(true); };
  return m;
}

SgtModule tensor_module(const SgtModule& a, const SgtModule& b) {
  if (a.model != b.model) throw ModelMismatch("tensor factors must share a model");
  if (a.lie.dim() != b.lie.dim()) throw ModelMismatch("tensor factors act by different Lie algebras");
  for (int s : a.sector.species)
    if (b.sector.allows(s)) throw ModelMismatch("tensor factors overlap");
  SgtModule m;
  m.model = a.model;
  m.sector = merge_sectors(a.sector, b.sector, a.sector.name + "(x)" + b.sector.name);
  m.lie = a.lie;
  m.d = a.d + b.d;
  auto la = a.lie_derivative, lb = b.lie_derivative, ia = a.contraction, ib = b.contraction;
  m.lie_derivative = memo_family([la, lb](int x, int n) { return la(x, n) + lb(x, n); });
  m.contraction = memo_family([ia, ib](int x, int n) { return ia(x, n) + ib(x, n); });
  m.exact_poly_degree = a.exact_poly_degree && b.exact_poly_degree;
  return m;
}

namespace {

Carrier kernel_carrier(const SgtModule& m, bool use_lie, bool use_iota) {
  Carrier c;
  c.sector = m.sector;
  auto lie = m.lie_derivative;
  auto iota = m.contraction;
  const int dim = m.lie.dim();
  c.constraints = [=](int weight) {
    std::vector<OpExpr> ops;
    for (int a = 0; a < dim; ++a)
      for (int n = 0; n <= weight; ++n) {
        if (use_iota) ops.push_back(iota(a, n));
        if (use_lie) ops.push_back(lie(a, n));
      }
    return ops;
  };
  return c;
}

}  // namespace

Carrier horizontal_carrier(const SgtModule& m) { return kernel_carrier(m, false, true); }
Carrier invariant_carrier(const SgtModule& m) { return kernel_carrier(m, true, false); }
Carrier basic_carrier(const SgtModule& m) { return kernel_carrier(m, true, true); }

GradedComplex module_complex(const SgtModule& m, const Carrier& carrier, const Window& w) {
  GradedComplex c;
  c.model = m.model;
  c.carrier = carrier;
  c.d = m.d;
  c.max_weight = w.max_weight;
  c.min_degree = w.min_degree;
  c.max_degree = w.max_degree;
  c.max_poly_degree = w.max_poly_degree;
  c.exact_poly_degree = m.exact_poly_degree;
  return c;
}

WStarCarrier weil_wstar(const WeilSystem& w) {
  WStarCarrier s;
  s.module = weil_module(w);
  const WeilSystem* wp = &w;
  const Model* model = &w.model();
  s.c = [wp, model](int j, int n) { return mode_op(*model, wp->c(j, n + 1)); };
  s.gamma = [wp, model](int j, int n) { return mode_op(*model, wp->gamma(j, n + 1)); };
  return s;
}

OpExpr phi_generator(const WStarCarrier& a, const SgtModule& b) {
  const int dim = b.lie.dim();
  auto c = a.c;
  auto iota = b.contraction;
  return OpExpr::function(
      [=](const State& s) {
        State r(s.model());
        const int W = s.max_weight();
        for (int i = 0; i < dim; ++i)
          for (int n = 0; n <= W; ++n) {
            State t = iota(i, n)(s);
            if (t.is_zero()) continue;
            r += c(i, -n - 1)(t);
          }
        return r;
      },
      false, "phi");
}

State apply_phi(const WStarCarrier& a, const SgtModule& b, const State& s, int sign, int* order) {
  OpExpr phi = phi_generator(a, b);
  State result = s;
  State term = s;
  int k = 1;
  for (; k <= 64; ++k) {
    term = phi(term);
    if (term.is_zero()) break;
    term *= Scalar(sign, k);
    result += term;
  }
  if (k > 64) throw Error("exponential series did not terminate on " + s.str());
  if (order) *order = k - 1;
  return result;
}

OpExpr conjugated_differential(const WStarCarrier& a, const SgtModule& b) {
  const int dim = b.lie.dim();
  OpExpr d0 = a.module.d + b.d;
  auto c = a.c;
  auto gamma = a.gamma;
  auto iota = b.contraction;
  auto lie = b.lie_derivative;
  SgtModule bb = b;
  return OpExpr::function(
      [=](const State& s) {
        State r = d0(s);
        const int W = s.max_weight();
        for (int i = 0; i < dim; ++i)
          for (int n = 0; n <= W; ++n) {
            State t = iota(i, n)(s);
            if (!t.is_zero()) r -= gamma(i, -n - 1)(t);
            State u = lie(i, n)(s);
            if (!u.is_zero()) r += c(i, -n - 1)(u);
          }
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            for (int m = 0; m <= W; ++m) {
              State t = bracket_contraction(bb, i, j, m, s);
              if (t.is_zero()) continue;
              for (int n = 0; n <= W; ++n) r += c(i, n)(c(j, -n - m - 2)(t));
            }
        return r;
      },
      true, "conjugated d");
}

OpExpr conjugated_lie_derivative(const WStarCarrier& a, const SgtModule& b, int xi, int n) {
  const int dim = b.lie.dim();
  OpExpr base = a.module.lie_derivative(xi, n) + b.lie_derivative(xi, n);
  auto c = a.c;
  SgtModule bb = b;
  return OpExpr::function(
      [=](const State& s) {
        State r = base(s);
        for (int i = 0; i < dim; ++i)
          for (int k = 0; k < n; ++k) {
            State t = bracket_contraction(bb, xi, i, k, s);
            if (!t.is_zero()) r += c(i, n - k - 1)(t);
          }
        return r;
      },
      false, "conjugated L");
}

OpExpr conjugated_contraction(const WStarCarrier& a, const SgtModule&, int xi, int n) {
  return a.module.contraction(xi, n);
}

std::vector<CheckResult> verify_transformation_formulas(const WStarCarrier& a, const SgtModule& b,
                                                        const std::vector<State>& states, int max_mode,
                                                        int jobs) {
  std::vector<CheckResult> out;
  const int dim = b.lie.dim();
  auto conj = [&a, &b](const OpExpr& op) {
    return [&a, &b, op](const State& s) { return apply_phi(a, b, op(apply_phi(a, b, s, -1)), 1); };
  };
  out.push_back(check_cases("phi inverse", states,
                            {{"exp(phi) exp(-phi)", [&a, &b](const State& s) { return apply_phi(a, b, apply_phi(a, b, s, -1)); },
                              [](const State& s) { return s; }}},
                            jobs));
  OpExpr d0 = a.module.d + b.d;
  out.push_back(check_cases("conjugation of d", states, {{"d", conj(d0), [op = conjugated_differential(a, b)](const State& s) { return op(s); }}}, jobs));
  std::vector<OperatorCase> lcases, icases;
  for (int x = 0; x < dim; ++x)
    for (int n = 0; n <= max_mode; ++n) {
      std::string tag = "(" + std::to_string(x + 1) + ", " + std::to_string(n) + ")";
      OpExpr lsum = a.module.lie_derivative(x, n) + b.lie_derivative(x, n);
      OpExpr lr = conjugated_lie_derivative(a, b, x, n);
      lcases.push_back({"L" + tag, conj(lsum), [lr](const State& s) { return lr(s); }});
      OpExpr isum = a.module.contraction(x, n) + b.contraction(x, n);
      OpExpr ir = conjugated_contraction(a, b, x, n);
      icases.push_back({"iota" + tag, conj(isum), [ir](const State& s) { return ir(s); }});
    }
  out.push_back(check_cases("conjugation of L", states, lcases, jobs));
  out.push_back(check_cases("conjugation of iota", states, icases, jobs));
  return out;
}

namespace {

GeneratorAction wstar_action(const WStarCarrier& a, const WeilSystem& source) {
  const Model* src = &source.model();
  WeilSpecies sp = source.species();
  auto c = a.c;
  auto g = a.gamma;
  GeneratorAction act;
  act.apply = [=](const Mode& m, const State& v) {
    int k = m.level - src->field_shift(m.species);
    if (m.species == sp.c) return c(m.index, k)(v);
    if (m.species == sp.gamma) return g(m.index, k)(v);
    throw InputError("only c and gamma act on a W*-module");
  };
  act.max_weight = [](const State& v) { return v.max_weight(); };
  return act;
}

}  // namespace

State wstar_module_product(const WStarCarrier& a, const WeilSystem& source, const State& x, int n,
                           const State& v) {
  return module_nth_product(x, n, v, wstar_action(a, source));
}

WStarConstruction construct_wstar_structure(const SgtModule& a, std::function<OpExpr(int j, int n)> c_action,
                                            const std::vector<State>& states, const WStarOptions& opt) {
  const LieData& lie = a.lie;
  const int dim = lie.dim();
  WStarConstruction out;
  out.carrier.module = a;
  out.carrier.c = memo_family(c_action);
  auto c = out.carrier.c;
  OpExpr d = a.d;
  out.carrier.gamma = memo_family([=](int j, int n) {
    OpExpr dc = supercommutator(d, c(j, n));
    OpExpr quad = OpExpr::function(
        [=](const State& v) {
          State r(v.model());
          const int W = v.max_weight();
          for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) {
              const Scalar& g = lie.bracket(i, k, j);
              if (g.is_zero()) continue;
              // normally ordered :c^i c^k:_(n)
              State t(v.model());
              for (int p = n - W; p <= -1; ++p) t += c(i, p)(c(k, n - p - 1)(v));
              for (int p = 0; p <= W - 1; ++p) t -= c(k, n - p - 1)(c(i, p)(v));
              t *= Scalar(1, 2) * g;
              r += t;
            }
          return r;
        },
        false, "cc");
    return OpExpr::cached(dc + quad);
  });
  auto gamma = out.carrier.gamma;
  const auto modes = mode_range(opt.min_mode, opt.max_mode);
  const auto pairing_modes = mode_range(std::min(opt.min_mode, -opt.max_mode - 1), opt.max_mode);
  auto zero = [](const State& s) { return State(s.model()); };

  std::vector<OperatorCase> hyp1;
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      for (int m : modes)
        for (int n : modes) {
          OpExpr op = supercommutator(c(i, m), supercommutator(d, c(k, n)));
          hyp1.push_back({"[c" + std::to_string(i + 1) + "_(" + std::to_string(m) + "), [d, c" +
                              std::to_string(k + 1) + "_(" + std::to_string(n) + ")]]",
                          [op](const State& s) { return op(s); }, zero});
        }
  out.checks.push_back(check_cases("hypothesis [c, [d, c]] = 0", states, hyp1, opt.jobs));

  std::vector<OperatorCase> pair, horiz, ax2;
  for (int x = 0; x < dim; ++x)
    for (int m = 0; m <= opt.max_mode; ++m)
      for (int j = 0; j < dim; ++j) {
        for (int n : pairing_modes) {
          OpExpr op = supercommutator(a.contraction(x, m), c(j, n));
          bool hit = (x == j) && (m + n == -1);
          pair.push_back({"[iota" + std::to_string(x + 1) + "_(" + std::to_string(m) + "), c" +
                              std::to_string(j + 1) + "_(" + std::to_string(n) + ")]",
                          [op](const State& s) { return op(s); },
                          [hit](const State& s) { return hit ? s : State(s.model()); }});
        }
        for (int n : modes) {
          OpExpr op = supercommutator(a.contraction(x, m), gamma(j, n));
          horiz.push_back({"[iota" + std::to_string(x + 1) + "_(" + std::to_string(m) + "), gamma" +
                               std::to_string(j + 1) + "_(" + std::to_string(n) + ")]",
                           [op](const State& s) { return op(s); }, zero});
          OpExpr lhs = supercommutator(a.lie_derivative(x, m), c(j, n));
          std::vector<std::pair<Scalar, OpExpr>> terms;
          for (int i = 0; i < dim; ++i) {
            Scalar co = lie.coadjoint(x, j, i);
            if (!co.is_zero()) terms.emplace_back(co, c(i, m + n));
          }
          OpExpr rhs = terms.empty() ? OpExpr::zero(true) : linear_combination(terms);
          ax2.push_back({"[L" + std::to_string(x + 1) + "_(" + std::to_string(m) + "), c" +
                             std::to_string(j + 1) + "_(" + std::to_string(n) + ")]",
                         [lhs](const State& s) { return lhs(s); }, [rhs](const State& s) { return rhs(s); }});
        }
      }
  out.checks.push_back(check_cases("hypothesis and axiom (3): iota-c pairing", states, pair, opt.jobs));
  out.checks.push_back(check_cases("hypothesis [iota, gamma] = 0", states, horiz, opt.jobs));

  if (opt.expect_zero_gamma) {
    std::vector<OperatorCase> z;
    for (int j = 0; j < dim; ++j)
      for (int n : modes)
        z.push_back({"gamma" + std::to_string(j + 1) + "_(" + std::to_string(n) + ")",
                     [g = gamma(j, n)](const State& s) { return g(s); }, zero});
    out.checks.push_back(check_cases("gamma action vanishes", states, z, opt.jobs));
  }
  if (opt.native) {
    std::vector<OperatorCase> z;
    const WeilSystem* w = opt.native;
    for (int j = 0; j < dim; ++j)
      for (int n : modes) {
        Mode nm = w->gamma(j, n + 1);
        z.push_back({"gamma" + std::to_string(j + 1) + "_(" + std::to_string(n) + ")",
                     [g = gamma(j, n)](const State& s) { return g(s); },
                     [nm](const State& s) { return apply_mode(nm, s); }});
      }
    out.checks.push_back(check_cases("reconstructed gamma equals native gamma", states, z, opt.jobs));
  }

  // Axiom (1) on a sample of <c, gamma>: [d, Y(x)_(n)] = Y(d x)_(n).
  WeilModel source = make_weil_model(lie);
  std::vector<State> sample =
      window_states(*source.model, source.weil->wprime_sector(), 1, 0, 2, 0);
  std::vector<OperatorCase> ax1;
  const WStarCarrier carrier = out.carrier;
  const WeilSystem* src = source.weil.get();
  for (const auto& x : sample) {
    State dx = source.weil->d()(x);
    bool x_odd = grade_of(x).degree % 2 != 0;
    for (int n = opt.min_mode; n <= std::min(opt.max_mode, 1); ++n) {
      ax1.push_back({"[d, Y(" + x.str() + ")_(" + std::to_string(n) + ")]",
                     [=](const State& v) {
                       State r = d(wstar_module_product(carrier, *src, x, n, v));
                       State t = wstar_module_product(carrier, *src, x, n, d(v));
                       return x_odd ? r + t : r - t;
                     },
                     [=](const State& v) { return wstar_module_product(carrier, *src, dx, n, v); }});
    }
  }
  out.checks.push_back(check_cases("axiom (1): d-compatibility on <c, gamma>", states, ax1, opt.jobs));
  out.checks.push_back(check_cases("axiom (2): coadjoint action on c", states, ax2, opt.jobs));
  return out;
}

std::vector<CohomologyEntry> chiral_equivariant_cohomology(const WeilSystem& w, const SgtModule& b,
                                                           const Window& win, int jobs) {
  SgtModule t = tensor_module(weil_module(w), b);
  return graded_cohomology(module_complex(t, basic_carrier(t), win), jobs);
}

std::vector<CohomologyEntry> basic_cohomology(const SgtModule& b, const Window& win, int jobs) {
  return graded_cohomology(module_complex(b, basic_carrier(b), win), jobs);
}

GradedComplex small_cartan_model(const WeilSystem& w, const SgtModule& b, const Window& win) {
  if (!w.lie().is_abelian()) throw InputError("the small Cartan model needs an abelian Lie algebra");
  WStarCarrier a = weil_wstar(w);
  SgtModule ab = b;
  ab.sector = merge_sectors(w.gamma_sector(), b.sector, "<gamma>(x)" + b.sector.name);
  GradedComplex c = module_complex(ab, invariant_carrier(ab), win);
  c.d = conjugated_differential(a, b);
  return c;
}

GradedComplex cartan_prime_complex(const WStarCarrier& a, const WeilSystem& w, const Window& win) {
  if (!w.lie().is_abelian()) throw InputError("the complex C' is built for abelian Lie algebras");
  SgtModule bw = weil_module(w);
  SgtModule m = a.module;
  m.sector = merge_sectors(a.module.sector, w.wprime_sector(), a.module.sector.name + "(x)<c,gamma>");
  GradedComplex c = module_complex(m, basic_carrier(m), win);
  c.d = conjugated_differential(a, bw);
  return c;
}

EquivariantSetup make_weil_weil_setup(const LieData& lie, const Caps& caps) {
  EquivariantSetup s;
  s.model = std::make_shared<Model>();
  WeilSpecies wa = s.model->add_weil_factor(lie.dim(), "A");
  WeilSpecies wb = s.model->add_weil_factor(lie.dim(), "B");
  s.model->set_caps(caps);
  s.weil = std::make_shared<WeilSystem>(*s.model, wa, lie);
  s.weil_b = std::make_shared<WeilSystem>(*s.model, wb, lie);
  s.a = weil_module(*s.weil);
  s.b = weil_module(*s.weil_b);
  s.a_star = weil_wstar(*s.weil);
  return s;
}

EquivariantSetup make_weil_algebroid_setup(const LieData& lie, const AlgebroidData& data,
                                           const std::vector<Section>& sections, const Caps& caps) {
  EquivariantSetup s;
  s.model = std::make_shared<Model>();
  WeilSpecies wa = s.model->add_weil_factor(lie.dim(), "W");
  GammaSpecies g = s.model->add_gamma_factor(data.m(), "");
  BcSpecies bc = s.model->add_bc_factor(data.r(), "");
  s.model->set_caps(caps);
  s.weil = std::make_shared<WeilSystem>(*s.model, wa, lie);
  s.algebroid = std::make_shared<AlgebroidSystem>(*s.model, g, bc, data);
  s.sections = sections;
  s.a = weil_module(*s.weil);
  s.b = algebroid_module(*s.algebroid, lie, sections);
  s.a_star = weil_wstar(*s.weil);
  return s;
}

OpExpr transformation_loop_action(const AlgebroidSystem& sys, int j, int n) {
  const AlgebroidSystem* sp = &sys;
  return OpExpr::function(
      [sp, j, n](const State& v) {
        State r(v.model());
        const int W = v.max_weight();
        for (int k = 0; k <= W; ++k)
          for (int i = 0; i < sp->data().m(); ++i) {
            const Polynomial& f = sp->data().anchor(i, j);
            if (f.is_zero()) continue;
            State t = apply_mode(sp->beta(i, k), v);
            if (t.is_zero()) continue;
            r += f_mode_action(f, n - k - 1, t);
          }
        return r;
      },
      false, "loop action");
}

}  // namespace chiral
