#include "chiral/atlas.hpp"

#include "chiral/error.hpp"
#include "chiral/ope.hpp"
#include "chiral/parallel.hpp"

namespace chiral {

namespace {

Mode mk(int s, int i, int level) {
  return Mode{static_cast<std::int16_t>(s), static_cast<std::int16_t>(i), level};
}

PolyMatrix compose_matrix(const PolyMatrix& a, const ScalarMatrix& T, const std::vector<Scalar>& v) {
  PolyMatrix out = a;
  for (auto& row : out)
    for (auto& p : row) p = p.compose_affine(T, v);
  return out;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b, int nvars) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  PolyMatrix out(n, std::vector<Polynomial>(m, Polynomial(nvars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

PolyMatrix poly_identity(int r, int nvars) {
  PolyMatrix out(r, std::vector<Polynomial>(r, Polynomial(nvars)));
  for (int i = 0; i < r; ++i) out[i][i] = Polynomial::constant(nvars, Scalar(1));
  return out;
}

int nvars_of(const Transition& t) { return static_cast<int>(t.v.size()); }

std::vector<Scalar> neg_apply(const ScalarMatrix& S, const std::vector<Scalar>& v) {
  std::vector<Scalar> out = matrix_apply(S, v);
  for (auto& x : out) x = -x;
  return out;
}

}  // namespace

Transition Transition::inverse() const {
  Transition t;
  t.target = source;
  t.source = target;
  t.T = matrix_inverse(T);
  t.v = neg_apply(t.T, v);
  t.frame = compose_matrix(frame_inverse, t.T, t.v);
  t.frame_inverse = compose_matrix(frame, t.T, t.v);
  return t;
}

Transition Transition::compose(const Transition& inner) const {
  if (inner.target != source) throw ModelMismatch("transitions do not compose");
  const int m = nvars_of(*this);
  Transition t;
  t.target = target;
  t.source = inner.source;
  t.T = matrix_mul(inner.T, T);
  t.v = matrix_apply(inner.T, v);
  for (std::size_t i = 0; i < t.v.size(); ++i) t.v[i] += inner.v[i];
  t.frame = poly_mul(frame, compose_matrix(inner.frame, T, v), m);
  t.frame_inverse = poly_mul(compose_matrix(inner.frame_inverse, T, v), frame_inverse, m);
  return t;
}

Transition Transition::identity(int chart, int m, int r) {
  Transition t;
  t.target = t.source = chart;
  t.T = identity_matrix(m);
  t.v.assign(m, Scalar(0));
  t.frame = poly_identity(r, m);
  t.frame_inverse = poly_identity(r, m);
  return t;
}

AlgebroidData transport_algebroid(const AlgebroidData& data, const Transition& t) {
  const int m = data.m(), r = data.r();
  ScalarMatrix S = matrix_inverse(t.T);
  // Same frame, target coordinates.
  AlgebroidData mid(m, r);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < r; ++j) {
      Polynomial f(m);
      for (int i = 0; i < m; ++i)
        if (!S[k][i].is_zero()) f += data.anchor(i, j).compose_affine(t.T, t.v) * S[k][i];
      mid.set_anchor(k, j, f);
    }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) mid.set_structure(a, b, c, data.structure(a, b, c).compose_affine(t.T, t.v));
  // Change of frame: e_target^j = sum_j' frame_inverse[j'][j] e_source^j'.
  std::vector<Section> cols(r, Section(r, Polynomial(m)));
  for (int j = 0; j < r; ++j)
    for (int jp = 0; jp < r; ++jp) cols[j][jp] = t.frame_inverse[jp][j];
  AlgebroidData out(m, r);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < m; ++k) out.set_anchor(k, j, mid.apply_anchor(cols[j], Polynomial::variable(m, k)));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      Section z = mid.bracket(cols[j], cols[k]);
      for (int b = 0; b < r; ++b) {
        Polynomial s(m);
        for (int a = 0; a < r; ++a) s += t.frame[b][a] * z[a];
        out.set_structure(j, k, b, s);
      }
    }
  return out;
}

Atlas::Atlas(int m, int r, std::vector<std::string> ids) : m_(m), r_(r), ids_(std::move(ids)) {
  if (ids_.empty()) throw InputError("an atlas needs at least one chart");
  data_.resize(ids_.size());
}

int Atlas::index(const std::string& id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return static_cast<int>(i);
  throw InputError("unknown chart '" + id + "'");
}

void Atlas::add_transition(const Transition& t) {
  if (t.target < 0 || t.source < 0 || t.target >= size() || t.source >= size())
    throw InputError("transition refers to a missing chart");
  if (static_cast<int>(t.T.size()) != m_ || static_cast<int>(t.v.size()) != m_ ||
      static_cast<int>(t.frame.size()) != r_ || static_cast<int>(t.frame_inverse.size()) != r_)
    throw InputError("transition has wrong dimensions");
  tr_[{t.target, t.source}] = t;
}

void Atlas::complete() {
  const int n = size();
  for (int a = 0; a < n; ++a) tr_[{a, a}] = Transition::identity(a, m_, r_);
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (tr_.count({a, b})) continue;
        if (auto it = tr_.find({b, a}); it != tr_.end()) {
          tr_[{a, b}] = it->second.inverse();
          changed = true;
          continue;
        }
        for (int k = 0; k < n; ++k) {
          auto x = tr_.find({a, k}), y = tr_.find({k, b});
          if (x != tr_.end() && y != tr_.end()) {
            tr_[{a, b}] = x->second.compose(y->second);
            changed = true;
            break;
          }
        }
      }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!tr_.count({a, b})) throw InputError("charts " + ids_[a] + " and " + ids_[b] + " are not connected");
}

const Transition& Atlas::transition(int target, int source) const {
  auto it = tr_.find({target, source});
  if (it == tr_.end()) throw InputError("no transition " + ids_.at(source) + " -> " + ids_.at(target));
  return it->second;
}

void Atlas::validate() const {
  for (const auto& [key, t] : tr_) {
    PolyMatrix p = poly_mul(t.frame, t.frame_inverse, m_);
    if (p != poly_identity(r_, m_))
      throw ValidationError("frame matrices of " + ids_[key.second] + " -> " + ids_[key.first] +
                            " are not inverse");
    (void)matrix_inverse(t.T);
  }
  const int n = size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Transition t = transition(a, b).compose(transition(b, c));
        if (!(t == transition(a, c)))
          throw ValidationError("cocycle fails for " + ids_[a] + ", " + ids_[b] + ", " + ids_[c]);
      }
}

void Atlas::set_algebroid(int chart, const AlgebroidData& data) {
  if (data.m() != m_ || data.r() != r_) throw InputError("chart algebroid has wrong dimensions");
  data_.at(chart) = data;
}

void Atlas::transport_from_first(const AlgebroidData& first) {
  set_algebroid(0, first);
  for (int a = 1; a < size(); ++a) {
    AlgebroidData d = transport_algebroid(first, transition(a, 0));
    d.validate();
    set_algebroid(a, d);
  }
}

State pullback_generator(const Model& model, const GammaSpecies& g, const BcSpecies& bc, const Transition& t,
                         GeneratorKind kind, int index, const Polynomial& f) {
  State vac = State::vacuum(model);
  State out(model);
  switch (kind) {
    case GeneratorKind::Function:
      if (f.num_vars() != g.m) throw InputError("function has wrong number of variables");
      return State::coefficient(model, f.compose_affine(t.T, t.v));
    case GeneratorKind::B:
      for (int jp = 0; jp < bc.r; ++jp)
        if (!t.frame[jp][index].is_zero())
          out += apply_mode(mk(bc.b, jp, -1), State::coefficient(model, t.frame[jp][index]));
      return out;
    case GeneratorKind::C:
      for (int jp = 0; jp < bc.r; ++jp)
        if (!t.frame_inverse[index][jp].is_zero())
          out += apply_mode(mk(bc.c, jp, 0), State::coefficient(model, t.frame_inverse[index][jp]));
      return out;
  }
  return out;
}

TransitionMorphism::TransitionMorphism(const Model& model, const GammaSpecies& g, const BcSpecies& bc,
                                       Transition t)
    : model_(&model), g_(g), bc_(bc), t_(std::move(t)) {
  for (int i = 0; i < g.m; ++i)
    fx_.push_back(pullback_generator(model, g, bc, t_, GeneratorKind::Function, i, Polynomial::variable(g.m, i)));
  for (int j = 0; j < bc.r; ++j) {
    b_.push_back(pullback_generator(model, g, bc, t_, GeneratorKind::B, j));
    c_.push_back(pullback_generator(model, g, bc, t_, GeneratorKind::C, j));
  }
}

State TransitionMorphism::apply_basis(const BasisKey& k) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
  }
  State result(*model_);
  if (k.word.empty()) {
    Polynomial f = Polynomial::monomial(k.exps, Scalar(1));
    result = State::coefficient(*model_, f.compose_affine(t_.T, t_.v));
  } else {
    const Mode& m = k.word.front();
    BasisKey rest{Word(k.word.begin() + 1, k.word.end()), k.exps};
    State tail = apply_basis(rest);
    const int n = m.level - model_->field_shift(m.species);
    const State* gen = nullptr;
    if (m.species == g_.gamma) gen = &fx_.at(m.index);
    else if (m.species == bc_.c) gen = &c_.at(m.index);
    else if (m.species == bc_.b) gen = &b_.at(m.index);
    else throw InputError("beta modes are not carried across charts");
    result = nth_product(*gen, n, tail);
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(k, result);
  return result;
}

State TransitionMorphism::operator()(const State& s) const {
  State out(*model_);
  s.for_each_basis([&](const BasisKey& k, const Scalar& c) {
    State t = apply_basis(k);
    if (t.is_zero()) return;
    t *= c;
    out += t;
  });
  return out;
}

CheckResult TransitionMorphism::check_generator_opes() const {
  struct Gen {
    char kind;
    int index;
    const State* s;
  };
  std::vector<Gen> gens;
  for (int i = 0; i < g_.m; ++i) gens.push_back({'f', i, &fx_[i]});
  for (int j = 0; j < bc_.r; ++j) gens.push_back({'b', j, &b_[j]});
  for (int j = 0; j < bc_.r; ++j) gens.push_back({'c', j, &c_[j]});
  std::size_t count = 0;
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (int n = 0; n <= 2; ++n) {
        ++count;
        State got = nth_product(*a.s, n, *b.s);
        bool paired = n == 0 && a.index == b.index &&
                      ((a.kind == 'b' && b.kind == 'c') || (a.kind == 'c' && b.kind == 'b'));
        State want = paired ? State::vacuum(*model_) : State(*model_);
        if (!(got == want))
          return make_check("generator OPEs", false,
                            std::string(1, a.kind) + std::to_string(a.index + 1) + "_(" + std::to_string(n) +
                                ") " + std::string(1, b.kind) + std::to_string(b.index + 1) + " = " + got.str(),
                            count);
      }
  return make_check("generator OPEs", true, {}, count);
}

Sector AtlasSystem::sector() const { return Sector{{gamma.gamma, bc.c}, true, "gamma-c"}; }

AtlasSystem make_atlas_system(std::shared_ptr<const Atlas> atlas, const Caps& caps) {
  AtlasSystem s;
  s.model = std::make_shared<Model>();
  s.gamma = s.model->add_gamma_factor(atlas->m(), "");
  s.bc = s.model->add_bc_factor(atlas->r(), "");
  s.model->set_caps(caps);
  s.atlas = atlas;
  for (int a = 0; a < atlas->size(); ++a)
    s.charts.push_back(std::make_shared<AlgebroidSystem>(*s.model, s.gamma, s.bc, atlas->algebroid(a)));
  for (int a = 0; a < atlas->size(); ++a)
    for (int b = 0; b < atlas->size(); ++b)
      s.morphisms[{a, b}] =
          std::make_shared<TransitionMorphism>(*s.model, s.gamma, s.bc, atlas->transition(a, b));
  return s;
}

namespace {

std::vector<State> atlas_states(const AtlasSystem& sys, const AtlasWindow& w) {
  return window_states(*sys.model, sys.sector(), w.max_weight, 0, sys.atlas->r() + w.max_weight,
                       w.max_poly_degree);
}

std::string pair_name(const AtlasSystem& sys, int a, int b) {
  return sys.atlas->ids()[b] + "->" + sys.atlas->ids()[a];
}

}  // namespace

std::vector<CheckResult> verify_cocycle(const AtlasSystem& sys, const AtlasWindow& w, int jobs) {
  std::vector<CheckResult> out;
  try {
    sys.atlas->validate();
    out.push_back(make_check("transition data cocycle", true));
  } catch (const ValidationError& e) {
    out.push_back(make_check("transition data cocycle", false, e.what()));
  }
  const int n = sys.atlas->size();
  CheckResult opes = make_check("generator OPEs of pullbacks", true, {}, 0);
  for (int a = 0; a < n && opes.passed; ++a)
    for (int b = 0; b < n; ++b) {
      CheckResult r = sys.morphism(a, b).check_generator_opes();
      opes.checked += r.checked;
      if (!r.passed) {
        opes.passed = false;
        opes.witness = pair_name(sys, a, b) + ": " + r.witness;
        break;
      }
    }
  out.push_back(opes);
  std::vector<State> states = atlas_states(sys, w);
  std::vector<OperatorCase> ident, cocycle;
  for (int a = 0; a < n; ++a) {
    const TransitionMorphism* t = &sys.morphism(a, a);
    ident.push_back({"theta(" + pair_name(sys, a, a) + ")", [t](const State& s) { return (*t)(s); },
                     [](const State& s) { return s; }});
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const TransitionMorphism* ab = &sys.morphism(a, b);
        const TransitionMorphism* bc = &sys.morphism(b, c);
        const TransitionMorphism* ac = &sys.morphism(a, c);
        cocycle.push_back({"theta(" + pair_name(sys, a, b) + ") theta(" + pair_name(sys, b, c) + ")",
                           [ab, bc](const State& s) { return (*ab)((*bc)(s)); },
                           [ac](const State& s) { return (*ac)(s); }});
      }
  }
  out.push_back(check_cases("theta_{ll} = id", states, ident, jobs));
  out.push_back(check_cases("theta_{lm} theta_{mn} = theta_{ln}", states, cocycle, jobs));
  // Gradings, vacuum and products are preserved.
  std::vector<OperatorCase> grades;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const TransitionMorphism* t = &sys.morphism(a, b);
      grades.push_back({"grading " + pair_name(sys, a, b),
                        [t](const State& s) {
                          State img = (*t)(s);
                          Grade g = grade_of(s);
                          img.for_each_basis([&](const BasisKey& k, const Scalar&) {
                            Grade h = grade_of(img.model(), k);
                            if (h.weight != g.weight || h.degree != g.degree)
                              throw Error("morphism breaks the grading at " + s.str());
                          });
                          return State(s.model());
                        },
                        [](const State& s) { return State(s.model()); }});
    }
  out.push_back(check_cases("weight and degree preserved", states, grades, jobs));
  State vac = State::vacuum(*sys.model);
  bool vac_ok = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) vac_ok = vac_ok && sys.morphism(a, b)(vac) == vac;
  out.push_back(make_check("vacuum preserved", vac_ok, "vacuum not fixed"));
  std::vector<State> small = window_states(*sys.model, sys.sector(), std::min(w.max_weight, 1), 0, 1,
                                           std::min(w.max_poly_degree, 1));
  std::vector<OperatorCase> prods;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const TransitionMorphism* t = &sys.morphism(a, b);
      for (const auto& x : small)
        for (int k = -2; k <= 1; ++k)
          prods.push_back({"theta(x_(" + std::to_string(k) + ") y) " + pair_name(sys, a, b),
                           [t, x, k](const State& y) { return (*t)(nth_product(x, k, y)); },
                           [t, x, k](const State& y) { return nth_product((*t)(x), k, (*t)(y)); }});
    }
  out.push_back(check_cases("n-th products preserved", small, prods, jobs));
  return out;
}

std::vector<CheckResult> glued_differential_check(const AtlasSystem& sys, const AtlasWindow& w, int jobs) {
  std::vector<CheckResult> out;
  const int n = sys.atlas->size();
  std::vector<State> gens{State::vacuum(*sys.model)};
  for (int i = 0; i < sys.gamma.m; ++i)
    gens.push_back(State::coefficient(*sys.model, Polynomial::variable(sys.gamma.m, i)));
  for (int j = 0; j < sys.bc.r; ++j)
    gens.push_back(apply_mode(mk(sys.bc.c, j, 0), State::vacuum(*sys.model)));
  CheckResult g = make_check("D intertwines on generators", true, {}, 0);
  std::vector<OperatorCase> cases;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const TransitionMorphism* t = &sys.morphism(a, b);
      OpExpr da = sys.charts[a]->d(), db = sys.charts[b]->d();
      if (g.passed) {
        GeneratorCheck gc = check_intertwines_on_generators([t](const State& s) { return (*t)(s); }, db, da, gens);
        g.checked += gens.size();
        if (!gc.ok) {
          g.passed = false;
          g.witness = pair_name(sys, a, b) + ": " + gc.witness;
        }
      }
      cases.push_back({"D theta " + pair_name(sys, a, b), [t, da](const State& s) { return da((*t)(s)); },
                       [t, db](const State& s) { return (*t)(db(s)); }});
    }
  out.push_back(g);
  out.push_back(check_cases("D intertwines on window states", atlas_states(sys, w), cases, jobs));
  return out;
}

GlobalBlock global_sections(const AtlasSystem& sys, const BlockKey& key) {
  GlobalBlock gb;
  gb.key = key;
  BlockSpace block(*sys.model, enumerate_block(*sys.model, sys.sector(), key.weight, key.degree, 0, key.poly_degree));
  const int n = sys.atlas->size();
  const int dim = static_cast<int>(block.dim());
  gb.chart_dim = block.dim();
  std::vector<SparseVec> rows;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const TransitionMorphism& t = sys.morphism(a, b);
      std::vector<SparseVec> local(dim);
      for (int i = 0; i < dim; ++i) {
        SparseVec coords;
        if (auto stray = block.coordinates(t(block.element(i)), coords))
          throw Error("transition leaves the block at " + word_str(*sys.model, stray->word));
        for (const auto& [r, v] : coords) local[r][b * dim + i] = v;
      }
      for (int r = 0; r < dim; ++r) {
        local[r][a * dim + r] -= Scalar(1);
        if (local[r][a * dim + r].is_zero()) local[r].erase(a * dim + r);
        rows.push_back(local[r]);
      }
    }
  for (const auto& v : nullspace(rows, n * dim)) {
    std::vector<SparseVec> parts(n);
    for (const auto& [i, x] : v) parts[i / dim][i % dim] = x;
    gb.basis.push_back(std::move(parts));
  }
  gb.global_dim = gb.basis.size();
  return gb;
}

GlobalCohomology global_cohomology(const AtlasSystem& sys, const AtlasWindow& w, int jobs) {
  GlobalCohomology out;
  out.closed = make_check("D preserves global sections", true, {}, 0);
  const int n = sys.atlas->size();
  const int top = sys.atlas->r() + w.max_weight;
  std::vector<BlockKey> keys;
  for (int wt = 0; wt <= w.max_weight; ++wt)
    for (int deg = 0; deg <= top + 1; ++deg) keys.push_back({wt, deg, w.max_poly_degree});
  std::vector<GlobalBlock> blocks(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) { blocks[i] = global_sections(sys, keys[i]); });
  std::vector<std::size_t> rank(keys.size(), 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].degree > top) continue;
    BlockSpace src(*sys.model, enumerate_block(*sys.model, sys.sector(), keys[i].weight, keys[i].degree, 0,
                                               keys[i].poly_degree));
    BlockSpace dst(*sys.model, enumerate_block(*sys.model, sys.sector(), keys[i].weight, keys[i].degree + 1, 0,
                                               keys[i].poly_degree));
    const int dd = static_cast<int>(dst.dim());
    EchelonBasis image;
    for (const auto& tuple : blocks[i].basis) {
      std::vector<State> imgs;
      SparseVec joined;
      for (int a = 0; a < n; ++a) {
        State t = sys.charts[a]->d()(src.combination(tuple[a]));
        SparseVec coords;
        if (auto stray = dst.coordinates(t, coords))
          throw Error("differential leaves the block at " + word_str(*sys.model, stray->word));
        for (const auto& [r, v] : coords) joined[a * dd + r] = v;
        imgs.push_back(std::move(t));
      }
      for (int a = 0; a < n && out.closed.passed; ++a)
        for (int b = 0; b < n; ++b) {
          ++out.closed.checked;
          if (!(sys.morphism(a, b)(imgs[b]) == imgs[a])) {
            out.closed.passed = false;
            out.closed.witness = "image of a global section is not global on " + pair_name(sys, a, b);
            break;
          }
        }
      image.insert(joined);
    }
    rank[i] = image.rank();
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].degree > top) continue;
    CohomologyEntry e;
    e.key = keys[i];
    e.block_dim = blocks[i].chart_dim;
    e.carrier_dim = blocks[i].global_dim;
    e.rank_out = rank[i];
    std::size_t prev = keys[i].degree > 0 ? rank[i - 1] : 0;
    e.dimension = e.carrier_dim - e.rank_out - prev;
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace chiral
