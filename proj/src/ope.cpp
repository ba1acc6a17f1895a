#include "chiral/ope.hpp"

#include "chiral/error.hpp"
#include "chiral/gamma_chiral.hpp"
#include "model_cache.hpp"

namespace chiral {

namespace {

int generator_weight(const Model& m, int species) { return 1 - m.field_shift(species); }

bool word_odd(const Model& m, const Word& w, std::size_t from) {
  int c = 0;
  for (std::size_t i = from; i < w.size(); ++i) c += m.is_odd(w[i]) ? 1 : 0;
  return c % 2;
}

// Shared recursion. Ctx provides:
//   State apply(const Mode&, const State&)       generator mode on the target
//   State coefficient(const Exponents&, int n, const BasisKey& v)
//   int weight(const BasisKey& v)
//   std::optional<State> recall(key) / remember(key, value)
template <class Ctx>
State product_basis(Ctx& ctx, const Model& src, const Word& aw, std::size_t start,
                    const Exponents& aexps, int n, const BasisKey& v);

template <class Ctx>
State product_state(Ctx& ctx, const Model& src, const Word& aw, std::size_t start,
                    const Exponents& aexps, int n, const State& V) {
  State r(ctx.target());
  V.for_each_basis([&](const BasisKey& k, const Scalar& c) {
    State t = product_basis(ctx, src, aw, start, aexps, n, k);
    if (t.is_zero()) return;
    if (!c.is_one()) t *= c;
    r += t;
  });
  return r;
}

template <class Ctx>
State product_basis(Ctx& ctx, const Model& src, const Word& aw, std::size_t start,
                    const Exponents& aexps, int n, const BasisKey& v) {
  if (start == aw.size()) return ctx.coefficient(aexps, n, v);
  const int wt_rest = [&] {
    int s = 0;
    for (std::size_t i = start + 1; i < aw.size(); ++i) s += src.weight(aw[i]);
    return s;
  }();
  const int wt_v = ctx.weight(v);
  // Weight of A'_(n) v is wt A' + wt v - n - 1; nonpositive total means zero.
  if (wt_rest + src.weight(aw[start]) + wt_v - n - 1 < 0) return State(ctx.target());

  Word key_word(aw.begin() + static_cast<long>(start), aw.end());
  auto key = std::make_tuple(BasisKey{key_word, aexps}, n, v);
  if (auto hit = ctx.recall(key)) return *hit;

  const Mode& m = aw[start];
  const int shift = src.field_shift(m.species);
  const int j = -(m.level - shift) - 1;
  const bool a_odd = src.is_odd(m);
  const bool rest_odd = word_odd(src, aw, start + 1);
  State result(ctx.target());

  // sum_i binom(j+i, i) a_(-j-1-i) A'_(n+i) v
  for (int i = 0; wt_rest + wt_v - 1 - (n + i) >= 0; ++i) {
    State x = product_basis(ctx, src, aw, start + 1, aexps, n + i, v);
    if (x.is_zero()) continue;
    Mode am = m;
    am.level = -j - 1 - i + shift;
    State t = ctx.apply(am, x);
    if (t.is_zero()) continue;
    t *= binomial(j + i, i);
    result += t;
  }
  // (-1)^j p(a, A') sum_i binom(j+i, i) A'_(n-j-1-i) a_(i) v
  Scalar sign = ((j % 2) != 0) != (a_odd && rest_odd) ? Scalar(-1) : Scalar(1);
  const int wt_a = generator_weight(src, m.species);
  State vs = State::basis(ctx.target(), v);
  for (int i = 0; wt_a + wt_v - i - 1 >= 0; ++i) {
    Mode am = m;
    am.level = i + shift;
    State y = ctx.apply(am, vs);
    if (y.is_zero()) continue;
    State t = product_state(ctx, src, aw, start + 1, aexps, n - j - 1 - i, y);
    if (t.is_zero()) continue;
    t *= sign * binomial(j + i, i);
    result += t;
  }
  ctx.remember(key, result);
  return result;
}

struct SelfCtx {
  const Model& model;
  const Model& target() const { return model; }
  State apply(const Mode& m, const State& s) const { return apply_mode(m, s); }
  State coefficient(const Exponents& e, int n, const BasisKey& v) const {
    Polynomial g = Polynomial::monomial(e, Scalar(1));
    return f_mode_action(g, n, State::basis(model, v));
  }
  int weight(const BasisKey& v) const { return word_weight(model, v.word); }
  std::optional<State> recall(const std::tuple<BasisKey, int, BasisKey>& k) const {
    return model.cache().products.find(k);
  }
  void remember(const std::tuple<BasisKey, int, BasisKey>& k, const State& s) const {
    model.cache().products.store(k, s);
  }
};

struct ModuleCtx {
  const Model& module;
  const GeneratorAction& act;
  std::map<std::tuple<BasisKey, int, BasisKey>, State> memo;
  const Model& target() const { return module; }
  State apply(const Mode& m, const State& s) const { return act.apply(m, s); }
  State coefficient(const Exponents& e, int n, const BasisKey& v) const {
    for (int x : e)
      if (x != 0) throw InputError("module products need scalar coefficients");
    if (n != -1) return State(module);
    return State::basis(module, v);
  }
  int weight(const BasisKey& v) const { return act.max_weight(State::basis(module, v)); }
  std::optional<State> recall(const std::tuple<BasisKey, int, BasisKey>& k) const {
    auto it = memo.find(k);
    if (it == memo.end()) return std::nullopt;
    return it->second;
  }
  void remember(const std::tuple<BasisKey, int, BasisKey>& k, const State& s) { memo.emplace(k, s); }
};

}  // namespace

State nth_product(const State& A, int n, const State& B) {
  if (&A.model() != &B.model()) throw ModelMismatch("nth_product across models");
  const Model& model = A.model();
  SelfCtx ctx{model};
  State r(model);
  A.for_each_basis([&](const BasisKey& a, const Scalar& ca) {
    State t = product_state(ctx, model, a.word, 0, a.exps, n, B);
    if (t.is_zero()) return;
    t *= ca;
    r += t;
  });
  return r;
}

OpExpr field_mode(const State& A, int n) {
  bool odd = false;
  bool first = true;
  A.for_each_basis([&](const BasisKey& k, const Scalar&) {
    bool o = count_odd(A.model(), k.word) % 2;
    if (!first && o != odd) throw Error("field_mode of a state with mixed parity");
    odd = o;
    first = false;
  });
  return OpExpr::cached(OpExpr::function([A, n](const State& s) { return nth_product(A, n, s); },
                                         odd, "Y(" + A.str() + ")_(" + std::to_string(n) + ")"));
}

OpExpr borcherds_commutator(const State& A, int m, const State& B, int k) {
  std::vector<std::pair<Scalar, OpExpr>> terms;
  int bound = A.max_weight() + B.max_weight();
  for (int i = 0; i <= bound; ++i) {
    State c = nth_product(A, i, B);
    if (c.is_zero()) continue;
    Scalar b = binomial(m, i);
    if (b.is_zero()) continue;
    terms.emplace_back(b, field_mode(c, m + k - i));
  }
  if (terms.empty()) {
    bool odd = false;
    A.for_each_basis([&](const BasisKey& x, const Scalar&) { odd ^= count_odd(A.model(), x.word) % 2; });
    return OpExpr::zero(odd);
  }
  return linear_combination(terms);
}

State module_nth_product(const State& x, int n, const State& v, const GeneratorAction& act) {
  const Model& src = x.model();
  ModuleCtx ctx{v.model(), act, {}};
  State r(v.model());
  x.for_each_basis([&](const BasisKey& a, const Scalar& ca) {
    State t = product_state(ctx, src, a.word, 0, a.exps, n, v);
    if (t.is_zero()) return;
    t *= ca;
    r += t;
  });
  return r;
}

GeneratorCheck check_square_zero_via_generators(const OpExpr& D, const std::vector<State>& generators) {
  GeneratorCheck res;
  if (!D.odd()) {
    res.ok = false;
    res.witness = "operator is even";
    return res;
  }
  for (const auto& g : generators) {
    State d2 = D(D(g));
    if (!d2.is_zero()) {
      res.ok = false;
      res.witness = "D^2(" + g.str() + ") = " + d2.str();
      return res;
    }
  }
  return res;
}

GeneratorCheck check_intertwines_on_generators(const std::function<State(const State&)>& phi,
                                               const OpExpr& D1, const OpExpr& D2,
                                               const std::vector<State>& generators) {
  GeneratorCheck res;
  for (const auto& g : generators) {
    State lhs = phi(D1(g));
    State rhs = D2(phi(g));
    if (!(lhs == rhs)) {
      res.ok = false;
      res.witness = "generator " + g.str() + ": " + lhs.str() + " != " + rhs.str();
      return res;
    }
  }
  return res;
}

}  // namespace chiral
