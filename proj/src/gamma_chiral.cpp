#include "chiral/gamma_chiral.hpp"

#include <algorithm>

#include "chiral/error.hpp"
#include "model_cache.hpp"

namespace chiral {

GammaChiralModel make_gamma_chiral_model(int m, int r, const Caps& caps) {
  auto model = std::make_shared<Model>();
  GammaChiralModel g;
  g.gamma = model->add_gamma_factor(m, "");
  g.bc = model->add_bc_factor(r, "");
  model->set_caps(caps);
  g.model = model;
  return g;
}

namespace {

// f_(k) applied to P tensor 1, where P uses only coefficient-system modes.
State coefficient_mode(const Model& model, const GammaSpecies& gs, const Polynomial& f, int k,
                       const Word& P) {
  if (f.is_zero()) return State(model);
  if (P.empty() && k >= -1) {
    if (k == -1) return State::coefficient(model, f);
    return State(model);
  }
  auto key = std::make_tuple(f, k, P);
  if (auto hit = model.cache().coefficient_modes.find(key)) return *hit;

  State result(model);
  if (P.empty()) {
    // k < -1: f_(k) 1 = 1/(k+1) sum_i sum_{k+1 <= q < 0} q gamma^i_q (d_i f)_(k-q) 1.
    Scalar pref = Scalar(1, k + 1);
    for (int i = 0; i < gs.m; ++i) {
      Polynomial df = f.partial(i);
      if (df.is_zero()) continue;
      for (int q = k + 1; q <= -1; ++q) {
        State inner = coefficient_mode(model, gs, df, k - q, Word{});
        if (inner.is_zero()) continue;
        State t = apply_mode(Mode{static_cast<std::int16_t>(gs.gamma),
                                  static_cast<std::int16_t>(i), q},
                             inner);
        t *= pref * Scalar(q);
        result += t;
      }
    }
  } else {
    const Mode& head = P.front();
    Word rest(P.begin() + 1, P.end());
    State inner = coefficient_mode(model, gs, f, k, rest);
    result = apply_mode(head, inner);
    if (head.species == gs.beta) {
      // [f_(k), beta_p] = -(d_i f)_(k+p)
      result -= coefficient_mode(model, gs, f.partial(head.index), k + head.level, rest);
    }
  }
  model.cache().coefficient_modes.store(key, result);
  return result;
}

}  // namespace

State f_mode_action(const Polynomial& f, int k, const State& s) {
  const Model& model = s.model();
  if (f.num_vars() != model.num_vars()) throw ModelMismatch("polynomial ring does not match model");
  State r(model);
  if (f.is_zero()) return r;
  if (f.is_constant()) {
    if (k == -1) {
      r = s;
      r *= f.constant_term();
    }
    return r;
  }
  const GammaSpecies gs = *model.gamma_factor();
  for (const auto& [w, p] : s.terms()) {
    auto lo = std::find_if(w.begin(), w.end(), [&](const Mode& m) { return m.species >= gs.beta; });
    auto hi = std::find_if(lo, w.end(), [&](const Mode& m) { return m.species > gs.gamma; });
    Word mid(lo, hi);
    State img = coefficient_mode(model, gs, f, k, mid);
    for (const auto& [iw, ip] : img.terms()) {
      Word nw;
      nw.reserve(w.size() - mid.size() + iw.size());
      nw.insert(nw.end(), w.begin(), lo);
      nw.insert(nw.end(), iw.begin(), iw.end());
      nw.insert(nw.end(), hi, w.end());
      r.add(std::move(nw), ip * p);
    }
  }
  enforce_caps(r);
  return r;
}

OpExpr f_mode_op(const Polynomial& f, int k) {
  return OpExpr::function([f, k](const State& s) { return f_mode_action(f, k, s); }, false,
                          "f_(" + std::to_string(k) + ")[" + f.str() + "]");
}

namespace {

State translate_basis(const Model& model, const Word& w, std::size_t start, const Polynomial& g) {
  if (start == w.size()) {
    State r(model);
    if (auto gs = model.gamma_factor()) {
      for (int i = 0; i < gs->m; ++i) {
        Polynomial dg = g.partial(i);
        if (dg.is_zero()) continue;
        r += apply_mode(Mode{static_cast<std::int16_t>(gs->gamma), static_cast<std::int16_t>(i), -1},
                        State::coefficient(model, dg));
      }
    }
    return r;
  }
  const Mode& m = w[start];
  Word restw(w.begin() + static_cast<long>(start) + 1, w.end());
  State rest(model);
  rest.add(restw, g);
  int k = m.level - model.field_shift(m.species);
  Mode lowered = m;
  lowered.level -= 1;
  State r = apply_mode(lowered, rest);
  r *= Scalar(-k);
  r += apply_mode(m, translate_basis(model, w, start + 1, g));
  return r;
}

}  // namespace

State translation_operator(const State& s) {
  State r(s.model());
  for (const auto& [w, p] : s.terms()) r += translate_basis(s.model(), w, 0, p);
  return r;
}

OpExpr translation_op() {
  return OpExpr::function([](const State& s) { return translation_operator(s); }, false, "T");
}

}  // namespace chiral
