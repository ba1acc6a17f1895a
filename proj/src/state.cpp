#include "chiral/state.hpp"

#include <algorithm>

#include "chiral/error.hpp"

namespace chiral {

State State::vacuum(const Model& model) {
  return coefficient(model, Polynomial::constant(model.num_vars(), Scalar(1)));
}

State State::coefficient(const Model& model, const Polynomial& p) {
  State s(model);
  s.add(Word{}, p);
  return s;
}

State State::basis(const Model& model, const BasisKey& key, const Scalar& c) {
  State s(model);
  s.add_basis(key, c);
  return s;
}

void State::add(const Word& w, const Polynomial& p) {
  if (p.is_zero()) return;
  if (p.num_vars() != model_->num_vars()) throw ModelMismatch("coefficient ring mismatch");
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

void State::add(Word&& w, const Polynomial& p) {
  if (p.is_zero()) return;
  if (p.num_vars() != model_->num_vars()) throw ModelMismatch("coefficient ring mismatch");
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(std::move(w), p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

void State::add_basis(const BasisKey& key, const Scalar& c) {
  if (c.is_zero()) return;
  add(key.word, Polynomial::monomial(key.exps, c));
}

void State::for_each_basis(const std::function<void(const BasisKey&, const Scalar&)>& fn) const {
  BasisKey key;
  for (const auto& [w, p] : terms_) {
    key.word = w;
    for (const auto& [e, c] : p.terms()) {
      key.exps = e;
      fn(key, c);
    }
  }
}

void State::check_same(const State& o) const {
  if (o.model_ != model_) throw ModelMismatch("states from different models");
}

State& State::operator+=(const State& o) {
  check_same(o);
  for (const auto& [w, p] : o.terms_) add(w, p);
  return *this;
}

State& State::operator-=(const State& o) {
  check_same(o);
  for (const auto& [w, p] : o.terms_) add(w, -p);
  return *this;
}

State& State::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, p] : terms_) p *= c;
  return *this;
}

State State::multiply_coefficients(const Polynomial& g) const {
  State r(*model_);
  for (const auto& [w, p] : terms_) r.add(w, p * g);
  return r;
}

bool operator==(const State& a, const State& b) {
  return a.model_ == b.model_ && a.terms_ == b.terms_;
}

int word_weight(const Model& model, const Word& w) {
  int s = 0;
  for (const auto& m : w) s += model.weight(m);
  return s;
}

int word_degree(const Model& model, const Word& w) {
  int s = 0;
  for (const auto& m : w) s += model.degree(m);
  return s;
}

int word_poly_degree(const Model& model, const Word& w) {
  int s = 0;
  for (const auto& m : w) s += model.poly_degree(m);
  return s;
}

int count_odd(const Model& model, const Word& w) {
  int s = 0;
  for (const auto& m : w) s += model.is_odd(m) ? 1 : 0;
  return s;
}

int State::max_weight() const {
  int mx = 0;
  for (const auto& [w, p] : terms_) mx = std::max(mx, word_weight(*model_, w));
  return mx;
}

Grade grade_of(const Model& model, const BasisKey& key) {
  int d = 0;
  for (int e : key.exps) d += e;
  return Grade{word_weight(model, key.word), word_degree(model, key.word),
               word_poly_degree(model, key.word) + d};
}

Grade grade_of(const State& s) {
  bool first = true;
  Grade g;
  s.for_each_basis([&](const BasisKey& k, const Scalar&) {
    Grade h = grade_of(s.model(), k);
    if (first) {
      g = h;
      first = false;
    } else if (!(g == h)) {
      throw InputError("state is not homogeneous");
    }
  });
  return g;
}

std::string word_str(const Model& model, const Word& w) {
  std::string s;
  for (const auto& m : w) {
    if (!s.empty()) s += " ";
    s += model.mode_name(m);
  }
  return s.empty() ? "1" : s;
}

std::string State::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, p] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + p.str() + ")*" + word_str(*model_, w);
  }
  return s;
}

void enforce_caps(const State& s) {
  const Model& m = s.model();
  const Caps& caps = m.caps();
  for (const auto& [w, p] : s.terms()) {
    int wt = word_weight(m, w);
    if (wt > caps.max_weight)
      throw CapOverflow("weight " + std::to_string(wt) + " exceeds cap " +
                        std::to_string(caps.max_weight));
    int pd = word_poly_degree(m, w) + p.total_degree();
    if (pd > caps.max_poly_degree)
      throw CapOverflow("poly-degree " + std::to_string(pd) + " exceeds cap " +
                        std::to_string(caps.max_poly_degree));
  }
}

State apply_mode(const Mode& a, const State& s) {
  const Model& model = s.model();
  model.check_mode(a);
  const Species& sp = model.species(a.species);
  const bool odd = model.is_odd(a);
  State r(model);
  if (model.is_creation(a)) {
    for (const auto& [w, p] : s.terms()) {
      auto pos = std::upper_bound(w.begin(), w.end(), a);
      if (odd && pos != w.begin() && *(pos - 1) == a) continue;
      int before = 0;
      if (odd)
        for (auto it = w.begin(); it != pos; ++it) before += model.is_odd(*it) ? 1 : 0;
      Word nw;
      nw.reserve(w.size() + 1);
      nw.insert(nw.end(), w.begin(), pos);
      nw.push_back(a);
      nw.insert(nw.end(), pos, w.end());
      r.add(std::move(nw), (before % 2) ? -p : p);
    }
    enforce_caps(r);
    return r;
  }
  // Annihilation: contract with each conjugate mode in the word, then act on the coefficient.
  const int partner = sp.partner;
  const Scalar bracket = sp.kind == FieldKind::Gamma ? Scalar(-1) : Scalar(1);
  for (const auto& [w, p] : s.terms()) {
    int odd_seen = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const Mode& m = w[j];
      if (m.species == partner && m.index == a.index && m.level + a.level == 0) {
        Word nw;
        nw.reserve(w.size() - 1);
        nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long>(j));
        nw.insert(nw.end(), w.begin() + static_cast<long>(j) + 1, w.end());
        bool neg = odd && (odd_seen % 2);
        r.add(std::move(nw), p * (neg ? -bracket : bracket));
      }
      if (model.is_odd(m)) ++odd_seen;
    }
    if (sp.on_coefficients && a.level == 0) {
      if (sp.kind == FieldKind::Beta) {
        r.add(w, p.partial(a.index));
      } else {
        r.add(w, p * Polynomial::variable(model.num_vars(), a.index));
      }
    }
  }
  if (sp.on_coefficients && a.level == 0 && sp.kind == FieldKind::Gamma) enforce_caps(r);
  return r;
}

State apply_modes(const std::vector<Mode>& modes, const State& s) {
  State r = s;
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) r = apply_mode(*it, r);
  return r;
}

}  // namespace chiral
