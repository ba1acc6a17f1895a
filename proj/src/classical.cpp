#include "chiral/classical.hpp"

#include <algorithm>
#include <functional>

#include "chiral/error.hpp"

namespace chiral {

namespace {

// Sign of the permutation sorting idx, or 0 when idx has a repeat.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

void for_each_subset(int r, int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == n) {
      fn(cur);
      return;
    }
    for (int j = start; j < r; ++j) {
      cur.push_back(j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

void prune(ClassicalForm& w) {
  for (auto it = w.values.begin(); it != w.values.end();) {
    if (it->second.is_zero()) it = w.values.erase(it);
    else ++it;
  }
}

}  // namespace

Polynomial evaluate_form(const AlgebroidData& a, const ClassicalForm& w, const std::vector<Section>& args) {
  if (static_cast<int>(args.size()) != w.degree) throw InputError("wrong number of form arguments");
  Polynomial total(a.m());
  std::vector<int> idx(args.size());
  std::function<void(std::size_t, Polynomial)> rec = [&](std::size_t t, Polynomial coeff) {
    if (coeff.is_zero()) return;
    if (t == args.size()) {
      std::vector<int> sorted = idx;
      int s = sort_sign(sorted);
      if (s == 0) return;
      auto it = w.values.find(sorted);
      if (it == w.values.end()) return;
      total += coeff * it->second * Scalar(s);
      return;
    }
    for (int j = 0; j < a.r(); ++j) {
      if (args[t][j].is_zero()) continue;
      idx[t] = j;
      rec(t + 1, coeff * args[t][j]);
    }
  };
  rec(0, Polynomial::constant(a.m(), Scalar(1)));
  return total;
}

ClassicalForm classical_lie_algebroid_differential(const AlgebroidData& a, const ClassicalForm& w) {
  ClassicalForm out;
  out.degree = w.degree + 1;
  const int n = w.degree;
  for_each_subset(a.r(), n + 1, [&](const std::vector<int>& J) {
    std::vector<Section> X;
    for (int j : J) X.push_back(a.basis_section(j));
    Polynomial v(a.m());
    for (int i = 0; i <= n; ++i) {
      std::vector<Section> rest;
      for (int t = 0; t <= n; ++t)
        if (t != i) rest.push_back(X[t]);
      Polynomial term = a.apply_anchor(X[i], evaluate_form(a, w, rest));
      v += (i % 2 == 0) ? term : -term;
    }
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::vector<Section> args{a.bracket(X[i], X[j])};
        for (int t = 0; t <= n; ++t)
          if (t != i && t != j) args.push_back(X[t]);
        Polynomial term = evaluate_form(a, w, args);
        v += ((i + j) % 2 == 0) ? term : -term;
      }
    out.values[J] = v;
  });
  prune(out);
  return out;
}

ClassicalForm classical_contraction(const AlgebroidData& a, const Section& X, const ClassicalForm& w) {
  ClassicalForm out;
  out.degree = w.degree - 1;
  if (w.degree == 0) return out;
  for_each_subset(a.r(), w.degree - 1, [&](const std::vector<int>& J) {
    std::vector<Section> args{X};
    for (int j : J) args.push_back(a.basis_section(j));
    out.values[J] = evaluate_form(a, w, args);
  });
  prune(out);
  return out;
}

ClassicalForm classical_lie_derivative(const AlgebroidData& a, const Section& X, const ClassicalForm& w) {
  ClassicalForm out;
  out.degree = w.degree;
  for_each_subset(a.r(), w.degree, [&](const std::vector<int>& J) {
    std::vector<Section> Y;
    for (int j : J) Y.push_back(a.basis_section(j));
    Polynomial v = a.apply_anchor(X, evaluate_form(a, w, Y));
    for (std::size_t i = 0; i < Y.size(); ++i) {
      std::vector<Section> args = Y;
      args[i] = a.bracket(X, Y[i]);
      v -= evaluate_form(a, w, args);
    }
    out.values[J] = v;
  });
  prune(out);
  return out;
}

State form_to_state(const AlgebroidSystem& sys, const ClassicalForm& w) {
  const Model& model = sys.model();
  State s(model);
  for (const auto& [J, f] : w.values) {
    std::vector<Mode> modes;
    for (int j : J) modes.push_back(sys.c(j, 0));
    s += apply_modes(modes, State::coefficient(model, f));
  }
  return s;
}

ClassicalForm state_to_form(const AlgebroidSystem& sys, const State& s, int degree) {
  ClassicalForm w;
  w.degree = degree;
  for (const auto& [word, p] : s.terms()) {
    std::vector<int> J;
    for (const auto& m : word) {
      if (m.species != sys.bc_species().c || m.level != 0)
        throw InputError("state is not in the weight-zero form sector");
      J.push_back(m.index);
    }
    if (static_cast<int>(J.size()) != degree) throw InputError("state has the wrong form degree");
    auto [it, inserted] = w.values.emplace(J, p);
    if (!inserted) it->second += p;
  }
  prune(w);
  return w;
}

}  // namespace chiral
