#include "chiral/basis.hpp"

#include <algorithm>
#include <functional>

#include "chiral/error.hpp"

namespace chiral {

bool Sector::allows(int species_id) const {
  return std::find(species.begin(), species.end(), species_id) != species.end();
}

bool Sector::contains(const Model& model, const BasisKey& k) const {
  for (const auto& m : k.word)
    if (!allows(m.species)) return false;
  if (!coefficients)
    for (int e : k.exps)
      if (e != 0) return false;
  (void)model;
  return true;
}

namespace {

void enumerate_monomials(int nvars, int max_deg, int min_deg,
                         const std::function<void(const Exponents&)>& fn) {
  Exponents e(nvars, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars) {
      int d = max_deg - left;
      if (d >= min_deg) fn(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (max_deg < 0) return;
  if (nvars == 0) {
    if (min_deg <= 0) fn(e);
    return;
  }
  rec(0, max_deg);
}

struct Candidate {
  Mode mode;
  int weight, degree, pd;
  bool odd;
};

}  // namespace

std::vector<BasisKey> enumerate_block(const Model& model, const Sector& sector, int weight, int degree,
                                      int min_poly_degree, int max_poly_degree) {
  std::vector<BasisKey> out;
  if (weight < 0 || max_poly_degree < 0) return out;
  std::vector<Candidate> cands;
  int min_deg_per_weight = 0;  // most negative degree per unit weight among available modes
  for (int s : sector.species) {
    const Species& sp = model.species(s);
    for (int level = 0; level >= -weight; --level) {
      for (int idx = 0; idx < sp.rank; ++idx) {
        Mode m{static_cast<std::int16_t>(s), static_cast<std::int16_t>(idx), level};
        if (!model.is_creation(m)) continue;
        cands.push_back({m, -level, sp.degree, sp.poly_degree, model.is_odd(m)});
        if (-level > 0) {
          // floor(degree / weight)
          int w = -level;
          int q = sp.degree >= 0 ? sp.degree / w : -((-sp.degree + w - 1) / w);
          min_deg_per_weight = std::min(min_deg_per_weight, q);
        }
      }
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.mode < b.mode; });
  for (const auto& c : cands)
    if (c.weight == 0 && !c.odd && c.degree <= 0)
      throw InputError("weight-zero even mode of non-positive degree makes blocks infinite");

  const int nvars = sector.coefficients ? model.num_vars() : 0;
  Word word;
  std::function<void(std::size_t, int, int, int)> rec = [&](std::size_t i, int w, int d, int pd) {
    if (pd > max_poly_degree || w > weight) return;
    if (i == cands.size()) {
      if (w != weight || d != degree) return;
      BasisKey key;
      key.word = word;
      enumerate_monomials(nvars, max_poly_degree - pd, min_poly_degree - pd, [&](const Exponents& e) {
        key.exps = e;
        if (static_cast<int>(key.exps.size()) != model.num_vars()) key.exps.assign(model.num_vars(), 0);
        out.push_back(key);
      });
      return;
    }
    const Candidate& c = cands[i];
    int max_count;
    if (c.odd) {
      max_count = 1;
    } else if (c.weight > 0) {
      max_count = (weight - w) / c.weight;
    } else {
      // Remaining modes can lower the degree by at most |min_deg_per_weight| per weight unit.
      int budget = degree - d - min_deg_per_weight * (weight - w);
      max_count = budget < 0 ? 0 : budget / c.degree;
    }
    std::size_t base = word.size();
    for (int k = 0; k <= max_count; ++k) {
      if (k > 0) word.push_back(c.mode);
      rec(i + 1, w + k * c.weight, d + k * c.degree, pd + k * c.pd);
    }
    word.resize(base);
  };
  rec(0, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BasisKey> enumerate_range(const Model& model, const Sector& sector, int max_weight, int dmin,
                                      int dmax, int max_poly_degree) {
  std::vector<BasisKey> out;
  for (int w = 0; w <= max_weight; ++w)
    for (int d = dmin; d <= dmax; ++d) {
      auto b = enumerate_block(model, sector, w, d, 0, max_poly_degree);
      out.insert(out.end(), b.begin(), b.end());
    }
  return out;
}

BlockSpace::BlockSpace(const Model& model, std::vector<BasisKey> basis)
    : model_(&model), basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], static_cast<int>(i));
}

std::optional<int> BlockSpace::index(const BasisKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

State BlockSpace::combination(const SparseVec& v) const {
  State s(*model_);
  for (const auto& [i, c] : v) s.add_basis(basis_[i], c);
  return s;
}

std::optional<BasisKey> BlockSpace::coordinates(const State& s, SparseVec& out) const {
  out.clear();
  std::optional<BasisKey> stray;
  s.for_each_basis([&](const BasisKey& k, const Scalar& c) {
    auto it = index_.find(k);
    if (it == index_.end()) {
      if (!stray) stray = k;
      return;
    }
    out[it->second] += c;
  });
  return stray;
}

SparseVec DynamicIndex::coordinates(const State& s) {
  SparseVec v;
  s.for_each_basis([&](const BasisKey& k, const Scalar& c) {
    auto [it, inserted] = index_.emplace(k, static_cast<int>(index_.size()));
    v[it->second] += c;
  });
  return v;
}

}  // namespace chiral
