#include "chiral/algebroid.hpp"

#include "chiral/error.hpp"
#include "chiral/ope.hpp"

namespace chiral {

AlgebroidData::AlgebroidData(int m, int r)
    : m_(m), r_(r),
      anchor_(static_cast<std::size_t>(m) * r, Polynomial(m)),
      structure_(static_cast<std::size_t>(r) * r * r, Polynomial(m)) {
  if (m < 0 || r < 0) throw InputError("negative algebroid rank");
}

AlgebroidData AlgebroidData::transformation(const LieData& g,
                                            const std::vector<std::vector<Polynomial>>& vector_fields, int m) {
  const int r = g.dim();
  if (static_cast<int>(vector_fields.size()) != r) throw InputError("one vector field per Lie algebra basis vector");
  AlgebroidData a(m, r);
  for (int j = 0; j < r; ++j) {
    if (static_cast<int>(vector_fields[j].size()) != m) throw InputError("vector field has wrong number of components");
    for (int i = 0; i < m; ++i) {
      if (vector_fields[j][i].num_vars() != m) throw InputError("vector field over wrong coordinates");
      a.set_anchor(i, j, vector_fields[j][i]);
    }
  }
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) a.set_structure(j, k, l, Polynomial::constant(m, g.bracket(j, k, l)));
  a.validate();
  return a;
}

Section AlgebroidData::basis_section(int j) const {
  Section s = zero_section();
  s.at(j) = Polynomial::constant(m_, Scalar(1));
  return s;
}

Section AlgebroidData::zero_section() const { return Section(r_, Polynomial(m_)); }

Polynomial AlgebroidData::apply_anchor(const Section& X, const Polynomial& g) const {
  Polynomial r(m_);
  for (int j = 0; j < r_; ++j) {
    if (X[j].is_zero()) continue;
    for (int i = 0; i < m_; ++i) {
      if (anchor(i, j).is_zero()) continue;
      r += X[j] * anchor(i, j) * g.partial(i);
    }
  }
  return r;
}

Section AlgebroidData::bracket(const Section& X, const Section& Y) const {
  Section out = zero_section();
  for (int j = 0; j < r_; ++j)
    for (int k = 0; k < r_; ++k) {
      if (X[j].is_zero() || Y[k].is_zero()) continue;
      Polynomial xy = X[j] * Y[k];
      for (int l = 0; l < r_; ++l)
        if (!structure(j, k, l).is_zero()) out[l] += xy * structure(j, k, l);
    }
  for (int k = 0; k < r_; ++k) {
    out[k] += apply_anchor(X, Y[k]);
    out[k] -= apply_anchor(Y, X[k]);
  }
  return out;
}

void AlgebroidData::validate() const {
  for (int j = 0; j < r_; ++j)
    for (int k = 0; k < r_; ++k)
      for (int l = 0; l < r_; ++l)
        if (!(structure(j, k, l) == -structure(k, j, l)))
          throw ValidationError("algebroid structure functions are not antisymmetric");
  // a([e_j, e_k]) = [a(e_j), a(e_k)] as vector fields
  for (int j = 0; j < r_; ++j)
    for (int k = j + 1; k < r_; ++k)
      for (int i = 0; i < m_; ++i) {
        Polynomial lhs(m_), rhs(m_);
        for (int l = 0; l < r_; ++l) lhs += structure(j, k, l) * anchor(i, l);
        for (int s = 0; s < m_; ++s) {
          rhs += anchor(s, j) * anchor(i, k).partial(s);
          rhs -= anchor(s, k) * anchor(i, j).partial(s);
        }
        if (!(lhs == rhs))
          throw ValidationError("anchor is not a bracket morphism on (e" + std::to_string(j + 1) + ", e" +
                                std::to_string(k + 1) + ")");
      }
  for (int a = 0; a < r_; ++a)
    for (int b = a + 1; b < r_; ++b)
      for (int c = b + 1; c < r_; ++c) {
        Section ea = basis_section(a), eb = basis_section(b), ec = basis_section(c);
        Section s1 = bracket(bracket(ea, eb), ec);
        Section s2 = bracket(bracket(eb, ec), ea);
        Section s3 = bracket(bracket(ec, ea), eb);
        for (int l = 0; l < r_; ++l)
          if (!(s1[l] + s2[l] + s3[l]).is_zero())
            throw ValidationError("algebroid bracket fails Jacobi on (e" + std::to_string(a + 1) + ", e" +
                                  std::to_string(b + 1) + ", e" + std::to_string(c + 1) + ")");
      }
}

bool AlgebroidData::preserves_poly_degree() const {
  for (const auto& f : anchor_)
    for (const auto& [e, c] : f.terms()) {
      int d = 0;
      for (int x : e) d += x;
      if (d != 1) return false;
    }
  for (const auto& g : structure_)
    if (!g.is_constant()) return false;
  return true;
}

namespace {
Mode mk(int s, int i, int level) {
  return Mode{static_cast<std::int16_t>(s), static_cast<std::int16_t>(i), level};
}
}  // namespace

Mode AlgebroidSystem::beta(int i, int level) const { return mk(g_.beta, i, level); }
Mode AlgebroidSystem::gamma(int i, int level) const { return mk(g_.gamma, i, level); }
Mode AlgebroidSystem::b(int j, int level) const { return mk(bc_.b, j, level); }
Mode AlgebroidSystem::c(int j, int level) const { return mk(bc_.c, j, level); }
State AlgebroidSystem::c_state(int j) const { return apply_mode(c(j, 0), State::vacuum(*model_)); }
State AlgebroidSystem::b_state(int j) const { return apply_mode(b(j, -1), State::vacuum(*model_)); }

AlgebroidSystem::AlgebroidSystem(const Model& model, const GammaSpecies& g, const BcSpecies& bc,
                                 AlgebroidData data)
    : model_(&model), g_(g), bc_(bc), data_(std::move(data)), q_(model) {
  if (data_.m() != g.m || data_.r() != bc.r || model.num_vars() != data_.m())
    throw ModelMismatch("algebroid data does not match the model ranks");
  // Q = sum_{i,j} beta^i_{-1} c^j_0 (x) f^{ij} - 1/2 sum c^j_0 c^k_0 b^l_{-1} (x) Gamma^{jk}_l
  for (int i = 0; i < data_.m(); ++i)
    for (int j = 0; j < data_.r(); ++j) {
      const Polynomial& f = data_.anchor(i, j);
      if (f.is_zero()) continue;
      q_ += apply_modes({beta(i, -1), c(j, 0)}, State::coefficient(model, f));
    }
  for (int j = 0; j < data_.r(); ++j)
    for (int k = 0; k < data_.r(); ++k)
      for (int l = 0; l < data_.r(); ++l) {
        const Polynomial& s = data_.structure(j, k, l);
        if (s.is_zero()) continue;
        State t = apply_modes({c(j, 0), c(k, 0), b(l, -1)}, State::coefficient(model, s));
        t *= Scalar(-1, 2);
        q_ += t;
      }
  d_ = q_.is_zero() ? OpExpr::zero(true) : field_mode(q_, 0);
}

State AlgebroidSystem::iota_state(const Section& X) const {
  if (static_cast<int>(X.size()) != data_.r()) throw ModelMismatch("section has wrong rank");
  State s(*model_);
  for (int j = 0; j < data_.r(); ++j)
    if (!X[j].is_zero()) s += apply_mode(b(j, -1), State::coefficient(*model_, X[j]));
  return s;
}

OpExpr AlgebroidSystem::iota(const Section& X, int n) const {
  State s = iota_state(X);
  if (s.is_zero()) return OpExpr::zero(true);
  return field_mode(s, n);
}

OpExpr AlgebroidSystem::lie(const Section& X, int n) const {
  return OpExpr::cached(supercommutator(d_, iota(X, n)));
}

Sector AlgebroidSystem::gc_sector() const { return Sector{{g_.gamma, bc_.c}, true, "gamma-c"}; }
Sector AlgebroidSystem::function_sector() const { return Sector{{g_.gamma}, true, "functions"}; }

AlgebroidModel make_algebroid_model(const AlgebroidData& data, const Caps& caps) {
  auto model = std::make_shared<Model>();
  GammaSpecies g = model->add_gamma_factor(data.m(), "");
  BcSpecies bc = model->add_bc_factor(data.r(), "");
  model->set_caps(caps);
  AlgebroidModel am;
  am.model = model;
  am.algebroid = std::make_shared<AlgebroidSystem>(*model, g, bc, data);
  return am;
}

}  // namespace chiral
