#include "chiral/weil.hpp"

#include "chiral/ope.hpp"

namespace chiral {

namespace {
Mode mk(int s, int i, int level) {
  return Mode{static_cast<std::int16_t>(s), static_cast<std::int16_t>(i), level};
}
}  // namespace

Mode WeilSystem::beta(int i, int level) const { return mk(sp_.beta, i, level); }
Mode WeilSystem::gamma(int i, int level) const { return mk(sp_.gamma, i, level); }
Mode WeilSystem::b(int i, int level) const { return mk(sp_.b, i, level); }
Mode WeilSystem::c(int i, int level) const { return mk(sp_.c, i, level); }

State WeilSystem::beta_state(int i) const { return apply_mode(beta(i, -1), State::vacuum(*model_)); }
State WeilSystem::gamma_state(int i) const { return apply_mode(gamma(i, 0), State::vacuum(*model_)); }
State WeilSystem::b_state(int i) const { return apply_mode(b(i, -1), State::vacuum(*model_)); }
State WeilSystem::c_state(int i) const { return apply_mode(c(i, 0), State::vacuum(*model_)); }

WeilSystem::WeilSystem(const Model& model, const WeilSpecies& species, LieData lie)
    : model_(&model), sp_(species), lie_(std::move(lie)), j_(model), k_(model) {
  const int n = lie_.dim();
  const State vac = State::vacuum(model);
  // J = -sum_{i,j} beta^{[e_i,e_j]}_{-1} gamma^j_0 c^i_0 - 1/2 sum c^i_0 c^j_0 b^{[e_i,e_j]}_{-1}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Scalar& g = lie_.bracket(i, j, k);
        if (g.is_zero()) continue;
        State t = apply_modes({beta(k, -1), gamma(j, 0), c(i, 0)}, vac);
        t *= -g;
        j_ += t;
        State u = apply_modes({c(i, 0), c(j, 0), b(k, -1)}, vac);
        u *= Scalar(-1, 2) * g;
        j_ += u;
      }
  // K = sum_i gamma^i_0 b^i_{-1}
  for (int i = 0; i < n; ++i) k_ += apply_modes({gamma(i, 0), b(i, -1)}, vac);
  // Theta_E^a = sum_i b^{[e_a,e_i]}_{-1} c^i_0, Theta_S^a = -sum_i beta^{[e_a,e_i]}_{-1} gamma^i_0
  for (int a = 0; a < n; ++a) {
    State te(model), ts(model);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const Scalar& g = lie_.bracket(a, i, k);
        if (g.is_zero()) continue;
        State t = apply_modes({b(k, -1), c(i, 0)}, vac);
        t *= g;
        te += t;
        State u = apply_modes({beta(k, -1), gamma(i, 0)}, vac);
        u *= -g;
        ts += u;
      }
    theta_e_.push_back(te);
    theta_s_.push_back(ts);
  }
  d_ = field_mode(differential_state(), 0);
}

OpExpr WeilSystem::lie_derivative(int a, int n) const {
  State th = theta_state(a);
  if (th.is_zero()) return OpExpr::zero(false);
  return field_mode(th, n);
}

OpExpr WeilSystem::contraction(int a, int n) const { return mode_op(*model_, b(a, n)); }

Sector WeilSystem::full_sector() const { return Sector{{sp_.beta, sp_.gamma, sp_.b, sp_.c}, false, "W"}; }
Sector WeilSystem::wprime_sector() const { return Sector{{sp_.gamma, sp_.c}, false, "W'"}; }
Sector WeilSystem::gamma_sector() const { return Sector{{sp_.gamma}, false, "<gamma>"}; }

WeilModel make_weil_model(const LieData& lie, const Caps& caps) {
  auto model = std::make_shared<Model>();
  WeilSpecies sp = model->add_weil_factor(lie.dim(), "W");
  model->set_caps(caps);
  WeilModel wm;
  wm.model = model;
  wm.weil = std::make_shared<WeilSystem>(*model, sp, lie);
  return wm;
}

}  // namespace chiral
