#pragma once

#include "chiral/basis.hpp"
#include "chiral/lie_data.hpp"
#include "chiral/operator.hpp"

namespace chiral {

// The semi-infinite Weil algebra of a Lie algebra, living in one factor of a model.
class WeilSystem {
 public:
  WeilSystem(const Model& model, const WeilSpecies& species, LieData lie);

  const Model& model() const { return *model_; }
  const WeilSpecies& species() const { return sp_; }
  const LieData& lie() const { return lie_; }

  Mode beta(int i, int level) const;
  Mode gamma(int i, int level) const;
  Mode b(int i, int level) const;
  Mode c(int i, int level) const;

  // Generator states beta_{-1}, gamma_0, b_{-1}, c_0 applied to the vacuum.
  State beta_state(int i) const;
  State gamma_state(int i) const;
  State b_state(int i) const;
  State c_state(int i) const;

  // The differential state is J + K; its zero mode is d.
  State j_state() const { return j_; }
  State k_state() const { return k_; }
  State differential_state() const { return j_ + k_; }
  State theta_state(int a) const { return theta_e_[a] + theta_s_[a]; }
  State theta_e_state(int a) const { return theta_e_[a]; }
  State theta_s_state(int a) const { return theta_s_[a]; }

  OpExpr d() const { return d_; }
  OpExpr lie_derivative(int a, int n) const;  // Theta^a_(n)
  OpExpr contraction(int a, int n) const;     // b^a_n

  Sector full_sector() const;
  Sector wprime_sector() const;  // generated by c and gamma
  Sector gamma_sector() const;   // generated by gamma only

 private:
  const Model* model_;
  WeilSpecies sp_;
  LieData lie_;
  State j_, k_;
  std::vector<State> theta_e_, theta_s_;
  OpExpr d_;
};

struct WeilModel {
  ModelPtr model;
  std::shared_ptr<WeilSystem> weil;
};

WeilModel make_weil_model(const LieData& lie, const Caps& caps = Caps{});

}  // namespace chiral
