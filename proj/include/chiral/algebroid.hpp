#pragma once

#include <vector>

#include "chiral/basis.hpp"
#include "chiral/lie_data.hpp"
#include "chiral/operator.hpp"

namespace chiral {

// Section of the algebroid: polynomial components in the local frame e_1..e_r.
using Section = std::vector<Polynomial>;

// Lie algebroid on a chart of R^m with frame e_1..e_r:
//   a(e_j) = sum_i anchor(i, j) d/dx_i,  [e_j, e_k] = sum_l structure(j, k, l) e_l.
class AlgebroidData {
 public:
  AlgebroidData() = default;
  AlgebroidData(int m, int r);

  // Algebroid M x g for an action rho: vector_fields[j][i] is the d/dx_i component of rho(e_j).
  static AlgebroidData transformation(const LieData& g, const std::vector<std::vector<Polynomial>>& vector_fields,
                                      int m);

  int m() const { return m_; }
  int r() const { return r_; }
  const Polynomial& anchor(int i, int j) const { return anchor_[i * r_ + j]; }
  void set_anchor(int i, int j, const Polynomial& f) { anchor_[i * r_ + j] = f; }
  const Polynomial& structure(int j, int k, int l) const { return structure_[(j * r_ + k) * r_ + l]; }
  void set_structure(int j, int k, int l, const Polynomial& g) { structure_[(j * r_ + k) * r_ + l] = g; }

  Section basis_section(int j) const;
  Section zero_section() const;
  Polynomial apply_anchor(const Section& X, const Polynomial& g) const;
  Section bracket(const Section& X, const Section& Y) const;

  // Antisymmetry, anchor is a bracket morphism, Jacobi on basis sections.
  void validate() const;
  // True when the chiral differential preserves poly-degree exactly: anchor entries are
  // homogeneous linear (or zero) and the structure functions are constant.
  bool preserves_poly_degree() const;

 private:
  int m_ = 0, r_ = 0;
  std::vector<Polynomial> anchor_;
  std::vector<Polynomial> structure_;
};

// Chiral Lie algebroid complex on the beta-gamma-b-c model of one chart.
class AlgebroidSystem {
 public:
  AlgebroidSystem(const Model& model, const GammaSpecies& g, const BcSpecies& bc, AlgebroidData data);

  const Model& model() const { return *model_; }
  const AlgebroidData& data() const { return data_; }
  const GammaSpecies& gamma_species() const { return g_; }
  const BcSpecies& bc_species() const { return bc_; }

  Mode beta(int i, int level) const;
  Mode gamma(int i, int level) const;
  Mode b(int j, int level) const;
  Mode c(int j, int level) const;
  State c_state(int j) const;
  State b_state(int j) const;

  State q_state() const { return q_; }
  OpExpr d() const { return d_; }
  State iota_state(const Section& X) const;
  OpExpr iota(const Section& X, int n) const;
  // L_{X,(n)} = [d, iota_{X,(n)}]
  OpExpr lie(const Section& X, int n) const;

  Sector gc_sector() const;        // gamma, c and coefficient functions
  Sector function_sector() const;  // gamma and coefficient functions only

 private:
  const Model* model_;
  GammaSpecies g_;
  BcSpecies bc_;
  AlgebroidData data_;
  State q_;
  OpExpr d_;
};

struct AlgebroidModel {
  ModelPtr model;
  std::shared_ptr<AlgebroidSystem> algebroid;
};

AlgebroidModel make_algebroid_model(const AlgebroidData& data, const Caps& caps = Caps{});

}  // namespace chiral
