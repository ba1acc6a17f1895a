#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "chiral/algebroid.hpp"
#include "chiral/report.hpp"

namespace chiral {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Identification of chart `source` (mu) with chart `target` (lambda):
//   x_mu = T x_lambda + v,   e_mu^j = sum_j' frame[j'][j] e_lambda^j',
// with frame and frame_inverse written in the target coordinates.
struct Transition {
  int target = 0;
  int source = 0;
  ScalarMatrix T;
  std::vector<Scalar> v;
  PolyMatrix frame;
  PolyMatrix frame_inverse;

  // The transition in the opposite direction.
  Transition inverse() const;
  // (target <- source) after (source <- other), i.e. the identification target <- other.
  Transition compose(const Transition& inner) const;
  static Transition identity(int chart, int m, int r);
  friend bool operator==(const Transition&, const Transition&) = default;
};

// Presentation of the same algebroid in the coordinates and frame of another chart:
// `data` is written in the chart `t.source`, the result in `t.target`.
AlgebroidData transport_algebroid(const AlgebroidData& data, const Transition& t);

class Atlas {
 public:
  Atlas(int m, int r, std::vector<std::string> ids);

  int m() const { return m_; }
  int r() const { return r_; }
  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  int index(const std::string& id) const;

  void add_transition(const Transition& t);
  // Fills reverse directions by inversion and unrelated pairs by composing through a
  // common chart; identity on the diagonal.
  void complete();
  const Transition& transition(int target, int source) const;

  // Frame matrices invert each other; every triple composes. Throws ValidationError.
  void validate() const;

  void set_algebroid(int chart, const AlgebroidData& data);
  // Chart data obtained from the first chart by transport.
  void transport_from_first(const AlgebroidData& first);
  const AlgebroidData& algebroid(int chart) const { return data_.at(chart); }

 private:
  int m_, r_;
  std::vector<std::string> ids_;
  std::map<std::pair<int, int>, Transition> tr_;
  std::vector<AlgebroidData> data_;
};

enum class GeneratorKind { Function, B, C };

// Image of a generator of the source chart: a function f, or b^j_{-1}|0>, c^j_0|0>.
State pullback_generator(const Model& model, const GammaSpecies& g, const BcSpecies& bc, const Transition& t,
                         GeneratorKind kind, int index, const Polynomial& f = Polynomial());

// The vertex algebra morphism from the source chart to the target chart, determined on
// PBW states by the generator images and n-th products.
class TransitionMorphism {
 public:
  TransitionMorphism(const Model& model, const GammaSpecies& g, const BcSpecies& bc, Transition t);
  const Transition& transition() const { return t_; }
  State operator()(const State& s) const;
  State apply_basis(const BasisKey& k) const;
  // Operator product relations among generator images: only b_(0) c is nonzero.
  CheckResult check_generator_opes() const;

 private:
  const Model* model_;
  GammaSpecies g_;
  BcSpecies bc_;
  Transition t_;
  std::vector<State> fx_, b_, c_;
  mutable std::mutex mu_;
  mutable std::map<BasisKey, State> memo_;
};

// All chart complexes share one model; each chart has its own differential.
struct AtlasSystem {
  ModelPtr model;
  GammaSpecies gamma;
  BcSpecies bc;
  std::shared_ptr<const Atlas> atlas;
  std::vector<std::shared_ptr<AlgebroidSystem>> charts;
  std::map<std::pair<int, int>, std::shared_ptr<TransitionMorphism>> morphisms;

  const TransitionMorphism& morphism(int target, int source) const { return *morphisms.at({target, source}); }
  Sector sector() const;
};

AtlasSystem make_atlas_system(std::shared_ptr<const Atlas> atlas, const Caps& caps);

struct AtlasWindow {
  int max_weight = 1;
  int max_poly_degree = 1;
};

// Cocycle identities of the transition morphisms on the window states.
std::vector<CheckResult> verify_cocycle(const AtlasSystem& sys, const AtlasWindow& w, int jobs = 1);
// D^lambda after theta_{lambda mu} equals theta_{lambda mu} after D^mu, on generators and
// then on all window states, for every ordered chart pair.
std::vector<CheckResult> glued_differential_check(const AtlasSystem& sys, const AtlasWindow& w, int jobs = 1);

struct GlobalBlock {
  BlockKey key;  // poly_degree is the filtration cap
  std::size_t chart_dim = 0;
  std::size_t global_dim = 0;
  std::vector<std::vector<SparseVec>> basis;  // per equalizer vector, one coordinate vector per chart
};

// Tuples (s_lambda) with theta_{lambda mu}(s_mu) = s_lambda for every pair.
GlobalBlock global_sections(const AtlasSystem& sys, const BlockKey& key);

struct GlobalCohomology {
  std::vector<CohomologyEntry> entries;
  CheckResult closed;  // D maps the equalizer into itself
};

// Cohomology of the glued complex of global sections, weight <= w, degree 0..r+1.
GlobalCohomology global_cohomology(const AtlasSystem& sys, const AtlasWindow& w, int jobs = 1);

}  // namespace chiral
