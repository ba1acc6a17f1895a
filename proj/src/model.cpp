#include "chiral/model.hpp"

#include <atomic>

#include "chiral/error.hpp"
#include "model_cache.hpp"

namespace chiral {

namespace {
std::atomic<std::uint64_t> next_model_id{1};

std::string qualified(const std::string& label, const char* kind) {
  return label.empty() ? std::string(kind) : label + "." + kind;
}
}  // namespace

Model::Model() : id_(next_model_id++), cache_(std::make_unique<ModelCache>()) {}
Model::~Model() = default;

int Model::add_species(Species s) {
  species_.push_back(std::move(s));
  return static_cast<int>(species_.size()) - 1;
}

WeilSpecies Model::add_weil_factor(int dim, const std::string& label) {
  if (dim <= 0) throw InputError("Lie algebra dimension must be positive");
  int f = factors_++;
  int base = static_cast<int>(species_.size());
  WeilSpecies w{base, base + 1, base + 2, base + 3, dim};
  add_species({FieldKind::Beta, dim, w.gamma, f, -2, 0, false, qualified(label, "beta")});
  add_species({FieldKind::Gamma, dim, w.beta, f, 2, 0, false, qualified(label, "gamma")});
  add_species({FieldKind::B, dim, w.c, f, -1, 0, false, qualified(label, "b")});
  add_species({FieldKind::C, dim, w.b, f, 1, 0, false, qualified(label, "c")});
  return w;
}

GammaSpecies Model::add_gamma_factor(int m, const std::string& label) {
  if (gamma_factor_) throw InputError("only one coefficient factor per model");
  if (m < 0) throw InputError("negative number of even coordinates");
  nvars_ = m;
  int f = factors_++;
  int base = static_cast<int>(species_.size());
  GammaSpecies g{base, base + 1, m};
  gamma_factor_ = g;
  add_species({FieldKind::Beta, m, g.gamma, f, 0, 0, true, qualified(label, "beta")});
  add_species({FieldKind::Gamma, m, g.beta, f, 0, 1, true, qualified(label, "gamma")});
  return g;
}

BcSpecies Model::add_bc_factor(int r, const std::string& label) {
  if (r < 0) throw InputError("negative number of odd coordinates");
  int f = factors_++;
  int base = static_cast<int>(species_.size());
  BcSpecies s{base, base + 1, r};
  add_species({FieldKind::B, r, s.c, f, -1, 0, false, qualified(label, "b")});
  add_species({FieldKind::C, r, s.b, f, 1, 0, false, qualified(label, "c")});
  return s;
}

const Species& Model::species(int id) const {
  if (id < 0 || id >= static_cast<int>(species_.size()))
    throw ModelMismatch("mode species does not belong to this model");
  return species_[id];
}

void Model::check_mode(const Mode& m) const {
  const Species& s = species(m.species);
  if (m.index < 0 || m.index >= s.rank) throw ModelMismatch("mode index out of range for " + s.label);
}

bool Model::is_odd(const Mode& m) const {
  FieldKind k = species(m.species).kind;
  return k == FieldKind::B || k == FieldKind::C;
}

bool Model::is_creation(const Mode& m) const {
  const Species& s = species(m.species);
  switch (s.kind) {
    case FieldKind::Beta:
    case FieldKind::B:
      return m.level < 0;
    case FieldKind::Gamma:
      return s.on_coefficients ? m.level < 0 : m.level <= 0;
    case FieldKind::C:
      return m.level <= 0;
  }
  return false;
}

int Model::field_shift(int species_id) const {
  FieldKind k = species(species_id).kind;
  return (k == FieldKind::Gamma || k == FieldKind::C) ? 1 : 0;
}

std::string Model::mode_name(const Mode& m) const {
  const Species& s = species(m.species);
  return s.label + std::to_string(m.index + 1) + "[" + std::to_string(m.level) + "]";
}

Scalar mode_supercommutator(const Model& model, const Mode& a, const Mode& b) {
  model.check_mode(a);
  model.check_mode(b);
  const Species& sa = model.species(a.species);
  if (sa.partner != b.species || a.index != b.index || a.level + b.level != 0) return Scalar(0);
  // [beta, gamma] = 1, [gamma, beta] = -1, {b, c} = {c, b} = 1.
  return sa.kind == FieldKind::Gamma ? Scalar(-1) : Scalar(1);
}

}  // namespace chiral
