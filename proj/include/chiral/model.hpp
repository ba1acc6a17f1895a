#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chiral/scalar.hpp"

namespace chiral {

enum class FieldKind : std::uint8_t { Beta, Gamma, B, C };

// A family of free-field modes sharing kind and tensor factor, e.g. the c-ghosts of W(g).
struct Species {
  FieldKind kind;
  int rank;                // number of basis indices
  int partner;             // species id of the conjugate field
  int factor;              // tensor factor this species belongs to
  int degree;              // cohomological degree of each mode
  int poly_degree;         // contribution to the poly-degree filtration
  bool on_coefficients;    // beta_0 / gamma_0 act on the coefficient polynomial
  std::string label;
};

struct Mode {
  std::int16_t species;
  std::int16_t index;  // 0-based basis index
  std::int32_t level;

  friend bool operator==(const Mode&, const Mode&) = default;
  // Canonical PBW order: species, then level ascending (descending |level|), then index.
  friend std::strong_ordering operator<=>(const Mode& a, const Mode& b) {
    if (auto c = a.species <=> b.species; c != 0) return c;
    if (auto c = a.level <=> b.level; c != 0) return c;
    return a.index <=> b.index;
  }
};

struct Grade {
  int weight = 0;
  int degree = 0;
  int poly_degree = 0;
  friend bool operator==(const Grade&, const Grade&) = default;
};

struct Caps {
  int max_weight = 1 << 20;
  int max_poly_degree = 1 << 20;
};

// Handles returned when a factor is added; all ids index Model::species().
struct WeilSpecies {
  int beta, gamma, b, c, dim;
};
struct GammaSpecies {
  int beta, gamma, m;
};
struct BcSpecies {
  int b, c, r;
};

// Ambient free-field algebra: a tensor product of beta-gamma and b-c systems, one of
// which may be the chiral coefficient system whose zero modes act on polynomials.
struct ModelCache;

class Model {
 public:
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  WeilSpecies add_weil_factor(int dim, const std::string& label);
  GammaSpecies add_gamma_factor(int m, const std::string& label);
  BcSpecies add_bc_factor(int r, const std::string& label);

  const std::vector<Species>& species() const { return species_; }
  const Species& species(int id) const;
  int num_vars() const { return nvars_; }
  const std::optional<GammaSpecies>& gamma_factor() const { return gamma_factor_; }
  int num_factors() const { return factors_; }

  void set_caps(const Caps& c) { caps_ = c; }
  const Caps& caps() const { return caps_; }

  bool is_odd(const Mode& m) const;
  bool is_creation(const Mode& m) const;
  int weight(const Mode& m) const { return -m.level; }
  int degree(const Mode& m) const { return species(m.species).degree; }
  int poly_degree(const Mode& m) const { return species(m.species).poly_degree; }
  // Shift between field index k in a_(k) and the mode level: level = k + shift.
  int field_shift(int species_id) const;
  void check_mode(const Mode& m) const;

  std::string mode_name(const Mode& m) const;
  std::uint64_t id() const { return id_; }
  // Memo tables for mode products; safe for concurrent use.
  ModelCache& cache() const { return *cache_; }

  Model();
  ~Model();

 private:
  int add_species(Species s);

  std::vector<Species> species_;
  int nvars_ = 0;
  int factors_ = 0;
  std::optional<GammaSpecies> gamma_factor_;
  Caps caps_;
  std::uint64_t id_;
  std::unique_ptr<ModelCache> cache_;
};

using ModelPtr = std::shared_ptr<Model>;

// [a, b] as a scalar; the only nonzero pairs are conjugate fields with opposite levels.
Scalar mode_supercommutator(const Model& model, const Mode& a, const Mode& b);

}  // namespace chiral
