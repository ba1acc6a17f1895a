#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiral/linalg.hpp"
#include "chiral/state.hpp"

namespace chiral {

// Subspace spanned by PBW monomials in a chosen set of species.
struct Sector {
  std::vector<int> species;       // allowed creation-mode species
  bool coefficients = true;       // allow non-constant coefficient polynomials
  std::string name;

  bool allows(int species_id) const;
  bool contains(const Model& model, const BasisKey& k) const;
};

struct BlockKey {
  int weight = 0;
  int degree = 0;
  int poly_degree = 0;  // exact value, or the cap when the block is a filtration piece
  friend bool operator==(const BlockKey&, const BlockKey&) = default;
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

// PBW monomials of the sector with the given weight and degree whose poly-degree lies in
// [min_poly_degree, max_poly_degree], in canonical order.
std::vector<BasisKey> enumerate_block(const Model& model, const Sector& sector, int weight, int degree,
                                      int min_poly_degree, int max_poly_degree);

// All PBW monomials of the sector with weight <= max_weight, degree in [dmin, dmax] and
// poly-degree <= max_poly_degree.
std::vector<BasisKey> enumerate_range(const Model& model, const Sector& sector, int max_weight,
                                      int dmin, int dmax, int max_poly_degree);

class BlockSpace {
 public:
  BlockSpace(const Model& model, std::vector<BasisKey> basis);

  const Model& model() const { return *model_; }
  const std::vector<BasisKey>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::optional<int> index(const BasisKey& k) const;
  State element(std::size_t i) const { return State::basis(*model_, basis_[i]); }
  State combination(const SparseVec& v) const;
  // Coordinates of s; returns the first basis key outside the block, if any.
  std::optional<BasisKey> coordinates(const State& s, SparseVec& out) const;

 private:
  const Model* model_;
  std::vector<BasisKey> basis_;
  std::map<BasisKey, int> index_;
};

// Coordinates of a state against an index that grows as new basis keys appear.
class DynamicIndex {
 public:
  SparseVec coordinates(const State& s);
  std::size_t size() const { return index_.size(); }

 private:
  std::map<BasisKey, int> index_;
};

}  // namespace chiral
