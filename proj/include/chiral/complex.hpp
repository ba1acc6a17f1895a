#pragma once

#include <functional>
#include <vector>

#include "chiral/basis.hpp"
#include "chiral/operator.hpp"

namespace chiral {

// Subcomplex carrier: the common kernel of `constraints` inside each block of a sector.
struct Carrier {
  Sector sector;
  // Constraint operators relevant for a block of the given weight.
  std::function<std::vector<OpExpr>(int weight)> constraints;
};

// Cochain complex graded by weight, degree and poly-degree.
struct GradedComplex {
  const Model* model = nullptr;
  Carrier carrier;
  OpExpr d;
  int max_weight = 0;
  int min_degree = 0;
  int max_degree = 0;
  int max_poly_degree = 0;
  // When true, blocks have exact poly-degree p for every p <= max_poly_degree; otherwise
  // each weight has one filtration block of poly-degree <= max_poly_degree.
  bool exact_poly_degree = true;
};

struct CohomologyEntry {
  BlockKey key;
  std::size_t dimension = 0;
  std::size_t carrier_dim = 0;
  std::size_t block_dim = 0;
  std::size_t rank_out = 0;  // rank of d leaving this degree
};

// Basis (in block coordinates) of the carrier inside a block.
std::vector<SparseVec> carrier_basis(const Carrier& carrier, const BlockSpace& block);

BlockSpace make_block(const GradedComplex& c, const BlockKey& key);

// H^l = dim C_l - rank(d on C_l) - rank(d on C_{l-1}), per block; throws when d leaves
// the sector or the declared block.
std::vector<CohomologyEntry> graded_cohomology(const GradedComplex& c, int jobs = 1);

}  // namespace chiral
