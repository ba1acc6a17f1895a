#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "chiral/scalar.hpp"

namespace chiral {

// Sparse vector over Q keyed by coordinate index; zero entries are not stored.
using SparseVec = std::map<int, Scalar>;

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);  // y += a x

// Rank of the span of the given vectors, by fraction-free integer elimination.
std::size_t rank(const std::vector<SparseVec>& vectors);

// Basis of {x in Q^ncols : <row, x> = 0 for every row}, in reduced form.
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, int ncols);

// Incremental echelon basis over Z; used for rank and span-membership queries.
class EchelonBasis {
 public:
  // Returns true when v was independent of the vectors already inserted.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  using IntVec = std::map<int, mpz_class>;
  static IntVec to_integer(const SparseVec& v);
  IntVec reduce(IntVec v) const;

  std::map<int, IntVec> pivots_;  // leading column -> row
};

}  // namespace chiral
