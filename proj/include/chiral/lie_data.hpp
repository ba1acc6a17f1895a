#pragma once

#include <string>
#include <vector>

#include "chiral/scalar.hpp"

namespace chiral {

// Finite-dimensional Lie algebra over Q given by structure constants in a basis.
class LieData {
 public:
  struct Entry {
    int i, j, k;  // 0-based: [e_i, e_j] has coefficient value on e_k
    Scalar value;
  };

  LieData() = default;
  explicit LieData(int dim);
  // Fills the antisymmetric partner of each entry, then checks antisymmetry and Jacobi.
  static LieData from_entries(int dim, const std::vector<Entry>& entries);
  static LieData abelian(int dim) { return LieData(dim); }

  int dim() const { return dim_; }
  const Scalar& bracket(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  void set(int i, int j, int k, const Scalar& v) { c_[(i * dim_ + j) * dim_ + k] = v; }
  bool is_abelian() const;
  // Coefficient of dual basis vector i in ad*(e_a) e*_j, which is -bracket(a, i, j).
  Scalar coadjoint(int a, int j, int i) const { return -bracket(a, i, j); }
  // Throws ValidationError naming the first failing triple.
  void validate() const;
  std::vector<Scalar> bracket_vectors(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;

 private:
  int dim_ = 0;
  std::vector<Scalar> c_;
};

}  // namespace chiral
