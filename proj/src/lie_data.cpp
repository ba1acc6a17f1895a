#include "chiral/lie_data.hpp"

#include "chiral/error.hpp"

namespace chiral {

LieData::LieData(int dim) : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, Scalar(0)) {
  if (dim <= 0) throw InputError("Lie algebra dimension must be positive");
}

LieData LieData::from_entries(int dim, const std::vector<Entry>& entries) {
  LieData g(dim);
  std::vector<bool> seen(static_cast<std::size_t>(dim) * dim * dim, false);
  auto idx = [dim](int i, int j, int k) { return static_cast<std::size_t>((i * dim + j) * dim + k); };
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim)
      throw InputError("structure constant index out of range");
    if (e.i == e.j && !e.value.is_zero())
      throw ValidationError("bracket of a basis vector with itself must vanish");
    for (auto [a, b, v] : {std::tuple{e.i, e.j, e.value}, std::tuple{e.j, e.i, -e.value}}) {
      if (seen[idx(a, b, e.k)] && !(g.bracket(a, b, e.k) == v))
        throw ValidationError("structure constants are not antisymmetric");
      seen[idx(a, b, e.k)] = true;
      g.set(a, b, e.k, v);
    }
  }
  g.validate();
  return g;
}

bool LieData::is_abelian() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

void LieData::validate() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (!(bracket(i, j, k) == -bracket(j, i, k)))
          throw ValidationError("structure constants are not antisymmetric");
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = j + 1; k < dim_; ++k)
        for (int t = 0; t < dim_; ++t) {
          Scalar s(0);
          for (int u = 0; u < dim_; ++u) {
            s += bracket(i, j, u) * bracket(u, k, t);
            s += bracket(j, k, u) * bracket(u, i, t);
            s += bracket(k, i, u) * bracket(u, j, t);
          }
          if (!s.is_zero())
            throw ValidationError("Jacobi identity fails for basis triple (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }
}

std::vector<Scalar> LieData::bracket_vectors(const std::vector<Scalar>& x,
                                             const std::vector<Scalar>& y) const {
  std::vector<Scalar> r(dim_, Scalar(0));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      if (x[i].is_zero() || y[j].is_zero()) continue;
      for (int k = 0; k < dim_; ++k) r[k] += x[i] * y[j] * bracket(i, j, k);
    }
  return r;
}

}  // namespace chiral
