#include <doctest.h>

#include <random>

#include "chiral/error.hpp"
#include "chiral/linalg.hpp"
#include "chiral/polynomial.hpp"

using namespace chiral;

namespace {

// Plain Gaussian elimination over Q, kept separate from the fraction-free code under test.
std::size_t naive_rank(std::vector<std::vector<Scalar>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Scalar f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Scalar eval(const Polynomial& p, const std::vector<Scalar>& x) {
  Scalar s(0);
  for (const auto& [e, c] : p.terms()) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Polynomial random_poly(std::mt19937_64& rng, int nvars, int deg, int terms) {
  std::uniform_int_distribution<int> ed(0, deg), cd(-4, 4);
  Polynomial p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponents e(nvars);
    for (auto& x : e) x = ed(rng);
    p.add_term(e, Scalar(cd(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("scalars stay in lowest terms") {
  Scalar a(6, -4);
  CHECK(a.str() == "-3/2");
  CHECK(a.denominator() == 2);
  CHECK(Scalar::parse("10/4") == Scalar(5, 2));
  CHECK(Scalar::parse("-7") == Scalar(-7));
  CHECK((Scalar(1, 3) + Scalar(1, 6)) == Scalar(1, 2));
  CHECK(Scalar(2, 3).inverse() == Scalar(3, 2));
  CHECK_THROWS_AS(Scalar(0).inverse(), Error);
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse("abc"), Error);
}

TEST_CASE("binomials match Pascal's rule, including negative tops") {
  for (long n = -6; n <= 8; ++n)
    for (long k = 1; k <= 6; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
  CHECK(binomial(5, 0) == Scalar(1));
  CHECK(binomial(-1, 3) == Scalar(-1));
  CHECK(binomial(4, 6) == Scalar(0));
}

TEST_CASE("polynomial arithmetic agrees with pointwise evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pd(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial f = random_poly(rng, 2, 3, 4), g = random_poly(rng, 2, 3, 3);
    std::vector<Scalar> x{Scalar(pd(rng), 1 + trial % 3), Scalar(pd(rng))};
    CHECK(eval(f * g, x) == eval(f, x) * eval(g, x));
    CHECK(eval(f + g, x) == eval(f, x) + eval(g, x));
    CHECK(eval(f.pow(2), x) == eval(f, x) * eval(f, x));
    // Leibniz rule for the partial derivative.
    CHECK((f * g).partial(0) == f.partial(0) * g + f * g.partial(0));
  }
}

TEST_CASE("polynomial parsing and affine substitution") {
  Polynomial p = Polynomial::parse("x^2 - 3/2*x*y + 4", 2);
  CHECK(p.coefficient({2, 0}) == Scalar(1));
  CHECK(p.coefficient({1, 1}) == Scalar(-3, 2));
  CHECK(p.constant_term() == Scalar(4));
  CHECK(p.total_degree() == 2);
  CHECK(Polynomial(2).total_degree() == -1);

  // f(x) = x^2 under x -> 2x + 1 is 4x^2 + 4x + 1.
  Polynomial sq = Polynomial::parse("x^2", 1);
  Polynomial moved = sq.compose_affine({{Scalar(2)}}, {Scalar(1)});
  CHECK(moved == Polynomial::parse("4*x^2 + 4*x + 1", 1));
  CHECK_THROWS_AS(Polynomial::parse("x +* 2", 1), Error);
}

TEST_CASE("matrix inverse and rejection of singular maps") {
  ScalarMatrix a{{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(1)}};
  CHECK(matrix_mul(a, matrix_inverse(a)) == identity_matrix(2));
  CHECK_THROWS_AS(matrix_inverse({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}), ValidationError);
}

TEST_CASE("fraction-free rank agrees with rational elimination") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> v(-3, 3), z(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 7, cols = 1 + (trial / 7) % 6;
    std::vector<std::vector<Scalar>> dense(rows, std::vector<Scalar>(cols));
    std::vector<SparseVec> sparse(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        Scalar x = z(rng) == 0 ? Scalar(0) : Scalar(v(rng), 1 + z(rng));
        dense[i][j] = x;
        if (!x.is_zero()) sparse[i][j] = x;
      }
    // Duplicate a combination of rows so the rank is not always full.
    if (rows > 2) {
      SparseVec sum = sparse[0];
      axpy(sum, Scalar(-2), sparse[1]);
      sparse.push_back(sum);
      std::vector<Scalar> d(cols);
      for (int j = 0; j < cols; ++j) d[j] = dense[0][j] - Scalar(2) * dense[1][j];
      dense.push_back(d);
    }
    CHECK(rank(sparse) == naive_rank(dense));

    auto ns = nullspace(sparse, cols);
    CHECK(ns.size() == cols - naive_rank(dense));
    for (const auto& x : ns)
      for (const auto& row : sparse) {
        Scalar dot(0);
        for (const auto& [j, c] : row)
          if (auto it = x.find(j); it != x.end()) dot += c * it->second;
        CHECK(dot.is_zero());
      }
  }
}

TEST_CASE("echelon basis membership") {
  EchelonBasis e;
  CHECK(e.insert({{0, Scalar(1)}, {2, Scalar(3)}}));
  CHECK(e.insert({{1, Scalar(2)}}));
  CHECK_FALSE(e.insert({{0, Scalar(2)}, {1, Scalar(4)}, {2, Scalar(6)}}));
  CHECK(e.contains({{1, Scalar(1, 7)}}));
  CHECK_FALSE(e.contains({{2, Scalar(1)}}));
  CHECK(e.rank() == 2);
}
