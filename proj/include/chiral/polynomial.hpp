#pragma once

#include <map>
#include <string>
#include <vector>

#include "chiral/scalar.hpp"

namespace chiral {

using Exponents = std::vector<int>;
using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Zero coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Scalar& c);
  static Polynomial variable(int nvars, int i);  // x_i, 0-based
  static Polynomial monomial(const Exponents& e, const Scalar& c);
  // Variables are written x1..xm; when m <= 3, x, y, z are accepted as aliases.
  static Polynomial parse(const std::string& text, int nvars);

  int num_vars() const { return nvars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;  // -1 for the zero polynomial
  Scalar coefficient(const Exponents& e) const;
  Scalar constant_term() const;

  void add_term(const Exponents& e, const Scalar& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const { return *this * Scalar(-1); }

  Polynomial partial(int i) const;  // d/dx_i, 0-based
  Polynomial pow(int k) const;
  // f(T x + v): T has num_vars() rows, its column count fixes the new variable count.
  Polynomial compose_affine(const ScalarMatrix& T, const std::vector<Scalar>& v) const;
  // f(g_1, ..., g_n); all g_i share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& g) const;

  std::string str() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    return a.terms_ < b.terms_;
  }

 private:
  void check_same(const Polynomial& o) const;

  int nvars_;
  std::map<Exponents, Scalar> terms_;
};

std::string monomial_str(const Exponents& e);

// Small dense helpers used for affine chart maps.
ScalarMatrix identity_matrix(int n);
ScalarMatrix matrix_mul(const ScalarMatrix& a, const ScalarMatrix& b);
std::vector<Scalar> matrix_apply(const ScalarMatrix& a, const std::vector<Scalar>& v);
ScalarMatrix matrix_inverse(const ScalarMatrix& a);  // throws ValidationError if singular

}  // namespace chiral
