#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "chiral/model.hpp"
#include "chiral/polynomial.hpp"

namespace chiral {

// Creation modes in canonical order; odd modes appear at most once.
using Word = std::vector<Mode>;

// One PBW basis vector: a word applied to vacuum tensor a coefficient monomial.
struct BasisKey {
  Word word;
  Exponents exps;
  friend bool operator==(const BasisKey&, const BasisKey&) = default;
  friend bool operator<(const BasisKey& a, const BasisKey& b) {
    if (a.word != b.word) return a.word < b.word;
    return a.exps < b.exps;
  }
};

// Finite linear combination of PBW monomials with polynomial coefficients.
class State {
 public:
  explicit State(const Model& model) : model_(&model) {}

  static State vacuum(const Model& model);
  static State coefficient(const Model& model, const Polynomial& p);
  static State basis(const Model& model, const BasisKey& key, const Scalar& c = Scalar(1));

  const Model& model() const { return *model_; }
  const std::map<Word, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Word& w, const Polynomial& p);
  void add(Word&& w, const Polynomial& p);
  void add_basis(const BasisKey& key, const Scalar& c);
  void for_each_basis(const std::function<void(const BasisKey&, const Scalar&)>& fn) const;

  State& operator+=(const State& o);
  State& operator-=(const State& o);
  State& operator*=(const Scalar& c);
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(const Scalar& c, State a) { return a *= c; }
  State multiply_coefficients(const Polynomial& g) const;

  friend bool operator==(const State& a, const State& b);

  int max_weight() const;
  std::string str() const;

 private:
  void check_same(const State& o) const;

  const Model* model_;
  std::map<Word, Polynomial> terms_;
};

int word_weight(const Model& model, const Word& w);
int word_degree(const Model& model, const Word& w);
int word_poly_degree(const Model& model, const Word& w);
int count_odd(const Model& model, const Word& w);
Grade grade_of(const Model& model, const BasisKey& key);
// Throws when the state is not homogeneous in all three gradings.
Grade grade_of(const State& s);
std::string word_str(const Model& model, const Word& w);

// Apply a single mode, reordering into canonical form with Koszul signs.
State apply_mode(const Mode& m, const State& s);
// Apply a word of modes right-to-left: modes.back() acts first.
State apply_modes(const std::vector<Mode>& modes, const State& s);
// Throws CapOverflow when a term exceeds the model caps.
void enforce_caps(const State& s);

}  // namespace chiral
