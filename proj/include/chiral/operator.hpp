#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chiral/state.hpp"

namespace chiral {

class Operator {
 public:
  virtual ~Operator() = default;
  virtual State apply(const State& s) const = 0;
  virtual bool odd() const = 0;
  virtual std::string describe() const = 0;
};

// Value-semantic handle to a linear operator on the states of one model.
// Sums, scalar multiples, compositions and supercommutators are built lazily.
class OpExpr {
 public:
  OpExpr() = default;
  explicit OpExpr(std::shared_ptr<const Operator> op) : op_(std::move(op)) {}

  static OpExpr zero(bool odd = false);
  static OpExpr identity();
  static OpExpr mode(const Mode& m, bool odd);
  static OpExpr function(std::function<State(const State&)> fn, bool odd, std::string name);
  // Wrap with a per-basis-vector memo; useful for operators applied many times.
  static OpExpr cached(const OpExpr& inner);

  State operator()(const State& s) const;
  bool odd() const;
  bool is_zero_op() const;
  std::string describe() const;

  friend OpExpr operator+(const OpExpr& a, const OpExpr& b);
  friend OpExpr operator-(const OpExpr& a, const OpExpr& b);
  friend OpExpr operator*(const Scalar& c, const OpExpr& a);
  // Composition: (a * b)(s) = a(b(s)).
  friend OpExpr operator*(const OpExpr& a, const OpExpr& b);

 private:
  std::shared_ptr<const Operator> op_;
};

OpExpr mode_op(const Model& model, const Mode& m);
// [a, b] = ab - (-1)^{|a||b|} ba
OpExpr supercommutator(const OpExpr& a, const OpExpr& b);
// Linear combination sum_i c_i op_i.
OpExpr linear_combination(const std::vector<std::pair<Scalar, OpExpr>>& terms);
// exp(op) = sum_k op^k / k!, requiring op to be nilpotent on the argument.
State apply_exponential(const OpExpr& op, const State& s, int max_terms = 64);

}  // namespace chiral
