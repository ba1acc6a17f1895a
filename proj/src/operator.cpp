#include "chiral/operator.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "chiral/error.hpp"

namespace chiral {

namespace {

class ZeroOp : public Operator {
 public:
  explicit ZeroOp(bool odd) : odd_(odd) {}
  State apply(const State& s) const override { return State(s.model()); }
  bool odd() const override { return odd_; }
  std::string describe() const override { return "0"; }

 private:
  bool odd_;
};

class IdentityOp : public Operator {
 public:
  State apply(const State& s) const override { return s; }
  bool odd() const override { return false; }
  std::string describe() const override { return "id"; }
};

class ModeOp : public Operator {
 public:
  ModeOp(Mode m, bool odd) : m_(m), odd_(odd) {}
  State apply(const State& s) const override { return apply_mode(m_, s); }
  bool odd() const override { return odd_; }
  std::string describe() const override {
    return "mode(" + std::to_string(m_.species) + "," + std::to_string(m_.index) + "," +
           std::to_string(m_.level) + ")";
  }

 private:
  Mode m_;
  bool odd_;
};

class FunctionOp : public Operator {
 public:
  FunctionOp(std::function<State(const State&)> fn, bool odd, std::string name)
      : fn_(std::move(fn)), odd_(odd), name_(std::move(name)) {}
  State apply(const State& s) const override { return fn_(s); }
  bool odd() const override { return odd_; }
  std::string describe() const override { return name_; }

 private:
  std::function<State(const State&)> fn_;
  bool odd_;
  std::string name_;
};

class SumOp : public Operator {
 public:
  explicit SumOp(std::vector<std::pair<Scalar, OpExpr>> terms) : terms_(std::move(terms)) {
    odd_ = false;
    bool set = false;
    for (const auto& [c, op] : terms_) {
      if (op.is_zero_op()) continue;
      if (set && op.odd() != odd_) throw Error("sum of operators with different parity");
      odd_ = op.odd();
      set = true;
    }
  }
  State apply(const State& s) const override {
    State r(s.model());
    for (const auto& [c, op] : terms_) {
      if (c.is_zero()) continue;
      State t = op(s);
      if (!c.is_one()) t *= c;
      r += t;
    }
    return r;
  }
  bool odd() const override { return odd_; }
  std::string describe() const override {
    std::string d;
    for (const auto& [c, op] : terms_) {
      if (!d.empty()) d += " + ";
      d += c.str() + "*" + op.describe();
    }
    return "(" + d + ")";
  }

 private:
  std::vector<std::pair<Scalar, OpExpr>> terms_;
  bool odd_;
};

class ComposeOp : public Operator {
 public:
  ComposeOp(OpExpr a, OpExpr b) : a_(std::move(a)), b_(std::move(b)) {}
  State apply(const State& s) const override {
    State t = b_(s);
    if (t.is_zero()) return t;
    return a_(t);
  }
  bool odd() const override { return a_.odd() != b_.odd(); }
  std::string describe() const override { return a_.describe() + "." + b_.describe(); }

 private:
  OpExpr a_, b_;
};

class CachedOp : public Operator {
 public:
  explicit CachedOp(OpExpr inner) : inner_(std::move(inner)) {}
  State apply(const State& s) const override {
    State r(s.model());
    s.for_each_basis([&](const BasisKey& k, const Scalar& c) {
      State img = lookup(s.model(), k);
      if (!c.is_one()) img *= c;
      r += img;
    });
    return r;
  }
  bool odd() const override { return inner_.odd(); }
  std::string describe() const override { return inner_.describe(); }

 private:
  State lookup(const Model& model, const BasisKey& k) const {
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(k);
      if (it != memo_.end()) return it->second;
    }
    State img = inner_(State::basis(model, k));
    std::unique_lock lock(mu_);
    memo_.emplace(k, img);
    return img;
  }

  OpExpr inner_;
  mutable std::shared_mutex mu_;
  mutable std::map<BasisKey, State> memo_;
};

}  // namespace

OpExpr OpExpr::zero(bool odd) { return OpExpr(std::make_shared<ZeroOp>(odd)); }
OpExpr OpExpr::identity() { return OpExpr(std::make_shared<IdentityOp>()); }
OpExpr OpExpr::mode(const Mode& m, bool odd) { return OpExpr(std::make_shared<ModeOp>(m, odd)); }
OpExpr OpExpr::function(std::function<State(const State&)> fn, bool odd, std::string name) {
  return OpExpr(std::make_shared<FunctionOp>(std::move(fn), odd, std::move(name)));
}
OpExpr OpExpr::cached(const OpExpr& inner) { return OpExpr(std::make_shared<CachedOp>(inner)); }

State OpExpr::operator()(const State& s) const {
  if (!op_) return State(s.model());
  return op_->apply(s);
}

bool OpExpr::odd() const { return op_ ? op_->odd() : false; }

bool OpExpr::is_zero_op() const { return !op_ || dynamic_cast<const ZeroOp*>(op_.get()) != nullptr; }

std::string OpExpr::describe() const { return op_ ? op_->describe() : "0"; }

OpExpr operator+(const OpExpr& a, const OpExpr& b) {
  if (a.is_zero_op()) return b;
  if (b.is_zero_op()) return a;
  return linear_combination({{Scalar(1), a}, {Scalar(1), b}});
}

OpExpr operator-(const OpExpr& a, const OpExpr& b) {
  if (b.is_zero_op()) return a;
  return linear_combination({{Scalar(1), a}, {Scalar(-1), b}});
}

OpExpr operator*(const Scalar& c, const OpExpr& a) {
  if (c.is_zero() || a.is_zero_op()) return OpExpr::zero(a.odd());
  return linear_combination({{c, a}});
}

OpExpr operator*(const OpExpr& a, const OpExpr& b) {
  if (a.is_zero_op() || b.is_zero_op()) return OpExpr::zero(a.odd() != b.odd());
  return OpExpr(std::make_shared<ComposeOp>(a, b));
}

OpExpr mode_op(const Model& model, const Mode& m) {
  model.check_mode(m);
  return OpExpr::mode(m, model.is_odd(m));
}

OpExpr supercommutator(const OpExpr& a, const OpExpr& b) {
  Scalar sign = (a.odd() && b.odd()) ? Scalar(1) : Scalar(-1);
  return linear_combination({{Scalar(1), a * b}, {sign, b * a}});
}

OpExpr linear_combination(const std::vector<std::pair<Scalar, OpExpr>>& terms) {
  std::vector<std::pair<Scalar, OpExpr>> kept;
  bool odd = false;
  for (const auto& t : terms)
    if (!t.first.is_zero() && !t.second.is_zero_op()) {
      kept.push_back(t);
      odd = t.second.odd();
    }
  if (kept.empty()) return OpExpr::zero(terms.empty() ? false : terms.front().second.odd());
  (void)odd;
  return OpExpr(std::make_shared<SumOp>(std::move(kept)));
}

State apply_exponential(const OpExpr& op, const State& s, int max_terms) {
  State total = s;
  State term = s;
  for (int k = 1; k <= max_terms; ++k) {
    term = op(term);
    if (term.is_zero()) return total;
    term *= Scalar(1, k);
    total += term;
  }
  throw Error("exponential series did not terminate; operator is not nilpotent here");
}

}  // namespace chiral
