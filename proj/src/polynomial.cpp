#include "chiral/polynomial.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "chiral/error.hpp"

namespace chiral {

Polynomial Polynomial::constant(int nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[i] = 1;
  return monomial(e, Scalar(1));
}

Polynomial Polynomial::monomial(const Exponents& e, const Scalar& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

Scalar Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Polynomial::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

void Polynomial::add_term(const Exponents& e, const Scalar& c) {
  if (static_cast<int>(e.size()) != nvars_) throw ModelMismatch("exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_same(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw ModelMismatch("polynomials over different variable sets");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same(b);
  Polynomial r(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::partial(int i) const {
  if (i < 0 || i >= nvars_) throw std::out_of_range("partial derivative index out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    f[i] -= 1;
    r.add_term(f, c * Scalar(e[i]));
  }
  return r;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  Polynomial r = constant(nvars_, Scalar(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& g) const {
  if (static_cast<int>(g.size()) != nvars_) throw ModelMismatch("substitution arity mismatch");
  int out = g.empty() ? 0 : g[0].num_vars();
  for (const auto& gi : g)
    if (gi.num_vars() != out) throw ModelMismatch("substitution variable count mismatch");
  std::vector<std::vector<Polynomial>> powers(nvars_);
  Polynomial r(out);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(out, c);
    for (int i = 0; i < nvars_; ++i) {
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e[i])
        pw.push_back(pw.empty() ? constant(out, Scalar(1)) : pw.back() * g[i]);
      if (e[i] > 0) t = t * pw[e[i]];
    }
    r += t;
  }
  return r;
}

Polynomial Polynomial::compose_affine(const ScalarMatrix& T, const std::vector<Scalar>& v) const {
  if (static_cast<int>(T.size()) != nvars_ || static_cast<int>(v.size()) != nvars_)
    throw ModelMismatch("affine map shape mismatch");
  int out = T.empty() ? 0 : static_cast<int>(T[0].size());
  std::vector<Polynomial> g;
  for (int i = 0; i < nvars_; ++i) {
    Polynomial gi = constant(out, v[i]);
    for (int j = 0; j < out; ++j)
      if (!T[i][j].is_zero()) gi += variable(out, j) * T[i][j];
    g.push_back(std::move(gi));
  }
  return substitute(g);
}

std::string monomial_str(const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string m = monomial_str(e);
    Scalar a = c;
    if (!first) {
      s += (a < Scalar(0)) ? " - " : " + ";
      if (a < Scalar(0)) a = -a;
    }
    if (m.empty()) {
      s += a.str();
    } else if (a.is_one()) {
      s += m;
    } else if (a == Scalar(-1)) {
      s += "-" + m;
    } else {
      s += a.str() + "*" + m;
    }
    first = false;
  }
  return s;
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& t, int nvars) : t_(t), n_(nvars) {}

  Polynomial parse() {
    Polynomial r(n_);
    skip();
    if (pos_ == t_.size()) throw InputError("empty polynomial");
    bool first = true;
    while (pos_ < t_.size()) {
      int sign = 1;
      if (t_[pos_] == '+' || t_[pos_] == '-') {
        sign = t_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      r += term() * Scalar(sign);
      first = false;
      skip();
    }
    return r;
  }

 private:
  Polynomial term() {
    Polynomial p = factor();
    skip();
    while (pos_ < t_.size() && t_[pos_] == '*') {
      ++pos_;
      skip();
      p = p * factor();
      skip();
    }
    return p;
  }

  Polynomial factor() {
    if (pos_ >= t_.size()) fail("unexpected end");
    char ch = t_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      if (pos_ < t_.size() && t_[pos_] == '/') {
        ++pos_;
        if (pos_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_])))
          fail("malformed fraction");
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      }
      return Polynomial::constant(n_, Scalar::parse(t_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < t_.size() && std::isalnum(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      std::string name = t_.substr(start, pos_ - start);
      int idx = var_index(name);
      int power = 1;
      skip();
      if (pos_ < t_.size() && t_[pos_] == '^') {
        ++pos_;
        skip();
        std::size_t ps = pos_;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
        if (ps == pos_) fail("expected exponent");
        power = std::stoi(t_.substr(ps, pos_ - ps));
      }
      return Polynomial::variable(n_, idx).pow(power);
    }
    fail(std::string("unexpected character '") + ch + "'");
    return Polynomial(n_);
  }

  int var_index(const std::string& name) {
    int idx = -1;
    if (name.size() > 1 && name[0] == 'x') {
      for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) fail("unknown variable " + name);
      idx = std::stoi(name.substr(1)) - 1;
    } else if (n_ <= 3 && (name == "x" || name == "y" || name == "z")) {
      idx = name == "x" ? 0 : (name == "y" ? 1 : 2);
    } else {
      fail("unknown variable " + name);
    }
    if (idx < 0 || idx >= n_) fail("variable " + name + " out of range");
    return idx;
  }

  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw InputError("polynomial '" + t_ + "': " + msg + " at offset " + std::to_string(pos_));
  }

  const std::string& t_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int nvars) {
  return PolyParser(text, nvars).parse();
}

ScalarMatrix identity_matrix(int n) {
  ScalarMatrix m(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

ScalarMatrix matrix_mul(const ScalarMatrix& a, const ScalarMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ScalarMatrix r(n, std::vector<Scalar>(m, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw ModelMismatch("matrix shape mismatch");
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t) r[i][j] += a[i][t] * b[t][j];
  }
  return r;
}

std::vector<Scalar> matrix_apply(const ScalarMatrix& a, const std::vector<Scalar>& v) {
  std::vector<Scalar> r(a.size(), Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw ModelMismatch("matrix shape mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  }
  return r;
}

ScalarMatrix matrix_inverse(const ScalarMatrix& a) {
  std::size_t n = a.size();
  ScalarMatrix m = a, inv = identity_matrix(static_cast<int>(n));
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col].size() != n) throw ModelMismatch("matrix is not square");
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw ValidationError("singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Scalar s = m[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Scalar f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace chiral
