#include "chiral/linalg.hpp"

namespace chiral {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
  if (a.is_zero()) return;
  for (const auto& [i, v] : x) {
    auto [it, inserted] = y.emplace(i, a * v);
    if (!inserted) {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

EchelonBasis::IntVec EchelonBasis::to_integer(const SparseVec& v) {
  mpz_class l = 1;
  for (const auto& [i, c] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  IntVec r;
  for (const auto& [i, c] : v) {
    if (c.is_zero()) continue;
    r.emplace(i, mpz_class(c.numerator() * (l / c.denominator())));
  }
  return r;
}

namespace {

void normalize_content(std::map<int, mpz_class>& v) {
  if (v.empty()) return;
  mpz_class g = 0;
  for (const auto& [i, c] : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& [i, c] : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

EchelonBasis::IntVec EchelonBasis::reduce(IntVec v) const {
  // Eliminate leading entries against stored pivots: v <- p_c v - v_c p.
  while (!v.empty()) {
    auto lead = v.begin();
    auto piv = pivots_.find(lead->first);
    if (piv == pivots_.end()) break;
    const IntVec& p = piv->second;
    mpz_class pc = p.begin()->second;
    mpz_class vc = lead->second;
    mpz_class g = gcd(pc, vc);
    pc /= g;
    vc /= g;
    IntVec r;
    for (auto& [i, c] : v) {
      mpz_class x = c * pc;
      if (x != 0) r.emplace(i, std::move(x));
    }
    for (const auto& [i, c] : p) {
      auto [it, inserted] = r.emplace(i, mpz_class(-vc * c));
      if (!inserted) {
        it->second -= vc * c;
        if (it->second == 0) r.erase(it);
      }
    }
    normalize_content(r);
    v = std::move(r);
  }
  return v;
}

bool EchelonBasis::insert(const SparseVec& v) {
  IntVec r = reduce(to_integer(v));
  if (r.empty()) return false;
  // Keep pivot rows fully reduced with respect to lower pivots is unnecessary for rank.
  int lead = r.begin()->first;
  pivots_.emplace(lead, std::move(r));
  return true;
}

bool EchelonBasis::contains(const SparseVec& v) const { return reduce(to_integer(v)).empty(); }

std::size_t rank(const std::vector<SparseVec>& vectors) {
  EchelonBasis e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, int ncols) {
  // Rational reduced row echelon form, then one basis vector per free column.
  std::map<int, SparseVec> piv;  // pivot column -> normalized row
  for (const auto& row0 : rows) {
    SparseVec r = row0;
    for (auto it = r.begin(); it != r.end();) {
      if (it->second.is_zero()) it = r.erase(it);
      else ++it;
    }
    bool changed = true;
    while (changed && !r.empty()) {
      changed = false;
      for (const auto& [c, v] : r) {
        auto p = piv.find(c);
        if (p == piv.end()) continue;
        Scalar f = v;
        axpy(r, -f, p->second);
        changed = true;
        break;
      }
    }
    if (r.empty()) continue;
    int lead = r.begin()->first;
    Scalar inv = r.begin()->second.inverse();
    for (auto& [c, v] : r) v *= inv;
    for (auto& [pc, prow] : piv) {
      auto it = prow.find(lead);
      if (it != prow.end()) {
        Scalar f = it->second;
        axpy(prow, -f, r);
      }
    }
    piv.emplace(lead, std::move(r));
  }
  std::vector<SparseVec> basis;
  for (int free = 0; free < ncols; ++free) {
    if (piv.count(free)) continue;
    SparseVec v;
    v.emplace(free, Scalar(1));
    for (const auto& [pc, prow] : piv) {
      auto it = prow.find(free);
      if (it != prow.end()) v.emplace(pc, -it->second);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace chiral
