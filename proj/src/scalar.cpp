#include "chiral/scalar.hpp"

#include "chiral/error.hpp"

namespace chiral {

Scalar::Scalar(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& x) {
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
  };
  trim(s);
  if (s.empty()) throw InputError("empty rational literal");
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
    trim(num);
    trim(den);
  }
  auto valid_int = [](const std::string& x, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < x.size() && (x[i] == '-' || x[i] == '+')) ++i;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false))
    throw InputError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  return Scalar(mpq_class(n, d));
}

std::string Scalar::str() const { return q_.get_str(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  return Scalar(mpq_class(1 / q_));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error("division by zero");
  q_ /= o.q_;
  return *this;
}

Scalar binomial(long n, long k) {
  if (k < 0) return Scalar(0);
  mpq_class r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return Scalar(r);
}

}  // namespace chiral
