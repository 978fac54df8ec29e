#include "weylq/ratfunc.hpp"

namespace weylq {

UPoly UPoly::monomial(const Rational& c, unsigned k) {
  UPoly f;
  if (sgn(c) == 0) return f;
  f.c_.assign(k + 1, Rational(0));
  f.c_[k] = c;
  return f;
}

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly out;
  out.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t k = 0; k < out.c_.size(); ++k) out.c_[k] = coeff(k) + o.coeff(k);
  out.trim();
  return out;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

UPoly UPoly::operator*(const UPoly& o) const {
  UPoly out;
  if (is_zero() || o.is_zero()) return out;
  out.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t a = 0; a < c_.size(); ++a) {
    if (sgn(c_[a]) == 0) continue;
    for (size_t b = 0; b < o.c_.size(); ++b) out.c_[a + b] += c_[a] * o.c_[b];
  }
  out.trim();
  return out;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  quot = UPoly();
  rem = a;
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    unsigned shift = static_cast<unsigned>(rem.degree() - b.degree());
    Rational factor = rem.leading() / b.leading();
    UPoly t = UPoly::monomial(factor, shift);
    quot = quot + t;
    rem = rem - t * b;
  }
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  return a.monic();
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly out = *this;
  Rational lead = leading();
  for (auto& c : out.c_) c /= lead;
  return out;
}

RatFunc::RatFunc(const UPoly& num, const UPoly& den) : num_(num), den_(den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = UPoly(Rational(1));
    return;
  }
  UPoly g = UPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    UPoly q, r;
    UPoly::divmod(num_, g, q, r);
    num_ = q;
    UPoly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    UPoly n2, d2;
    n2 = num_ * UPoly(Rational(1) / lead);
    d2 = den_ * UPoly(Rational(1) / lead);
    num_ = n2;
    den_ = d2;
  }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

std::string to_string(const UPoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    Rational c = f.coeff(static_cast<unsigned>(k));
    if (sgn(c) == 0) continue;
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::string to_string(const RatFunc& f, const std::string& var) {
  if (f.is_polynomial()) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

}  // namespace weylq
