#pragma once

#include <string>
#include <vector>

#include "weylq/numeric.hpp"

namespace weylq {

// Dense univariate polynomial over the rationals (the formal variable is
// hbar wherever this is used for solving).
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c) {
    if (sgn(c) != 0) c_.push_back(c);
  }
  UPoly(long v) : UPoly(Rational(v)) {}
  static UPoly monomial(const Rational& c, unsigned k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(unsigned k) const {
    return k < c_.size() ? c_[k] : Rational(0);
  }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator-() const;
  UPoly operator*(const UPoly& o) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  // Polynomial division; remainder has smaller degree than the divisor.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem);
  static UPoly gcd(UPoly a, UPoly b);  // monic
  UPoly monic() const;

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Rational function num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  RatFunc(long v) : num_(Rational(v)), den_(Rational(1)) {}
  RatFunc(const Rational& v) : num_(v), den_(Rational(1)) {}
  RatFunc(const UPoly& num) : num_(num), den_(Rational(1)) {}
  RatFunc(const UPoly& num, const UPoly& den);

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

 private:
  void reduce();
  UPoly num_, den_;
};

std::string to_string(const UPoly& f, const std::string& var);
std::string to_string(const RatFunc& f, const std::string& var);

}  // namespace weylq
