#pragma once

#include <optional>
#include <string>

#include "weylq/numeric.hpp"

namespace weylq {

// Element a + b*sqrt(d) of a real quadratic extension of the rationals.
// d is a squarefree integer > 1; purely rational values carry d = 0 so they
// mix freely with any extension. Mixing two different extensions throws.
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), d_(0) {}
  QuadExt(long v) : a_(v), b_(0), d_(0) {}
  QuadExt(const Rational& v) : a_(v), b_(0), d_(0) {}
  QuadExt(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
    normalize();
  }

  static QuadExt sqrt_term(const Rational& b, long d) { return QuadExt(Rational(0), b, d); }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  long radicand() const { return d_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
  QuadExt operator*(const QuadExt& o) const;
  QuadExt inverse() const;
  QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }
  bool operator==(const QuadExt& o) const;
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

 private:
  void normalize() {
    if (sgn(b_) == 0) d_ = 0;
  }
  static long merge_radicand(long d1, long d2);

  Rational a_, b_;
  long d_;
};

// Exact square root of a nonnegative rational as s*sqrt(d), d squarefree.
// Returns nullopt for negative input or when the squarefree part cannot be
// certified by trial division.
std::optional<QuadExt> exact_sqrt(const Rational& r);

std::string to_string(const QuadExt& x);

}  // namespace weylq
