#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylq {

// Exact rational scalar. mpq_class keeps values reduced with positive
// denominator as long as they are built through arithmetic; strings must go
// through parse_rational so they get canonicalized.
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
Rational rational_pow(const Rational& base, unsigned exp);
bool is_square(const Rational& r, Rational& root);

// mpq_class(num, den) does not canonicalize; route every ratio whose sign or
// common factors are not known in advance through here.
inline Rational make_fraction(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// a + b*i with exact rational parts.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() : re(0), im(0) {}
  Gaussian(const Rational& r) : re(r), im(0) {}
  Gaussian(const Rational& r, const Rational& i) : re(r), im(i) {}
  Gaussian(long r) : re(r), im(0) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Gaussian conj() const { return Gaussian(re, -im); }

  Gaussian operator+(const Gaussian& o) const { return Gaussian(re + o.re, im + o.im); }
  Gaussian operator-(const Gaussian& o) const { return Gaussian(re - o.re, im - o.im); }
  Gaussian operator-() const { return Gaussian(-re, -im); }
  Gaussian operator*(const Gaussian& o) const {
    return Gaussian(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  bool operator==(const Gaussian& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Gaussian& o) const { return !(*this == o); }
};

// Polynomial in the formal symbol hbar with Gaussian-rational coefficients.
// hbar is never inverted here; division by hbar is only exposed as an exact
// operation that fails loudly on non-divisible input.
class HScalar {
 public:
  HScalar() = default;
  static HScalar rational(const Rational& r) { return term(Gaussian(r), 0); }
  static HScalar integer(long v) { return term(Gaussian(Rational(v)), 0); }
  static HScalar gaussian(const Gaussian& g) { return term(g, 0); }
  static HScalar i_unit() { return term(Gaussian(Rational(0), Rational(1)), 0); }
  static HScalar hbar(unsigned k = 1) { return term(Gaussian(Rational(1)), k); }
  static HScalar term(const Gaussian& g, unsigned hbar_power);

  bool is_zero() const { return coeffs_.empty(); }
  // True when the value is a polynomial in hbar with real coefficients.
  bool is_real() const;
  // hbar-degree; -1 for zero.
  int hbar_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Gaussian coeff(unsigned k) const;

  HScalar operator+(const HScalar& o) const;
  HScalar operator-(const HScalar& o) const;
  HScalar operator-() const;
  HScalar operator*(const HScalar& o) const;
  bool operator==(const HScalar& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const HScalar& o) const { return !(*this == o); }

  HScalar conj() const;
  bool divisible_by_hbar(unsigned k = 1) const;
  HScalar div_hbar_exact(unsigned k = 1) const;
  Gaussian eval(const Rational& hbar_value) const;

  // Access to the coefficient list, lowest power first.
  const std::vector<Gaussian>& coeffs() const { return coeffs_; }

 private:
  void trim();
  std::vector<Gaussian> coeffs_;
};

std::string to_string(const Gaussian& g);

}  // namespace weylq
