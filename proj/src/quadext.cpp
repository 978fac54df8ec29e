#include "weylq/quadext.hpp"

namespace weylq {

long QuadExt::merge_radicand(long d1, long d2) {
  if (d1 == 0) return d2;
  if (d2 == 0) return d1;
  if (d1 != d2) {
    throw std::invalid_argument("mixed quadratic extensions sqrt(" + std::to_string(d1) +
                                ") and sqrt(" + std::to_string(d2) + ")");
  }
  return d1;
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
  long d = merge_radicand(d_, o.d_);
  return QuadExt(a_ + o.a_, b_ + o.b_, d);
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
  long d = merge_radicand(d_, o.d_);
  return QuadExt(a_ - o.a_, b_ - o.b_, d);
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
  long d = merge_radicand(d_, o.d_);
  return QuadExt(a_ * o.a_ + b_ * o.b_ * Rational(d), a_ * o.b_ + b_ * o.a_, d);
}

QuadExt QuadExt::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in quadratic extension");
  // sqrt(d) is irrational for squarefree d > 1, so the norm only vanishes at 0.
  Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  return QuadExt(a_ / norm, -b_ / norm, d_);
}

bool QuadExt::operator==(const QuadExt& o) const {
  if (a_ != o.a_ || b_ != o.b_) return false;
  return sgn(b_) == 0 || d_ == o.d_;
}

std::optional<QuadExt> exact_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (sgn(r) == 0) return QuadExt();
  // sqrt(num/den) = sqrt(num*den)/den.
  mpz_class inner = r.get_num() * r.get_den();
  mpz_class s = 1;
  mpz_class d = 1;
  mpz_class m = inner;
  for (long p = 2; p <= 1000000 && m > 1; p = (p == 2) ? 3 : p + 2) {
    if (m % p != 0) continue;
    unsigned count = 0;
    while (m % p == 0) {
      m /= p;
      ++count;
    }
    for (unsigned k = 0; k + 1 < count; k += 2) s *= p;
    if (count % 2 == 1) d *= p;
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      mpz_class sq;
      mpz_sqrt(sq.get_mpz_t(), m.get_mpz_t());
      s *= sq;
    } else if (m < mpz_class("1000000000000")) {
      // Residue below the trial bound squared is prime or a product of two
      // distinct primes, hence squarefree.
      d *= m;
    } else {
      return std::nullopt;
    }
  }
  if (!d.fits_slong_p()) return std::nullopt;
  Rational coeff = Rational(s) / Rational(r.get_den());
  long dl = d.get_si();
  if (dl == 1) return QuadExt(coeff);
  return QuadExt::sqrt_term(coeff, dl);
}

std::string to_string(const QuadExt& x) {
  if (x.is_zero()) return "0";
  std::string out;
  if (sgn(x.rational_part()) != 0) out += to_string(x.rational_part());
  const Rational& b = x.radical_part();
  if (sgn(b) != 0) {
    if (!out.empty()) out += (sgn(b) > 0) ? " + " : " - ";
    else if (sgn(b) < 0) out += "-";
    Rational mag = abs(b);
    if (mag != 1) out += to_string(mag) + "*";
    out += "sqrt(" + std::to_string(x.radicand()) + ")";
  }
  return out;
}

}  // namespace weylq
