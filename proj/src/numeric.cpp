#include "weylq/numeric.hpp"

namespace weylq {

Rational parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
  if (sgn(q.get_den()) == 0) {
    throw std::invalid_argument("zero denominator in rational literal: " + text);
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational out(1);
  Rational b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1u;
  }
  return out;
}

bool is_square(const Rational& r, Rational& root) {
  if (sgn(r) < 0) return false;
  if (sgn(r) == 0) {
    root = 0;
    return true;
  }
  mpz_class num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class snum, sden;
  mpz_sqrt(snum.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sden.get_mpz_t(), den.get_mpz_t());
  root = Rational(snum) / Rational(sden);
  return true;
}

HScalar HScalar::term(const Gaussian& g, unsigned hbar_power) {
  HScalar h;
  if (g.is_zero()) return h;
  h.coeffs_.assign(hbar_power + 1, Gaussian());
  h.coeffs_[hbar_power] = g;
  return h;
}

void HScalar::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool HScalar::is_real() const {
  for (const auto& g : coeffs_) {
    if (!g.is_real()) return false;
  }
  return true;
}

Gaussian HScalar::coeff(unsigned k) const {
  if (k >= coeffs_.size()) return Gaussian();
  return coeffs_[k];
}

HScalar HScalar::operator+(const HScalar& o) const {
  HScalar out;
  out.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t k = 0; k < out.coeffs_.size(); ++k) {
    out.coeffs_[k] = coeff(static_cast<unsigned>(k)) + o.coeff(static_cast<unsigned>(k));
  }
  out.trim();
  return out;
}

HScalar HScalar::operator-(const HScalar& o) const { return *this + (-o); }

HScalar HScalar::operator-() const {
  HScalar out = *this;
  for (auto& g : out.coeffs_) g = -g;
  return out;
}

HScalar HScalar::operator*(const HScalar& o) const {
  HScalar out;
  if (is_zero() || o.is_zero()) return out;
  out.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Gaussian());
  for (size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a].is_zero()) continue;
    for (size_t b = 0; b < o.coeffs_.size(); ++b) {
      out.coeffs_[a + b] = out.coeffs_[a + b] + coeffs_[a] * o.coeffs_[b];
    }
  }
  out.trim();
  return out;
}

HScalar HScalar::conj() const {
  HScalar out = *this;
  for (auto& g : out.coeffs_) g = g.conj();
  return out;
}

bool HScalar::divisible_by_hbar(unsigned k) const {
  if (is_zero()) return true;
  if (coeffs_.size() < k) return false;
  for (unsigned j = 0; j < k; ++j) {
    if (!coeffs_[j].is_zero()) return false;
  }
  return true;
}

HScalar HScalar::div_hbar_exact(unsigned k) const {
  if (!divisible_by_hbar(k)) {
    throw std::domain_error("HScalar not divisible by hbar^" + std::to_string(k));
  }
  HScalar out;
  if (is_zero()) return out;
  out.coeffs_.assign(coeffs_.begin() + k, coeffs_.end());
  return out;
}

Gaussian HScalar::eval(const Rational& hbar_value) const {
  Gaussian acc;
  // Horner, highest power first.
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * Gaussian(hbar_value) + *it;
  }
  return acc;
}

std::string to_string(const Gaussian& g) {
  if (g.is_zero()) return "0";
  std::string out;
  if (sgn(g.re) != 0) out += to_string(g.re);
  if (sgn(g.im) != 0) {
    if (!out.empty()) out += (sgn(g.im) > 0) ? " + " : " - ";
    else if (sgn(g.im) < 0) out += "-";
    Rational a = abs(g.im);
    if (a != 1) out += to_string(a) + "*";
    out += "i";
  }
  return out;
}

}  // namespace weylq
