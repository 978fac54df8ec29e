#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <algorithm>
#include <random>
#include <vector>

#include "weylq/polynomial.hpp"
#include "weylq/weyl.hpp"

namespace weylq::testing {

inline Rational random_rational(std::mt19937_64& rng, int max_num = 6, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return make_fraction(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, int max_num = 6,
                                        int max_den = 4) {
  Rational r = random_rational(rng, max_num, max_den);
  while (sgn(r) == 0) r = random_rational(rng, max_num, max_den);
  return r;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, int n, int max_degree,
                                    int term_count) {
  std::vector<Monomial> basis = monomial_basis(n, 0, max_degree);
  std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
  Polynomial f(n);
  for (int t = 0; t < term_count; ++t) {
    f.add_term(basis[pick(rng)], random_rational(rng));
  }
  return f;
}

inline WeylElement random_weyl(std::mt19937_64& rng, int n, int max_degree, int term_count,
                               int max_hbar_power = 2) {
  std::vector<Monomial> basis = monomial_basis(n, 0, max_degree);
  std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> hpow(0, max_hbar_power);
  WeylElement a(n);
  for (int t = 0; t < term_count; ++t) {
    Gaussian g(random_rational(rng), random_rational(rng));
    a.add_term(basis[pick(rng)], HScalar::term(g, static_cast<unsigned>(hpow(rng))));
  }
  return a;
}

// Poisson bracket through the monomial-pair closed form
//   {q^a p^b, q^c p^d} = sum_k (b_k c_k - a_k d_k) q^{a+c-e_k} p^{b+d-e_k},
// a different route from the derivative-based implementation.
inline Polynomial bracket_oracle(const Polynomial& f, const Polynomial& g) {
  int n = f.dim();
  Polynomial out(n);
  for (const auto& [ma, ca] : f.terms()) {
    for (const auto& [mb, cb] : g.terms()) {
      for (int k = 0; k < n; ++k) {
        long w = static_cast<long>(ma.p_exp(k)) * mb.q_exp(k) -
                 static_cast<long>(ma.q_exp(k)) * mb.p_exp(k);
        if (w == 0) continue;
        Monomial m(n);
        for (int j = 0; j < n; ++j) {
          m.set_q(j, ma.q_exp(j) + mb.q_exp(j));
          m.set_p(j, ma.p_exp(j) + mb.p_exp(j));
        }
        m.set_q(k, m.q_exp(k) - 1);
        m.set_p(k, m.p_exp(k) - 1);
        out.add_term(m, ca * cb * Rational(w));
      }
    }
  }
  return out;
}

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

inline Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

// Closed form for p^b q^a:
//   sum_k C(a,k) C(b,k) k! (-i hbar)^k q^{a-k} p^{b-k}.
inline WeylElement normal_order_closed_form(unsigned b, unsigned a) {
  WeylElement out(1);
  HScalar minus_ih = -(HScalar::i_unit() * HScalar::hbar());
  HScalar power = HScalar::integer(1);
  for (unsigned k = 0; k <= std::min(a, b); ++k) {
    Monomial m(1);
    m.set_q(0, a - k);
    m.set_p(0, b - k);
    out.add_term(m, HScalar::rational(binomial(a, k) * binomial(b, k) * factorial(k)) * power);
    power = power * minus_ih;
  }
  return out;
}

// Symmetric ordering of q^a p^b by brute-force word enumeration.
inline WeylElement symmetrize_words_oracle(unsigned a, unsigned b) {
  std::vector<int> word(a + b, 0);
  for (size_t i = a; i < word.size(); ++i) word[i] = 1;
  WeylElement q = WeylElement::q(1, 0);
  WeylElement p = WeylElement::p(1, 0);
  WeylElement sum(1);
  long count = 0;
  do {
    WeylElement w = WeylElement::identity(1);
    for (int bit : word) w = weyl_mul(w, bit ? p : q);
    sum = sum + w;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return sum.scale(HScalar::rational(Rational(1, count)));
}

}  // namespace weylq::testing
