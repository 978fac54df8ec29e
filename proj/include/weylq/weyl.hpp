#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "weylq/polynomial.hpp"

namespace weylq {

// Element of the formal Weyl algebra in normal order: every stored monomial
// means q1^a1..qn^an p1^b1..pn^bn (all position factors to the left), with an
// HScalar coefficient. The canonical form is unique, so equality is term-wise.
class WeylElement {
 public:
  WeylElement() : n_(1) {}
  explicit WeylElement(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  }

  static WeylElement zero(int n) { return WeylElement(n); }
  static WeylElement identity(int n) {
    return from_term(n, Monomial::unit(n), HScalar::integer(1));
  }
  static WeylElement scalar(int n, const HScalar& c) {
    return from_term(n, Monomial::unit(n), c);
  }
  static WeylElement q(int n, int i) {
    return from_term(n, Monomial::q(n, i), HScalar::integer(1));
  }
  static WeylElement p(int n, int i) {
    return from_term(n, Monomial::p(n, i), HScalar::integer(1));
  }
  static WeylElement from_term(int n, const Monomial& m, const HScalar& c);

  int dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, HScalar>& terms() const { return terms_; }

  // Operator degree: maximal total monomial degree, ignoring hbar powers.
  int degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    return static_cast<int>(terms_.rbegin()->first.total_degree());
  }

  HScalar coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? HScalar() : it->second;
  }

  void add_term(const Monomial& m, const HScalar& c);

  WeylElement operator+(const WeylElement& o) const;
  WeylElement operator-(const WeylElement& o) const;
  WeylElement operator-() const;
  WeylElement scale(const HScalar& s) const;
  bool operator==(const WeylElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const WeylElement& o) const { return !(*this == o); }

 private:
  int n_;
  std::map<Monomial, HScalar> terms_;
};

// Associative product; cross terms reduce to normal order by repeated
// application of p_i q_i = q_i p_i - i hbar. Distinct indices commute.
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);
WeylElement commutator(const WeylElement& a, const WeylElement& b);
WeylElement weyl_pow(const WeylElement& a, unsigned k);

// (i/hbar)[a,b]. Commutators are always divisible by hbar, and this throws if
// a non-divisible element sneaks in.
WeylElement dirac_bracket(const WeylElement& a, const WeylElement& b);

// Antilinear anti-involution: fixes each q_i, p_i and hbar, conjugates i,
// reverses factor order and renormal-orders.
WeylElement formal_adjoint(const WeylElement& a);

// True iff a commutes with every q_i and p_i; in this algebra that happens
// exactly for scalar multiples of the identity.
bool is_central(const WeylElement& a);

// Totally symmetric (Weyl) ordering of a classical polynomial: each monomial
// maps to the average of all distinct orderings of its factors.
WeylElement symmetrize(const Polynomial& f);

// Classical limit: drops hbar-carrying terms and reads exponents classically.
// Requires every hbar^0 coefficient to be real.
Polynomial principal_symbol(const WeylElement& a);

// Normal form of p^b q^a in one variable as a map (q_exp, p_exp) -> scalar,
// computed by the rewriting rule alone. Exposed for the closed-form check.
std::map<std::pair<unsigned, unsigned>, HScalar> normal_order_pq(unsigned b, unsigned a);

WeylElement parse_weyl(const std::string& text, int n);
std::string to_string(const WeylElement& a);

}  // namespace weylq
