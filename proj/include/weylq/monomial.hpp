#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylq {

// Sentinel degree of the zero polynomial.
inline constexpr int kDegreeOfZero = INT32_MIN;

// Exponent vector over q^1..q^n, p_1..p_n (in that order). The same data
// serves classical monomials (commuting variables) and normal-ordered Weyl
// monomials q1^a1..qn^an p1^b1..pn^bn.
struct Monomial {
  std::vector<std::uint32_t> e;

  Monomial() = default;
  explicit Monomial(int n) : e(2 * static_cast<size_t>(n), 0) {
    if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  }

  int dim() const { return static_cast<int>(e.size() / 2); }
  std::uint32_t q_exp(int i) const { return e[static_cast<size_t>(i)]; }
  std::uint32_t p_exp(int i) const { return e[e.size() / 2 + static_cast<size_t>(i)]; }
  void set_q(int i, std::uint32_t v) { e[static_cast<size_t>(i)] = v; }
  void set_p(int i, std::uint32_t v) { e[e.size() / 2 + static_cast<size_t>(i)] = v; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  unsigned q_degree() const {
    unsigned d = 0;
    for (size_t i = 0; i < e.size() / 2; ++i) d += e[i];
    return d;
  }
  unsigned p_degree() const {
    unsigned d = 0;
    for (size_t i = e.size() / 2; i < e.size(); ++i) d += e[i];
    return d;
  }
  bool is_unit() const { return total_degree() == 0; }

  static Monomial unit(int n) { return Monomial(n); }
  static Monomial q(int n, int i) {
    Monomial m(n);
    m.set_q(i, 1);
    return m;
  }
  static Monomial p(int n, int i) {
    Monomial m(n);
    m.set_p(i, 1);
    return m;
  }

  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Canonical order: by total degree, ties broken so that within a degree the
// variable q1 dominates (1 < q < p < q^2 < q*p < p^2 ...).
inline bool operator<(const Monomial& a, const Monomial& b) {
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return a.e > b.e;  // lexicographically larger exponent tuple sorts earlier
}

// All monomials of total degree in [k_lo, k_hi], canonically ordered.
std::vector<Monomial> monomial_basis(int n, int k_lo, int k_hi);

}  // namespace weylq
