#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "weylq/monomial.hpp"
#include "weylq/numeric.hpp"

namespace weylq {

// Sparse multivariate polynomial over a commutative exact scalar K.
// Invariant: no zero coefficients are stored; equality is term-wise.
template <class K>
class BasicPolynomial {
 public:
  BasicPolynomial() : n_(1) {}
  explicit BasicPolynomial(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  }

  static BasicPolynomial zero(int n) { return BasicPolynomial(n); }
  static BasicPolynomial constant(int n, const K& c) {
    return from_term(n, Monomial::unit(n), c);
  }
  static BasicPolynomial from_term(int n, const Monomial& m, const K& c) {
    BasicPolynomial f(n);
    if (m.dim() != n) throw std::invalid_argument("monomial dimension mismatch");
    if (!(c == K())) f.terms_[m] = c;
    return f;
  }
  static BasicPolynomial variable_q(int n, int i) {
    return from_term(n, Monomial::q(n, i), K(1));
  }
  static BasicPolynomial variable_p(int n, int i) {
    return from_term(n, Monomial::p(n, i), K(1));
  }

  int dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, K>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  int degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    return static_cast<int>(terms_.rbegin()->first.total_degree());
  }

  K coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K() : it->second;
  }

  void add_term(const Monomial& m, const K& c) {
    if (c == K()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second == K()) terms_.erase(it);
    }
  }

  BasicPolynomial operator+(const BasicPolynomial& o) const {
    check_dim(o);
    BasicPolynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
  }
  BasicPolynomial operator-(const BasicPolynomial& o) const {
    check_dim(o);
    BasicPolynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, K() - c);
    return out;
  }
  BasicPolynomial operator-() const {
    BasicPolynomial out(n_);
    for (const auto& [m, c] : terms_) out.terms_[m] = K() - c;
    return out;
  }
  BasicPolynomial operator*(const BasicPolynomial& o) const {
    check_dim(o);
    BasicPolynomial out(n_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        Monomial m = ma;
        for (size_t k = 0; k < m.e.size(); ++k) m.e[k] += mb.e[k];
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }
  BasicPolynomial operator*(const K& s) const {
    BasicPolynomial out(n_);
    if (s == K()) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
  }
  bool operator==(const BasicPolynomial& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const BasicPolynomial& o) const { return !(*this == o); }

  BasicPolynomial pow(unsigned k) const {
    BasicPolynomial out = constant(n_, K(1));
    for (unsigned j = 0; j < k; ++j) out = out * (*this);
    return out;
  }

  // Partial derivative; var indexes q1..qn,p1..pn as 0..2n-1.
  BasicPolynomial derivative(int var) const {
    BasicPolynomial out(n_);
    for (const auto& [m, c] : terms_) {
      std::uint32_t ev = m.e[static_cast<size_t>(var)];
      if (ev == 0) continue;
      Monomial d = m;
      d.e[static_cast<size_t>(var)] = ev - 1;
      out.add_term(d, c * K(static_cast<long>(ev)));
    }
    return out;
  }

  BasicPolynomial homogeneous_part(unsigned k) const {
    BasicPolynomial out(n_);
    for (const auto& [m, c] : terms_) {
      if (m.total_degree() == k) out.terms_[m] = c;
    }
    return out;
  }

  // Substitutes images[v] for variable v (0..2n-1). Images must share one
  // dimension, which becomes the dimension of the result.
  BasicPolynomial substitute(const std::vector<BasicPolynomial>& images) const {
    if (images.size() != static_cast<size_t>(2 * n_)) {
      throw std::invalid_argument("substitute needs one image per variable");
    }
    int out_n = images.empty() ? n_ : images[0].dim();
    BasicPolynomial out(out_n);
    for (const auto& [m, c] : terms_) {
      BasicPolynomial t = constant(out_n, c);
      for (size_t v = 0; v < m.e.size(); ++v) {
        if (m.e[v] > 0) t = t * images[v].pow(m.e[v]);
      }
      out = out + t;
    }
    return out;
  }

 private:
  void check_dim(const BasicPolynomial& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  int n_;
  std::map<Monomial, K> terms_;
};

using Polynomial = BasicPolynomial<Rational>;

// Poisson bracket with the convention
//   {f,g} = sum_k df/dp_k dg/dq^k - dg/dp_k df/dq^k,
// so {p,q} = 1 and {q,p} = -1.
template <class K>
BasicPolynomial<K> poisson_bracket(const BasicPolynomial<K>& f,
                                   const BasicPolynomial<K>& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("poisson_bracket: dimension mismatch");
  int n = f.dim();
  BasicPolynomial<K> out(n);
  for (int k = 0; k < n; ++k) {
    int qv = k, pv = n + k;
    out = out + f.derivative(pv) * g.derivative(qv) - g.derivative(pv) * f.derivative(qv);
  }
  return out;
}

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  size_t pos;
};

Polynomial parse_polynomial(const std::string& text, int n);
std::string to_string(const Polynomial& f);
std::string monomial_to_string(const Monomial& m);

}  // namespace weylq
