#include "weylq/quantize.hpp"

namespace weylq {

namespace {

WeylElement monomial_operator(int n, const Monomial& m) {
  return WeylElement::from_term(n, m, HScalar::integer(1));
}

// hbar*eta - i*hbar/2, the scalar attached to the divergence term.
HScalar eta_scalar(const Rational& eta) {
  HScalar h = HScalar::hbar();
  return h * HScalar::rational(eta) - HScalar::i_unit() * h * HScalar::rational(Rational(1, 2));
}

}  // namespace

QuantizationMap schrodinger(int n) {
  QuantizationMap Q;
  Q.map_name = "schrodinger";
  Q.n = n;
  Q.domain = SubalgebraSpec::make_named(AlgebraFamily::heisenberg, n);
  Q.image_of = [n](const Monomial& m) { return monomial_operator(n, m); };
  return Q;
}

QuantizationMap metaplectic(int n) {
  QuantizationMap Q;
  Q.map_name = "metaplectic";
  Q.n = n;
  Q.domain = SubalgebraSpec::make_named(AlgebraFamily::hsp, n);
  Q.image_of = [n](const Monomial& m) {
    WeylElement img = monomial_operator(n, m);
    // q^i p_i needs the symmetric -i hbar/2 correction; mixed indices and the
    // pure quadratics are already normal-ordered as written.
    for (int i = 0; i < n; ++i) {
      if (m.q_exp(i) == 1 && m.p_exp(i) == 1 && m.total_degree() == 2) {
        HScalar half_ih = HScalar::i_unit() * HScalar::hbar() * HScalar::rational(Rational(1, 2));
        img = img - WeylElement::scalar(n, half_ih);
      }
    }
    return img;
  };
  return Q;
}

QuantizationMap sigma_eta(int n, const Rational& eta) {
  QuantizationMap Q;
  Q.map_name = "sigma";
  Q.n = n;
  Q.domain = SubalgebraSpec::make_named(AlgebraFamily::coordinate, n);
  Q.parameters["eta"] = HScalar::rational(eta);
  HScalar divergence_coeff = eta_scalar(eta);
  Q.image_of = [n, divergence_coeff](const Monomial& m) {
    // Monomials here are either g(q) parts (no p) or f(q) p_i parts.
    WeylElement img = monomial_operator(n, m);
    for (int i = 0; i < n; ++i) {
      if (m.p_exp(i) == 1) {
        std::uint32_t a = m.q_exp(i);
        if (a > 0) {
          Monomial d = m;
          d.set_p(i, 0);
          d.set_q(i, a - 1);
          img = img + WeylElement::from_term(
                          n, d, divergence_coeff * HScalar::rational(Rational(a)));
        }
      }
    }
    return img;
  };
  return Q;
}

QuantizationMap weyl_symmetric(int n) {
  QuantizationMap Q;
  Q.map_name = "weyl";
  Q.n = n;
  Q.domain = SubalgebraSpec::make_named(AlgebraFamily::full, n);
  Q.image_of = [n](const Monomial& m) {
    return symmetrize(Polynomial::from_term(n, m, Rational(1)));
  };
  return Q;
}

QuantizationMap map_by_name(const std::string& name, int n, const Rational& eta) {
  if (name == "schrodinger") return schrodinger(n);
  if (name == "metaplectic") return metaplectic(n);
  if (name == "sigma") return sigma_eta(n, eta);
  if (name == "weyl") return weyl_symmetric(n);
  throw std::invalid_argument("unknown quantization map: " + name);
}

WeylElement vn_extend(VnKind kind, const Polynomial& r) {
  if (r.dim() != 1) throw std::invalid_argument("vn_extend needs an n = 1 polynomial");
  // r must be univariate: all in q, or all in p.
  bool uses_q = false, uses_p = false;
  for (const auto& [m, c] : r.terms()) {
    (void)c;
    if (m.q_degree() > 0) uses_q = true;
    if (m.p_degree() > 0) uses_p = true;
  }
  if (uses_q && uses_p) {
    throw std::invalid_argument("vn_extend: r must be a polynomial in one variable");
  }

  bool want_q = (kind == VnKind::r_of_q || kind == VnKind::r_of_q_times_p);
  WeylElement gen = want_q ? WeylElement::q(1, 0) : WeylElement::p(1, 0);
  WeylElement r_hat = WeylElement::zero(1);
  for (const auto& [m, c] : r.terms()) {
    unsigned deg = m.total_degree();
    r_hat = r_hat + weyl_pow(gen, deg).scale(HScalar::rational(c));
  }

  HScalar half = HScalar::rational(Rational(1, 2));
  switch (kind) {
    case VnKind::r_of_q:
    case VnKind::r_of_p:
      return r_hat;
    case VnKind::r_of_q_times_p: {
      WeylElement p_hat = WeylElement::p(1, 0);
      return (weyl_mul(r_hat, p_hat) + weyl_mul(p_hat, r_hat)).scale(half);
    }
    case VnKind::q_times_r_of_p: {
      WeylElement q_hat = WeylElement::q(1, 0);
      return (weyl_mul(q_hat, r_hat) + weyl_mul(r_hat, q_hat)).scale(half);
    }
  }
  throw std::logic_error("unreachable");
}

WeylElement apply_map(const QuantizationMap& Q, const Polynomial& f) {
  if (f.dim() != Q.n) throw std::invalid_argument("apply_map: dimension mismatch");
  std::vector<Monomial> outside;
  for (const auto& [m, c] : f.terms()) {
    (void)c;
    Polynomial mono = Polynomial::from_term(Q.n, m, Rational(1));
    if (!membership(mono, Q.domain)) outside.push_back(m);
  }
  if (!outside.empty()) {
    std::string msg = "polynomial lies outside the domain of " + Q.map_name + ":";
    for (const auto& m : outside) msg += " " + monomial_to_string(m);
    throw DomainError(msg, std::move(outside));
  }
  WeylElement out(Q.n);
  for (const auto& [m, c] : f.terms()) {
    out = out + Q.image_of(m).scale(HScalar::rational(c));
  }
  return out;
}

}  // namespace weylq
