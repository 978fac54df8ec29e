#include <doctest.h>

#include "oracles.hpp"
#include "weylq/quantize.hpp"

using namespace weylq;
using weylq::testing::random_polynomial;

namespace {

Polynomial P(const std::string& s, int n = 1) { return parse_polynomial(s, n); }
WeylElement W(const std::string& s, int n = 1) { return parse_weyl(s, n); }

}  // namespace

TEST_CASE("schrodinger_images") {
  QuantizationMap Q = schrodinger(1);
  CHECK(apply_map(Q, P("q")) == W("q"));
  CHECK(apply_map(Q, P("1")) == W("I"));
  CHECK(apply_map(Q, P("2*q - 3*p")) == W("2*q - 3*p"));
  CHECK_THROWS_AS(apply_map(Q, P("q^2")), DomainError);
}

TEST_CASE("metaplectic_images") {
  QuantizationMap Q = metaplectic(1);
  CHECK(apply_map(Q, P("q*p")) == W("q*p - 1/2*i*hbar*I"));
  CHECK(apply_map(Q, P("p^2")) == W("p^2"));
  CHECK(apply_map(Q, P("q^2 + 2*q*p")) == W("q^2 + 2*q*p - i*hbar*I"));

  QuantizationMap Q2 = metaplectic(2);
  CHECK(apply_map(Q2, P("q1*p2", 2)) == W("q1*p2", 2));  // no delta term
  CHECK(apply_map(Q2, P("q2*p2", 2)) == W("q2*p2 - 1/2*i*hbar*I", 2));

  CHECK_THROWS_AS(apply_map(Q, P("q^3")), DomainError);
  try {
    apply_map(Q, P("q^3 + q"));
    CHECK(false);
  } catch (const DomainError& e) {
    REQUIRE(e.offending.size() == 1);
    CHECK(monomial_to_string(e.offending[0]) == "q^3");
  }
}

TEST_CASE("sigma_eta_images") {
  QuantizationMap s0 = sigma_eta(1, Rational(0));
  CHECK(apply_map(s0, P("q*p")) == W("q*p - 1/2*i*hbar*I"));
  CHECK(apply_map(s0, P("q^5")) == W("q^5"));

  // q^k p -> q^k p + k (hbar eta - i hbar/2) q^{k-1} at k = 3
  Rational eta(1, 2);
  QuantizationMap s = sigma_eta(1, eta);
  CHECK(apply_map(s, P("q^3*p")) ==
        W("q^3*p + 3/2*hbar*q^2 - 3/2*i*hbar*q^2"));
  CHECK_THROWS_AS(apply_map(s, P("p^2")), DomainError);

  // n = 2 divergence picks up only the matching index
  QuantizationMap s2 = sigma_eta(2, eta);
  CHECK(apply_map(s2, P("q1^2*q2*p1", 2)) ==
        W("q1^2*q2*p1 + q1*q2*hbar - i*hbar*q1*q2", 2));
}

TEST_CASE("map_restrictions_agree") {
  QuantizationMap sch = schrodinger(1);
  QuantizationMap met = metaplectic(1);
  for (const auto& s : {"1", "q", "p"}) {
    CHECK(apply_map(met, P(s)) == apply_map(sch, P(s)));
    for (const Rational& eta : {Rational(0), Rational(1, 2), Rational(-3, 7)}) {
      CHECK(apply_map(sigma_eta(1, eta), P(s)) == apply_map(sch, P(s)));
    }
  }
  // sigma at eta = 0 agrees with the quadratic map on C ∩ P^2
  QuantizationMap s0 = sigma_eta(1, Rational(0));
  for (const auto& s : {"1", "q", "p", "q^2", "q*p"}) {
    CHECK(apply_map(s0, P(s)) == apply_map(met, P(s)));
  }
}

TEST_CASE("unit_rule_and_self_adjoint_images") {
  std::vector<QuantizationMap> maps;
  maps.push_back(schrodinger(1));
  maps.push_back(metaplectic(1));
  maps.push_back(sigma_eta(1, Rational(-3, 7)));
  maps.push_back(weyl_symmetric(1));
  for (const auto& Q : maps) {
    CHECK(apply_map(Q, P("1")) == WeylElement::identity(1));
    for (int d = 0; d <= 3; ++d) {
      for (const auto& m : monomial_basis(1, d, d)) {
        Polynomial f = Polynomial::from_term(1, m, Rational(1));
        if (!membership(f, Q.domain)) continue;
        WeylElement img = apply_map(Q, f);
        CHECK(formal_adjoint(img) == img);
      }
    }
  }
}

TEST_CASE("vn_extend_reference_values") {
  CHECK(vn_extend(VnKind::r_of_q, P("q^3")) == W("q^3"));
  CHECK(vn_extend(VnKind::r_of_q_times_p, P("q^2")) == W("q^2*p - i*hbar*q"));
  CHECK(vn_extend(VnKind::r_of_p, P("p^2")) == W("p^2"));
  CHECK(vn_extend(VnKind::q_times_r_of_p, P("p^2")) == W("q*p^2 - i*hbar*p"));
  CHECK_THROWS_AS(vn_extend(VnKind::r_of_q, P("q*p")), std::invalid_argument);
}

TEST_CASE("vn_extend_is_a_ring_homomorphism_in_r") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 40; ++t) {
    // random univariate polynomials in q of degree <= 3 (product degree <= 6)
    Polynomial r1(1), r2(1);
    for (int k = 0; k <= 3; ++k) {
      Monomial m(1);
      m.set_q(0, static_cast<unsigned>(k));
      r1.add_term(m, weylq::testing::random_rational(rng));
      r2.add_term(m, weylq::testing::random_rational(rng));
    }
    CHECK(vn_extend(VnKind::r_of_q, r1 * r2) ==
          weyl_mul(vn_extend(VnKind::r_of_q, r1), vn_extend(VnKind::r_of_q, r2)));
  }
}

TEST_CASE("sigma_eta_agrees_with_symmetrized_route") {
  // Independent route: sigma_eta(f p) = (f(q)p + p f(q))/2 + hbar*eta*f'(q).
  std::mt19937_64 rng(79);
  for (const Rational& eta : {Rational(0), Rational(1, 2), Rational(-3, 7)}) {
    QuantizationMap s = sigma_eta(1, eta);
    for (int t = 0; t < 25; ++t) {
      Polynomial f(1);
      for (int k = 0; k <= 5; ++k) {
        Monomial m(1);
        m.set_q(0, static_cast<unsigned>(k));
        f.add_term(m, weylq::testing::random_rational(rng));
      }
      if (f.is_zero()) continue;
      Polynomial fp = f * Polynomial::variable_p(1, 0);
      WeylElement direct = apply_map(s, fp);
      WeylElement sym_part = vn_extend(VnKind::r_of_q_times_p, f);
      WeylElement correction =
          vn_extend(VnKind::r_of_q, f.derivative(0))
              .scale(HScalar::hbar() * HScalar::rational(eta));
      CHECK(direct == sym_part + correction);
    }
  }
}

TEST_CASE("map_by_name") {
  CHECK(map_by_name("schrodinger", 1, Rational(0)).map_name == "schrodinger");
  CHECK(map_by_name("weyl", 2, Rational(0)).n == 2);
  CHECK_THROWS_AS(map_by_name("born", 1, Rational(0)), std::invalid_argument);
}
