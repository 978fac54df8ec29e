#include <doctest.h>

#include <atomic>
#include <thread>

#include "oracles.hpp"
#include "weylq/weyl.hpp"

using namespace weylq;
using weylq::testing::normal_order_closed_form;
using weylq::testing::random_polynomial;
using weylq::testing::random_weyl;
using weylq::testing::symmetrize_words_oracle;

namespace {

WeylElement W(const std::string& s, int n = 1) { return parse_weyl(s, n); }

}  // namespace

TEST_CASE("product_reduces_to_normal_order") {
  CHECK(weyl_mul(W("p"), W("q")) == W("q*p - i*hbar*I"));
  CHECK(weyl_mul(W("p^2"), W("q")) == W("q*p^2 - 2*i*hbar*p"));
  CHECK(weyl_mul(W("p^2"), W("q^2")) == W("q^2*p^2 - 4*i*hbar*q*p - 2*hbar^2*I"));
  // distinct indices commute
  CHECK(weyl_mul(W("p1", 2), W("q2", 2)) == W("q2*p1", 2));
}

TEST_CASE("commutator_reference_values") {
  CHECK(commutator(W("q"), W("p")) == W("i*hbar*I"));
  CHECK(commutator(W("q^3"), W("p")) == W("3*i*hbar*q^2"));
  CHECK(commutator(W("q^2"), W("p^2")) == W("4*i*hbar*q*p + 2*hbar^2*I"));
  // (i/hbar)[q,p] = -I, matching {q,p} = -1
  CHECK(dirac_bracket(W("q"), W("p")) == W("-I"));
}

TEST_CASE("normal_order_closed_form_vs_rewriting") {
  for (unsigned a = 0; a <= 5; ++a) {
    for (unsigned b = 0; b <= 5; ++b) {
      WeylElement rewritten = weyl_mul(weyl_pow(W("p"), b), weyl_pow(W("q"), a));
      CHECK(rewritten == normal_order_closed_form(b, a));
    }
  }
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<unsigned> e(0, 5);
  for (int t = 0; t < 100; ++t) {
    unsigned a = e(rng), b = e(rng);
    CHECK(weyl_mul(weyl_pow(W("p"), b), weyl_pow(W("q"), a)) ==
          normal_order_closed_form(b, a));
  }
}

TEST_CASE("associativity") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(t % 2);
    WeylElement a = random_weyl(rng, n, 4, 3);
    WeylElement b = random_weyl(rng, n, 4, 3);
    WeylElement c = random_weyl(rng, n, 4, 3);
    CHECK(weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c)));
  }
}

TEST_CASE("commutator_jacobi") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    WeylElement a = random_weyl(rng, 1, 3, 3);
    WeylElement b = random_weyl(rng, 1, 3, 3);
    WeylElement c = random_weyl(rng, 1, 3, 3);
    WeylElement jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                      commutator(c, commutator(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("formal_adjoint_reference_values") {
  CHECK(formal_adjoint(W("q*p")) == W("q*p - i*hbar*I"));
  CHECK(formal_adjoint(W("i*hbar*I")) == W("-i*hbar*I"));
  WeylElement sym_qp = W("q*p - 1/2*i*hbar*I");  // (qp + pq)/2
  CHECK(formal_adjoint(sym_qp) == sym_qp);
}

TEST_CASE("adjoint_is_antimultiplicative_involution") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(t % 2);
    WeylElement a = random_weyl(rng, n, 4, 3);
    WeylElement b = random_weyl(rng, n, 4, 3);
    CHECK(formal_adjoint(formal_adjoint(a)) == a);
    CHECK(formal_adjoint(weyl_mul(a, b)) ==
          weyl_mul(formal_adjoint(b), formal_adjoint(a)));
  }
}

TEST_CASE("symmetrize_reference_values") {
  CHECK(symmetrize(parse_polynomial("q*p", 1)) == W("q*p - 1/2*i*hbar*I"));
  CHECK(symmetrize(parse_polynomial("q^3", 1)) == W("q^3"));
  CHECK(symmetrize(parse_polynomial("q^2*p^2", 1)) ==
        W("q^2*p^2 - 2*i*hbar*q*p - 1/2*hbar^2*I"));
}

TEST_CASE("symmetrize_matches_word_average_and_is_self_adjoint") {
  for (unsigned a = 0; a <= 4; ++a) {
    for (unsigned b = 0; a + b <= 6 && b <= 4; ++b) {
      Monomial m(1);
      m.set_q(0, a);
      m.set_p(0, b);
      Polynomial f = Polynomial::from_term(1, m, Rational(1));
      CHECK(symmetrize(f) == symmetrize_words_oracle(a, b));
    }
  }
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    int n = 1 + static_cast<int>(t % 2);
    Polynomial f = random_polynomial(rng, n, 4, 4);
    WeylElement s = symmetrize(f);
    CHECK(formal_adjoint(s) == s);
    CHECK(principal_symbol(s) == f);
  }
}

TEST_CASE("correspondence_up_to_hbar_squared") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(t % 2);
    Polynomial f = random_polynomial(rng, n, 4, 3);
    Polynomial g = random_polynomial(rng, n, 4, 3);
    WeylElement lhs = dirac_bracket(symmetrize(f), symmetrize(g));
    WeylElement diff = lhs - symmetrize(poisson_bracket(f, g));
    for (const auto& [m, c] : diff.terms()) {
      (void)m;
      CHECK(c.divisible_by_hbar(2));
    }
  }
}

TEST_CASE("principal_symbol_reference_values") {
  CHECK(principal_symbol(W("q^2*p^2 - 2*i*hbar*q*p - 1/2*hbar^2*I")) ==
        parse_polynomial("q^2*p^2", 1));
  CHECK(principal_symbol(W("i*hbar*I")).is_zero());
  CHECK(principal_symbol(W("q + p")) == parse_polynomial("q + p", 1));
  CHECK_THROWS_AS(principal_symbol(W("i*q")), std::domain_error);
}

TEST_CASE("is_central_examples_and_random") {
  CHECK(is_central(W("3/2*I + i*hbar^2*I")));
  CHECK_FALSE(is_central(W("q*p")));
  CHECK_FALSE(is_central(W("q")));

  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    WeylElement a = (t % 3 == 0)
                        ? WeylElement::scalar(1, HScalar::term(Gaussian(weylq::testing::random_rational(rng),
                                                                        weylq::testing::random_rational(rng)),
                                                               static_cast<unsigned>(t % 3)))
                        : random_weyl(rng, 1, 4, 3);
    bool scalar = true;
    for (const auto& [m, c] : a.terms()) {
      (void)c;
      if (!m.is_unit()) scalar = false;
    }
    CHECK(is_central(a) == scalar);
  }
}

TEST_CASE("weyl_print_parse_roundtrip") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 120; ++t) {
    int n = 1 + static_cast<int>(t % 2);
    WeylElement a = random_weyl(rng, n, 4, 4);
    CHECK(parse_weyl(to_string(a), n) == a);
  }
  CHECK(to_string(WeylElement::zero(1)) == "0");
  CHECK(to_string(W("q^2*p^2 - 2*i*hbar*q*p - 2/3*hbar^2*I")) ==
        "q^2*p^2 - 2*i*hbar*q*p - 2/3*hbar^2*I");
}

TEST_CASE("degree_ignores_hbar") {
  CHECK(W("hbar^3*q").degree() == 1);
  CHECK(WeylElement::zero(1).degree() == kDegreeOfZero);
  CHECK(W("q^2*p^2 - 2*i*hbar*q*p").degree() == 4);
}

TEST_CASE("concurrent_products_are_safe") {
  // values are immutable and operations pure; hammer the same products from
  // several threads and compare against the single-threaded result
  WeylElement a = W("q^3*p^2 - i*hbar*q*p");
  WeylElement b = W("p^3*q^2 + 2*hbar^2*I");
  WeylElement expected_mul = weyl_mul(a, b);
  WeylElement expected_comm = commutator(a, b);
  std::vector<std::thread> workers;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&] {
      for (int k = 0; k < 50; ++k) {
        if (weyl_mul(a, b) != expected_mul) ++mismatches;
        if (commutator(a, b) != expected_comm) ++mismatches;
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(mismatches == 0);
}
