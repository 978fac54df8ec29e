#include <doctest.h>

#include "oracles.hpp"
#include "weylq/lie.hpp"

using namespace weylq;
using weylq::testing::random_polynomial;

namespace {

Polynomial P(const std::string& s, int n = 1) { return parse_polynomial(s, n); }

SubalgebraSpec named(AlgebraFamily f, int n, int k = 0) {
  return SubalgebraSpec::make_named(f, n, k);
}

// Random rational symplectic matrix as a product of shears and rotations.
SymplecticMatrix random_symplectic(std::mt19937_64& rng) {
  auto mul = [](const SymplecticMatrix& A, const SymplecticMatrix& B) {
    std::vector<QuadExt> e(4);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        QuadExt acc;
        for (int k = 0; k < 2; ++k) acc = acc + A.at(r, k) * B.at(k, c);
        e[static_cast<size_t>(r) * 2 + c] = acc;
      }
    }
    return SymplecticMatrix(1, std::move(e));
  };
  SymplecticMatrix S = SymplecticMatrix::identity(1);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int step = 0; step < 4; ++step) {
    Rational a = weylq::testing::random_nonzero_rational(rng, 3, 2);
    std::vector<QuadExt> e(4);
    switch (pick(rng)) {
      case 0:  // q -> q + a p
        e = {QuadExt(1), QuadExt(a), QuadExt(0), QuadExt(1)};
        break;
      case 1:  // p -> p + a q
        e = {QuadExt(1), QuadExt(0), QuadExt(a), QuadExt(1)};
        break;
      default:  // scaling q -> a q, p -> p / a
        e = {QuadExt(a), QuadExt(0), QuadExt(0), QuadExt(Rational(1) / a)};
        break;
    }
    S = mul(S, SymplecticMatrix(1, std::move(e)));
  }
  return S;
}

}  // namespace

TEST_CASE("membership_named_families") {
  CHECK(membership(P("q^5*p"), named(AlgebraFamily::coordinate, 1)));
  CHECK_FALSE(membership(P("p^2"), named(AlgebraFamily::coordinate, 1)));
  CHECK(membership(P("q1*q2*p2", 2), named(AlgebraFamily::n2_mixed, 2)));
  CHECK(membership(P("q1^4*p1", 2), named(AlgebraFamily::n2_mixed, 2)));
  CHECK_FALSE(membership(P("q2*p1", 2), named(AlgebraFamily::n2_mixed, 2)));
  CHECK(membership(P("q*p"), named(AlgebraFamily::sp, 1)));
  CHECK_FALSE(membership(P("q"), named(AlgebraFamily::sp, 1)));
  CHECK(membership(P("q + p^2"), named(AlgebraFamily::hsp, 1)));
  CHECK(membership(P("q*p^4"), named(AlgebraFamily::momentum, 1)));
  CHECK_FALSE(membership(P("q^2*p"), named(AlgebraFamily::momentum, 1)));
  CHECK(membership(P("q^3"), named(AlgebraFamily::pk, 1, 3)));
  CHECK_FALSE(membership(P("q^4"), named(AlgebraFamily::pk, 1, 3)));
}

TEST_CASE("membership_spanned") {
  SubalgebraSpec S = SubalgebraSpec::make_spanned({P("q^2 + p"), P("q^2 - p")}, 2);
  CHECK(membership(P("q^2"), S));
  CHECK(membership(P("p"), S));
  CHECK_FALSE(membership(P("q"), S));
}

TEST_CASE("closure_reference_cases") {
  CHECK(closure_check(named(AlgebraFamily::coordinate, 1), 6).closed());
  CHECK(closure_check(named(AlgebraFamily::n2_mixed, 2), 5).closed());

  ClosureReport bad = closure_check(SubalgebraSpec::make_spanned({P("q^2"), P("p^2")}, 2), 2);
  CHECK_FALSE(bad.closed());
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].bracket == P("-4*q*p"));
}

TEST_CASE("named_families_closed_at_degree_5") {
  for (int n = 1; n <= 2; ++n) {
    CHECK(closure_check(named(AlgebraFamily::heisenberg, n), 5).closed());
    CHECK(closure_check(named(AlgebraFamily::sp, n), 5).closed());
    CHECK(closure_check(named(AlgebraFamily::hsp, n), 5).closed());
    CHECK(closure_check(named(AlgebraFamily::coordinate, n), 5).closed());
    CHECK(closure_check(named(AlgebraFamily::momentum, n), 5).closed());
  }
}

TEST_CASE("bracket_generate_reference_cases") {
  // h(2) is already closed: dimension 3 at degree 1.
  GenerationResult h = bracket_generate(subalgebra_basis(named(AlgebraFamily::heisenberg, 1), 1), 1);
  CHECK(h.dimension == 3);

  // Adjoining q^2 p to the quadratic algebra generates everything up to
  // degree 4; seeded from degree-1 polynomials alone the closure stays inside
  // the coordinate algebra, because that algebra is closed and contains the
  // whole seed.
  std::vector<Polynomial> seed = subalgebra_basis(named(AlgebraFamily::hsp, 1), 2);
  seed.push_back(P("q^2*p"));
  GenerationResult g = bracket_generate(seed, 4);
  CHECK(g.dimension == 15);
  CHECK(static_cast<size_t>(g.dimension) == monomial_basis(1, 0, 4).size());
  for (const auto& m : monomial_basis(1, 0, 4)) {
    CHECK(g.contains(Polynomial::from_term(1, m, Rational(1))));
  }

  std::vector<Polynomial> small_seed =
      subalgebra_basis(named(AlgebraFamily::heisenberg, 1), 1);
  small_seed.push_back(P("q^2*p"));
  GenerationResult trapped = bracket_generate(small_seed, 4);
  CHECK(trapped.dimension == 8);
  for (const auto& f : trapped.basis) {
    CHECK(membership(f, named(AlgebraFamily::coordinate, 1)));
  }

  // Adjoining p^2 to the cubic slice of the coordinate algebra fills degree 6.
  std::vector<Polynomial> seed2 = subalgebra_basis(named(AlgebraFamily::coordinate, 1), 3);
  seed2.push_back(P("p^2"));
  GenerationResult g2 = bracket_generate(seed2, 6);
  CHECK(g2.dimension == 28);
  CHECK(static_cast<size_t>(g2.dimension) == monomial_basis(1, 0, 6).size());
}

TEST_CASE("bracket_generate_monotone_idempotent") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    std::vector<Polynomial> seed;
    for (int k = 0; k < 3; ++k) seed.push_back(random_polynomial(rng, 1, 3, 3));
    GenerationResult a = bracket_generate(seed, 4);
    std::vector<Polynomial> bigger = seed;
    bigger.push_back(random_polynomial(rng, 1, 3, 3));
    GenerationResult b = bracket_generate(bigger, 4);
    for (const auto& f : a.basis) CHECK(b.contains(f));
    GenerationResult again = bracket_generate(a.basis, 4);
    CHECK(again.dimension == a.dimension);
  }
}

TEST_CASE("symplectic_construction_and_application") {
  SymplecticMatrix rot = SymplecticMatrix::quarter_rotation();
  CHECK(apply_linear_symplectic(P("q^2"), rot) == P("p^2"));
  CHECK(apply_linear_symplectic(P("q*p"), rot) == P("-q*p"));
  SymplecticMatrix id = SymplecticMatrix::identity(1);
  CHECK(apply_linear_symplectic(P("q^3*p - q"), id) == P("q^3*p - q"));

  // a shear with determinant != 1 is rejected
  CHECK_THROWS_AS(SymplecticMatrix(1, {QuadExt(2), QuadExt(0), QuadExt(0), QuadExt(1)}),
                  std::invalid_argument);
}

TEST_CASE("symplectic_substitution_preserves_brackets") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 40; ++t) {
    SymplecticMatrix S = random_symplectic(rng);
    Polynomial f = random_polynomial(rng, 1, 5, 4);
    Polynomial g = random_polynomial(rng, 1, 5, 4);
    Polynomial lhs = poisson_bracket(apply_linear_symplectic(f, S),
                                     apply_linear_symplectic(g, S));
    Polynomial rhs = apply_linear_symplectic(poisson_bracket(f, g), S);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quadext_substitution_preserves_brackets") {
  // the sqrt(2) witness is a Poisson automorphism over the extension field
  Rational half(1, 2);
  std::vector<QuadExt> e(4);
  e[0] = QuadExt::sqrt_term(half / Rational(2), 2);
  e[1] = QuadExt::sqrt_term(-half, 2);
  e[2] = QuadExt::sqrt_term(half, 2);
  e[3] = QuadExt::sqrt_term(half * Rational(2), 2);
  SymplecticMatrix w(1, std::move(e));
  std::mt19937_64 rng(89);
  for (int t = 0; t < 25; ++t) {
    BasicPolynomial<QuadExt> f = lift_to_quadext(random_polynomial(rng, 1, 5, 4));
    BasicPolynomial<QuadExt> g = lift_to_quadext(random_polynomial(rng, 1, 5, 4));
    CHECK(poisson_bracket(substitute_symplectic(f, w), substitute_symplectic(g, w)) ==
          substitute_symplectic(poisson_bracket(f, g), w));
  }
}

TEST_CASE("symplectic_rational_image_required") {
  // sqrt(2)-valued substitution applied to a bare variable leaves the field
  std::vector<QuadExt> e(4);
  Rational half(1, 2);
  e[0] = QuadExt::sqrt_term(half / Rational(2), 2);
  e[1] = QuadExt::sqrt_term(-half, 2);
  e[2] = QuadExt::sqrt_term(half, 2);
  e[3] = QuadExt::sqrt_term(half * Rational(2), 2);
  SymplecticMatrix w(1, std::move(e));
  CHECK_THROWS_AS(apply_linear_symplectic(P("q"), w), std::domain_error);
  // but quadratics conjugated by it can come back rational
  CHECK(apply_linear_symplectic(P("p^2 - 4*q^2"), w) == P("4*q*p"));
}

TEST_CASE("classify_dim3_and_c2") {
  QuadraticClassification sp2 = classify_quadratic_span({P("q^2"), P("p^2")});
  CHECK(sp2.tag == QuadSpanTag::dim3_sp2);
  CHECK(sp2.closure_dimension == 3);
  REQUIRE(sp2.dependency_value.has_value());
  CHECK(*sp2.dependency_value != 0);

  QuadraticClassification c2 = classify_quadratic_span({P("q^2"), P("q*p")});
  CHECK(c2.tag == QuadSpanTag::dim2_conjugate_to_C2);
  REQUIRE(c2.witness.has_value());
  CHECK(*c2.witness == SymplecticMatrix::identity(1));
  REQUIRE(c2.dependency_value.has_value());
  CHECK(*c2.dependency_value == 0);

  QuadraticClassification momentum = classify_quadratic_span({P("p^2"), P("q*p")});
  CHECK(momentum.tag == QuadSpanTag::dim2_conjugate_to_C2);
  REQUIRE(momentum.witness.has_value());
  CHECK(*momentum.witness == SymplecticMatrix::quarter_rotation());

  QuadraticClassification one = classify_quadratic_span({P("q^2 + p^2")});
  CHECK(one.tag == QuadSpanTag::dim1_case);

  CHECK_THROWS_AS(classify_quadratic_span({P("q^3")}), std::invalid_argument);
  CHECK_THROWS_AS(classify_quadratic_span({P("q^2 + q")}), std::invalid_argument);
}

TEST_CASE("classify_beta_family") {
  // {p^2 - beta^2 q^2, p^2 + 2 beta pq + beta^2 q^2} at beta = 2
  Polynomial h = P("p^2 - 4*q^2");
  Polynomial g = P("p^2 + 4*q*p + 4*q^2");
  QuadraticClassification r = classify_quadratic_span({h, g});
  CHECK(r.tag == QuadSpanTag::dim2_conjugate_to_C2);
  REQUIRE(r.witness.has_value());
  const SymplecticMatrix& w = *r.witness;
  // q -> (1/(sqrt(2) beta))(q - beta p), p -> (1/sqrt(2))(q + beta p)
  Rational half(1, 2);
  CHECK(w.at(0, 0) == QuadExt::sqrt_term(half / Rational(2), 2));
  CHECK(w.at(0, 1) == QuadExt::sqrt_term(-half, 2));
  CHECK(w.at(1, 0) == QuadExt::sqrt_term(half, 2));
  CHECK(w.at(1, 1) == QuadExt::sqrt_term(half * Rational(2), 2));
  // exact conjugation onto span{q^2, q p}
  PolySpan image(1);
  image.add(apply_linear_symplectic(h, w));
  image.add(apply_linear_symplectic(g, w));
  CHECK(image.dimension() == 2);
  CHECK(image.contains(P("q^2")));
  CHECK(image.contains(P("q*p")));
}

TEST_CASE("classify_invariant_under_basis_change") {
  std::mt19937_64 rng(71);
  std::vector<std::vector<Polynomial>> spans = {
      {P("q^2"), P("q*p")},
      {P("p^2"), P("q*p")},
      {P("p^2 - 4*q^2"), P("p^2 + 4*q*p + 4*q^2")},
      {P("q^2"), P("p^2")},
  };
  for (const auto& span : spans) {
    QuadSpanTag tag = classify_quadratic_span(span).tag;
    for (int t = 0; t < 10; ++t) {
      Rational a = weylq::testing::random_nonzero_rational(rng, 3, 2);
      Rational b = weylq::testing::random_rational(rng, 3, 2);
      Rational c = weylq::testing::random_nonzero_rational(rng, 3, 2);
      std::vector<Polynomial> changed = {span[0] * a + span[1] * b, span[1] * c};
      CHECK(classify_quadratic_span(changed).tag == tag);
    }
  }
}

TEST_CASE("dependency_scalar_matches_rank") {
  std::mt19937_64 rng(73);
  int checked = 0;
  while (checked < 100) {
    Rational a = weylq::testing::random_rational(rng, 4, 3);
    Rational c = weylq::testing::random_rational(rng, 4, 3);
    Rational r = weylq::testing::random_rational(rng, 4, 3);
    Rational t = weylq::testing::random_rational(rng, 4, 3);
    Polynomial h = P("p^2") * a + P("q^2") * c;
    Polynomial g = P("p^2") * r + P("q*p") + P("q^2") * t;
    if (h.is_zero()) continue;
    ++checked;
    Rational dep = a * c + (a * t - c * r) * (a * t - c * r);
    PolySpan span(1);
    span.add(h);
    span.add(g);
    span.add(poisson_bracket(h, g));
    CHECK((sgn(dep) == 0) == (span.dimension() <= 2));
  }
}

TEST_CASE("subalgebra_basis_and_parse_names") {
  CHECK(subalgebra_basis(named(AlgebraFamily::hsp, 1), 2).size() == 6);
  CHECK(subalgebra_basis(named(AlgebraFamily::coordinate, 1), 8).size() == 17);
  CHECK(parse_algebra_name("pk3", 1).k == 3);
  CHECK(parse_algebra_name("coordinate", 2).name() == "coordinate");
  CHECK_THROWS_AS(parse_algebra_name("borel", 1), std::invalid_argument);
  CHECK_THROWS_AS(SubalgebraSpec::make_named(AlgebraFamily::n2_mixed, 1),
                  std::invalid_argument);
}
