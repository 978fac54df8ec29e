#include "weylq/lie.hpp"

#include <algorithm>

namespace weylq {

namespace {

Monomial leading_monomial(const Polynomial& f) { return f.terms().rbegin()->first; }

}  // namespace

Polynomial PolySpan::reduce(const Polynomial& f) const {
  Polynomial r = f;
  Polynomial out(n_);
  // The leading monomial strictly decreases each round, so this terminates.
  while (!r.is_zero()) {
    Monomial lead = leading_monomial(r);
    auto it = rows_.find(lead);
    if (it == rows_.end()) {
      Rational c = r.coeff(lead);
      out.add_term(lead, c);
      r.add_term(lead, -c);
    } else {
      r = r - it->second * r.coeff(lead);
    }
  }
  return out;
}

bool PolySpan::add(const Polynomial& f) {
  if (f.dim() != n_) throw std::invalid_argument("span dimension mismatch");
  Polynomial r = reduce(f);
  if (r.is_zero()) return false;
  Monomial pivot = leading_monomial(r);
  Polynomial row = r * (Rational(1) / r.coeff(pivot));
  // Back-substitute to keep reduced row echelon form.
  for (auto& [m, existing] : rows_) {
    Rational c = existing.coeff(pivot);
    if (sgn(c) != 0) existing = existing - row * c;
  }
  rows_.emplace(pivot, row);
  return true;
}

std::vector<Polynomial> PolySpan::basis() const {
  std::vector<Polynomial> out;
  for (const auto& [pivot, row] : rows_) {
    (void)pivot;
    out.push_back(row);
  }
  return out;
}

SubalgebraSpec SubalgebraSpec::make_named(AlgebraFamily f, int n, int k) {
  if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  if (f == AlgebraFamily::n2_mixed && n != 2) {
    throw std::invalid_argument("n2_mixed is defined for n = 2 only");
  }
  if (f == AlgebraFamily::pk && k < 0) throw std::invalid_argument("pk needs k >= 0");
  SubalgebraSpec s;
  s.named = true;
  s.family = f;
  s.n = n;
  s.k = k;
  return s;
}

SubalgebraSpec SubalgebraSpec::make_spanned(std::vector<Polynomial> polys, int degree_bound) {
  if (polys.empty()) throw std::invalid_argument("spanned spec needs at least one polynomial");
  SubalgebraSpec s;
  s.named = false;
  s.n = polys[0].dim();
  for (const auto& f : polys) {
    if (f.dim() != s.n) throw std::invalid_argument("spanned spec dimension mismatch");
  }
  s.span = std::move(polys);
  s.degree_bound = degree_bound;
  return s;
}

std::string SubalgebraSpec::name() const {
  if (!named) return "spanned";
  switch (family) {
    case AlgebraFamily::heisenberg: return "heisenberg";
    case AlgebraFamily::sp: return "sp";
    case AlgebraFamily::hsp: return "hsp";
    case AlgebraFamily::coordinate: return "coordinate";
    case AlgebraFamily::momentum: return "momentum";
    case AlgebraFamily::pk: return "pk" + std::to_string(k);
    case AlgebraFamily::n2_mixed: return "n2_mixed";
    case AlgebraFamily::full: return "full";
  }
  return "?";
}

SubalgebraSpec parse_algebra_name(const std::string& keyword, int n) {
  if (keyword == "heisenberg") return SubalgebraSpec::make_named(AlgebraFamily::heisenberg, n);
  if (keyword == "sp") return SubalgebraSpec::make_named(AlgebraFamily::sp, n);
  if (keyword == "hsp") return SubalgebraSpec::make_named(AlgebraFamily::hsp, n);
  if (keyword == "coordinate") return SubalgebraSpec::make_named(AlgebraFamily::coordinate, n);
  if (keyword == "momentum") return SubalgebraSpec::make_named(AlgebraFamily::momentum, n);
  if (keyword == "n2_mixed") return SubalgebraSpec::make_named(AlgebraFamily::n2_mixed, n);
  if (keyword == "full") return SubalgebraSpec::make_named(AlgebraFamily::full, n);
  if (keyword.rfind("pk", 0) == 0 && keyword.size() > 2) {
    int k = std::stoi(keyword.substr(2));
    return SubalgebraSpec::make_named(AlgebraFamily::pk, n, k);
  }
  throw std::invalid_argument("unknown algebra keyword: " + keyword);
}

namespace {

bool monomial_in_named(const Monomial& m, const SubalgebraSpec& S) {
  switch (S.family) {
    case AlgebraFamily::heisenberg: return m.total_degree() <= 1;
    case AlgebraFamily::sp: return m.total_degree() == 2;
    case AlgebraFamily::hsp: return m.total_degree() <= 2;
    case AlgebraFamily::coordinate: return m.p_degree() <= 1;
    case AlgebraFamily::momentum: return m.q_degree() <= 1;
    case AlgebraFamily::pk: return m.total_degree() <= static_cast<unsigned>(S.k);
    case AlgebraFamily::n2_mixed:
      // f(q1)p1 parts carry exactly one p1 and nothing in the second degree
      // of freedom; g(q1,q2,p2) parts carry no p1 at all.
      if (m.p_exp(0) == 1) return m.q_exp(1) == 0 && m.p_exp(1) == 0;
      return m.p_exp(0) == 0;
    case AlgebraFamily::full: return true;
  }
  return false;
}

}  // namespace

bool membership(const Polynomial& f, const SubalgebraSpec& S) {
  if (f.dim() != S.n) throw std::invalid_argument("membership: dimension mismatch");
  if (S.named) {
    for (const auto& [m, c] : f.terms()) {
      (void)c;
      if (!monomial_in_named(m, S)) return false;
    }
    return true;
  }
  PolySpan span(S.n);
  for (const auto& g : S.span) span.add(g);
  return span.contains(f);
}

std::vector<Polynomial> subalgebra_basis(const SubalgebraSpec& S, int max_degree) {
  std::vector<Polynomial> out;
  if (S.named) {
    for (const auto& m : monomial_basis(S.n, 0, max_degree)) {
      if (monomial_in_named(m, S)) {
        out.push_back(Polynomial::from_term(S.n, m, Rational(1)));
      }
    }
    return out;
  }
  PolySpan span(S.n);
  for (const auto& g : S.span) span.add(g);
  // In graded RREF, rows of leading degree <= D span the degree-<=D slice.
  for (const auto& row : span.basis()) {
    if (row.degree() <= max_degree) out.push_back(row);
  }
  return out;
}

ClosureReport closure_check(const SubalgebraSpec& S, int max_degree) {
  ClosureReport report;
  report.algebra = S.name();
  report.max_degree = max_degree;
  std::vector<Polynomial> basis = subalgebra_basis(S, max_degree);
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      ++report.pairs_checked;
      Polynomial b = poisson_bracket(basis[i], basis[j]);
      if (b.is_zero()) continue;
      if (!membership(b, S)) {
        report.violations.push_back({basis[i], basis[j], b});
      }
    }
  }
  return report;
}

bool GenerationResult::contains(const Polynomial& f) const { return span.contains(f); }

GenerationResult bracket_generate(const std::vector<Polynomial>& seed, int degree_bound) {
  if (seed.empty()) throw std::invalid_argument("bracket_generate needs a nonempty seed");
  int n = seed[0].dim();
  GenerationResult out;
  out.degree_bound = degree_bound;
  out.span = PolySpan(n);
  for (const auto& f : seed) {
    if (f.dim() != n) throw std::invalid_argument("bracket_generate: dimension mismatch");
    if (f.is_zero() || f.degree() > degree_bound) continue;
    out.span.add(f);
  }
  // Re-bracket until the span stabilizes; the ambient space is finite
  // dimensional so this terminates.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Polynomial> current = out.span.basis();
    for (size_t i = 0; i < current.size(); ++i) {
      for (size_t j = i + 1; j < current.size(); ++j) {
        Polynomial b = poisson_bracket(current[i], current[j]);
        if (b.is_zero()) continue;
        if (b.degree() > degree_bound) {
          ++out.discarded_brackets;
          continue;
        }
        if (out.span.add(b)) grew = true;
      }
    }
  }
  out.basis = out.span.basis();
  out.dimension = out.span.dimension();
  return out;
}

SymplecticMatrix::SymplecticMatrix(int n, std::vector<QuadExt> entries) : n_(n), m_(std::move(entries)) {
  if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  if (m_.size() != static_cast<size_t>(4 * n * n)) {
    throw std::invalid_argument("symplectic matrix needs (2n)^2 entries");
  }
  // omega(row_j, row_k) must match omega(e_j, e_k) exactly.
  auto omega_rows = [&](int j, int k) {
    QuadExt acc;
    for (int i = 0; i < n_; ++i) {
      acc = acc + at(j, i) * at(k, n_ + i) - at(j, n_ + i) * at(k, i);
    }
    return acc;
  };
  for (int j = 0; j < 2 * n_; ++j) {
    for (int k = j + 1; k < 2 * n_; ++k) {
      QuadExt expected;
      if (k == j + n_) expected = QuadExt(1);
      QuadExt got = omega_rows(j, k);
      if (!(got == expected)) {
        throw std::invalid_argument("matrix is not symplectic");
      }
    }
  }
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  std::vector<QuadExt> e(static_cast<size_t>(4 * n * n));
  for (int j = 0; j < 2 * n; ++j) e[static_cast<size_t>(j) * 2 * n + j] = QuadExt(1);
  return SymplecticMatrix(n, std::move(e));
}

SymplecticMatrix SymplecticMatrix::quarter_rotation() {
  // q -> p, p -> -q
  std::vector<QuadExt> e(4);
  e[1] = QuadExt(1);
  e[2] = QuadExt(-1);
  return SymplecticMatrix(1, std::move(e));
}

BasicPolynomial<QuadExt> lift_to_quadext(const Polynomial& f) {
  BasicPolynomial<QuadExt> out(f.dim());
  for (const auto& [m, c] : f.terms()) out.add_term(m, QuadExt(c));
  return out;
}

BasicPolynomial<QuadExt> substitute_symplectic(const BasicPolynomial<QuadExt>& f,
                                               const SymplecticMatrix& S) {
  if (f.dim() != S.dim()) throw std::invalid_argument("symplectic dimension mismatch");
  int n = f.dim();
  std::vector<BasicPolynomial<QuadExt>> images;
  for (int j = 0; j < 2 * n; ++j) {
    BasicPolynomial<QuadExt> img(n);
    for (int k = 0; k < n; ++k) {
      img.add_term(Monomial::q(n, k), S.at(j, k));
      img.add_term(Monomial::p(n, k), S.at(j, n + k));
    }
    images.push_back(img);
  }
  return f.substitute(images);
}

Polynomial apply_linear_symplectic(const Polynomial& f, const SymplecticMatrix& S) {
  BasicPolynomial<QuadExt> image = substitute_symplectic(lift_to_quadext(f), S);
  Polynomial out(f.dim());
  for (const auto& [m, c] : image.terms()) {
    if (!c.is_rational()) {
      throw std::domain_error("image leaves the rational coefficient field at " +
                              monomial_to_string(m));
    }
    out.add_term(m, c.rational_part());
  }
  return out;
}

std::string to_string(QuadSpanTag tag) {
  switch (tag) {
    case QuadSpanTag::degenerate: return "degenerate";
    case QuadSpanTag::dim1_case: return "dim1_case";
    case QuadSpanTag::dim2_conjugate_to_C2: return "dim2_conjugate_to_C2";
    case QuadSpanTag::dim3_sp2: return "dim3_sp2";
  }
  return "?";
}

namespace {

struct QuadCoeffs {
  Rational p2, qp, q2;  // h = p2*p^2 + qp*q*p + q2*q^2
};

QuadCoeffs quad_coeffs(const Polynomial& f) {
  Monomial mp2(1), mqp(1), mq2(1);
  mp2.set_p(0, 2);
  mqp.set_q(0, 1);
  mqp.set_p(0, 1);
  mq2.set_q(0, 2);
  return {f.coeff(mp2), f.coeff(mqp), f.coeff(mq2)};
}

// Picks a basis pair (h, g) of a 2-dimensional quadratic span with h free of
// the q*p cross term; such an h always exists because the cross-term
// functional has a kernel on any plane.
void diagonal_pair(const std::vector<Polynomial>& rows, Polynomial& h, Polynomial& g) {
  QuadCoeffs c0 = quad_coeffs(rows[0]);
  QuadCoeffs c1 = quad_coeffs(rows[1]);
  if (sgn(c0.qp) == 0) {
    h = rows[0];
    g = rows[1];
  } else if (sgn(c1.qp) == 0) {
    h = rows[1];
    g = rows[0];
  } else {
    h = rows[0] - rows[1] * (c0.qp / c1.qp);
    g = rows[1];
  }
}

}  // namespace

QuadraticClassification classify_quadratic_span(const std::vector<Polynomial>& basis) {
  QuadraticClassification out;
  if (basis.empty()) return out;
  for (const auto& f : basis) {
    if (f.dim() != 1) throw std::invalid_argument("classify_quadratic_span needs n = 1");
    if (f.is_zero() || f.degree() != 2 || f.homogeneous_part(2) != f) {
      throw std::invalid_argument("classify_quadratic_span: non-quadratic input " +
                                  to_string(f));
    }
  }
  PolySpan input(1);
  for (const auto& f : basis) input.add(f);
  out.input_dimension = input.dimension();

  PolySpan closure = input;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Polynomial> rows = closure.basis();
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t j = i + 1; j < rows.size(); ++j) {
        if (closure.add(poisson_bracket(rows[i], rows[j]))) grew = true;
      }
    }
  }
  out.closure_dimension = closure.dimension();

  // Dependency scalar from a diagonalized pair of the input span.
  if (out.input_dimension == 2) {
    std::vector<Polynomial> rows = input.basis();
    Polynomial h(1), g(1);
    diagonal_pair(rows, h, g);
    QuadCoeffs hc = quad_coeffs(h);
    QuadCoeffs gc = quad_coeffs(g);
    Rational a = hc.p2, c = hc.q2;
    Rational r = gc.p2, s = gc.qp, t = gc.q2;
    out.dependency_value = a * c * s * s + (a * t - c * r) * (a * t - c * r);
  }

  switch (out.closure_dimension) {
    case 0: out.tag = QuadSpanTag::degenerate; return out;
    case 1: out.tag = QuadSpanTag::dim1_case; return out;
    case 3: out.tag = QuadSpanTag::dim3_sp2; return out;
    default: break;
  }

  out.tag = QuadSpanTag::dim2_conjugate_to_C2;
  std::vector<Polynomial> rows = closure.basis();
  Polynomial h(1), g(1);
  diagonal_pair(rows, h, g);
  QuadCoeffs hc = quad_coeffs(h);
  Rational a = hc.p2, c = hc.q2;
  if (sgn(a) != 0) {
    h = h * (Rational(1) / a);
    c /= a;
    a = 1;
  } else {
    h = h * (Rational(1) / c);
    c = 1;
  }
  QuadCoeffs gc = quad_coeffs(g);
  // g must carry a cross term: a closed plane of diagonal forms would bracket
  // out of itself.
  if (sgn(gc.qp) == 0) return out;
  g = g * (Rational(1) / gc.qp);
  gc = quad_coeffs(g);

  std::optional<SymplecticMatrix> witness;
  if (sgn(a) == 0) {
    // h ~ q^2 and closure forces g = q*p + t*q^2, already the target plane.
    witness = SymplecticMatrix::identity(1);
  } else if (sgn(c) == 0) {
    // h ~ p^2: a quarter rotation swaps the roles of position and momentum.
    witness = SymplecticMatrix::quarter_rotation();
  } else {
    // h = p^2 - beta^2 q^2 up to scale, with beta = t - c*r from the closure
    // relation; the reducing substitution is
    //   q -> (1/(sqrt(2) beta)) (q - beta p),  p -> (1/sqrt(2)) (q + beta p).
    Rational beta = gc.q2 - c * gc.p2;
    if (c != -beta * beta) return out;  // not a closed plane; no witness
    Rational half(1, 2);
    std::vector<QuadExt> e(4);
    e[0] = QuadExt::sqrt_term(half / beta, 2);      // q coeff of q-image
    e[1] = QuadExt::sqrt_term(-half, 2);            // p coeff of q-image
    e[2] = QuadExt::sqrt_term(half, 2);             // q coeff of p-image
    e[3] = QuadExt::sqrt_term(half * beta, 2);      // p coeff of p-image
    witness = SymplecticMatrix(1, std::move(e));
  }

  // Exact conjugation check: the witness must carry the span onto span{q^2, q*p}.
  if (witness) {
    PolySpan image(1);
    try {
      for (const auto& row : rows) image.add(apply_linear_symplectic(row, *witness));
    } catch (const std::domain_error&) {
      return out;
    }
    Monomial mq2(1), mqp(1);
    mq2.set_q(0, 2);
    mqp.set_q(0, 1);
    mqp.set_p(0, 1);
    Polynomial q2 = Polynomial::from_term(1, mq2, Rational(1));
    Polynomial qp = Polynomial::from_term(1, mqp, Rational(1));
    if (image.dimension() == 2 && image.contains(q2) && image.contains(qp)) {
      out.witness = witness;
    }
  }
  return out;
}

}  // namespace weylq
