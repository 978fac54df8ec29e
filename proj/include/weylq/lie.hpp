#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylq/polynomial.hpp"
#include "weylq/quadext.hpp"

namespace weylq {

// Exact linear span of polynomials, kept in reduced row echelon form with
// pivots on leading monomials. The stored basis is canonical for the span.
class PolySpan {
 public:
  explicit PolySpan(int n) : n_(n) {}

  Polynomial reduce(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }
  // Returns true if f enlarged the span.
  bool add(const Polynomial& f);
  int dimension() const { return static_cast<int>(rows_.size()); }
  // Canonical basis, pivots in ascending canonical monomial order.
  std::vector<Polynomial> basis() const;
  int dim_ambient() const { return n_; }

 private:
  int n_;
  // pivot monomial -> row, monic at the pivot and reduced against the rest.
  std::map<Monomial, Polynomial> rows_;
};

enum class AlgebraFamily { heisenberg, sp, hsp, coordinate, momentum, pk, n2_mixed, full };

// A named subalgebra family or an explicit finite span with a degree bound.
struct SubalgebraSpec {
  bool named = true;
  AlgebraFamily family = AlgebraFamily::full;
  int n = 1;
  int k = 0;  // degree bound for the pk family
  std::vector<Polynomial> span;
  int degree_bound = 0;

  static SubalgebraSpec make_named(AlgebraFamily f, int n, int k = 0);
  static SubalgebraSpec make_spanned(std::vector<Polynomial> polys, int degree_bound);
  std::string name() const;
};

// Parses a family keyword: heisenberg, sp, hsp, coordinate, momentum,
// n2_mixed, full, or pk<k> (e.g. pk3).
SubalgebraSpec parse_algebra_name(const std::string& keyword, int n);

// Membership is syntactic for named families and an exact linear solve for
// spanned specs.
bool membership(const Polynomial& f, const SubalgebraSpec& S);

// Basis of S intersected with polynomials of degree <= max_degree: monomials
// for named families, the canonical reduced span basis for spanned specs.
std::vector<Polynomial> subalgebra_basis(const SubalgebraSpec& S, int max_degree);

struct ClosureViolation {
  Polynomial f, g, bracket;
};

struct ClosureReport {
  std::string algebra;
  int max_degree = 0;
  int pairs_checked = 0;
  std::vector<ClosureViolation> violations;
  bool closed() const { return violations.empty(); }
};

// Checks {f,g} ∈ S for all unordered pairs from a basis of S ∩ P^{<=D}.
// Brackets may exceed degree D; membership is still decided exactly.
ClosureReport closure_check(const SubalgebraSpec& S, int max_degree);

struct GenerationResult {
  int degree_bound = 0;
  int dimension = 0;
  std::vector<Polynomial> basis;
  // Brackets whose degree exceeded the bound were dropped, not proven
  // redundant; a nonzero count means the result is evidence at this degree,
  // not a closure statement for the full algebra.
  int discarded_brackets = 0;
  bool contains(const Polynomial& f) const;
  PolySpan span{1};
};

// Least subspace of P^{<=D} containing the degree-<=D members of the seed and
// closed under brackets whose results stay within degree D.
GenerationResult bracket_generate(const std::vector<Polynomial>& seed, int degree_bound);

// Linear substitution var_j -> sum_k M[j][k] var_k with exact symplectic
// verification at construction; entries live in Q or a single Q(sqrt(d)).
class SymplecticMatrix {
 public:
  SymplecticMatrix(int n, std::vector<QuadExt> entries);
  static SymplecticMatrix identity(int n);
  // q -> p, p -> -q (n = 1).
  static SymplecticMatrix quarter_rotation();

  int dim() const { return n_; }
  const QuadExt& at(int row, int col) const { return m_[static_cast<size_t>(row) * 2 * n_ + col]; }
  bool operator==(const SymplecticMatrix& o) const { return n_ == o.n_ && m_ == o.m_; }

 private:
  int n_;
  std::vector<QuadExt> m_;
};

// Substitution with exact bracket preservation. The rational overload demands
// a rational image and reports any irrational residue as an error.
BasicPolynomial<QuadExt> substitute_symplectic(const BasicPolynomial<QuadExt>& f,
                                               const SymplecticMatrix& S);
Polynomial apply_linear_symplectic(const Polynomial& f, const SymplecticMatrix& S);
BasicPolynomial<QuadExt> lift_to_quadext(const Polynomial& f);

enum class QuadSpanTag { degenerate, dim1_case, dim2_conjugate_to_C2, dim3_sp2 };

std::string to_string(QuadSpanTag tag);

struct QuadraticClassification {
  QuadSpanTag tag = QuadSpanTag::degenerate;
  int input_dimension = 0;
  int closure_dimension = 0;
  // For dim2_conjugate_to_C2: substitution carrying the span onto
  // span{q^2, q*p}.
  std::optional<SymplecticMatrix> witness;
  // ac + (at - cr)^2 evaluated on a diagonalized basis pair of the input
  // span; zero exactly when the input pair brackets into its own plane.
  std::optional<Rational> dependency_value;
};

// Classification of the bracket closure of a span of homogeneous quadratics
// in one degree of freedom.
QuadraticClassification classify_quadratic_span(const std::vector<Polynomial>& basis);

}  // namespace weylq
