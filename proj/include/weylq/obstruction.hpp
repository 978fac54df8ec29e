#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylq/quantize.hpp"

namespace weylq {

struct DiracViolation {
  Polynomial f, g;
  WeylElement expected;  // Q({f,g})
  WeylElement actual;    // (i/hbar)[Q(f), Q(g)]
  WeylElement residual;  // expected - actual
};

struct DiracSkipped {
  Polynomial f, g, bracket;  // bracket left the domain of the map
};

struct DiracReport {
  std::string map_name;
  std::string algebra;
  int max_degree = 0;
  bool unit_ok = false;  // Q(1) = I
  int pairs_checked = 0;
  std::vector<std::pair<Polynomial, Polynomial>> checked;
  std::vector<DiracSkipped> skipped;
  std::vector<DiracViolation> violations;
  bool passed() const { return unit_ok && violations.empty(); }
};

// Checks Q(1) = I and Q({f,g}) = (i/hbar)[Q(f),Q(g)] for every unordered
// basis pair of S ∩ P^{<=D}, by exact canonical-form comparison. Pairs whose
// bracket leaves the domain of Q are reported as skipped, not failed.
DiracReport check_dirac(const QuantizationMap& Q, const SubalgebraSpec& S, int max_degree);

// Exact record of the cubic bracket-identity clash: the same classical
// observable quantized along two forced routes with a nonzero scalar gap.
struct ObstructionCertificate {
  Polynomial route_a_classical;  // (1/9){q^3, p^3}
  Polynomial route_b_classical;  // (1/3){q^2 p, p^2 q}
  Polynomial common_value;       // both equal -q^2 p^2
  WeylElement route_a_value;     // candidate for Q(q^2 p^2) via route A
  WeylElement route_b_value;     // candidate via route B
  WeylElement residual;          // route A - route B
  bool classical_match = false;
  bool contradiction() const { return classical_match && !residual.is_zero(); }
};

ObstructionCertificate groenewold_certificate();

enum class AmbiguityFamily { hsp_P2, coordinate_C };

struct AmbiguityParameter {
  std::string name;
  bool fixed = false;
  HScalar value;  // meaningful when fixed
};

struct AmbiguityReport {
  AmbiguityFamily family;
  std::vector<AmbiguityParameter> parameters;
  int constraints_used = 0;
  const AmbiguityParameter* find(const std::string& name) const;
};

// Solves for the scalar shifts in Q(q^2) = q^2 + E, Q(p^2) = p^2 + F,
// Q(qp) = (q p + p q)/2 + G imposed by the bracket relations available in
// the family: all three vanish over the quadratic sector, while the
// coordinate algebra leaves G free.
AmbiguityReport scalar_ambiguity_solve(AmbiguityFamily family);

struct SigmaRecursionReport {
  int k = 0;
  HScalar G;
  bool recursion_ok = false;    // closed forms satisfy the k-step recursion
  bool closed_form_ok = false;  // iterated recursion reproduces the closed form
  bool sigma_match_ok = false;  // closed form equals the eta-map at eta = G/hbar
  WeylElement closed_form_value;
  bool passed() const { return recursion_ok && closed_form_ok && sigma_match_ok; }
};

// Verifies the recursion Q(q^k p) = (1/(1-k))(Q(q^k)Q(p) - k Q(q)Q(q^{k-1}p)),
// its closed form Q(q^k p) = Q(q^k)Q(p) + k(G - i hbar/2)Q(q)^{k-1}, and
// agreement with the eta-map, all as exact operator identities. Requires
// k >= 2 and G a rational multiple of hbar.
SigmaRecursionReport sigma_recursion_check(int k, const HScalar& G);

// Closed-form image of q^k p for the qp-ansatz with scalar shift G; valid for
// k >= 1 (k = 1 reduces to q p + (G - i hbar/2) I).
WeylElement sigma_closed_form(int k, const HScalar& G);

enum class HbarMode { formal, rational };

struct WitnessEntry {
  std::string constraint;
  std::string multiplier;
};

struct ExtensionReport {
  int ansatz_degree = 0;
  HbarMode mode = HbarMode::formal;
  Rational hbar_value = Rational(1);
  bool restrict_p2 = false;
  int unknown_count = 0;    // scalar unknowns after the real/imaginary split
  int constraint_rows = 0;  // rows fed to the eliminator
  int rank = 0;
  bool feasible = false;
  int freedom = 0;  // dimension of the solution space over the split field
  // Infeasible case: a combination of constraint rows that reduces to
  // 0 = nonzero scalar, re-evaluated exactly against the original rows.
  std::vector<WitnessEntry> witness;
  std::string witness_residual;
  bool witness_verified = false;
  // Feasible case with no freedom: the forced images.
  std::map<Monomial, WeylElement> solution;
  std::vector<std::string> notes;
};

// Fixes Q on degree <= 1 as the generator map, gives every classical
// monomial of degree 2..4 (or degree 2 when restricted to the quadratic
// sector) a generic self-adjoint ansatz of operator degree <= ansatz_degree,
// imposes the bracket conditions pairwise, and solves exactly. With hbar
// formal the solve runs over rational functions in hbar; with hbar rational
// it runs over the rationals at that value.
ExtensionReport extension_infeasibility(int ansatz_degree, HbarMode mode,
                                        const Rational& hbar_value, bool restrict_p2);

struct CentreReport {
  int n = 1;
  int degree = 0;
  int ansatz_terms = 0;
  int solution_dimension = 0;  // complex dimension of the commutant ansatz
  bool scalars_only = false;
};

// Exact linear solve for the commutant of all generators within the
// degree-bounded ansatz; the solution space must be the scalars.
CentreReport centre_ansatz_probe(int n, int degree);

}  // namespace weylq
