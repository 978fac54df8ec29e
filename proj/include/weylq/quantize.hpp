#pragma once

#include <functional>
#include <map>
#include <string>

#include "weylq/lie.hpp"
#include "weylq/weyl.hpp"

namespace weylq {

// Raised when a polynomial is pushed through a map whose domain does not
// contain it; carries the offending monomials.
struct DomainError : std::runtime_error {
  DomainError(const std::string& msg, std::vector<Monomial> bad)
      : std::runtime_error(msg), offending(std::move(bad)) {}
  std::vector<Monomial> offending;
};

// Linear partial quantization map: monomial images over a declared domain
// subalgebra, evaluated by linear extension.
struct QuantizationMap {
  std::string map_name;
  int n = 1;
  SubalgebraSpec domain;
  std::map<std::string, HScalar> parameters;
  std::function<WeylElement(const Monomial&)> image_of;
};

// q^i -> q_i, p_j -> p_j, 1 -> I on the Heisenberg algebra.
QuantizationMap schrodinger(int n);

// Extends schrodinger to all polynomials of degree <= 2:
//   q^i q^j -> q_i q_j,  p_i p_j -> p_i p_j,
//   q^i p_j -> q_i p_j - (i hbar / 2) delta^i_j I.
QuantizationMap metaplectic(int n);

// The eta-family on observables affine in momenta:
//   sum f^i(q) p_i + g(q)
//     -> sum [ f^i(q) p_i + (hbar eta - i hbar/2) (d f^i/d q^i)(q) ] + g(q).
QuantizationMap sigma_eta(int n, const Rational& eta);

// Totally symmetric ordering as a candidate map on all polynomials.
QuantizationMap weyl_symmetric(int n);

QuantizationMap map_by_name(const std::string& name, int n, const Rational& eta);

enum class VnKind { r_of_q, r_of_p, r_of_q_times_p, q_times_r_of_p };

// Forced higher-degree images for a univariate real polynomial r:
//   r(q),  r(p),  (r(q)p + p r(q))/2,  (q r(p) + r(p) q)/2,
// returned in normal order.
WeylElement vn_extend(VnKind kind, const Polynomial& r);

// Linear extension of the stored images; rejects polynomials outside the
// domain and reports the offending monomials.
WeylElement apply_map(const QuantizationMap& Q, const Polynomial& f);

}  // namespace weylq
