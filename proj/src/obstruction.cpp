#include "weylq/obstruction.hpp"

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>

#include "weylq/ratfunc.hpp"

namespace weylq {

// ---------------------------------------------------------------------------
// check_dirac
// ---------------------------------------------------------------------------

DiracReport check_dirac(const QuantizationMap& Q, const SubalgebraSpec& S, int max_degree) {
  if (Q.n != S.n) throw std::invalid_argument("check_dirac: dimension mismatch");
  DiracReport report;
  report.map_name = Q.map_name;
  report.algebra = S.name();
  report.max_degree = max_degree;

  report.unit_ok =
      apply_map(Q, Polynomial::constant(Q.n, Rational(1))) == WeylElement::identity(Q.n);

  std::vector<Polynomial> basis = subalgebra_basis(S, max_degree);
  std::vector<WeylElement> images;
  images.reserve(basis.size());
  for (const auto& f : basis) images.push_back(apply_map(Q, f));

  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      Polynomial br = poisson_bracket(basis[i], basis[j]);
      bool in_domain = true;
      for (const auto& [m, c] : br.terms()) {
        (void)c;
        if (!membership(Polynomial::from_term(Q.n, m, Rational(1)), Q.domain)) {
          in_domain = false;
          break;
        }
      }
      if (!in_domain) {
        report.skipped.push_back({basis[i], basis[j], br});
        continue;
      }
      ++report.pairs_checked;
      report.checked.emplace_back(basis[i], basis[j]);
      WeylElement expected = apply_map(Q, br);
      WeylElement actual = dirac_bracket(images[i], images[j]);
      if (expected != actual) {
        report.violations.push_back({basis[i], basis[j], expected, actual, expected - actual});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// groenewold_certificate
// ---------------------------------------------------------------------------

ObstructionCertificate groenewold_certificate() {
  ObstructionCertificate cert;
  Polynomial q3 = parse_polynomial("q^3", 1);
  Polynomial p3 = parse_polynomial("p^3", 1);
  Polynomial q2p = parse_polynomial("q^2*p", 1);
  Polynomial p2q = parse_polynomial("p^2*q", 1);

  Rational ninth(1, 9), third(1, 3);
  cert.route_a_classical = poisson_bracket(q3, p3) * ninth;
  cert.route_b_classical = poisson_bracket(q2p, p2q) * third;
  cert.classical_match = cert.route_a_classical == cert.route_b_classical;
  cert.common_value = cert.route_a_classical;

  // q^2 p^2 = -(1/9){q^3,p^3} = -(1/3){q^2 p, p^2 q}; quantize both routes
  // through the forced cubic images.
  WeylElement Qq3 = vn_extend(VnKind::r_of_q, q3);
  WeylElement Qp3 = vn_extend(VnKind::r_of_p, p3);
  WeylElement Qq2p = vn_extend(VnKind::r_of_q_times_p, parse_polynomial("q^2", 1));
  WeylElement Qp2q = vn_extend(VnKind::q_times_r_of_p, parse_polynomial("p^2", 1));

  cert.route_a_value = dirac_bracket(Qq3, Qp3).scale(HScalar::rational(-ninth));
  cert.route_b_value = dirac_bracket(Qq2p, Qp2q).scale(HScalar::rational(-third));
  cert.residual = cert.route_a_value - cert.route_b_value;
  return cert;
}

// ---------------------------------------------------------------------------
// scalar_ambiguity_solve
// ---------------------------------------------------------------------------

namespace {

Monomial mono1(unsigned qe, unsigned pe) {
  Monomial m(1);
  m.set_q(0, qe);
  m.set_p(0, pe);
  return m;
}

template <class ImageFn>
WeylElement extend_linearly(const Polynomial& f, const ImageFn& image_of) {
  WeylElement out(f.dim());
  for (const auto& [m, c] : f.terms()) {
    out = out + image_of(m).scale(HScalar::rational(c));
  }
  return out;
}

}  // namespace

const AmbiguityParameter* AmbiguityReport::find(const std::string& name) const {
  for (const auto& p : parameters) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

AmbiguityReport scalar_ambiguity_solve(AmbiguityFamily family) {
  AmbiguityReport report;
  report.family = family;

  // Ansatz images with the scalar shifts split off; the shift attached to
  // each quadratic monomial is tracked as its own unknown.
  WeylElement img_q2 = parse_weyl("q^2", 1);
  WeylElement img_p2 = parse_weyl("p^2", 1);
  WeylElement img_qp = parse_weyl("q*p - 1/2*i*hbar*I", 1);

  std::vector<std::string> params;
  std::map<Monomial, int> shift_of;
  params.push_back("E");
  shift_of[mono1(2, 0)] = 0;
  if (family == AmbiguityFamily::hsp_P2) {
    params.push_back("F");
    shift_of[mono1(0, 2)] = 1;
  }
  params.push_back("G");
  shift_of[mono1(1, 1)] = static_cast<int>(params.size()) - 1;

  auto image_of = [&](const Monomial& m) -> WeylElement {
    if (m == mono1(2, 0)) return img_q2;
    if (m == mono1(0, 2)) return img_p2;
    if (m == mono1(1, 1)) return img_qp;
    return WeylElement::from_term(1, m, HScalar::integer(1));  // degree <= 1
  };

  std::vector<std::pair<Polynomial, Polynomial>> pairs;
  Polynomial q2 = parse_polynomial("q^2", 1);
  Polynomial p2 = parse_polynomial("p^2", 1);
  Polynomial qp = parse_polynomial("q*p", 1);
  pairs.emplace_back(qp, q2);
  if (family == AmbiguityFamily::hsp_P2) {
    pairs.emplace_back(qp, p2);
    pairs.emplace_back(p2, q2);
  }

  // Linear system over the shifts: rational coefficients, HScalar right side.
  std::vector<std::vector<Rational>> rows;
  std::vector<HScalar> rhs;
  for (const auto& [f, g] : pairs) {
    ++report.constraints_used;
    Polynomial br = poisson_bracket(f, g);
    WeylElement lhs_particular(1);
    std::vector<Rational> shift_coeffs(params.size(), Rational(0));
    for (const auto& [m, c] : br.terms()) {
      lhs_particular = lhs_particular + image_of(m).scale(HScalar::rational(c));
      auto it = shift_of.find(m);
      if (it != shift_of.end()) shift_coeffs[static_cast<size_t>(it->second)] += c;
    }
    // Scalar shifts are central, so the commutator side does not see them.
    WeylElement rhs_value =
        dirac_bracket(extend_linearly(f, image_of), extend_linearly(g, image_of));
    WeylElement delta = rhs_value - lhs_particular;
    for (const auto& [m, c] : delta.terms()) {
      if (!m.is_unit() && !c.is_zero()) {
        throw std::logic_error("scalar ambiguity ansatz cannot absorb a non-scalar residual");
      }
    }
    rows.push_back(shift_coeffs);
    rhs.push_back(delta.coeff(Monomial::unit(1)));
  }

  // Tiny Gauss-Jordan: rational matrix, HScalar right side.
  size_t nparams = params.size();
  std::vector<bool> pinned(nparams, false);
  std::vector<HScalar> value(nparams);
  size_t row = 0;
  for (size_t col = 0; col < nparams && row < rows.size(); ++col) {
    size_t pivot = row;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[row]);
    std::swap(rhs[pivot], rhs[row]);
    Rational lead = rows[row][col];
    for (size_t c2 = 0; c2 < nparams; ++c2) rows[row][c2] /= lead;
    rhs[row] = rhs[row] * HScalar::rational(Rational(1) / lead);
    for (size_t r2 = 0; r2 < rows.size(); ++r2) {
      if (r2 == row) continue;
      Rational factor = rows[r2][col];
      if (sgn(factor) == 0) continue;
      for (size_t c2 = 0; c2 < nparams; ++c2) rows[r2][c2] -= factor * rows[row][c2];
      rhs[r2] = rhs[r2] - rhs[row] * HScalar::rational(factor);
    }
    ++row;
  }
  for (size_t r = 0; r < rows.size(); ++r) {
    size_t lead_col = nparams;
    for (size_t c2 = 0; c2 < nparams; ++c2) {
      if (sgn(rows[r][c2]) != 0) {
        lead_col = c2;
        break;
      }
    }
    if (lead_col == nparams) {
      if (!rhs[r].is_zero()) throw std::logic_error("inconsistent scalar ambiguity system");
      continue;
    }
    bool clean = true;
    for (size_t c2 = lead_col + 1; c2 < nparams; ++c2) {
      if (sgn(rows[r][c2]) != 0) clean = false;
    }
    if (clean) {
      pinned[lead_col] = true;
      value[lead_col] = rhs[r];
    }
  }
  for (size_t k = 0; k < nparams; ++k) {
    report.parameters.push_back({params[k], pinned[k], value[k]});
  }
  return report;
}

// ---------------------------------------------------------------------------
// sigma recursion
// ---------------------------------------------------------------------------

WeylElement sigma_closed_form(int k, const HScalar& G) {
  if (k < 1) throw std::invalid_argument("sigma_closed_form needs k >= 1");
  HScalar shift = G - HScalar::i_unit() * HScalar::hbar() * HScalar::rational(Rational(1, 2));
  WeylElement qk_p =
      WeylElement::from_term(1, mono1(static_cast<unsigned>(k), 1), HScalar::integer(1));
  WeylElement correction = WeylElement::from_term(
      1, mono1(static_cast<unsigned>(k - 1), 0), shift * HScalar::rational(Rational(k)));
  return qk_p + correction;
}

SigmaRecursionReport sigma_recursion_check(int k, const HScalar& G) {
  if (k < 2) throw std::invalid_argument("sigma_recursion_check needs k >= 2");
  if (!(G.coeff(0).is_zero() && G.hbar_degree() <= 1 && G.coeff(1).is_real())) {
    throw std::invalid_argument("G must be a rational multiple of hbar");
  }
  SigmaRecursionReport report;
  report.k = k;
  report.G = G;
  Rational eta = G.coeff(1).re;

  WeylElement q_hat = WeylElement::q(1, 0);
  WeylElement p_hat = WeylElement::p(1, 0);
  WeylElement qk_hat = weyl_pow(q_hat, static_cast<unsigned>(k));
  WeylElement ck = sigma_closed_form(k, G);
  WeylElement ck1 = sigma_closed_form(k - 1, G);

  // (a) Adjacent closed forms satisfy
  // Q(q^k p) = (1/(1-k)) (Q(q^k) Q(p) - k Q(q) Q(q^{k-1} p)).
  WeylElement recursion_rhs =
      (weyl_mul(qk_hat, p_hat) - weyl_mul(q_hat, ck1).scale(HScalar::integer(k)))
          .scale(HScalar::rational(make_fraction(1, 1 - k)));
  report.recursion_ok = ck == recursion_rhs;

  // (b) Iterating the recursion from Q(qp) = qp + (G - i hbar/2) I lands on
  // the closed form.
  WeylElement iterated = sigma_closed_form(1, G);
  for (int j = 2; j <= k; ++j) {
    WeylElement qj_hat = weyl_pow(q_hat, static_cast<unsigned>(j));
    iterated = (weyl_mul(qj_hat, p_hat) - weyl_mul(q_hat, iterated).scale(HScalar::integer(j)))
                   .scale(HScalar::rational(make_fraction(1, 1 - j)));
  }
  report.closed_form_ok = iterated == ck;

  // (c) The closed form equals the eta-map image at eta = G/hbar.
  QuantizationMap sigma = sigma_eta(1, eta);
  WeylElement sigma_img = apply_map(
      sigma, Polynomial::from_term(1, mono1(static_cast<unsigned>(k), 1), Rational(1)));
  report.sigma_match_ok = sigma_img == ck;
  report.closed_form_value = ck;
  return report;
}

// ---------------------------------------------------------------------------
// extension infeasibility: phased exact linear solving
// ---------------------------------------------------------------------------

namespace {

// --- scalar modes ---

struct FormalMode {
  using Field = RatFunc;
  std::pair<Field, Field> split(const HScalar& h) const {
    UPoly re, im;
    for (int k = 0; k <= h.hbar_degree(); ++k) {
      Gaussian g = h.coeff(static_cast<unsigned>(k));
      re = re + UPoly::monomial(g.re, static_cast<unsigned>(k));
      im = im + UPoly::monomial(g.im, static_cast<unsigned>(k));
    }
    return {RatFunc(re), RatFunc(im)};
  }
  Field div_hbar(const Field& f) const {
    return f / RatFunc(UPoly::monomial(Rational(1), 1));
  }
  static HScalar to_hscalar(const Field& re, const Field& im) {
    if (!re.is_polynomial() || !im.is_polynomial()) {
      throw std::logic_error("extension image has a non-polynomial hbar dependence");
    }
    Rational dre = re.den().coeff(0);
    Rational dim = im.den().coeff(0);
    HScalar out;
    for (int k = 0; k <= re.num().degree(); ++k) {
      out = out +
            HScalar::term(Gaussian(re.num().coeff(static_cast<unsigned>(k)) / dre),
                          static_cast<unsigned>(k));
    }
    for (int k = 0; k <= im.num().degree(); ++k) {
      out = out + HScalar::term(Gaussian(Rational(0),
                                         im.num().coeff(static_cast<unsigned>(k)) / dim),
                                static_cast<unsigned>(k));
    }
    return out;
  }
  static std::string print(const Field& f) { return to_string(f, "hbar"); }
};

struct RationalMode {
  Rational hbar;
  using Field = Rational;
  std::pair<Field, Field> split(const HScalar& h) const {
    Gaussian g = h.eval(hbar);
    return {g.re, g.im};
  }
  Field div_hbar(const Field& f) const { return f / hbar; }
  static HScalar to_hscalar(const Field& re, const Field& im) {
    return HScalar::gaussian(Gaussian(re, im));
  }
  static std::string print(const Field& f) { return to_string(f); }
};

// --- affine scalars over a field ---

template <class F>
struct LinExpr {
  F c{};
  std::map<int, F> lin;

  bool is_constant() const { return lin.empty(); }
  bool is_zero() const { return lin.empty() && c == F(); }

  void add_const(const F& v) { c = c + v; }
  void add_var(int v, const F& w) {
    if (w == F()) return;
    auto [it, inserted] = lin.try_emplace(v, w);
    if (!inserted) {
      it->second = it->second + w;
      if (it->second == F()) lin.erase(it);
    }
  }
  LinExpr operator+(const LinExpr& o) const {
    LinExpr out = *this;
    out.c = out.c + o.c;
    for (const auto& [v, w] : o.lin) out.add_var(v, w);
    return out;
  }
  LinExpr operator-(const LinExpr& o) const {
    LinExpr out = *this;
    out.c = out.c - o.c;
    for (const auto& [v, w] : o.lin) out.add_var(v, F() - w);
    return out;
  }
  LinExpr scaled(const F& s) const {
    LinExpr out;
    if (s == F()) return out;
    out.c = c * s;
    for (const auto& [v, w] : lin) out.lin.emplace(v, w * s);
    return out;
  }
};

template <class F>
struct CLin {
  LinExpr<F> re, im;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CLin operator+(const CLin& o) const { return {re + o.re, im + o.im}; }
  CLin operator-(const CLin& o) const { return {re - o.re, im - o.im}; }
  // Multiply by the complex constant a + b i.
  CLin scaled(const F& a, const F& b) const {
    return {re.scaled(a) - im.scaled(b), re.scaled(b) + im.scaled(a)};
  }
  CLin conj() const { return {re, LinExpr<F>{} - im}; }
  CLin times_i() const { return {LinExpr<F>{} - im, re}; }
};

template <class F>
using AffElem = std::map<Monomial, CLin<F>>;

template <class F>
void aff_add_term(AffElem<F>& a, const Monomial& m, const CLin<F>& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = a.try_emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) a.erase(it);
  }
}

template <class F>
AffElem<F> aff_sub(const AffElem<F>& a, const AffElem<F>& b) {
  AffElem<F> out = a;
  for (const auto& [m, c] : b) aff_add_term(out, m, CLin<F>{} - c);
  return out;
}

// --- sparse rows with provenance ---

template <class F>
struct SRow {
  std::map<int, F> a;
  F rhs{};
  std::map<int, F> prov;  // combination over original constraint row ids
};

template <class F>
void row_axpy(SRow<F>& r, const SRow<F>& other, const F& factor) {
  // r -= factor * other
  auto merge = [&](std::map<int, F>& dst, const std::map<int, F>& src) {
    for (const auto& [k, v] : src) {
      F delta = factor * v;
      auto [it, inserted] = dst.try_emplace(k, F() - delta);
      if (!inserted) it->second = it->second - delta;
      if (it->second == F()) dst.erase(it);
    }
  };
  merge(r.a, other.a);
  r.rhs = r.rhs - factor * other.rhs;
  merge(r.prov, other.prov);
}

template <class F>
class RowReducer {
 public:
  enum class Result { redundant, added, conflict };

  Result add(SRow<F> r) {
    std::vector<std::pair<int, F>> hits;
    for (const auto& [v, w] : r.a) {
      if (pivots_.count(v)) hits.emplace_back(v, w);
    }
    // Pivot tails hold only free variables, so one sweep fully reduces.
    for (const auto& [v, w] : hits) row_axpy(r, pivots_.at(v), w);
    if (r.a.empty()) {
      if (r.rhs == F()) return Result::redundant;
      conflict_ = std::move(r);
      return Result::conflict;
    }
    int pivot_var = r.a.begin()->first;
    F lead = r.a.begin()->second;
    SRow<F> norm;
    for (const auto& [v, w] : r.a) norm.a.emplace(v, w / lead);
    norm.rhs = r.rhs / lead;
    for (const auto& [v, w] : r.prov) norm.prov.emplace(v, w / lead);
    for (auto& [pv, prow] : pivots_) {
      (void)pv;
      auto it = prow.a.find(pivot_var);
      if (it != prow.a.end()) {
        F factor = it->second;  // copy: row_axpy erases the referenced entry
        row_axpy(prow, norm, factor);
      }
    }
    pivots_.emplace(pivot_var, std::move(norm));
    return Result::added;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }
  const std::optional<SRow<F>>& conflict() const { return conflict_; }
  bool has_pivot(int v) const { return pivots_.count(v) != 0; }

  LinExpr<F> reduce(const LinExpr<F>& e) const {
    LinExpr<F> out;
    out.c = e.c;
    for (const auto& [v, w] : e.lin) {
      auto it = pivots_.find(v);
      if (it == pivots_.end()) {
        out.add_var(v, w);
        continue;
      }
      const SRow<F>& prow = it->second;  // v + tail = rhs
      out.add_const(w * prow.rhs);
      for (const auto& [tv, tw] : prow.a) {
        if (tv == v) continue;
        out.add_var(tv, F() - w * tw);
      }
    }
    return out;
  }

 private:
  std::map<int, SRow<F>> pivots_;
  std::optional<SRow<F>> conflict_;
};

// --- the solver ---

template <class Mode>
class ExtensionSolver {
 public:
  using F = typename Mode::Field;
  using CF = std::pair<F, F>;
  using FElem = std::map<Monomial, CF>;

  ExtensionSolver(Mode mode, int ansatz_degree, bool restrict_p2)
      : mode_(std::move(mode)), degree_(ansatz_degree), restrict_p2_(restrict_p2) {}

  ExtensionReport run() {
    build_unknowns();
    phase_equivariance();
    if (!reducer_.conflict()) phase_adjoint();
    if (!reducer_.conflict()) phase_pairs();
    return assemble();
  }

 private:
  static CF cmul(const CF& x, const CF& y) {
    return {x.first * y.first - x.second * y.second,
            x.first * y.second + x.second * y.first};
  }

  void build_unknowns() {
    int hi = restrict_p2_ ? 2 : 4;
    for (const auto& m : monomial_basis(1, 2, hi)) unknown_monomials_.push_back(m);
    size_t offset = 0;
    for (size_t u = 0; u < unknown_monomials_.size(); ++u) {
      // The image of a degree-k monomial must at least be able to hold its
      // forced degree-k value, whatever the requested ansatz degree.
      int cap = std::max(degree_, static_cast<int>(unknown_monomials_[u].total_degree()));
      unknown_bases_.push_back(monomial_basis(1, 0, cap));
      var_offsets_.push_back(offset);
      offset += unknown_bases_.back().size();
      AffElem<F> e;
      for (size_t w = 0; w < unknown_bases_[u].size(); ++w) {
        CLin<F> c;
        c.re.add_var(var_id(u, w, 0), F(1));
        c.im.add_var(var_id(u, w, 1), F(1));
        e.emplace(unknown_bases_[u][w], c);
      }
      unknowns_.push_back(std::move(e));
    }
    total_coeffs_ = offset;
  }

  int var_id(size_t u, size_t w, int imag) const {
    return static_cast<int>((var_offsets_[u] + w) * 2 + static_cast<size_t>(imag));
  }

  int unknown_index(const Monomial& m) const {
    for (size_t u = 0; u < unknown_monomials_.size(); ++u) {
      if (unknown_monomials_[u] == m) return static_cast<int>(u);
    }
    return -1;
  }

  FElem fixed_from_weyl(const WeylElement& a) const {
    FElem out;
    for (const auto& [m, c] : a.terms()) out.emplace(m, mode_.split(c));
    return out;
  }

  AffElem<F> image_of(const Polynomial& f) const {
    AffElem<F> out;
    for (const auto& [m, c] : f.terms()) {
      if (m.total_degree() <= 1) {
        CLin<F> cl;
        cl.re.add_const(F(c));
        aff_add_term(out, m, cl);
        continue;
      }
      int u = unknown_index(m);
      if (u < 0) {
        throw std::logic_error("image_of: monomial outside the ansatz: " +
                               monomial_to_string(m));
      }
      for (const auto& [wm, cl] : unknowns_[static_cast<size_t>(u)]) {
        aff_add_term(out, wm, cl.scaled(F(c), F()));
      }
    }
    return out;
  }

  const std::vector<std::tuple<unsigned, unsigned, CF>>& split_nf(unsigned b, unsigned a) {
    auto key = std::make_pair(b, a);
    auto it = nf_cache_.find(key);
    if (it != nf_cache_.end()) return it->second;
    std::vector<std::tuple<unsigned, unsigned, CF>> rows;
    for (const auto& [qp, c] : normal_order_pq(b, a)) {
      rows.emplace_back(qp.first, qp.second, mode_.split(c));
    }
    return nf_cache_.emplace(key, std::move(rows)).first->second;
  }

  // affine_left: A (affine) * B (fixed); otherwise B * A. One degree of
  // freedom, so the normal form of the middle block settles each term pair.
  AffElem<F> mul_fixed(const AffElem<F>& A, const FElem& B, bool affine_left) {
    AffElem<F> out;
    for (const auto& [ma, ca] : A) {
      for (const auto& [mb, cb] : B) {
        const Monomial& left = affine_left ? ma : mb;
        const Monomial& right = affine_left ? mb : ma;
        for (const auto& [dq, dp, wc] : split_nf(left.p_exp(0), right.q_exp(0))) {
          Monomial t(1);
          t.set_q(0, left.q_exp(0) + dq);
          t.set_p(0, dp + right.p_exp(0));
          CF w = cmul(cb, wc);
          aff_add_term(out, t, ca.scaled(w.first, w.second));
        }
      }
    }
    return out;
  }

  AffElem<F> dirac_fixed(const AffElem<F>& A, const FElem& B) {
    AffElem<F> c = aff_sub(mul_fixed(A, B, true), mul_fixed(A, B, false));
    AffElem<F> out;
    for (const auto& [m, cl] : c) {
      CLin<F> scaled = cl.times_i();
      CLin<F> divided;
      divided.re.c = mode_.div_hbar(scaled.re.c);
      for (const auto& [v, w] : scaled.re.lin) divided.re.lin.emplace(v, mode_.div_hbar(w));
      divided.im.c = mode_.div_hbar(scaled.im.c);
      for (const auto& [v, w] : scaled.im.lin) divided.im.lin.emplace(v, mode_.div_hbar(w));
      aff_add_term(out, m, divided);
    }
    return out;
  }

  AffElem<F> adjoint_aff(const AffElem<F>& A) {
    AffElem<F> out;
    for (const auto& [m, cl] : A) {
      CLin<F> conj = cl.conj();
      for (const auto& [dq, dp, wc] : split_nf(m.p_exp(0), m.q_exp(0))) {
        Monomial t(1);
        t.set_q(0, dq);
        t.set_p(0, dp);
        aff_add_term(out, t, conj.scaled(wc.first, wc.second));
      }
    }
    return out;
  }

  FElem fixed_mul(const FElem& a, const FElem& b) {
    FElem out;
    for (const auto& [ma, ca] : a) {
      for (const auto& [mb, cb] : b) {
        for (const auto& [dq, dp, wc] : split_nf(ma.p_exp(0), mb.q_exp(0))) {
          Monomial t(1);
          t.set_q(0, ma.q_exp(0) + dq);
          t.set_p(0, dp + mb.p_exp(0));
          CF add = cmul(cmul(ca, cb), wc);
          auto [jt, ins] = out.try_emplace(t, add);
          if (!ins) {
            jt->second = {jt->second.first + add.first, jt->second.second + add.second};
          }
        }
      }
    }
    for (auto it = out.begin(); it != out.end();) {
      if (it->second.first == F() && it->second.second == F()) it = out.erase(it);
      else ++it;
    }
    return out;
  }

  FElem fixed_dirac(const FElem& a, const FElem& b) {
    FElem ab = fixed_mul(a, b);
    FElem ba = fixed_mul(b, a);
    for (const auto& [m, c] : ba) {
      auto [it, ins] = ab.try_emplace(m, CF{F() - c.first, F() - c.second});
      if (!ins) it->second = {it->second.first - c.first, it->second.second - c.second};
    }
    FElem res;
    for (const auto& [m, c] : ab) {
      CF v{F() - c.second, c.first};  // times i
      v = {mode_.div_hbar(v.first), mode_.div_hbar(v.second)};
      if (v.first == F() && v.second == F()) continue;
      res.emplace(m, v);
    }
    return res;
  }

  void emit_zero(const AffElem<F>& e, const std::string& label) {
    for (const auto& [m, cl] : e) {
      for (int part = 0; part < 2; ++part) {
        const LinExpr<F>& expr = part == 0 ? cl.re : cl.im;
        if (expr.is_zero()) continue;
        SRow<F> row;
        row.a = expr.lin;
        row.rhs = F() - expr.c;
        int id = static_cast<int>(originals_.size());
        row.prov.emplace(id, F(1));
        originals_.push_back(row);
        labels_.push_back(label + " @ " + (m.is_unit() ? "I" : monomial_to_string(m)) +
                          (part == 0 ? " (re)" : " (im)"));
        if (!reducer_.conflict()) reducer_.add(std::move(row));
      }
    }
  }

  AffElem<F> reduce_elem(const AffElem<F>& e) const {
    AffElem<F> out;
    for (const auto& [m, cl] : e) {
      CLin<F> r;
      r.re = reducer_.reduce(cl.re);
      r.im = reducer_.reduce(cl.im);
      aff_add_term(out, m, r);
    }
    return out;
  }

  // Remaining freedom must sit on the identity coefficient alone; scalar
  // directions are central, which keeps the pair constraints linear.
  bool freedom_is_central(const AffElem<F>& e) const {
    for (const auto& [m, cl] : e) {
      if (m.is_unit()) continue;
      if (!cl.re.is_constant() || !cl.im.is_constant()) return false;
    }
    return true;
  }

  FElem constants_of(const AffElem<F>& e) const {
    FElem out;
    for (const auto& [m, cl] : e) {
      CF v{cl.re.c, cl.im.c};
      if (v.first == F() && v.second == F()) continue;
      out.emplace(m, v);
    }
    return out;
  }

  void phase_equivariance() {
    FElem q_fixed = fixed_from_weyl(WeylElement::q(1, 0));
    FElem p_fixed = fixed_from_weyl(WeylElement::p(1, 0));
    Polynomial qv = Polynomial::variable_q(1, 0);
    Polynomial pv = Polynomial::variable_p(1, 0);
    for (size_t u = 0; u < unknown_monomials_.size(); ++u) {
      // Pair constraints only range over monomials of degree <= 3; quartic
      // images are reached through cubic pairs alone.
      if (unknown_monomials_[u].total_degree() > 3) continue;
      Polynomial mono = Polynomial::from_term(1, unknown_monomials_[u], Rational(1));
      for (int which = 0; which < 2; ++which) {
        const Polynomial& gen = which == 0 ? qv : pv;
        const FElem& gen_fixed = which == 0 ? q_fixed : p_fixed;
        AffElem<F> lhs = image_of(poisson_bracket(mono, gen));
        AffElem<F> rhs = dirac_fixed(unknowns_[u], gen_fixed);
        emit_zero(aff_sub(lhs, rhs),
                  "Q1[" + to_string(mono) + "," + (which == 0 ? "q" : "p") + "]");
        if (reducer_.conflict()) return;
      }
    }
  }

  void phase_adjoint() {
    for (size_t u = 0; u < unknown_monomials_.size(); ++u) {
      emit_zero(aff_sub(adjoint_aff(unknowns_[u]), unknowns_[u]),
                "adjoint[" + monomial_to_string(unknown_monomials_[u]) + "]");
      if (reducer_.conflict()) return;
    }
  }

  void phase_pairs() {
    // Unordered pairs, lowest degrees first, so freedom collapses to central
    // scalars before a commutator needs it.
    std::vector<std::pair<size_t, size_t>> pairs;
    unsigned pair_max = restrict_p2_ ? 2u : 3u;
    for (size_t i = 0; i < unknown_monomials_.size(); ++i) {
      for (size_t j = i + 1; j < unknown_monomials_.size(); ++j) {
        if (unknown_monomials_[i].total_degree() > pair_max) continue;
        if (unknown_monomials_[j].total_degree() > pair_max) continue;
        pairs.emplace_back(i, j);
      }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
      unsigned mx = std::max(unknown_monomials_[x.first].total_degree(),
                             unknown_monomials_[x.second].total_degree());
      unsigned my = std::max(unknown_monomials_[y.first].total_degree(),
                             unknown_monomials_[y.second].total_degree());
      return mx < my;
    });

    for (const auto& [i, j] : pairs) {
      Polynomial fi = Polynomial::from_term(1, unknown_monomials_[i], Rational(1));
      Polynomial fj = Polynomial::from_term(1, unknown_monomials_[j], Rational(1));
      AffElem<F> ui = reduce_elem(unknowns_[i]);
      AffElem<F> uj = reduce_elem(unknowns_[j]);
      if (!freedom_is_central(ui) || !freedom_is_central(uj)) {
        throw std::logic_error("non-central freedom left before pair " + to_string(fi) +
                               ", " + to_string(fj));
      }
      FElem rhs = fixed_dirac(constants_of(ui), constants_of(uj));
      AffElem<F> lhs = image_of(poisson_bracket(fi, fj));
      AffElem<F> rhs_aff;
      for (const auto& [m, c] : rhs) {
        CLin<F> cl;
        cl.re.add_const(c.first);
        cl.im.add_const(c.second);
        aff_add_term(rhs_aff, m, cl);
      }
      emit_zero(aff_sub(lhs, rhs_aff), "Q1[" + to_string(fi) + "," + to_string(fj) + "]");
      if (reducer_.conflict()) return;
    }
  }

  ExtensionReport assemble() {
    ExtensionReport report;
    report.ansatz_degree = degree_;
    report.restrict_p2 = restrict_p2_;
    report.unknown_count = static_cast<int>(total_coeffs_ * 2);
    report.constraint_rows = static_cast<int>(originals_.size());
    report.rank = reducer_.rank();
    report.notes.push_back("generic images for " + std::to_string(unknown_monomials_.size()) +
                           " classical monomials, " + std::to_string(total_coeffs_) +
                           " operator coefficients in total");
    report.notes.push_back(
        "constraint order: brackets against the generators, self-adjointness, pair "
        "conditions by increasing degree");

    if (reducer_.conflict()) {
      report.feasible = false;
      const SRow<F>& bad = *reducer_.conflict();
      SRow<F> check;
      for (const auto& [id, mult] : bad.prov) {
        row_axpy(check, originals_[static_cast<size_t>(id)], F(F() - mult));
      }
      report.witness_verified = check.a.empty() && !(check.rhs == F()) && check.rhs == bad.rhs;
      for (const auto& [id, mult] : bad.prov) {
        report.witness.push_back({labels_[static_cast<size_t>(id)], Mode::print(mult)});
      }
      report.witness_residual = Mode::print(bad.rhs);
      return report;
    }

    report.feasible = true;
    report.freedom = report.unknown_count - report.rank;
    if (report.freedom == 0) {
      for (size_t u = 0; u < unknown_monomials_.size(); ++u) {
        AffElem<F> e = reduce_elem(unknowns_[u]);
        WeylElement img(1);
        for (const auto& [m, cl] : e) {
          if (!cl.re.is_constant() || !cl.im.is_constant()) {
            throw std::logic_error("freedom reported zero but a variable survived");
          }
          img.add_term(m, Mode::to_hscalar(cl.re.c, cl.im.c));
        }
        report.solution.emplace(unknown_monomials_[u], img);
      }
    }
    return report;
  }

  Mode mode_;
  int degree_;
  bool restrict_p2_;
  std::vector<Monomial> unknown_monomials_;
  std::vector<std::vector<Monomial>> unknown_bases_;
  std::vector<size_t> var_offsets_;
  size_t total_coeffs_ = 0;
  std::vector<AffElem<F>> unknowns_;
  RowReducer<F> reducer_;
  std::vector<SRow<F>> originals_;
  std::vector<std::string> labels_;
  std::map<std::pair<unsigned, unsigned>, std::vector<std::tuple<unsigned, unsigned, CF>>>
      nf_cache_;
};

}  // namespace

ExtensionReport extension_infeasibility(int ansatz_degree, HbarMode mode,
                                        const Rational& hbar_value, bool restrict_p2) {
  if (restrict_p2) {
    if (ansatz_degree < 2) throw std::invalid_argument("restricted ansatz needs degree >= 2");
  } else if (ansatz_degree < 3) {
    throw std::invalid_argument(
        "ansatz degree below 3 makes the forced cubic images unrepresentable");
  }
  if (mode == HbarMode::rational && sgn(hbar_value) == 0) {
    throw std::invalid_argument("hbar must be nonzero");
  }
  ExtensionReport report;
  if (mode == HbarMode::formal) {
    report = ExtensionSolver<FormalMode>(FormalMode{}, ansatz_degree, restrict_p2).run();
  } else {
    report =
        ExtensionSolver<RationalMode>(RationalMode{hbar_value}, ansatz_degree, restrict_p2)
            .run();
    report.hbar_value = hbar_value;
  }
  report.mode = mode;
  return report;
}

// ---------------------------------------------------------------------------
// centre probe
// ---------------------------------------------------------------------------

CentreReport centre_ansatz_probe(int n, int degree) {
  if (n != 1) throw std::invalid_argument("centre_ansatz_probe is implemented for n = 1");
  CentreReport report;
  report.n = n;
  report.degree = degree;

  using F = RatFunc;
  FormalMode mode;
  std::vector<Monomial> basis = monomial_basis(1, 0, degree);
  report.ansatz_terms = static_cast<int>(basis.size());

  AffElem<F> X;
  for (size_t w = 0; w < basis.size(); ++w) {
    CLin<F> c;
    c.re.add_var(static_cast<int>(2 * w), F(1));
    c.im.add_var(static_cast<int>(2 * w + 1), F(1));
    X.emplace(basis[w], c);
  }

  RowReducer<F> red;
  auto emit = [&](const AffElem<F>& e) {
    for (const auto& [m, cl] : e) {
      (void)m;
      for (int part = 0; part < 2; ++part) {
        const LinExpr<F>& expr = part == 0 ? cl.re : cl.im;
        if (expr.is_zero()) continue;
        SRow<F> row;
        row.a = expr.lin;
        row.rhs = F() - expr.c;
        red.add(std::move(row));
      }
    }
  };

  auto commutator_rows = [&](const WeylElement& gen) {
    std::map<Monomial, std::pair<F, F>> G;
    for (const auto& [m, c] : gen.terms()) G.emplace(m, mode.split(c));
    auto cmul = [](const std::pair<F, F>& x, const std::pair<F, F>& y) {
      return std::pair<F, F>{x.first * y.first - x.second * y.second,
                             x.first * y.second + x.second * y.first};
    };
    auto mul_side = [&](bool affine_left) {
      AffElem<F> res;
      for (const auto& [ma, ca] : X) {
        for (const auto& [mb, cb] : G) {
          const Monomial& left = affine_left ? ma : mb;
          const Monomial& right = affine_left ? mb : ma;
          for (const auto& [qp, w] : normal_order_pq(left.p_exp(0), right.q_exp(0))) {
            Monomial t(1);
            t.set_q(0, left.q_exp(0) + qp.first);
            t.set_p(0, qp.second + right.p_exp(0));
            std::pair<F, F> wc = cmul(cb, mode.split(w));
            aff_add_term(res, t, ca.scaled(wc.first, wc.second));
          }
        }
      }
      return res;
    };
    emit(aff_sub(mul_side(true), mul_side(false)));
  };
  commutator_rows(WeylElement::q(1, 0));
  commutator_rows(WeylElement::p(1, 0));

  int total_vars = static_cast<int>(basis.size() * 2);
  int freedom = total_vars - red.rank();
  report.solution_dimension = freedom / 2;

  bool scalars_only = freedom == 2;
  for (size_t w = 0; w < basis.size() && scalars_only; ++w) {
    bool is_unit = basis[w].is_unit();
    for (int part = 0; part < 2; ++part) {
      int v = static_cast<int>(2 * w) + part;
      bool pinned = red.has_pivot(v);
      if (is_unit == pinned) scalars_only = false;
    }
  }
  report.scalars_only = scalars_only;
  return report;
}

}  // namespace weylq
