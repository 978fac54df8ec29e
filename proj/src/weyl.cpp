#include "weylq/weyl.hpp"

#include <utility>

namespace weylq {

namespace {

using PQKey = std::pair<unsigned, unsigned>;  // (b, a) for p^b q^a
using PQForm = std::map<std::pair<unsigned, unsigned>, HScalar>;  // (q_exp, p_exp) -> c

// p q^a in normal order, derived by repeatedly applying p q = q p - i hbar.
const PQForm& reduce_p_q_power(unsigned a) {
  thread_local std::map<unsigned, PQForm> memo;
  auto it = memo.find(a);
  if (it != memo.end()) return it->second;
  PQForm out;
  if (a == 0) {
    out[{0u, 1u}] = HScalar::integer(1);
  } else {
    // p q^a = (q p - i hbar) q^{a-1} = q * (p q^{a-1}) - i hbar q^{a-1}
    const PQForm& rest = reduce_p_q_power(a - 1);
    for (const auto& [qp, c] : rest) {
      out[{qp.first + 1, qp.second}] = c;
    }
    HScalar minus_ih = -(HScalar::i_unit() * HScalar::hbar());
    auto [jt, inserted] = out.try_emplace({a - 1, 0u}, minus_ih);
    if (!inserted) jt->second = jt->second + minus_ih;
  }
  return memo.emplace(a, std::move(out)).first->second;
}

const PQForm& normal_order_pq_cached(unsigned b, unsigned a) {
  thread_local std::map<PQKey, PQForm> memo;
  PQKey key{b, a};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  PQForm out;
  if (b == 0 || a == 0) {
    out[{a, b}] = HScalar::integer(1);
  } else {
    // p^b q^a = p * (p^{b-1} q^a); push the leftover p through each term.
    const PQForm& rest = normal_order_pq_cached(b - 1, a);
    for (const auto& [qp, c] : rest) {
      const PQForm& pushed = reduce_p_q_power(qp.first);
      for (const auto& [qp2, c2] : pushed) {
        PQKey target{qp2.first, qp2.second + qp.second};
        HScalar add = c * c2;
        auto [jt, inserted] = out.try_emplace(target, add);
        if (!inserted) jt->second = jt->second + add;
      }
    }
    for (auto jt = out.begin(); jt != out.end();) {
      if (jt->second.is_zero()) jt = out.erase(jt);
      else ++jt;
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

// Single-variable symmetric ordering of q^a p^b, averaged over all distinct
// words: sym(a,b) = (a q*sym(a-1,b) + b p*sym(a,b-1)) / (a+b).
const PQForm& symmetrize_single(unsigned a, unsigned b) {
  thread_local std::map<PQKey, PQForm> memo;
  PQKey key{a, b};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  PQForm out;
  if (a + b == 0) {
    out[{0u, 0u}] = HScalar::integer(1);
  } else {
    HScalar inv_total = HScalar::rational(Rational(1, static_cast<long>(a + b)));
    if (a > 0) {
      HScalar w = HScalar::rational(Rational(static_cast<long>(a))) * inv_total;
      for (const auto& [qp, c] : symmetrize_single(a - 1, b)) {
        PQKey t{qp.first + 1, qp.second};  // left-multiplying by q is free
        HScalar add = c * w;
        auto [jt, ins] = out.try_emplace(t, add);
        if (!ins) jt->second = jt->second + add;
      }
    }
    if (b > 0) {
      HScalar w = HScalar::rational(Rational(static_cast<long>(b))) * inv_total;
      for (const auto& [qp, c] : symmetrize_single(a, b - 1)) {
        // left-multiply by p: p q^x p^y = q^x p^{y+1} - x i hbar q^{x-1} p^y
        const PQForm& pushed = reduce_p_q_power(qp.first);
        for (const auto& [qp2, c2] : pushed) {
          PQKey t{qp2.first, qp2.second + qp.second};
          HScalar add = c * w * c2;
          auto [jt, ins] = out.try_emplace(t, add);
          if (!ins) jt->second = jt->second + add;
        }
      }
    }
    for (auto jt = out.begin(); jt != out.end();) {
      if (jt->second.is_zero()) jt = out.erase(jt);
      else ++jt;
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::map<std::pair<unsigned, unsigned>, HScalar> normal_order_pq(unsigned b, unsigned a) {
  return normal_order_pq_cached(b, a);
}

WeylElement WeylElement::from_term(int n, const Monomial& m, const HScalar& c) {
  WeylElement a(n);
  if (m.dim() != n) throw std::invalid_argument("monomial dimension mismatch");
  if (!c.is_zero()) a.terms_[m] = c;
  return a;
}

void WeylElement::add_term(const Monomial& m, const HScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
  if (n_ != o.n_) throw std::invalid_argument("weyl dimension mismatch");
  WeylElement out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

WeylElement WeylElement::operator-(const WeylElement& o) const {
  if (n_ != o.n_) throw std::invalid_argument("weyl dimension mismatch");
  WeylElement out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
  return out;
}

WeylElement WeylElement::operator-() const {
  WeylElement out(n_);
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

WeylElement WeylElement::scale(const HScalar& s) const {
  WeylElement out(n_);
  if (s.is_zero()) return out;
  for (const auto& [m, c] : terms_) out.add_term(m, c * s);
  return out;
}

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("weyl_mul: dimension mismatch");
  int n = a.dim();
  WeylElement out(n);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      // (q^A p^B)(q^C p^D): indices are independent, so combine per index.
      // Start with the scalar product and fold in each index's normal form.
      std::map<Monomial, HScalar> acc;
      acc[Monomial::unit(n)] = ca * cb;
      for (int i = 0; i < n; ++i) {
        const PQForm& nf = normal_order_pq_cached(ma.p_exp(i), mb.q_exp(i));
        std::map<Monomial, HScalar> next;
        for (const auto& [m, c] : acc) {
          for (const auto& [qp, w] : nf) {
            Monomial t = m;
            t.set_q(i, t.q_exp(i) + ma.q_exp(i) + qp.first);
            t.set_p(i, t.p_exp(i) + qp.second + mb.p_exp(i));
            HScalar add = c * w;
            auto [jt, ins] = next.try_emplace(t, add);
            if (!ins) jt->second = jt->second + add;
          }
        }
        acc = std::move(next);
      }
      for (const auto& [m, c] : acc) out.add_term(m, c);
    }
  }
  return out;
}

WeylElement weyl_pow(const WeylElement& a, unsigned k) {
  WeylElement out = WeylElement::identity(a.dim());
  for (unsigned j = 0; j < k; ++j) out = weyl_mul(out, a);
  return out;
}

WeylElement commutator(const WeylElement& a, const WeylElement& b) {
  return weyl_mul(a, b) - weyl_mul(b, a);
}

WeylElement dirac_bracket(const WeylElement& a, const WeylElement& b) {
  WeylElement c = commutator(a, b);
  WeylElement out(a.dim());
  for (const auto& [m, s] : c.terms()) {
    out.add_term(m, (HScalar::i_unit() * s).div_hbar_exact());
  }
  return out;
}

WeylElement formal_adjoint(const WeylElement& a) {
  int n = a.dim();
  WeylElement out(n);
  for (const auto& [m, c] : a.terms()) {
    // adjoint(c q^A p^B) = conj(c) p^B q^A, then renormal-order.
    std::map<Monomial, HScalar> acc;
    acc[Monomial::unit(n)] = c.conj();
    for (int i = 0; i < n; ++i) {
      const PQForm& nf = normal_order_pq_cached(m.p_exp(i), m.q_exp(i));
      std::map<Monomial, HScalar> next;
      for (const auto& [t0, c0] : acc) {
        for (const auto& [qp, w] : nf) {
          Monomial t = t0;
          t.set_q(i, t.q_exp(i) + qp.first);
          t.set_p(i, t.p_exp(i) + qp.second);
          HScalar add = c0 * w;
          auto [jt, ins] = next.try_emplace(t, add);
          if (!ins) jt->second = jt->second + add;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [t, c2] : acc) out.add_term(t, c2);
  }
  return out;
}

bool is_central(const WeylElement& a) {
  for (int i = 0; i < a.dim(); ++i) {
    if (!commutator(a, WeylElement::q(a.dim(), i)).is_zero()) return false;
    if (!commutator(a, WeylElement::p(a.dim(), i)).is_zero()) return false;
  }
  return true;
}

WeylElement symmetrize(const Polynomial& f) {
  int n = f.dim();
  WeylElement out(n);
  for (const auto& [m, coeff] : f.terms()) {
    // Distinct indices commute, so the full symmetric average factorizes into
    // per-index symmetric averages.
    std::map<Monomial, HScalar> acc;
    acc[Monomial::unit(n)] = HScalar::rational(coeff);
    for (int i = 0; i < n; ++i) {
      const PQForm& sym = symmetrize_single(m.q_exp(i), m.p_exp(i));
      std::map<Monomial, HScalar> next;
      for (const auto& [t0, c0] : acc) {
        for (const auto& [qp, w] : sym) {
          Monomial t = t0;
          t.set_q(i, t.q_exp(i) + qp.first);
          t.set_p(i, t.p_exp(i) + qp.second);
          HScalar add = c0 * w;
          auto [jt, ins] = next.try_emplace(t, add);
          if (!ins) jt->second = jt->second + add;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [t, c] : acc) out.add_term(t, c);
  }
  return out;
}

Polynomial principal_symbol(const WeylElement& a) {
  Polynomial out(a.dim());
  for (const auto& [m, c] : a.terms()) {
    Gaussian g = c.coeff(0);
    if (g.is_zero()) continue;
    if (!g.is_real()) {
      throw std::domain_error("principal_symbol: non-real hbar^0 coefficient at " +
                              monomial_to_string(m));
    }
    out.add_term(m, g.re);
  }
  return out;
}

}  // namespace weylq
