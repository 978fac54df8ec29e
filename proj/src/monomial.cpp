#include "weylq/monomial.hpp"

namespace weylq {

namespace {

void enumerate(int slots, int remaining, Monomial& scratch, int idx,
               std::vector<Monomial>& out) {
  if (idx == slots - 1) {
    scratch.e[static_cast<size_t>(idx)] = static_cast<std::uint32_t>(remaining);
    out.push_back(scratch);
    return;
  }
  // Highest exponent on the earliest variable first keeps canonical order.
  for (int v = remaining; v >= 0; --v) {
    scratch.e[static_cast<size_t>(idx)] = static_cast<std::uint32_t>(v);
    enumerate(slots, remaining - v, scratch, idx + 1, out);
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(int n, int k_lo, int k_hi) {
  if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  if (k_lo < 0 || k_lo > k_hi) {
    throw std::invalid_argument("monomial_basis requires 0 <= k_lo <= k_hi");
  }
  std::vector<Monomial> out;
  Monomial scratch(n);
  for (int d = k_lo; d <= k_hi; ++d) {
    enumerate(2 * n, d, scratch, 0, out);
  }
  return out;
}

}  // namespace weylq
