#include "tricover/group.hpp"

#include <stdexcept>

namespace tricover {

std::string Z32::label() const { return std::to_string(a) + std::to_string(b); }

std::optional<Z32> parse_z32(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  auto digit = [](char c) -> int { return c >= '0' && c <= '2' ? c - '0' : -1; };
  int a = digit(text[0]);
  int b = digit(text[1]);
  if (a < 0 || b < 0 || (a == 0 && b == 0)) return std::nullopt;
  return Z32(a, b);
}

Z32 inertia(Z32 sigma) {
  if (sigma.is_zero()) throw std::invalid_argument("the zero element generates no cyclic subgroup");
  Z32 other = sigma * 2;
  return other.code() < sigma.code() ? other : sigma;
}

namespace {

// psi restricted to <h> equals w^(exponent at h).
int restricted_exponent(Z32 chi, Z32 h) { return pairing(chi, h); }

}  // namespace

int epsilon(int iota_chi, int iota_chi_prime) {
  auto valid = [](int i) { return i == 1 || i == 2; };
  if (!valid(iota_chi) || !valid(iota_chi_prime))
    throw std::invalid_argument("epsilon needs characters that are nontrivial on H");
  return iota_chi + iota_chi_prime < 3 ? 0 : 1;
}

int epsilon(Z32 chi, Z32 chi_prime, Z32 h, Z32 psi) {
  if (h.is_zero()) throw std::invalid_argument("H must be a nontrivial subgroup");
  const int p = restricted_exponent(psi, h);
  if (p == 0) throw std::invalid_argument("psi does not generate the character group of H");
  // chi|_H = psi^iota  <=>  iota * p = chi(h)  (mod 3); p is its own inverse mod 3
  auto exponent = [&](Z32 c) { return (restricted_exponent(c, h) * p) % 3; };
  return epsilon(exponent(chi), exponent(chi_prime));
}

int iota(Z32 chi, Z32 sigma) {
  const int p = pairing(sigma, sigma);
  return (pairing(chi, sigma) * p) % 3;
}

int relation_coefficient(Z32 chi, Z32 sigma) {
  if (iota(chi, sigma) == 0) return 0;
  const Z32 chi2 = chi * 2;
  return epsilon(chi, chi, sigma, sigma) + epsilon(chi, chi2, sigma, sigma);
}

RelationTable derive_reduced_relations() {
  RelationTable table{};
  for (std::size_t r = 0; r < kCharacterOrder.size(); ++r)
    for (std::size_t c = 0; c < kBranchOrder.size(); ++c)
      table[r][c] = relation_coefficient(kCharacterOrder[r], kBranchOrder[c]);
  return table;
}

bool in_annihilator(Z32 chi, Z32 gamma) { return pairing(chi, gamma) == 0; }

}  // namespace tricover
