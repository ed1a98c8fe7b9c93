#pragma once

// The group Z3 x Z3, its characters, and the reduced building-data
// relations of Z3^2-covers.
//
// Elements and characters are both written (a, b) with a, b in {0,1,2};
// chi_(j1 j2)(a1, a2) = w^(a1 j1 + a2 j2). A branch label sigma stands for the
// pair (H_sigma, chi_sigma restricted to H_sigma).

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tricover {

struct Z32 {
  int a = 0;
  int b = 0;

  constexpr Z32() = default;
  constexpr Z32(int a_, int b_) : a(((a_ % 3) + 3) % 3), b(((b_ % 3) + 3) % 3) {}

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  /// 3a + b, in 0..8.
  constexpr int code() const { return 3 * a + b; }
  static constexpr Z32 from_code(int c) { return Z32(c / 3, c % 3); }

  constexpr Z32 operator+(Z32 o) const { return Z32(a + o.a, b + o.b); }
  constexpr Z32 operator*(int k) const { return Z32(a * k, b * k); }
  constexpr auto operator<=>(const Z32&) const = default;

  /// "01", "22", ...
  std::string label() const;
};

/// a1 j1 + a2 j2 mod 3: exponent of chi_j at element a.
constexpr int pairing(Z32 chi, Z32 a) { return (chi.a * a.a + chi.b * a.b) % 3; }

/// "10" -> (1,0); nullopt for anything else (including "00").
std::optional<Z32> parse_z32(std::string_view text);

/// Order of the relation rows: 3L10, 3L01, 3L20, 3L02, 3L11, 3L22, 3L12, 3L21.
inline constexpr std::array<Z32, 8> kCharacterOrder = {Z32(1, 0), Z32(0, 1), Z32(2, 0), Z32(0, 2),
                                                        Z32(1, 1), Z32(2, 2), Z32(1, 2), Z32(2, 1)};
/// Order of the branch columns: D01, D02, D10, D20, D11, D22, D12, D21.
inline constexpr std::array<Z32, 8> kBranchOrder = {Z32(0, 1), Z32(0, 2), Z32(1, 0), Z32(2, 0),
                                                     Z32(1, 1), Z32(2, 2), Z32(1, 2), Z32(2, 1)};

/// Canonical generator of the cyclic subgroup <sigma> (the smaller code of
/// sigma and 2 sigma). Components of D_sigma have this inertia group.
Z32 inertia(Z32 sigma);

/// Exponent iota in {1, 2} with chi|_H = psi^iota, where H = <sigma> and
/// psi = chi_sigma|_H; 0 when chi is trivial on H.
int iota(Z32 chi, Z32 sigma);

/// epsilon^{H,psi}_{chi,chi'}: 0 when iota + iota' < 3, else 1. The pair
/// (H, psi) is given by the generator h of H and the character psi. Throws
/// std::invalid_argument when psi does not generate H^* or when either
/// character is trivial on H.
int epsilon(Z32 chi, Z32 chi_prime, Z32 h, Z32 psi);

/// Same with explicit exponents; throws unless both are 1 or 2.
int epsilon(int iota_chi, int iota_chi_prime);

/// Coefficient of D_sigma in 3 L_chi, obtained by telescoping
/// L_chi + L_chi = L_chi^2 + ... and L_chi + L_chi^2 = L_1 + ....
int relation_coefficient(Z32 chi, Z32 sigma);

/// rows in kCharacterOrder, columns in kBranchOrder.
using RelationTable = std::array<std::array<int, 8>, 8>;
RelationTable derive_reduced_relations();

/// Characters trivial on the subgroup generated by `gamma` (including the
/// trivial character).
bool in_annihilator(Z32 chi, Z32 gamma);

}  // namespace tricover
