#pragma once

// The Z3 quotient X1 = X / Gamma: its singularities, invariants of the
// minimal resolution, canonical base points, and canonical-map bookkeeping.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tricover/cover.hpp"

namespace tricover {

enum class QuotientSingularity { A2, one_third_11 };

struct CensusEntry {
  std::string first;
  std::string second;
  int count = 0;
  QuotientSingularity type = QuotientSingularity::A2;
};

struct SingularityCensus {
  /// A2 points: double points inside D1 or inside D2.
  int n = 0;
  /// 1/3(1,1) points: points of D1 n D2.
  int m = 0;
  std::vector<CensusEntry> provenance;
};

/// Throws CheckFailure when the branch has a non-normal crossing.
SingularityCensus singularity_census(const BuildingDataZ3& bd);

/// K2(X) = 3 K2(X1~) + m, chi(X) = 3 chi(X1~) - (2n + m)/3, 3 | 2n + m and
/// 2n + m = 6 chi(X1~).
CheckReport quotient_crosscheck(const SingularityCensus& census, const Invariants& X, int K2_X1, int chi_X1);

/// m when p_g agree, nullopt ("indeterminate") otherwise.
std::optional<int> base_point_count(int pg_X, int pg_X1, int m);

struct FactorizationResult {
  bool holds = false;
  /// h^0(K + L_chi) for every nontrivial chi outside the annihilator.
  std::vector<std::pair<Z32, int>> outside;
};

/// h^0(K + L_chi) = 0 for every nontrivial chi not trivial on <gamma>.
FactorizationResult factorization_check(const BuildingDataZ32& bd, Z32 gamma,
                                        std::span<const ConcreteConfiguration> cfgs);

/// True when an etale triple cover (3 K2, 3 chi) would violate Noether's
/// inequality, so X1~ has no 3-torsion.
bool torsion_check(int K2, int chi);

struct ThetaCheck {
  /// descent - 3 * summand.
  DivisorClass residue;
  bool matches_D2 = false;
  int square = 0;
  int dot_descent = 0;
  bool passed() const { return matches_D2 && square == -6 && dot_descent == 0; }
};

/// Decomposition 3K = g^*(D2) + 3 g^*(summand) on the transported data: the
/// residue must be the class of D2, with square -6 and orthogonal to the
/// descent class (a (-2)-curve upstairs with zero canonical degree).
ThetaCheck theta_check(const BuildingDataZ3& transported, const DivisorClass& descent,
                       const DivisorClass& summand);

enum class Birationality { assumed, forced_by_prime };

struct CanonicalReport {
  int deg_phi = 3;
  int deg_sigma = 0;
  std::optional<int> base_points;
  Z32 factorization_subgroup;
  Birationality birationality = Birationality::assumed;
};

/// deg Sigma = K2(X1~) under the birationality assumption. Birationality is
/// forced when K2 is prime and the canonical image, a nondegenerate surface
/// in P^(pg - 1), has degree at least pg - 2 >= 2. Throws CheckFailure when
/// the factorization does not hold.
CanonicalReport canonical_report(int K2_X1, int pg_X1, std::optional<int> base_points, bool factorization,
                                 Z32 subgroup);

}  // namespace tricover
