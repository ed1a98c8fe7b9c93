#include "tricover/quotient.hpp"

#include <algorithm>

#include "tricover/errors.hpp"

namespace tricover {

namespace {

bool is_prime_int(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

void add_pairs(const std::vector<Z3Component>& a, const std::vector<Z3Component>& b, bool same,
               QuotientSingularity type, SingularityCensus& census) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j) {
      const int k = intersect(a[i].component.cls, b[j].component.cls);
      if (k < 0) throw CheckFailure("branch curves " + a[i].component.label + " and " + b[j].component.label +
                                    " have negative intersection");
      if (k == 0) continue;
      census.provenance.push_back({a[i].component.label, b[j].component.label, k, type});
      (type == QuotientSingularity::A2 ? census.n : census.m) += k;
    }
  }
}

}  // namespace

SingularityCensus singularity_census(const BuildingDataZ3& bd) {
  for (const auto& p : bd.arrangement.points)
    if (p.components.size() >= 3 || p.tangent)
      throw CheckFailure("branch has a non-normal crossing; the census needs normal crossings");
  SingularityCensus census;
  add_pairs(bd.D1, bd.D1, true, QuotientSingularity::A2, census);
  add_pairs(bd.D2, bd.D2, true, QuotientSingularity::A2, census);
  add_pairs(bd.D1, bd.D2, false, QuotientSingularity::one_third_11, census);
  return census;
}

CheckReport quotient_crosscheck(const SingularityCensus& census, const Invariants& X, int K2_X1, int chi_X1) {
  CheckReport r;
  const int s = 2 * census.n + census.m;
  auto num = [](int v) { return std::to_string(v); };
  r.items.push_back({"K2 of X equals 3 K2(X1) + m", X.K2 == 3 * K2_X1 + census.m,
                     num(X.K2) + " vs " + num(3 * K2_X1 + census.m)});
  r.items.push_back({"3 divides 2n + m", s % 3 == 0, "2n + m = " + num(s)});
  r.items.push_back({"chi of X equals 3 chi(X1) - (2n + m)/3", s % 3 == 0 && X.chi == 3 * chi_X1 - s / 3,
                     num(X.chi) + " vs " + num(3 * chi_X1) + " - " + num(s) + "/3"});
  r.items.push_back({"2n + m equals 6 chi(X1)", s == 6 * chi_X1, num(s) + " vs " + num(6 * chi_X1)});
  return r;
}

std::optional<int> base_point_count(int pg_X, int pg_X1, int m) {
  if (pg_X != pg_X1) return std::nullopt;
  return m;
}

FactorizationResult factorization_check(const BuildingDataZ32& bd, Z32 gamma,
                                        std::span<const ConcreteConfiguration> cfgs) {
  if (gamma.is_zero()) throw InputError("subgroup generator must be nonzero");
  FactorizationResult out;
  out.holds = true;
  const auto K = canonical_class(bd.surface);
  for (Z32 chi : kCharacterOrder) {
    if (in_annihilator(chi, gamma)) continue;
    const int h = h0(K + bd.line_bundle(chi), cfgs);
    out.outside.emplace_back(chi, h);
    if (h != 0) out.holds = false;
  }
  return out;
}

bool torsion_check(int K2, int chi) { return 3 * K2 < 2 * (3 * chi) - 6; }

ThetaCheck theta_check(const BuildingDataZ3& transported, const DivisorClass& descent, const DivisorClass& summand) {
  ThetaCheck t;
  t.residue = descent - 3 * summand;
  t.matches_D2 = t.residue == transported.class_D2();
  t.square = square(t.residue);
  t.dot_descent = intersect(t.residue, descent);
  return t;
}

CanonicalReport canonical_report(int K2_X1, int pg_X1, std::optional<int> base_points, bool factorization,
                                 Z32 subgroup) {
  if (!factorization) throw CheckFailure("canonical map does not factor through the quotient");
  CanonicalReport r;
  r.deg_sigma = K2_X1;
  r.base_points = base_points;
  r.factorization_subgroup = subgroup;
  const int min_degree = pg_X1 - 2;
  if (is_prime_int(K2_X1) && min_degree >= 2) r.birationality = Birationality::forced_by_prime;
  return r;
}

}  // namespace tricover
