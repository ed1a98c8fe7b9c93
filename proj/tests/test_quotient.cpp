#include <doctest.h>

#include "tricover/constructions.hpp"
#include "tricover/errors.hpp"
#include "tricover/quotient.hpp"

using namespace tricover;

namespace {

BuildingDataZ3 subcover(const char* name) { return extract_z3_subcover(resolved_data(builtin(name)), Z32(1, 0)); }

}  // namespace

TEST_SUITE("quotient") {
  TEST_CASE("census with provenance") {
    const auto c = singularity_census(subcover("main"));
    CHECK(c.n == 15);
    CHECK(c.m == 6);
    int n = 0, m = 0;
    for (const auto& e : c.provenance) (e.type == QuotientSingularity::A2 ? n : m) += e.count;
    CHECK(n == c.n);
    CHECK(m == c.m);
  }

  TEST_CASE("censuses of the other families") {
    CHECK(singularity_census(subcover("var1-1")).n == 16);
    CHECK(singularity_census(subcover("var1-1")).m == 4);
    CHECK(singularity_census(subcover("var2-0")).n == 12);
    CHECK(singularity_census(subcover("var2-0")).m == 6);
    CHECK(singularity_census(subcover("thm2")).n == 20);
    CHECK(singularity_census(subcover("thm2")).m == 2);
  }

  TEST_CASE("census rejects non-normal crossings") {
    auto z3 = subcover("main");
    z3.arrangement.points.push_back({{"f11", "f21", "f31"}, false});
    CHECK_THROWS_AS(singularity_census(z3), CheckFailure);
  }

  TEST_CASE("quotient identities") {
    SingularityCensus census;
    census.n = 15;
    census.m = 6;
    Invariants X;
    X.K2 = 30;
    X.chi = 6;
    CHECK(quotient_crosscheck(census, X, 8, 6).passed());
    CHECK_FALSE(quotient_crosscheck(census, X, 9, 6).passed());
    census.m = 5;
    CHECK_FALSE(quotient_crosscheck(census, X, 8, 6).passed());
  }

  TEST_CASE("base points") {
    CHECK(base_point_count(5, 5, 6) == 6);
    CHECK(base_point_count(6, 6, 2) == 2);
    CHECK_FALSE(base_point_count(5, 4, 6).has_value());
  }

  TEST_CASE("factorization through the quotient") {
    const auto bd = builtin("main").data;
    const auto cfgs = sample_configurations(bd.surface, {});
    const auto f = factorization_check(bd, Z32(1, 0), cfgs);
    CHECK(f.holds);
    CHECK(f.outside.size() == 6);
    for (const auto& [chi, h] : f.outside) CHECK(h == 0);
    CHECK_FALSE(factorization_check(bd, Z32(0, 1), cfgs).holds);
    CHECK_THROWS_AS(factorization_check(bd, Z32(0, 0), cfgs), InputError);
  }

  TEST_CASE("torsion") {
    CHECK(torsion_check(8, 6));
    CHECK(torsion_check(11, 7));
    CHECK(torsion_check(5, 5));
    CHECK_FALSE(torsion_check(40, 6));
  }

  TEST_CASE("theta residue") {
    const auto bd = builtin("main").data;
    const auto tr = blow_up_transport(extract_z3_subcover(bd, Z32(1, 0)));
    const auto inv = z3_invariants(tr, sample_configurations(tr.surface, {}));
    const auto s = blowup_pullback(parse_class_expression("f2 + f3", bd.surface), bd.surface, tr.surface);
    const auto t = theta_check(tr, inv.descent, s);
    CHECK(t.passed());
    CHECK(t.square == -6);
    CHECK_FALSE(theta_check(tr, inv.descent, 2 * s).passed());
  }

  TEST_CASE("canonical report") {
    const auto main = canonical_report(8, 5, 6, true, Z32(1, 0));
    CHECK(main.deg_phi == 3);
    CHECK(main.deg_sigma == 8);
    CHECK(main.birationality == Birationality::assumed);
    const auto thm2 = canonical_report(11, 6, 2, true, Z32(1, 0));
    CHECK(thm2.deg_sigma == 11);
    CHECK(thm2.birationality == Birationality::forced_by_prime);
    CHECK(canonical_report(5, 4, 6, true, Z32(1, 0)).deg_sigma == 5);
    CHECK_THROWS_AS(canonical_report(8, 5, 6, false, Z32(1, 0)), CheckFailure);
  }
}
