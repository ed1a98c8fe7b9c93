#include <doctest.h>

#include "tricover/constructions.hpp"
#include "tricover/errors.hpp"

using namespace tricover;

TEST_SUITE("constructions") {
  TEST_CASE("built-in data") {
    const auto main = builtin("main");
    const auto& d22 = main.data.D[static_cast<std::size_t>(Z32(2, 2).code())];
    REQUIRE(d22.size() == 3);
    CHECK(main.data.branch_class(Z32(2, 2)) == 3 * named_class("f2", main.data.surface));
    const auto thm2 = builtin("thm2");
    const auto& d01 = thm2.data.D[static_cast<std::size_t>(Z32(0, 1).code())];
    REQUIRE(d01.size() == 3);
    CHECK(d01[0].label == "h14");
    CHECK(d01[2].label == "h16");
    CHECK_THROWS_AS(builtin("var9"), InputError);
  }

  TEST_CASE("L22 after resolving the var1-1 triple point") {
    const auto spec = builtin("var1-1");
    const auto bd = resolved_data(spec);
    const auto& s = bd.surface;
    // pullbacks of f1 + f2 minus the second exceptional curve
    const auto pulled = blowup_pullback(named_class("f1", spec.data.surface) + named_class("f2", spec.data.surface),
                                        spec.data.surface, s);
    CHECK(bd.line_bundle(Z32(2, 2)) == pulled - named_class("e5", s));
  }

  TEST_CASE("pipeline rows") {
    for (const auto& name : builtin_names()) {
      const auto spec = builtin(name);
      const auto r = run_pipeline(spec);
      INFO(name << " failed at " << r.failed_stage.value_or("-"));
      REQUIRE(r.passed());
      REQUIRE(r.row.has_value());
      CHECK(*r.row == *spec.expected_row);
      CHECK(r.census->n == spec.expected_census->first);
      CHECK(r.census->m == spec.expected_census->second);
      CHECK(!r.assumptions.empty());
    }
  }

  TEST_CASE("each distinct triple point: K2 - 2, m - 2, n + 1, same p_g and chi") {
    for (const auto& family : {std::vector<std::string>{"main", "var1-1", "var1-2", "var1-3"},
                               std::vector<std::string>{"var2-0", "var2-1", "var2-2"}}) {
      for (std::size_t i = 1; i < family.size(); ++i) {
        const auto a = run_pipeline(builtin(family[i - 1])), b = run_pipeline(builtin(family[i]));
        INFO(family[i]);
        CHECK(b.X->K2 == a.X->K2 - 2);
        CHECK(b.census->m == a.census->m - 2);
        CHECK(b.census->n == a.census->n + 1);
        CHECK(b.X->pg == a.X->pg);
        CHECK(b.X->chi == a.X->chi);
      }
    }
  }

  TEST_CASE("quotient invariants") {
    struct Case {
      const char* name;
      int K2;
    };
    for (const Case& c : {Case{"main", 8}, Case{"var1-1", 8}, Case{"var2-0", 5}, Case{"thm2", 11}}) {
      const auto r = run_pipeline(builtin(c.name));
      CHECK(*r.X1->K2 == c.K2);
    }
  }

  TEST_CASE("broken data stops at the named stage") {
    auto spec = builtin("main");
    spec.data.D[static_cast<std::size_t>(Z32(1, 2).code())].clear();
    const auto r = run_pipeline(spec);
    CHECK_FALSE(r.passed());
    CHECK(r.failed_stage == "verify_building_data");
    REQUIRE(r.checks.first_failure());
    CHECK(r.checks.first_failure()->name == "relation 3L10");

    auto unresolved = builtin("var1-1");
    unresolved.resolutions.clear();
    CHECK(run_pipeline(unresolved).failed_stage == "check_smoothness");

    auto wrong_subgroup = builtin("main");
    wrong_subgroup.subgroup = Z32(0, 1);
    CHECK(run_pipeline(wrong_subgroup).failed_stage == "factorization_check");
  }

  TEST_CASE("seed independence") {
    H0Options seven;
    seven.seed = 7;
    CHECK(*run_pipeline(builtin("main"), seven).row == *run_pipeline(builtin("main")).row);
  }

  TEST_CASE("tables") {
    const auto all = invariant_tables();
    REQUIRE(all.size() == 8);
    for (const auto& e : all) CHECK(e.matches);
    CHECK(all.back().table == 2);
    const auto one = invariant_tables({}, std::string("thm2"));
    REQUIRE(one.size() == 1);
    CHECK(one[0].row->to_string() == "(35, 6, 0, 11, 2)");
    CHECK_THROWS_AS(invariant_tables({}, std::string("nope")), InputError);
  }
}
