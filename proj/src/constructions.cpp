#include "tricover/constructions.hpp"

#include <map>
#include <sstream>

#include "tricover/errors.hpp"

namespace tricover {

namespace {

std::size_t slot(Z32 z) { return static_cast<std::size_t>(z.code()); }

// General member of the pencil |f_i|, labelled f<i><k>.
Component pencil(const BlowupSurface& s, const std::string& label) {
  return {label, named_class(std::string("f") + label[1], s), true};
}

Component rigid(const BlowupSurface& s, const std::string& name) { return {name, named_class(name, s), false}; }

void set_L(BuildingDataZ32& bd, const std::map<std::string, std::string>& exprs) {
  for (const auto& [label, expr] : exprs)
    bd.L[slot(*parse_z32(label))] = parse_class_expression(expr, bd.surface);
}

ConstructionSpec main_family(const std::string& name) {
  ConstructionSpec spec;
  spec.name = name;
  auto& bd = spec.data;
  bd.surface = BlowupSurface(3);
  const auto& s = bd.surface;
  bd.D[slot({0, 1})] = {pencil(s, "f11")};
  bd.D[slot({0, 2})] = {pencil(s, "f12")};
  bd.D[slot({2, 2})] = {pencil(s, "f21"), pencil(s, "f22"), pencil(s, "f23")};
  bd.D[slot({1, 2})] = {pencil(s, "f31"), pencil(s, "f32"), pencil(s, "f33")};
  set_L(bd, {{"10", "f2 + 2f3"},
             {"01", "f1 + f2 + f3"},
             {"20", "2f2 + f3"},
             {"02", "f1 + 2f2 + 2f3"},
             {"11", "f1 + 2f2"},
             {"22", "f1 + f2"},
             {"12", "f1 + f3"},
             {"21", "f1 + 2f3"}});
  spec.summand = "f2 + f3";
  return spec;
}

void impose(ConstructionSpec& spec, TripleCase kind, std::vector<std::string> curves) {
  spec.data.arrangement.points.push_back({curves, false});
  spec.resolutions.push_back({kind, std::move(curves)});
}

ConstructionSpec make_main() {
  auto spec = main_family("main");
  spec.expected_row = TableRow{30, 5, 0, 8, 6};
  spec.expected_census = {15, 6};
  return spec;
}

ConstructionSpec make_var1(int triple_points) {
  auto spec = main_family("var1-" + std::to_string(triple_points));
  const char* second[] = {"f21", "f22", "f23"};
  const char* third[] = {"f31", "f32", "f33"};
  for (int k = 0; k < triple_points; ++k) impose(spec, TripleCase::distinct, {"f12", second[k], third[k]});
  spec.expected_row = TableRow{30 - 2 * triple_points, 5, 0, 8, 6 - 2 * triple_points};
  spec.expected_census = {15 + triple_points, 6 - 2 * triple_points};
  return spec;
}

ConstructionSpec make_var2(int distinct_points) {
  auto spec = main_family("var2-" + std::to_string(distinct_points));
  impose(spec, TripleCase::equal, {"f11", "f21", "f31"});
  const char* second[] = {"f22", "f23"};
  const char* third[] = {"f32", "f33"};
  for (int k = 0; k < distinct_points; ++k) impose(spec, TripleCase::distinct, {"f12", second[k], third[k]});
  spec.summand = "2l - e2 - e3 - e4";
  spec.expected_row = TableRow{21 - 2 * distinct_points, 4, 0, 5, 6 - 2 * distinct_points};
  spec.expected_census = {12 + distinct_points, 6 - 2 * distinct_points};
  return spec;
}

ConstructionSpec make_thm2() {
  ConstructionSpec spec;
  spec.name = "thm2";
  auto& bd = spec.data;
  std::vector<BlownUpPoint> pts(6);
  bd.surface = BlowupSurface(pts, {{1, 2, 3, 4, 5}});
  const auto& s = bd.surface;
  bd.D[slot({0, 1})] = {rigid(s, "h14"), rigid(s, "h15"), rigid(s, "h16")};
  bd.D[slot({0, 2})] = {rigid(s, "h23456")};
  bd.D[slot({2, 2})] = {pencil(s, "f21"), pencil(s, "f22"), rigid(s, "e3")};
  bd.D[slot({1, 2})] = {pencil(s, "f31"), pencil(s, "f32"), rigid(s, "e2")};
  set_L(bd, {{"10", "f3 + l"},
             {"01", "f1 + f2 + f3 - e4 - e5 - e6"},
             {"20", "f2 + l"},
             {"02", "2f1 + f2 + f3 + f4 - e5 - e6"},
             {"11", "f1 + 2f2 - e4 - e5 - e6"},
             {"22", "2f1 + f2 - e4 - e5 - e6"},
             {"12", "2f1 + f3 - e4 - e5 - e6"},
             {"21", "f1 + 2f3 - e4 - e5 - e6"}});
  spec.summand = "l + f1";
  spec.expected_row = TableRow{35, 6, 0, 11, 2};
  spec.expected_census = {20, 2};
  return spec;
}

std::string describe_h0(const std::vector<std::pair<Z32, int>>& values) {
  std::ostringstream os;
  for (const auto& [chi, h] : values) os << (os.tellp() > 0 ? ", " : "") << "h0(K+L" << chi.label() << ")=" << h;
  return os.str();
}

struct StageFailed {};

class Pipeline {
 public:
  Pipeline(const ConstructionSpec& spec, const H0Options& opts) : spec_(spec), opts_(opts) {
    report_.construction = spec.name;
  }

  ConstructionReport run() {
    try {
      execute();
    } catch (const StageFailed&) {
    }
    return std::move(report_);
  }

 private:
  void check(const std::string& stage, const std::string& name, bool ok, const std::string& detail = "") {
    report_.checks.items.push_back({name, ok, detail});
    if (!ok) {
      report_.failed_stage = stage;
      throw StageFailed{};
    }
  }

  // Runs a stage body; a CheckFailure becomes a failed check named after the stage.
  template <typename F>
  void stage(const std::string& name, F body) {
    try {
      body();
    } catch (const CheckFailure& e) {
      check(name, name, false, e.what());
    }
  }

  void execute() {
    BuildingDataZ32 bd;
    stage("resolve", [&] {
      bd = resolved_data(spec_);
      for (const auto& r : spec_.resolutions)
        report_.checks.items.push_back({"resolve triple point " + r.components[0] + " " + r.components[1] + " " +
                                            r.components[2] + " (" + to_string(r.kind) + ")",
                                        true, ""});
    });
    report_.resolved = bd;

    auto verification = verify_building_data(bd);
    for (const auto& item : verification.items) check("verify_building_data", item.name, item.passed, item.detail);

    stage("check_smoothness", [&] {
      auto violations = check_smoothness(bd);
      std::string detail;
      for (const auto& v : violations) {
        detail += detail.empty() ? "" : "; ";
        for (const auto& c : v.components) detail += c + " ";
        detail += "(" + v.reason + ")";
      }
      check("check_smoothness", "cover smooth", violations.empty(), detail);
    });

    const auto cfgs = sample_configurations(bd.surface, opts_);
    stage("z32_invariants", [&] {
      report_.X = z32_invariants(bd, cfgs);
      const auto& X = *report_.X;
      check("z32_invariants", "descent class nef", X.nef, "M = " + X.descent.to_string());
      check("z32_invariants", "descent class big", X.big, "M^2 = " + std::to_string(X.K2));
      check("z32_invariants", "chi = 1 - q + p_g", X.chi == 1 - X.q + X.pg);
      check("z32_invariants", "q = 0", X.q == 0, "q = " + std::to_string(X.q));
    });

    FactorizationResult fact;
    stage("factorization_check", [&] {
      fact = factorization_check(bd, spec_.subgroup, cfgs);
      check("factorization_check", "factorization through X/<" + spec_.subgroup.label() + ">", fact.holds,
            describe_h0(fact.outside));
    });

    stage("extract_z3_subcover", [&] {
      report_.subcover = extract_z3_subcover(bd, spec_.subgroup);
      check("extract_z3_subcover", "Z3 relations", z3_relations_hold(*report_.subcover));
    });
    const auto& sub = *report_.subcover;

    stage("singularity_census", [&] {
      report_.census = singularity_census(sub);
      check("singularity_census", "census computed", true,
            "n = " + std::to_string(report_.census->n) + ", m = " + std::to_string(report_.census->m));
    });
    const auto& census = *report_.census;

    stage("blow_up_transport", [&] {
      report_.transported = blow_up_transport(sub);
      check("blow_up_transport", "Z3 relations after blowing up D1 n D2", z3_relations_hold(*report_.transported),
            std::to_string(report_.transported->surface.size() - sub.surface.size()) + " point(s) blown up");
    });
    const auto& tr = *report_.transported;

    stage("z3_invariants", [&] {
      const auto cfgs1 = sample_configurations(tr.surface, opts_);
      report_.X1 = z3_invariants(tr, cfgs1);
      check("z3_invariants", "K2 of resolved quotient is an integer", report_.X1->K2.has_value());
    });
    const auto& X1 = *report_.X1;
    const auto& X = *report_.X;

    stage("quotient_crosscheck", [&] {
      auto r = quotient_crosscheck(census, X, *X1.K2, *X1.chi);
      for (const auto& item : r.items) check("quotient_crosscheck", item.name, item.passed, item.detail);
    });

    stage("torsion_check", [&] {
      check("torsion_check", "no 3-torsion on resolved quotient", torsion_check(*X1.K2, *X1.chi),
            "3K2 = " + std::to_string(3 * *X1.K2) + ", 6chi - 6 = " + std::to_string(6 * *X1.chi - 6));
    });

    if (!spec_.summand.empty()) {
      stage("theta_check", [&] {
        const auto s = blowup_pullback(parse_class_expression(spec_.summand, bd.surface), bd.surface, tr.surface);
        auto t = theta_check(tr, X1.descent, s);
        check("theta_check", "descent - 3(" + spec_.summand + ") is the class of D2", t.matches_D2,
              "residue " + t.residue.to_string());
        check("theta_check", "residue square -6 and orthogonal to descent", t.square == -6 && t.dot_descent == 0,
              "square " + std::to_string(t.square) + ", product " + std::to_string(t.dot_descent));
      });
    }

    stage("base_point_count", [&] {
      report_.base_points = base_point_count(X.pg, *X1.pg, census.m);
      check("base_point_count", "p_g(X) = p_g(resolved quotient)", report_.base_points->has_value(),
            std::to_string(X.pg) + " vs " + std::to_string(*X1.pg));
    });

    stage("canonical_report", [&] {
      report_.canonical = canonical_report(*X1.K2, *X1.pg, *report_.base_points, fact.holds, spec_.subgroup);
    });

    report_.assumptions.push_back("|K| of the resolved quotient is base-point-free (not verified)");
    if (report_.canonical->birationality == Birationality::forced_by_prime)
      report_.assumptions.push_back(
          "canonical map of the resolved quotient is birational: forced because K2 is prime, given base-point-freeness");
    else
      report_.assumptions.push_back("canonical map of the resolved quotient is birational (assumed)");
    report_.assumptions.push_back("descent class nefness is certified relative to the negative-curve catalog");
    report_.assumptions.push_back("h0 values are minima over " + std::to_string(opts_.trials) +
                                  " random configurations over F_" + std::to_string(opts_.prime));
    if (spec_.resolutions.size() >= 2)
      report_.assumptions.push_back("incidence layout of the additional triple points is a reconstruction");

    report_.row = TableRow{X.K2, X.pg, X.q, report_.canonical->deg_sigma, **report_.base_points};
  }

  const ConstructionSpec& spec_;
  H0Options opts_;
  ConstructionReport report_;
};

}  // namespace

std::string TableRow::to_string() const {
  std::ostringstream os;
  os << '(' << K2 << ", " << pg << ", " << q << ", " << deg_sigma << ", " << base_points << ')';
  return os.str();
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"main",   "var1-1", "var1-2", "var1-3",
                                                 "var2-0", "var2-1", "var2-2", "thm2"};
  return names;
}

ConstructionSpec builtin(const std::string& name) {
  if (name == "main") return make_main();
  if (name == "var1-1") return make_var1(1);
  if (name == "var1-2") return make_var1(2);
  if (name == "var1-3") return make_var1(3);
  if (name == "var2-0") return make_var2(0);
  if (name == "var2-1") return make_var2(1);
  if (name == "var2-2") return make_var2(2);
  if (name == "thm2") return make_thm2();
  throw InputError("unknown construction '" + name + "'");
}

BuildingDataZ32 resolved_data(const ConstructionSpec& spec) {
  BuildingDataZ32 bd = spec.data;
  for (const auto& r : spec.resolutions) bd = resolve_triple_point(bd, r.components, r.kind).resolved;
  return bd;
}

ConstructionReport run_pipeline(const ConstructionSpec& spec, const H0Options& opts) {
  return Pipeline(spec, opts).run();
}

std::vector<TableEntry> invariant_tables(const H0Options& opts, const std::optional<std::string>& only) {
  if (only) builtin(*only);  // validates the name
  std::vector<TableEntry> out;
  for (const auto& name : builtin_names()) {
    if (only && *only != name) continue;
    const auto spec = builtin(name);
    const auto report = run_pipeline(spec, opts);
    TableEntry e;
    e.construction = name;
    e.table = name == "thm2" ? 2 : 1;
    e.row = report.row;
    e.expected = spec.expected_row;
    e.matches = report.passed() && report.row && spec.expected_row && *report.row == *spec.expected_row;
    e.failed_stage = report.failed_stage;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace tricover
