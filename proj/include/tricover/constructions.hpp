#pragma once

// The eight built-in constructions, the verification pipeline, and the
// invariant tables.

#include <optional>
#include <string>
#include <vector>

#include "tricover/cover.hpp"
#include "tricover/linsys.hpp"
#include "tricover/quotient.hpp"

namespace tricover {

/// (K^2, p_g, q, deg Sigma, base points).
struct TableRow {
  int K2 = 0;
  int pg = 0;
  int q = 0;
  int deg_sigma = 0;
  int base_points = 0;

  bool operator==(const TableRow&) const = default;
  std::string to_string() const;
};

struct TriplePointSpec {
  TripleCase kind = TripleCase::distinct;
  std::vector<std::string> components;

  bool operator==(const TriplePointSpec&) const = default;
};

struct ConstructionSpec {
  std::string name;
  /// Data before any triple point is resolved; imposed triple points are
  /// declared special points of the arrangement.
  BuildingDataZ32 data;
  /// Applied in order before the pipeline proper.
  std::vector<TriplePointSpec> resolutions;
  Z32 subgroup{1, 0};
  /// Class expression on the resolved base for the pullback part of the
  /// canonical class of the resolved quotient; empty to skip that check.
  std::string summand;
  /// Test data only; the pipeline never reads these.
  std::optional<TableRow> expected_row;
  std::optional<std::pair<int, int>> expected_census;

  bool operator==(const ConstructionSpec&) const = default;
};

const std::vector<std::string>& builtin_names();
/// Throws InputError for unknown names.
ConstructionSpec builtin(const std::string& name);

/// Applies the spec's triple-point resolutions.
BuildingDataZ32 resolved_data(const ConstructionSpec& spec);

struct ConstructionReport {
  std::string construction;
  CheckReport checks;
  /// Name of the stage that aborted the pipeline.
  std::optional<std::string> failed_stage;

  BuildingDataZ32 resolved;
  std::optional<Invariants> X;
  std::optional<BuildingDataZ3> subcover;
  std::optional<SingularityCensus> census;
  std::optional<BuildingDataZ3> transported;
  std::optional<Z3Invariants> X1;
  std::optional<CanonicalReport> canonical;
  /// Set once the base-point stage ran; inner nullopt means indeterminate.
  std::optional<std::optional<int>> base_points;
  std::vector<std::string> assumptions;
  std::optional<TableRow> row;

  bool passed() const { return !failed_stage && checks.passed(); }
};

/// resolve -> verify_building_data -> check_smoothness -> z32_invariants ->
/// factorization_check -> extract_z3_subcover -> singularity_census ->
/// blow_up_transport -> z3_invariants -> quotient_crosscheck ->
/// torsion_check -> theta_check -> base_point_count -> canonical_report.
/// A failing check stops the pipeline and names the stage. InputError
/// propagates.
ConstructionReport run_pipeline(const ConstructionSpec& spec, const H0Options& opts = {});

struct TableEntry {
  std::string construction;
  int table = 1;
  std::optional<TableRow> row;
  std::optional<TableRow> expected;
  bool matches = false;
  std::optional<std::string> failed_stage;
};

/// Rows of both invariant tables (seven, then one), in built-in order.
std::vector<TableEntry> invariant_tables(const H0Options& opts = {},
                                              const std::optional<std::string>& only = std::nullopt);

}  // namespace tricover
