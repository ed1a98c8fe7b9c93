#pragma once

// Building data of Z3^2- and Z3-covers of blow-ups of P^2: relation checks,
// smoothness, invariants, the Z3 subcover, and the blow-ups used to resolve
// imposed triple points and D1 n D2 crossings.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tricover/group.hpp"
#include "tricover/linsys.hpp"
#include "tricover/picard.hpp"

namespace tricover {

/// One irreducible smooth branch curve. Pencil members (general curves in a
/// moving linear system such as |f_2|) may share their class; rigid curves
/// may not.
struct Component {
  std::string label;
  DivisorClass cls;
  bool moving = false;

  bool operator==(const Component&) const = default;
};

/// A point where several components meet, declared explicitly. Every other
/// intersection is taken to be a transverse crossing of exactly two curves
/// at a general point.
struct SpecialPoint {
  std::vector<std::string> components;
  /// The curves are tangent there (local multiplicity 2 for each pair).
  bool tangent = false;

  bool operator==(const SpecialPoint&) const = default;
};

struct CurveArrangement {
  std::vector<SpecialPoint> points;

  bool operator==(const CurveArrangement&) const = default;
};

/// Index by Z32::code(); slot 0 is unused.
template <typename T>
using PerLabel = std::array<T, 9>;

struct BuildingDataZ32 {
  BlowupSurface surface;
  PerLabel<std::vector<Component>> D;
  PerLabel<DivisorClass> L;
  CurveArrangement arrangement;

  /// Sum of the component classes of D_sigma.
  DivisorClass branch_class(Z32 sigma) const;
  DivisorClass total_branch() const;
  const DivisorClass& line_bundle(Z32 chi) const { return L[static_cast<std::size_t>(chi.code())]; }

  bool operator==(const BuildingDataZ32&) const = default;
};

/// A branch component of a Z3 cover, remembering which D_sigma it came from.
struct Z3Component {
  Component component;
  Z32 origin;

  bool operator==(const Z3Component&) const = default;
};

struct BuildingDataZ3 {
  BlowupSurface surface;
  std::vector<Z3Component> D1;
  std::vector<Z3Component> D2;
  DivisorClass L1;
  DivisorClass L2;
  CurveArrangement arrangement;

  DivisorClass class_D1() const;
  DivisorClass class_D2() const;

  bool operator==(const BuildingDataZ3&) const = default;
};

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;

  bool passed() const;
  /// First failing item, or nullptr.
  const CheckItem* first_failure() const;
};

/// Relation rows "relation 3L10" ... "relation 3L21", "branch reduced" and
/// "L10 nontrivial" ...; failures are entries, never exceptions.
CheckReport verify_building_data(const BuildingDataZ32& bd);

/// True when the eight relations hold as lattice identities.
bool relations_hold(const BuildingDataZ32& bd);

struct SmoothnessViolation {
  std::vector<std::string> components;
  std::string reason;
};

/// Points above which the cover is singular: three or more branch curves
/// through a point, tangency, or two curves with the same inertia group
/// meeting. Throws InputError when the declared arrangement names unknown
/// curves or needs more intersection than the lattice allows.
std::vector<SmoothnessViolation> check_smoothness(const BuildingDataZ32& bd);

struct Invariants {
  /// Class M with 3K_X = f^*M.
  DivisorClass descent;
  int K2 = 0;
  int pg = 0;
  int chi = 0;
  int q = 0;
  bool nef = false;
  bool big = false;
};

/// K^2 = M^2, p_g = sum h^0(K + L_chi), chi = 9 + sum (K + L_chi) L_chi / 2.
/// `cfgs` must be sampled from bd.surface.
Invariants z32_invariants(const BuildingDataZ32& bd, std::span<const ConcreteConfiguration> cfgs);

struct Z3Invariants {
  DivisorClass descent;
  /// M^2 / 3 when divisible.
  std::optional<int> K2;
  /// Only when the branch is admissible (see z3_invariants).
  std::optional<int> pg;
  std::optional<int> chi;
  std::optional<int> q;
};

/// The branch is admissible when D1 . D2 = 0 and all crossings are normal;
/// the cover then has at most A2 points and p_g = h^0(K + L1) + h^0(K + L2),
/// chi = 3 + L1(K + L1)/2 + L2(K + L2)/2. Otherwise throws CheckFailure unless
/// `singular_branch_acknowledged`, in which case only the descent data is
/// returned. Throws InputError when L1 or L2 is trivial.
Z3Invariants z3_invariants(const BuildingDataZ3& bd, std::span<const ConcreteConfiguration> cfgs,
                           bool singular_branch_acknowledged = false);

/// True when 3L1 = D1 + 2D2 and 3L2 = 2D1 + D2.
bool z3_relations_hold(const BuildingDataZ3& bd);

/// First nontrivial character (in row order) trivial on <gamma>.
Z32 subcover_character(Z32 gamma);

/// Quotient by <gamma> as a Z3-cover of the same base: L1 = L_chi0,
/// L2 = L_chi0^2 for chi0 = subcover_character(gamma); D_sigma (sigma not in
/// <gamma>) goes to D1 or D2 according to its coefficient 1 or 2 in 3L_chi0.
/// Throws CheckFailure if the result violates the Z3 relations.
BuildingDataZ3 extract_z3_subcover(const BuildingDataZ32& bd, Z32 gamma);

/// One crossing of D1 and D2: the two curves through it.
struct CrossingPoint {
  std::string d1_component;
  std::string d2_component;
};

/// All points of D1 n D2, one entry per point, from the lattice intersection
/// numbers and the declared special points.
std::vector<CrossingPoint> crossing_points(const BuildingDataZ3& bd);

/// Blows up the given crossing points (all of them when `points` is empty
/// and `all` is set): strict transforms of D1, D2 and L_i - sum of the new
/// exceptional classes. Throws CheckFailure if the Z3 relations fail after.
BuildingDataZ3 blow_up_transport(const BuildingDataZ3& bd, const std::vector<CrossingPoint>& points);
BuildingDataZ3 blow_up_transport(const BuildingDataZ3& bd);

enum class TripleCase { distinct, equal };
std::string to_string(TripleCase c);
std::optional<TripleCase> parse_triple_case(std::string_view text);

struct TripleResolution {
  BuildingDataZ32 resolved;
  /// After the first blow-up and the exceptional-curve assignment only.
  BuildingDataZ32 first_blowup;
  /// Branch label that received the first exceptional curve, if any.
  std::optional<Z32> exceptional_label;
};

/// Resolves an ordinary triple point of three branch curves with pairwise
/// distinct inertia groups. `components` must match a declared special point.
/// The case tag must agree with the coefficients of the three labels in
/// 3L01 (distinct = not all equal). Throws InputError on bad input and
/// CheckFailure when no exceptional assignment restores the relations or
/// the result is still singular.
TripleResolution resolve_triple_point(const BuildingDataZ32& bd, const std::vector<std::string>& components,
                                      TripleCase kind);

/// h^0 on the Z3 cover of the pullback of A: h^0(A) + h^0(A - L1) + h^0(A - L2).
int cover_section_h0(const DivisorClass& A, const BuildingDataZ3& bd,
                     std::span<const ConcreteConfiguration> cfgs);

}  // namespace tricover
