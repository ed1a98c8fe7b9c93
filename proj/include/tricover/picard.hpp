#pragma once

// Divisor classes on iterated blow-ups of the projective plane.
//
// A class is stored in the total-transform basis l, e_1, ..., e_n as
// (d; m_1, ..., m_n), meaning d*l - sum m_i*e_i. In this basis the
// intersection form is diag(1, -1, ..., -1) no matter how the blown-up
// points are nested.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tricover {

/// One blown-up point. Proper points have no parent; an infinitely near
/// point lies on the exceptional curve of `parent`, in the tangent direction
/// named by `direction` ("general" or "line:<j>" for the direction of the
/// line towards proper point j, 1-based).
struct BlownUpPoint {
  std::optional<int> parent;
  std::string direction;

  bool operator==(const BlownUpPoint&) const = default;
};

class BlowupSurface {
 public:
  BlowupSurface() = default;
  explicit BlowupSurface(int proper_points);
  BlowupSurface(std::vector<BlownUpPoint> points,
                std::vector<std::vector<int>> collinear_groups);

  int size() const { return static_cast<int>(points_.size()); }
  int proper_count() const;
  bool is_proper(int i) const;
  const BlownUpPoint& point(int i) const;
  std::vector<int> children(int i) const;
  const std::vector<std::vector<int>>& collinear_groups() const { return groups_; }

  /// Index of the collinear group containing every point of `pts`, if any.
  std::optional<int> group_containing(std::span<const int> pts) const;

  /// Proper points on the line through `pts` (expanded by collinear groups).
  std::vector<int> line_points(std::span<const int> pts) const;

  /// Direction tag target for an infinitely-near point, if it is "line:<j>".
  std::optional<int> direction_target(int i) const;

  BlowupSurface with_proper_point() const;
  BlowupSurface with_infinitely_near(int parent, std::string direction) const;
  /// Adds a collinearity constraint; existing groups sharing two or more
  /// points with `group` are merged into it.
  BlowupSurface with_collinear_group(std::vector<int> group) const;

  /// True when this surface is `older` with further points appended.
  bool extends(const BlowupSurface& older) const;

  bool operator==(const BlowupSurface&) const = default;

 private:
  void validate() const;

  std::vector<BlownUpPoint> points_;
  std::vector<std::vector<int>> groups_;
};

class DivisorClass {
 public:
  DivisorClass() = default;
  DivisorClass(int degree, std::vector<int> multiplicities);

  static DivisorClass zero(int rank);
  static DivisorClass line(int rank);
  /// Total transform e_i of the exceptional curve over point i (0-based).
  static DivisorClass exceptional(int rank, int i);

  int degree() const { return degree_; }
  std::span<const int> multiplicities() const { return mult_; }
  int multiplicity(int i) const;
  int rank() const { return static_cast<int>(mult_.size()); }
  bool is_zero() const;

  /// Same class with the multiplicity vector extended by zeros.
  DivisorClass padded(int rank) const;
  DivisorClass with_multiplicity(int i, int m) const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass& operator*=(int k);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(int k, DivisorClass a) { return a *= k; }
  friend DivisorClass operator-(DivisorClass a) { return a *= -1; }

  bool operator==(const DivisorClass&) const = default;

  /// "(d; m1,...,mn)".
  std::string to_string() const;

 private:
  void require_same_rank(const DivisorClass& o) const;

  int degree_ = 0;
  std::vector<int> mult_;
};

/// a.d*b.d - sum a.m_i*b.m_i. Throws std::invalid_argument on rank mismatch.
int intersect(const DivisorClass& a, const DivisorClass& b);
inline int square(const DivisorClass& a) { return intersect(a, a); }

/// K = -3l + sum e_i.
DivisorClass canonical_class(const BlowupSurface& s);

/// Classes from the curve catalog: l, K, e<i>, eb<i> (strict exceptional
/// e_i minus its infinitely-near children), f<i> (general line through P_i),
/// h<ij...> or h_<i>_<j>_... (strict transform of the line through the listed
/// proper points). Indices are 1-based. Throws InputError.
DivisorClass named_class(std::string_view name, const BlowupSurface& s);

/// Strict transform of the line through the given proper points (0-based):
/// subtracts every point on that line, including infinitely-near points
/// whose direction follows it.
DivisorClass line_class(const BlowupSurface& s, std::span<const int> proper_points);

/// Total-transform embedding of `c` from `older` into `newer`.
DivisorClass blowup_pullback(const DivisorClass& c, const BlowupSurface& older,
                             const BlowupSurface& newer);

/// Resolves names that are not in the built-in catalog (e.g. L01, D22).
using NameResolver = std::function<std::optional<DivisorClass>(std::string_view)>;

/// Parses integer linear combinations such as "-K", "2l - e2 - e3",
/// "K + L01", "f1 + 3*f2". Throws InputError on syntax errors and unknown
/// names.
DivisorClass parse_class_expression(std::string_view expr, const BlowupSurface& s,
                                    const NameResolver& extra = {});

}  // namespace tricover
