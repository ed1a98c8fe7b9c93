#include "tricover/cover.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tricover/errors.hpp"

namespace tricover {

namespace {

std::size_t slot(Z32 z) { return static_cast<std::size_t>(z.code()); }

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

// Every component of the Z3^2 data, with its label sigma.
struct Located {
  Z32 sigma;
  const Component* component;
};

std::vector<Located> all_components(const BuildingDataZ32& bd) {
  std::vector<Located> out;
  for (Z32 s : kBranchOrder)
    for (const auto& c : bd.D[slot(s)]) out.push_back({s, &c});
  return out;
}

// Local multiplicity declared between two curves by the special points.
int declared_between(const CurveArrangement& arr, const std::string& a, const std::string& b) {
  int total = 0;
  for (const auto& p : arr.points) {
    bool has_a = std::count(p.components.begin(), p.components.end(), a) > 0;
    bool has_b = std::count(p.components.begin(), p.components.end(), b) > 0;
    if (has_a && has_b) total += p.tangent ? 2 : 1;
  }
  return total;
}

int residual_intersection(const CurveArrangement& arr, const Component& a, const Component& b) {
  const int lattice = intersect(a.cls, b.cls);
  const int declared = declared_between(arr, a.label, b.label);
  if (declared > lattice)
    throw InputError("arrangement declares " + std::to_string(declared) + " common point(s) of " + a.label +
                     " and " + b.label + " but their intersection number is " + std::to_string(lattice));
  return lattice - declared;
}

// --- blowing up a point where given curves meet ----------------------------

struct PointPlacement {
  std::optional<int> parent;
  std::string direction;
};

// Exceptional curve of a proper point p: degree 0 with multiplicity -1 at p.
std::optional<int> exceptional_over(const BlowupSurface& s, const DivisorClass& c) {
  if (c.degree() != 0) return std::nullopt;
  for (int p = 0; p < s.size(); ++p)
    if (c.multiplicity(p) == -1) {
      if (!s.is_proper(p))
        throw InputError("blowing up a point on the exceptional curve of infinitely-near point " +
                         std::to_string(p + 1) + " is not supported");
      return p;
    }
  return std::nullopt;
}

PointPlacement locate(const BlowupSurface& s, const std::vector<const Component*>& through) {
  for (const Component* e : through) {
    auto p = exceptional_over(s, e->cls);
    if (!p) continue;
    PointPlacement place{*p, "general"};
    for (const Component* c : through) {
      if (c == e || c->cls.degree() != 1 || c->cls.multiplicity(*p) < 1) continue;
      for (int j = 0; j < s.size(); ++j) {
        if (j != *p && s.is_proper(j) && c->cls.multiplicity(j) >= 1) {
          place.direction = "line:" + std::to_string(j + 1);
          break;
        }
      }
    }
    return place;
  }
  return {};
}

// Lines among the curves that now pass through three or more proper points
// become collinear constraints.
BlowupSurface sync_collinear(BlowupSurface s, const std::vector<Component*>& curves) {
  for (const Component* c : curves) {
    if (c->cls.degree() != 1) continue;
    std::vector<int> on;
    for (int i = 0; i < s.size(); ++i)
      if (s.is_proper(i) && c->cls.multiplicity(i) > 0) on.push_back(i);
    if (on.size() >= 3) s = s.with_collinear_group(on);
  }
  return s;
}

struct BlowupResult {
  BlowupSurface surface;
  int new_point;
};

// Blows up the point where the `through` curves meet. Pads every class in
// `curves` and `others`; the curves through the point get multiplicity 1.
BlowupResult blow_up_point(const BlowupSurface& s, const std::vector<Component*>& curves,
                           const std::vector<std::string>& through, const std::vector<DivisorClass*>& others,
                           CurveArrangement& arrangement) {
  std::vector<const Component*> at;
  for (const auto& name : through) {
    auto it = std::find_if(curves.begin(), curves.end(), [&](const Component* c) { return c->label == name; });
    if (it == curves.end()) throw InputError("no branch curve named '" + name + "'");
    at.push_back(*it);
  }
  auto place = locate(s, at);
  BlowupSurface grown = place.parent ? s.with_infinitely_near(*place.parent, place.direction) : s.with_proper_point();
  const int k = grown.size() - 1;
  for (Component* c : curves) {
    c->cls = c->cls.padded(grown.size());
    if (std::count(through.begin(), through.end(), c->label)) c->cls = c->cls.with_multiplicity(k, 1);
  }
  for (DivisorClass* d : others) *d = d->padded(grown.size());
  grown = sync_collinear(std::move(grown), curves);

  const auto wanted = as_set(through);
  auto& pts = arrangement.points;
  pts.erase(std::remove_if(pts.begin(), pts.end(), [&](const SpecialPoint& p) { return as_set(p.components) == wanted; }),
            pts.end());
  return {std::move(grown), k};
}

std::vector<Component*> mutable_components(BuildingDataZ32& bd) {
  std::vector<Component*> out;
  for (Z32 s : kBranchOrder)
    for (auto& c : bd.D[slot(s)]) out.push_back(&c);
  return out;
}

std::optional<Z32> owner(const BuildingDataZ32& bd, const std::string& label) {
  for (Z32 s : kBranchOrder)
    for (const auto& c : bd.D[slot(s)])
      if (c.label == label) return s;
  return std::nullopt;
}

struct Z32Blowup {
  BuildingDataZ32 data;
  std::optional<Z32> exceptional_label;
};

// Blows up a point of the Z3^2 branch and adds the exceptional curve to the
// unique D_sigma (or to none) for which the relations still close.
Z32Blowup blow_up_branch_point(const BuildingDataZ32& input, const std::vector<std::string>& through) {
  Z32Blowup out{input, std::nullopt};
  auto& bd = out.data;
  std::vector<DivisorClass*> ls;
  for (Z32 chi : kCharacterOrder) ls.push_back(&bd.L[slot(chi)]);
  auto step = blow_up_point(bd.surface, mutable_components(bd), through, ls, bd.arrangement);
  bd.surface = step.surface;
  const int k = step.new_point;

  PerLabel<int> mult{};
  for (const auto& name : through) mult[slot(*owner(bd, name))] += 1;

  std::vector<std::optional<Z32>> valid;
  auto closes = [&](const PerLabel<int>& m) {
    for (Z32 chi : kCharacterOrder) {
      int sum = 0;
      for (Z32 s : kBranchOrder) sum += relation_coefficient(chi, s) * m[slot(s)];
      if (sum % 3 != 0) return false;
    }
    return true;
  };
  if (closes(mult)) valid.push_back(std::nullopt);
  for (Z32 s : kBranchOrder) {
    auto m = mult;
    m[slot(s)] -= 1;  // the exceptional class enters with multiplicity -1
    if (closes(m)) valid.push_back(s);
  }
  if (valid.size() != 1)
    throw CheckFailure(valid.empty() ? "no assignment of the exceptional curve restores the relations"
                                     : "the exceptional curve can be assigned in more than one way");
  out.exceptional_label = valid.front();
  if (out.exceptional_label) {
    mult[slot(*out.exceptional_label)] -= 1;
    bd.D[slot(*out.exceptional_label)].push_back(
        Component{"E" + std::to_string(k + 1), DivisorClass::exceptional(bd.surface.size(), k), false});
  }
  for (Z32 chi : kCharacterOrder) {
    int sum = 0;
    for (Z32 s : kBranchOrder) sum += relation_coefficient(chi, s) * mult[slot(s)];
    auto& L = bd.L[slot(chi)];
    L = L.with_multiplicity(k, sum / 3);
  }
  return out;
}

}  // namespace

// --- data accessors --------------------------------------------------------

DivisorClass BuildingDataZ32::branch_class(Z32 sigma) const {
  auto total = DivisorClass::zero(surface.size());
  for (const auto& c : D[slot(sigma)]) total += c.cls;
  return total;
}

DivisorClass BuildingDataZ32::total_branch() const {
  auto total = DivisorClass::zero(surface.size());
  for (Z32 s : kBranchOrder) total += branch_class(s);
  return total;
}

DivisorClass BuildingDataZ3::class_D1() const {
  auto total = DivisorClass::zero(surface.size());
  for (const auto& c : D1) total += c.component.cls;
  return total;
}

DivisorClass BuildingDataZ3::class_D2() const {
  auto total = DivisorClass::zero(surface.size());
  for (const auto& c : D2) total += c.component.cls;
  return total;
}

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

const CheckItem* CheckReport::first_failure() const {
  for (const auto& i : items)
    if (!i.passed) return &i;
  return nullptr;
}

// --- verification ----------------------------------------------------------

CheckReport verify_building_data(const BuildingDataZ32& bd) {
  CheckReport report;
  const int n = bd.surface.size();
  for (Z32 chi : kCharacterOrder) {
    auto rhs = DivisorClass::zero(n);
    for (Z32 s : kBranchOrder) rhs += relation_coefficient(chi, s) * bd.branch_class(s);
    const auto lhs = 3 * bd.line_bundle(chi);
    CheckItem item{"relation 3L" + chi.label(), lhs == rhs, ""};
    if (!item.passed) item.detail = "3L" + chi.label() + " = " + lhs.to_string() + " but the branch side is " + rhs.to_string();
    report.items.push_back(std::move(item));
  }

  CheckItem reduced{"branch reduced", true, ""};
  std::map<std::string, std::string> seen_labels;
  std::vector<const Component*> rigid;
  for (auto [sigma, c] : all_components(bd)) {
    auto [it, fresh] = seen_labels.emplace(c->label, sigma.label());
    if (!fresh) {
      reduced.passed = false;
      reduced.detail = "curve " + c->label + " appears in D" + it->second + " and D" + sigma.label();
      break;
    }
    if (c->moving) continue;
    for (const Component* r : rigid) {
      if (r->cls == c->cls) {
        reduced.passed = false;
        reduced.detail = "rigid curves " + r->label + " and " + c->label + " have the same class " + c->cls.to_string();
      }
    }
    rigid.push_back(c);
  }
  report.items.push_back(std::move(reduced));

  for (Z32 chi : kCharacterOrder) {
    bool nontrivial = !bd.line_bundle(chi).is_zero();
    report.items.push_back({"L" + chi.label() + " nontrivial", nontrivial, nontrivial ? "" : "L" + chi.label() + " = 0"});
  }
  return report;
}

bool relations_hold(const BuildingDataZ32& bd) {
  auto report = verify_building_data(bd);
  return std::all_of(report.items.begin(), report.items.begin() + 8, [](const CheckItem& i) { return i.passed; });
}

std::vector<SmoothnessViolation> check_smoothness(const BuildingDataZ32& bd) {
  auto comps = all_components(bd);
  std::map<std::string, Z32> label_of;
  for (auto [sigma, c] : comps) label_of[c->label] = sigma;

  std::vector<SmoothnessViolation> out;
  for (const auto& p : bd.arrangement.points) {
    for (const auto& name : p.components)
      if (!label_of.count(name)) throw InputError("arrangement names unknown branch curve '" + name + "'");
    if (p.components.size() >= 3) {
      out.push_back({p.components, std::to_string(p.components.size()) + " branch curves meet at one point"});
    } else if (p.tangent) {
      out.push_back({p.components, "branch curves are tangent"});
    } else if (p.components.size() == 2 &&
               inertia(label_of[p.components[0]]) == inertia(label_of[p.components[1]])) {
      out.push_back({p.components, "curves with the same inertia group meet"});
    }
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      const int r = residual_intersection(bd.arrangement, *comps[i].component, *comps[j].component);
      if (r > 0 && inertia(comps[i].sigma) == inertia(comps[j].sigma)) {
        out.push_back({{comps[i].component->label, comps[j].component->label},
                       "curves with the same inertia group meet in " + std::to_string(r) + " point(s) (D" +
                           comps[i].sigma.label() + ", D" + comps[j].sigma.label() + ")"});
      }
    }
  }
  return out;
}

// --- invariants ------------------------------------------------------------

Invariants z32_invariants(const BuildingDataZ32& bd, std::span<const ConcreteConfiguration> cfgs) {
  Invariants inv;
  const auto K = canonical_class(bd.surface);
  inv.descent = 3 * K + 2 * bd.total_branch();
  inv.K2 = square(inv.descent);
  int twice_chi = 18;
  for (Z32 chi : kCharacterOrder) {
    const auto& L = bd.line_bundle(chi);
    inv.pg += h0(K + L, cfgs);
    twice_chi += intersect(K + L, L);
  }
  if (twice_chi % 2 != 0) throw CheckFailure("sum of (K + L)L is odd; building data is inconsistent");
  inv.chi = twice_chi / 2;
  inv.q = 1 + inv.pg - inv.chi;
  auto nb = is_nef_big(inv.descent, negative_curve_catalog(cfgs));
  inv.nef = nb.nef;
  inv.big = nb.big;
  return inv;
}

bool z3_relations_hold(const BuildingDataZ3& bd) {
  const auto d1 = bd.class_D1();
  const auto d2 = bd.class_D2();
  return 3 * bd.L1 == d1 + 2 * d2 && 3 * bd.L2 == 2 * d1 + d2;
}

Z3Invariants z3_invariants(const BuildingDataZ3& bd, std::span<const ConcreteConfiguration> cfgs,
                           bool singular_branch_acknowledged) {
  if (bd.L1.is_zero() || bd.L2.is_zero()) throw InputError("trivial L class in Z3 building data");
  Z3Invariants inv;
  const auto K = canonical_class(bd.surface);
  inv.descent = 3 * K + 2 * bd.class_D1() + 2 * bd.class_D2();
  const int m2 = square(inv.descent);
  if (m2 % 3 == 0) inv.K2 = m2 / 3;

  bool normal = intersect(bd.class_D1(), bd.class_D2()) == 0;
  for (const auto& p : bd.arrangement.points)
    if (p.components.size() >= 3 || p.tangent) normal = false;
  if (!normal) {
    if (!singular_branch_acknowledged)
      throw CheckFailure("Z3 branch meets itself across D1 and D2 or has non-normal crossings");
    return inv;
  }
  inv.pg = h0(K + bd.L1, cfgs) + h0(K + bd.L2, cfgs);
  const int twice = 6 + intersect(bd.L1, K + bd.L1) + intersect(bd.L2, K + bd.L2);
  if (twice % 2 != 0) throw CheckFailure("Z3 holomorphic Euler characteristic is not an integer");
  inv.chi = twice / 2;
  inv.q = 1 + *inv.pg - *inv.chi;
  return inv;
}

Z32 subcover_character(Z32 gamma) {
  if (gamma.is_zero()) throw InputError("subgroup generator must be nonzero");
  for (Z32 chi : kCharacterOrder)
    if (in_annihilator(chi, gamma)) return chi;
  throw std::logic_error("no character annihilates the subgroup");
}

BuildingDataZ3 extract_z3_subcover(const BuildingDataZ32& bd, Z32 gamma) {
  const Z32 chi0 = subcover_character(gamma);
  BuildingDataZ3 out;
  out.surface = bd.surface;
  out.L1 = bd.line_bundle(chi0);
  out.L2 = bd.line_bundle(chi0 * 2);
  out.arrangement = bd.arrangement;
  for (Z32 s : kBranchOrder) {
    const int coef = relation_coefficient(chi0, s);
    if (coef == 0) continue;  // s lies in <gamma>
    auto& target = coef == 1 ? out.D1 : out.D2;
    for (const auto& c : bd.D[slot(s)]) target.push_back({c, s});
  }
  if (!z3_relations_hold(out))
    throw CheckFailure("extracted Z3 data violates 3L1 = D1 + 2D2, 3L2 = 2D1 + D2");
  return out;
}

std::vector<CrossingPoint> crossing_points(const BuildingDataZ3& bd) {
  std::vector<CrossingPoint> out;
  for (const auto& a : bd.D1) {
    for (const auto& b : bd.D2) {
      for (const auto& p : bd.arrangement.points) {
        const bool both = std::count(p.components.begin(), p.components.end(), a.component.label) &&
                          std::count(p.components.begin(), p.components.end(), b.component.label);
        if (!both) continue;
        if (p.components.size() != 2 || p.tangent)
          throw CheckFailure("D1 and D2 meet at a non-normal crossing (" + join(p.components) + ")");
        out.push_back({a.component.label, b.component.label});
      }
      const int r = residual_intersection(bd.arrangement, a.component, b.component);
      for (int k = 0; k < r; ++k) out.push_back({a.component.label, b.component.label});
    }
  }
  return out;
}

BuildingDataZ3 blow_up_transport(const BuildingDataZ3& input, const std::vector<CrossingPoint>& points) {
  BuildingDataZ3 bd = input;
  for (const auto& pt : points) {
    std::vector<Component*> curves;
    for (auto& c : bd.D1) curves.push_back(&c.component);
    for (auto& c : bd.D2) curves.push_back(&c.component);
    auto step = blow_up_point(bd.surface, curves, {pt.d1_component, pt.d2_component}, {&bd.L1, &bd.L2},
                              bd.arrangement);
    bd.surface = step.surface;
    bd.L1 = bd.L1.with_multiplicity(step.new_point, 1);
    bd.L2 = bd.L2.with_multiplicity(step.new_point, 1);
  }
  if (!z3_relations_hold(bd)) throw CheckFailure("Z3 relations fail after blowing up D1 n D2");
  return bd;
}

BuildingDataZ3 blow_up_transport(const BuildingDataZ3& bd) { return blow_up_transport(bd, crossing_points(bd)); }

std::string to_string(TripleCase c) { return c == TripleCase::distinct ? "distinct" : "equal"; }

std::optional<TripleCase> parse_triple_case(std::string_view text) {
  if (text == "distinct") return TripleCase::distinct;
  if (text == "equal") return TripleCase::equal;
  return std::nullopt;
}

TripleResolution resolve_triple_point(const BuildingDataZ32& bd, const std::vector<std::string>& components,
                                      TripleCase kind) {
  if (components.size() != 3 || as_set(components).size() != 3)
    throw InputError("a triple point needs three distinct branch curves");
  const auto wanted = as_set(components);
  bool declared = std::any_of(bd.arrangement.points.begin(), bd.arrangement.points.end(),
                              [&](const SpecialPoint& p) { return as_set(p.components) == wanted; });
  if (!declared) throw InputError("no declared special point through " + join(components));

  std::vector<Z32> labels;
  for (const auto& name : components) {
    auto s = owner(bd, name);
    if (!s) throw InputError("no branch curve named '" + name + "'");
    labels.push_back(*s);
  }
  if (inertia(labels[0]) == inertia(labels[1]) || inertia(labels[0]) == inertia(labels[2]) ||
      inertia(labels[1]) == inertia(labels[2]))
    throw InputError("the curves through a resolvable triple point need distinct inertia groups");
  const Z32 chi01(0, 1);
  const int c0 = relation_coefficient(chi01, labels[0]);
  const bool all_equal =
      c0 == relation_coefficient(chi01, labels[1]) && c0 == relation_coefficient(chi01, labels[2]);
  if (all_equal != (kind == TripleCase::equal))
    throw InputError("triple point " + join(components) + " is tagged '" + to_string(kind) +
                     "' but its coefficients in 3L01 are " + (all_equal ? "equal" : "not all equal"));

  auto first = blow_up_branch_point(bd, components);
  TripleResolution out{first.data, first.data, first.exceptional_label};

  // separate the new exceptional curve from any branch curve of its own inertia
  for (int guard = 0; out.exceptional_label; ++guard) {
    if (guard > 8) throw CheckFailure("triple point resolution does not terminate");
    const std::string e_label = "E" + std::to_string(first.data.surface.size());
    const Component* e = nullptr;
    for (const auto& c : out.resolved.D[slot(*out.exceptional_label)])
      if (c.label == e_label) e = &c;
    std::optional<std::string> partner;
    for (auto [sigma, c] : all_components(out.resolved)) {
      if (c == e || inertia(sigma) != inertia(*out.exceptional_label)) continue;
      if (residual_intersection(out.resolved.arrangement, *e, *c) > 0) partner = c->label;
    }
    if (!partner) break;
    out.resolved = blow_up_branch_point(out.resolved, {e_label, *partner}).data;
  }

  if (!relations_hold(out.resolved)) throw CheckFailure("relations fail after resolving the triple point");
  // other declared points are resolved separately; only look at curves touched here
  auto involved = wanted;
  for (int k = bd.surface.size(); k < out.resolved.surface.size(); ++k) involved.insert("E" + std::to_string(k + 1));
  for (const auto& v : check_smoothness(out.resolved)) {
    bool local = std::all_of(v.components.begin(), v.components.end(),
                             [&](const std::string& name) { return involved.count(name) > 0; });
    if (local) throw CheckFailure("triple point resolution leaves a singular cover at " + join(v.components));
  }
  return out;
}

int cover_section_h0(const DivisorClass& A, const BuildingDataZ3& bd, std::span<const ConcreteConfiguration> cfgs) {
  return h0(A, cfgs) + h0(A - bd.L1, cfgs) + h0(A - bd.L2, cfgs);
}

}  // namespace tricover
