#include "tricover/picard.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "tricover/errors.hpp"

namespace tricover {

namespace {

std::optional<int> parse_index(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

int count_shared(const std::vector<int>& a, const std::vector<int>& b) {
  int shared = 0;
  for (int x : a) shared += static_cast<int>(std::count(b.begin(), b.end(), x));
  return shared;
}

}  // namespace

// --- BlowupSurface ---------------------------------------------------------

BlowupSurface::BlowupSurface(int proper_points)
    : points_(static_cast<std::size_t>(std::max(proper_points, 0))) {
  if (proper_points < 0) throw InputError("negative point count");
}

BlowupSurface::BlowupSurface(std::vector<BlownUpPoint> points,
                             std::vector<std::vector<int>> collinear_groups)
    : points_(std::move(points)), groups_(std::move(collinear_groups)) {
  for (auto& g : groups_) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  validate();
}

void BlowupSurface::validate() const {
  for (int i = 0; i < size(); ++i) {
    const auto& p = points_[static_cast<std::size_t>(i)];
    if (!p.parent) continue;
    if (*p.parent < 0 || *p.parent >= i)
      throw InputError("point " + std::to_string(i + 1) +
                       " is infinitely near to a point that is not blown up before it");
    if (p.direction != "general") {
      if (p.direction.rfind("line:", 0) != 0)
        throw InputError("unknown tangent direction tag '" + p.direction + "'");
      auto j = parse_index(std::string_view(p.direction).substr(5));
      if (!j || *j < 1 || *j > size() || !is_proper(*j - 1) || *j - 1 == *p.parent)
        throw InputError("direction tag '" + p.direction + "' of point " + std::to_string(i + 1) +
                         " must name another proper point");
    }
  }
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& group = groups_[g];
    if (group.size() < 3) throw InputError("a collinear group needs at least 3 points");
    for (int i : group) {
      if (i < 0 || i >= size()) throw InputError("collinear group references a missing point");
      if (!is_proper(i))
        throw InputError("collinear group contains infinitely-near point " + std::to_string(i + 1));
    }
    for (std::size_t h = 0; h < g; ++h)
      if (count_shared(group, groups_[h]) >= 2)
        throw InputError("two collinear groups share two points; merge them");
  }
}

int BlowupSurface::proper_count() const {
  return static_cast<int>(
      std::count_if(points_.begin(), points_.end(), [](const auto& p) { return !p.parent; }));
}

bool BlowupSurface::is_proper(int i) const { return !point(i).parent.has_value(); }

const BlownUpPoint& BlowupSurface::point(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("blown-up point index");
  return points_[static_cast<std::size_t>(i)];
}

std::vector<int> BlowupSurface::children(int i) const {
  std::vector<int> out;
  for (int q = 0; q < size(); ++q)
    if (points_[static_cast<std::size_t>(q)].parent == i) out.push_back(q);
  return out;
}

std::optional<int> BlowupSurface::group_containing(std::span<const int> pts) const {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& group = groups_[g];
    bool all = std::all_of(pts.begin(), pts.end(), [&](int p) {
      return std::find(group.begin(), group.end(), p) != group.end();
    });
    if (all) return static_cast<int>(g);
  }
  return std::nullopt;
}

std::vector<int> BlowupSurface::line_points(std::span<const int> pts) const {
  std::vector<int> sorted(pts.begin(), pts.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 2) throw InputError("a line needs two distinct points");
  for (int p : sorted)
    if (p < 0 || p >= size() || !is_proper(p))
      throw InputError("line through point " + std::to_string(p + 1) +
                       ", which is not a proper blown-up point");
  if (auto g = group_containing(sorted)) return groups_[static_cast<std::size_t>(*g)];
  if (sorted.size() >= 3) {
    std::string names;
    for (int p : sorted) names += " " + std::to_string(p + 1);
    throw InputError("points" + names + " are not declared collinear");
  }
  return sorted;
}

std::optional<int> BlowupSurface::direction_target(int i) const {
  const auto& p = point(i);
  if (!p.parent || p.direction.rfind("line:", 0) != 0) return std::nullopt;
  return *parse_index(std::string_view(p.direction).substr(5)) - 1;
}

BlowupSurface BlowupSurface::with_proper_point() const {
  auto pts = points_;
  pts.push_back({});
  return BlowupSurface(std::move(pts), groups_);
}

BlowupSurface BlowupSurface::with_infinitely_near(int parent, std::string direction) const {
  auto pts = points_;
  pts.push_back({parent, std::move(direction)});
  return BlowupSurface(std::move(pts), groups_);
}

BlowupSurface BlowupSurface::with_collinear_group(std::vector<int> group) const {
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  if (group_containing(group)) return *this;
  std::vector<std::vector<int>> kept;
  for (const auto& g : groups_) {
    if (count_shared(g, group) >= 2) {
      group.insert(group.end(), g.begin(), g.end());
    } else {
      kept.push_back(g);
    }
  }
  kept.push_back(std::move(group));
  return BlowupSurface(points_, std::move(kept));
}

bool BlowupSurface::extends(const BlowupSurface& older) const {
  if (older.size() > size()) return false;
  if (!std::equal(older.points_.begin(), older.points_.end(), points_.begin())) return false;
  // every old constraint must survive, possibly enlarged
  return std::all_of(older.groups_.begin(), older.groups_.end(),
                     [&](const auto& g) { return group_containing(g).has_value(); });
}

// --- DivisorClass ----------------------------------------------------------

DivisorClass::DivisorClass(int degree, std::vector<int> multiplicities)
    : degree_(degree), mult_(std::move(multiplicities)) {}

DivisorClass DivisorClass::zero(int rank) {
  return DivisorClass(0, std::vector<int>(static_cast<std::size_t>(rank), 0));
}

DivisorClass DivisorClass::line(int rank) {
  return DivisorClass(1, std::vector<int>(static_cast<std::size_t>(rank), 0));
}

DivisorClass DivisorClass::exceptional(int rank, int i) {
  if (i < 0 || i >= rank) throw std::out_of_range("exceptional class index");
  auto c = zero(rank);
  c.mult_[static_cast<std::size_t>(i)] = -1;
  return c;
}

int DivisorClass::multiplicity(int i) const {
  if (i < 0 || i >= rank()) throw std::out_of_range("multiplicity index");
  return mult_[static_cast<std::size_t>(i)];
}

bool DivisorClass::is_zero() const {
  return degree_ == 0 && std::all_of(mult_.begin(), mult_.end(), [](int m) { return m == 0; });
}

DivisorClass DivisorClass::padded(int rank) const {
  if (rank < this->rank()) throw std::invalid_argument("cannot pad a class to a smaller rank");
  auto m = mult_;
  m.resize(static_cast<std::size_t>(rank), 0);
  return DivisorClass(degree_, std::move(m));
}

DivisorClass DivisorClass::with_multiplicity(int i, int m) const {
  auto c = *this;
  if (i < 0 || i >= rank()) throw std::out_of_range("multiplicity index");
  c.mult_[static_cast<std::size_t>(i)] = m;
  return c;
}

void DivisorClass::require_same_rank(const DivisorClass& o) const {
  if (rank() != o.rank())
    throw std::invalid_argument("divisor classes live on different surfaces (rank " +
                                std::to_string(rank()) + " vs " + std::to_string(o.rank()) + ")");
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  require_same_rank(o);
  degree_ += o.degree_;
  for (std::size_t i = 0; i < mult_.size(); ++i) mult_[i] += o.mult_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  require_same_rank(o);
  degree_ -= o.degree_;
  for (std::size_t i = 0; i < mult_.size(); ++i) mult_[i] -= o.mult_[i];
  return *this;
}

DivisorClass& DivisorClass::operator*=(int k) {
  degree_ *= k;
  for (auto& m : mult_) m *= k;
  return *this;
}

std::string DivisorClass::to_string() const {
  std::ostringstream os;
  os << '(' << degree_ << ';';
  for (std::size_t i = 0; i < mult_.size(); ++i) os << (i ? "," : " ") << mult_[i];
  os << ')';
  return os.str();
}

int intersect(const DivisorClass& a, const DivisorClass& b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("intersect: rank mismatch (" + std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()) + ")");
  long long acc = static_cast<long long>(a.degree()) * b.degree();
  auto am = a.multiplicities();
  auto bm = b.multiplicities();
  for (std::size_t i = 0; i < am.size(); ++i) acc -= static_cast<long long>(am[i]) * bm[i];
  return static_cast<int>(acc);
}

DivisorClass canonical_class(const BlowupSurface& s) {
  return DivisorClass(-3, std::vector<int>(static_cast<std::size_t>(s.size()), -1));
}

DivisorClass line_class(const BlowupSurface& s, std::span<const int> proper_points) {
  auto on_line = s.line_points(proper_points);
  auto c = DivisorClass::line(s.size());
  auto contains = [&](int p) { return std::find(on_line.begin(), on_line.end(), p) != on_line.end(); };
  for (int q = 0; q < s.size(); ++q) {
    bool through = false;
    if (s.is_proper(q)) {
      through = contains(q);
    } else if (auto target = s.direction_target(q)) {
      through = contains(*s.point(q).parent) && contains(*target);
    }
    if (through) c = c.with_multiplicity(q, 1);
  }
  return c;
}

DivisorClass named_class(std::string_view name, const BlowupSurface& s) {
  const int n = s.size();
  auto point_index = [&](std::string_view digits, bool require_proper) {
    auto i = parse_index(digits);
    if (!i || *i < 1 || *i > n)
      throw InputError("'" + std::string(name) + "' references a point that is not blown up");
    if (require_proper && !s.is_proper(*i - 1))
      throw InputError("'" + std::string(name) + "' needs a proper point");
    return *i - 1;
  };

  if (name == "l") return DivisorClass::line(n);
  if (name == "K") return canonical_class(s);
  if (name.rfind("eb", 0) == 0) {
    int i = point_index(name.substr(2), false);
    auto c = DivisorClass::exceptional(n, i);
    for (int q : s.children(i)) c -= DivisorClass::exceptional(n, q);
    return c;
  }
  if (name.rfind('e', 0) == 0) return DivisorClass::exceptional(n, point_index(name.substr(1), false));
  if (name.rfind('f', 0) == 0) {
    int i = point_index(name.substr(1), true);
    return DivisorClass::line(n) - DivisorClass::exceptional(n, i);
  }
  if (name.rfind('h', 0) == 0) {
    std::vector<int> pts;
    auto rest = name.substr(1);
    if (rest.rfind('_', 0) == 0) {
      rest.remove_prefix(1);
      while (!rest.empty()) {
        auto cut = rest.find('_');
        pts.push_back(point_index(rest.substr(0, cut), true));
        rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
      }
    } else {
      for (std::size_t k = 0; k < rest.size(); ++k) pts.push_back(point_index(rest.substr(k, 1), true));
    }
    if (pts.size() < 2) throw InputError("'" + std::string(name) + "' needs at least two points");
    return line_class(s, pts);
  }
  throw InputError("unknown curve name '" + std::string(name) + "'");
}

DivisorClass blowup_pullback(const DivisorClass& c, const BlowupSurface& older,
                             const BlowupSurface& newer) {
  if (!newer.extends(older)) throw InputError("blowup_pullback: target surface does not extend source");
  if (c.rank() != older.size()) throw std::invalid_argument("blowup_pullback: class not on source surface");
  return c.padded(newer.size());
}

}  // namespace tricover
