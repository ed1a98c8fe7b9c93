#include "tricover/linsys.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "tricover/errors.hpp"

namespace tricover {

namespace {

using modp::Elem;
using modp::Field;

constexpr int kMaxAttempts = 200;

struct Line {
  Elem a, b, c;  // a*x + b*y + c = 0
};

Line line_through(const std::array<Elem, 2>& p, const std::array<Elem, 2>& q, const Field& f) {
  // (x1,y1,1) x (x2,y2,1)
  return {f.sub(p[1], q[1]), f.sub(q[0], p[0]), f.sub(f.mul(p[0], q[1]), f.mul(p[1], q[0]))};
}

bool on_line(const Line& l, const std::array<Elem, 2>& p, const Field& f) {
  return f.add(f.add(f.mul(l.a, p[0]), f.mul(l.b, p[1])), l.c) == 0;
}

std::optional<std::array<Elem, 2>> intersection(const Line& l, const Line& m, const Field& f) {
  Elem x = f.sub(f.mul(l.b, m.c), f.mul(l.c, m.b));
  Elem y = f.sub(f.mul(l.c, m.a), f.mul(l.a, m.c));
  Elem z = f.sub(f.mul(l.a, m.b), f.mul(l.b, m.a));
  if (z == 0) return std::nullopt;
  Elem zi = f.inv(z);
  return std::array<Elem, 2>{f.mul(x, zi), f.mul(y, zi)};
}

bool collinear(const std::array<Elem, 2>& p, const std::array<Elem, 2>& q,
               const std::array<Elem, 2>& r, const Field& f) {
  return on_line(line_through(p, q, f), r, f);
}

// Subsets of size k of {0..n-1}, visited in lexicographic order.
template <typename Visit>
bool for_each_subset(int n, int k, Visit visit) {
  if (k > n) return true;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!visit(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

class Sampler {
 public:
  Sampler(const BlowupSurface& s, std::uint64_t prime, std::uint64_t seed)
      : s_(s), f_(prime), rng_(seed) {}

  ConcreteConfiguration run(std::uint64_t prime, std::uint64_t seed) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      if (try_once()) {
        return ConcreteConfiguration{s_, prime, seed, points_, slopes_};
      }
    }
    throw InputError("could not sample a configuration: " + last_failure_);
  }

 private:
  Elem random() { return std::uniform_int_distribution<Elem>(0, f_.prime() - 1)(rng_); }

  bool reject(std::string why) {
    last_failure_ = std::move(why);
    return false;
  }

  bool try_once() {
    const int n = s_.size();
    const auto& groups = s_.collinear_groups();
    points_.assign(static_cast<std::size_t>(n), {0, 0});
    slopes_.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::optional<Line>> lines(groups.size());
    std::vector<int> placed_in_group(groups.size(), 0);
    std::vector<std::vector<int>> placed_members(groups.size());

    for (int i = 0; i < n; ++i) {
      if (!s_.is_proper(i)) continue;
      std::vector<std::size_t> mine;
      for (std::size_t g = 0; g < groups.size(); ++g)
        if (std::find(groups[g].begin(), groups[g].end(), i) != groups[g].end()) mine.push_back(g);
      std::vector<Line> known;
      for (auto g : mine)
        if (lines[g]) known.push_back(*lines[g]);

      std::array<Elem, 2> p{};
      if (known.empty()) {
        p = {random(), random()};
      } else if (known.size() == 1) {
        const Line& l = known.front();
        if (l.b != 0) {
          Elem x = random();
          p = {x, f_.mul(f_.neg(f_.add(f_.mul(l.a, x), l.c)), f_.inv(l.b))};
        } else {
          Elem y = random();
          p = {f_.mul(f_.neg(l.c), f_.inv(l.a)), y};
        }
      } else {
        auto meet = intersection(known[0], known[1], f_);
        if (!meet) return reject("collinear groups through point " + std::to_string(i + 1) + " do not meet");
        p = *meet;
        for (const auto& l : known)
          if (!on_line(l, p, f_))
            return reject("point " + std::to_string(i + 1) + " cannot lie on all of its collinear groups");
      }
      points_[static_cast<std::size_t>(i)] = p;
      for (auto g : mine) {
        placed_members[g].push_back(i);
        if (!lines[g] && placed_members[g].size() == 2)
          lines[g] = line_through(points_[static_cast<std::size_t>(placed_members[g][0])],
                                  points_[static_cast<std::size_t>(placed_members[g][1])], f_);
      }
    }
    return check_points() && place_directions();
  }

  bool forced_together(std::span<const int> pts, std::size_t at_least) const {
    for (const auto& g : s_.collinear_groups()) {
      std::size_t inside = 0;
      for (int p : pts) inside += std::count(g.begin(), g.end(), p);
      if (inside >= at_least) return true;
    }
    return false;
  }

  bool check_points() {
    std::vector<int> proper;
    for (int i = 0; i < s_.size(); ++i)
      if (s_.is_proper(i)) proper.push_back(i);
    const int np = static_cast<int>(proper.size());
    auto pt = [&](int k) { return points_[static_cast<std::size_t>(proper[static_cast<std::size_t>(k)])]; };

    for (int a = 0; a < np; ++a)
      for (int b = a + 1; b < np; ++b)
        if (pt(a) == pt(b)) return reject("two points coincide");

    for (const auto& g : s_.collinear_groups())
      for (std::size_t k = 2; k < g.size(); ++k)
        if (!collinear(points_[static_cast<std::size_t>(g[0])], points_[static_cast<std::size_t>(g[1])],
                       points_[static_cast<std::size_t>(g[k])], f_))
          return reject("collinear group not satisfied");

    bool ok = for_each_subset(np, 3, [&](const std::vector<int>& idx) {
      std::array<int, 3> pts{proper[static_cast<std::size_t>(idx[0])], proper[static_cast<std::size_t>(idx[1])],
                             proper[static_cast<std::size_t>(idx[2])]};
      if (forced_together(pts, 3)) return true;
      return !collinear(pt(idx[0]), pt(idx[1]), pt(idx[2]), f_);
    });
    if (!ok) return reject("unconstrained points are collinear");

    ok = for_each_subset(np, 6, [&](const std::vector<int>& idx) {
      std::vector<int> pts;
      for (int k : idx) pts.push_back(proper[static_cast<std::size_t>(k)]);
      if (forced_together(pts, 3)) return true;
      modp::Matrix m;
      for (int k : idx) {
        auto [x, y] = pt(k);
        m.push_back({f_.mul(x, x), f_.mul(x, y), f_.mul(y, y), x, y, 1});
      }
      return modp::determinant(std::move(m), f_) != 0;
    });
    if (!ok) return reject("unconstrained points lie on a conic");
    return true;
  }

  bool place_directions() {
    const int n = s_.size();
    for (int q = 0; q < n; ++q) {
      const auto& bp = s_.point(q);
      if (!bp.parent) continue;
      const int p = *bp.parent;
      if (!s_.is_proper(p))
        throw InputError("point " + std::to_string(q + 1) +
                         " is infinitely near of second order; only first-order points are supported");
      const auto& base = points_[static_cast<std::size_t>(p)];
      if (auto target = s_.direction_target(q)) {
        const auto& t = points_[static_cast<std::size_t>(*target)];
        Elem dx = f_.sub(t[0], base[0]);
        if (dx == 0) return reject("vertical tangent direction");
        slopes_[static_cast<std::size_t>(q)] = f_.mul(f_.sub(t[1], base[1]), f_.inv(dx));
      } else {
        Elem slope = random();
        for (int j = 0; j < n; ++j) {
          if (j == p || !s_.is_proper(j)) continue;
          const auto& t = points_[static_cast<std::size_t>(j)];
          if (f_.sub(t[1], base[1]) == f_.mul(slope, f_.sub(t[0], base[0])))
            return reject("general direction points at another blown-up point");
        }
        slopes_[static_cast<std::size_t>(q)] = slope;
      }
      for (int r = 0; r < q; ++r)
        if (s_.point(r).parent == p && slopes_[static_cast<std::size_t>(r)] == slopes_[static_cast<std::size_t>(q)])
          return reject("two infinitely-near points share a direction");
    }
    return true;
  }

  const BlowupSurface& s_;
  Field f_;
  std::mt19937_64 rng_;
  std::vector<std::array<Elem, 2>> points_;
  std::vector<Elem> slopes_;
  std::string last_failure_;
};

// Binomial coefficients as field elements, up to n = limit.
class Binomials {
 public:
  Binomials(int limit, const Field& f) : table_(static_cast<std::size_t>(limit + 1)) {
    for (int n = 0; n <= limit; ++n) {
      auto& row = table_[static_cast<std::size_t>(n)];
      row.assign(static_cast<std::size_t>(n + 1), 1);
      for (int k = 1; k < n; ++k)
        row[static_cast<std::size_t>(k)] =
            f.add(table_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)],
                  table_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)]);
    }
  }
  Elem operator()(int n, int k) const {
    if (k < 0 || k > n) return 0;
    return table_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  }

 private:
  std::vector<std::vector<Elem>> table_;
};

}  // namespace

ConcreteConfiguration sample_configuration(const BlowupSurface& s, std::uint64_t prime,
                                           std::uint64_t seed) {
  if (prime <= 1000000 || !modp::is_prime(prime) || prime >= (std::uint64_t{1} << 32))
    throw InputError("field prime must be a prime in (10^6, 2^32)");
  return Sampler(s, prime, seed).run(prime, seed);
}

std::vector<ConcreteConfiguration> sample_configurations(const BlowupSurface& s,
                                                         const H0Options& opts) {
  if (opts.trials < 1) throw InputError("h0 needs at least one trial");
  std::vector<ConcreteConfiguration> out;
  out.reserve(static_cast<std::size_t>(opts.trials));
  for (int t = 0; t < opts.trials; ++t)
    out.push_back(sample_configuration(s, opts.prime, opts.seed + static_cast<std::uint64_t>(t)));
  return out;
}

DivisorClass unload(const DivisorClass& c, const BlowupSurface& s) {
  if (c.rank() != s.size()) throw std::invalid_argument("unload: class not on this surface");
  std::vector<int> m(c.multiplicities().begin(), c.multiplicities().end());
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(s.size()));
  for (int i = 0; i < s.size(); ++i) kids[static_cast<std::size_t>(i)] = s.children(i);

  bool changed = true;
  for (int guard = 0; changed; ++guard) {
    if (guard > 100000) throw std::logic_error("unload did not terminate");
    changed = false;
    for (int i = 0; i < s.size(); ++i) {
      auto& mi = m[static_cast<std::size_t>(i)];
      const auto& ch = kids[static_cast<std::size_t>(i)];
      if (ch.empty()) {
        if (mi < 0) {
          mi = 0;
          changed = true;
        }
        continue;
      }
      int below = 0;
      for (int q : ch) below += m[static_cast<std::size_t>(q)];
      if (mi < below) {
        // the strict exceptional e_i - sum e_q is a fixed component
        ++mi;
        for (int q : ch) --m[static_cast<std::size_t>(q)];
        changed = true;
      }
    }
  }
  return DivisorClass(c.degree(), std::move(m));
}

int h0(const DivisorClass& c, const ConcreteConfiguration& cfg) {
  const auto& s = cfg.surface;
  if (c.rank() != s.size()) throw std::invalid_argument("h0: class not on the configuration's surface");
  if (c.degree() < 0) return 0;
  const DivisorClass u = unload(c, s);
  const int d = u.degree();
  const Field f(cfg.prime);

  std::vector<std::pair<int, int>> monomials;  // x^a y^b
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) monomials.emplace_back(a, b);
  const std::size_t cols = monomials.size();

  int max_m = 0;
  for (int m : u.multiplicities()) max_m = std::max(max_m, m);
  const Binomials binom(std::max(d, 2 * max_m + 1), f);

  // Coefficient of u^i v^j in F(px + u, py + v), as a row over monomials.
  auto taylor = [&](int p, int i, int j) {
    const auto& pt = cfg.points[static_cast<std::size_t>(p)];
    std::vector<Elem> row(cols, 0);
    for (std::size_t k = 0; k < cols; ++k) {
      auto [a, b] = monomials[k];
      if (a < i || b < j) continue;
      row[k] = f.mul(f.mul(binom(a, i), f.pow(pt[0], static_cast<std::uint64_t>(a - i))),
                     f.mul(binom(b, j), f.pow(pt[1], static_cast<std::uint64_t>(b - j))));
    }
    return row;
  };

  modp::Matrix rows;
  for (int p = 0; p < s.size(); ++p) {
    const int mp = u.multiplicity(p);
    if (mp <= 0) continue;
    if (s.is_proper(p)) {
      for (int i = 0; i < mp; ++i)
        for (int j = 0; i + j < mp; ++j) rows.push_back(taylor(p, i, j));
      continue;
    }
    // Substitute u = s, v = s(slope + t), divide by s^{m_parent}, and ask
    // every monomial s^alpha t^beta with alpha + beta < m_p to vanish.
    const int parent = *s.point(p).parent;
    const int mparent = u.multiplicity(parent);
    const Elem slope = cfg.slopes[static_cast<std::size_t>(p)];
    for (int alpha = 0; alpha < mp; ++alpha) {
      for (int beta = 0; alpha + beta < mp; ++beta) {
        const int k = alpha + mparent;
        std::vector<Elem> row(cols, 0);
        for (int j = beta; j <= k; ++j) {
          const Elem w = f.mul(binom(j, beta), f.pow(slope, static_cast<std::uint64_t>(j - beta)));
          auto t = taylor(parent, k - j, j);
          for (std::size_t c2 = 0; c2 < cols; ++c2) row[c2] = f.add(row[c2], f.mul(w, t[c2]));
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return static_cast<int>(cols - modp::rank(std::move(rows), f));
}

int h0(const DivisorClass& c, std::span<const ConcreteConfiguration> cfgs) {
  if (cfgs.empty()) throw std::invalid_argument("h0 needs at least one configuration");
  int best = h0(c, cfgs.front());
  for (const auto& cfg : cfgs.subspan(1)) best = std::min(best, h0(c, cfg));
  return best;
}

int h0(const DivisorClass& c, const BlowupSurface& s, const H0Options& opts) {
  auto cfgs = sample_configurations(s, opts);
  return h0(c, cfgs);
}

NegativeCurveCatalog negative_curve_catalog(std::span<const ConcreteConfiguration> cfgs) {
  if (cfgs.empty()) throw std::invalid_argument("catalog needs a configuration");
  const auto& s = cfgs.front().surface;
  const int n = s.size();
  std::vector<CatalogCurve> candidates;

  for (int i = 0; i < n; ++i) {
    candidates.push_back({"e" + std::to_string(i + 1), DivisorClass::exceptional(n, i)});
    if (!s.children(i).empty()) candidates.push_back({"eb" + std::to_string(i + 1), named_class("eb" + std::to_string(i + 1), s)});
  }
  std::vector<int> proper;
  for (int i = 0; i < n; ++i)
    if (s.is_proper(i)) proper.push_back(i);
  auto join = [](const std::vector<int>& pts) {
    std::string name = "h";
    for (int p : pts) name += "_" + std::to_string(p + 1);
    return name;
  };
  for (std::size_t a = 0; a < proper.size(); ++a)
    for (std::size_t b = a + 1; b < proper.size(); ++b) {
      std::array<int, 2> pair{proper[a], proper[b]};
      candidates.push_back({join(s.line_points(pair)), line_class(s, pair)});
    }
  for (const auto& g : s.collinear_groups()) candidates.push_back({join(g), line_class(s, g)});
  if (proper.size() >= 5) {
    for_each_subset(static_cast<int>(proper.size()), 5, [&](const std::vector<int>& idx) {
      auto c = 2 * DivisorClass::line(n);
      std::string name = "conic";
      for (int k : idx) {
        c -= DivisorClass::exceptional(n, proper[static_cast<std::size_t>(k)]);
        name += "_" + std::to_string(proper[static_cast<std::size_t>(k)] + 1);
      }
      candidates.push_back({name, c});
      return true;
    });
  }

  NegativeCurveCatalog catalog;
  std::set<std::vector<int>> seen;
  for (auto& cand : candidates) {
    std::vector<int> key{cand.cls.degree()};
    key.insert(key.end(), cand.cls.multiplicities().begin(), cand.cls.multiplicities().end());
    if (!seen.insert(key).second) continue;
    if (square(cand.cls) >= 0) continue;
    if (h0(cand.cls, cfgs) < 1) continue;
    catalog.curves.push_back(std::move(cand));
  }
  return catalog;
}

NefBig is_nef_big(const DivisorClass& c, const NegativeCurveCatalog& catalog) {
  NefBig out;
  if (c.degree() < 0) {
    out.obstruction = "l";
    return out;
  }
  for (const auto& curve : catalog.curves) {
    if (intersect(c, curve.cls) < 0) {
      out.obstruction = curve.name;
      return out;
    }
  }
  out.nef = true;
  out.big = square(c) > 0;
  return out;
}

}  // namespace tricover
