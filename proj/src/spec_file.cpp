#include "tricover/spec_file.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "tricover/errors.hpp"

namespace tricover {

namespace {

std::size_t slot(Z32 z) { return static_cast<std::size_t>(z.code()); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

// Splits on '+' outside parentheses.
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string origin) : origin_(std::move(origin)) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines_.emplace_back(text.substr(start, end - start));
      start = end + 1;
    }
  }

  SpecFile run() {
    bool header = false;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      lineno_ = static_cast<int>(i) + 1;
      auto line = lines_[i];
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (!header) {
        const auto w = words(line);
        if (w.size() != 2 || w[0] != "tricover-spec") fail("expected header 'tricover-spec 1'");
        if (w[1] != "1") fail("unsupported spec version '" + w[1] + "'");
        header = true;
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') fail("malformed section header");
        enter(trim(std::string_view(line).substr(1, line.size() - 2)));
        continue;
      }
      dispatch(line);
    }
    lineno_ = 0;
    if (!header) fail("empty spec: missing header 'tricover-spec 1'");
    return finish();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << origin_;
    if (lineno_ > 0) os << ":" << lineno_;
    os << ": " << msg;
    throw InputError(os.str());
  }

  void enter(const std::string& name) {
    static const std::set<std::string> known = {"surface", "branch", "L", "arrangement", "resolve", "analysis", "expected"};
    if (!known.count(name)) fail("unknown section [" + name + "]");
    if (!seen_sections_.insert(name).second) fail("duplicate section [" + name + "]");
    if (name != "surface" && !surface_done_) finish_surface();
    section_ = name;
    if (name == "branch") has_branch_ = true;
  }

  void dispatch(const std::string& line) {
    if (section_.empty()) return top_level(line);
    if (section_ == "surface") return surface_line(line);
    if (section_ == "branch") return branch_line(line);
    if (section_ == "L") return l_line(line);
    if (section_ == "arrangement") return arrangement_line(line);
    if (section_ == "resolve") return resolve_line(line);
    if (section_ == "analysis") return analysis_line(line);
    expected_line(line);
  }

  template <typename T>
  T number(const std::string& w, const char* what) const {
    T v{};
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) fail(std::string("expected ") + what + ", got '" + w + "'");
    return v;
  }

  void top_level(const std::string& line) {
    const auto w = words(line);
    if (w[0] != "name") fail("unknown key '" + w[0] + "' outside any section");
    if (w.size() != 2) fail("expected 'name <identifier>'");
    if (!name_.empty()) fail("duplicate name");
    name_ = w[1];
  }

  // [surface]
  void surface_line(const std::string& line) {
    const auto w = words(line);
    if (w[0] == "points") {
      if (w.size() != 2) fail("expected 'points <N>'");
      if (!points_.empty()) fail("'points' must appear once, first");
      const int n = number<int>(w[1], "a point count");
      if (n < 0 || n > 64) fail("point count out of range");
      points_.assign(static_cast<std::size_t>(n), BlownUpPoint{});
      if (n == 0) zero_points_ = true;
    } else if (w[0] == "near") {
      if (w.size() != 4) fail("expected 'near <index> <parent> <direction>'");
      const int idx = number<int>(w[1], "a point index");
      const int parent = number<int>(w[2], "a parent index");
      if (idx != static_cast<int>(points_.size()) + 1)
        fail("infinitely near points must be numbered consecutively; expected " + std::to_string(points_.size() + 1));
      if (parent < 1 || parent >= idx) fail("parent must be an earlier point");
      if (w[3] != "general" && w[3].rfind("line:", 0) != 0) fail("direction must be 'general' or 'line:<j>'");
      points_.push_back({parent - 1, w[3]});
    } else if (w[0] == "collinear") {
      if (w.size() < 4) fail("a collinear group needs at least three points");
      std::vector<int> g;
      for (std::size_t k = 1; k < w.size(); ++k) g.push_back(number<int>(w[k], "a point index") - 1);
      groups_.push_back(std::move(g));
    } else {
      fail("unknown key '" + w[0] + "' in [surface]");
    }
  }

  void finish_surface() {
    surface_done_ = true;
    if (points_.empty() && !zero_points_) fail("[surface] must declare 'points <N>' before other sections");
    try {
      surface_ = BlowupSurface(points_, groups_);
    } catch (const InputError& e) {
      fail(std::string("invalid surface: ") + e.what());
    } catch (const std::invalid_argument& e) {
      fail(std::string("invalid surface: ") + e.what());
    }
  }

  DivisorClass expression(const std::string& text) const {
    try {
      return parse_class_expression(text, surface_);
    } catch (const InputError& e) {
      fail(e.what());
    }
  }

  std::pair<std::string, std::string> assignment(const std::string& line, char prefix) const {
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected '<key> = <value>'");
    auto key = trim(std::string_view(line).substr(0, eq));
    if (key.size() != 3 || key[0] != prefix) fail("unknown key '" + key + "' in [" + section_ + "]");
    return {key, trim(std::string_view(line).substr(eq + 1))};
  }

  Z32 label_of(const std::string& key) const {
    auto z = parse_z32(std::string_view(key).substr(1));
    if (!z) fail("unknown key '" + key + "' in [" + section_ + "]");
    return *z;
  }

  // [branch]
  void branch_line(const std::string& line) {
    auto [key, value] = assignment(line, 'D');
    const Z32 sigma = label_of(key);
    if (!branch_seen_.insert(sigma.code()).second) fail("duplicate entry " + key);

    std::optional<std::string> declared;
    static const std::regex as_re(R"(^(.*)\bas\b(.*)$)");
    std::smatch m;
    if (std::regex_match(value, m, as_re)) {
      declared = trim(m[2].str());
      value = trim(m[1].str());
    }

    auto& comps = D_[slot(sigma)];
    if (value != "0") {
      static const std::regex pencil_re(R"(^f([1-9])([0-9]+)$)");
      static const std::regex explicit_re(R"(^([A-Za-z_][A-Za-z0-9_]*)\((.*)\)$)");
      for (const auto& term : split_terms(value)) {
        if (term.empty()) fail("empty branch component in " + key);
        std::smatch tm;
        if (std::regex_match(term, tm, explicit_re))
          comps.push_back({tm[1].str(), expression(tm[2].str()), false});
        else if (std::regex_match(term, tm, pencil_re))
          comps.push_back({term, expression("f" + tm[1].str()), true});
        else
          comps.push_back({term, expression(term), false});
      }
    }
    if (declared) {
      const auto want = expression(*declared);
      DivisorClass sum = DivisorClass::zero(surface_.size());
      for (const auto& c : comps) sum += c.cls;
      if (!(sum == want))
        fail("lattice inconsistency: components of " + key + " sum to " + sum.to_string() + ", declared " +
             want.to_string());
    }
  }

  // [L]
  void l_line(const std::string& line) {
    auto [key, value] = assignment(line, 'L');
    const Z32 chi = label_of(key);
    if (L_[slot(chi)]) fail("duplicate entry " + key);
    auto c = expression(value);
    if (c.is_zero()) fail("trivial L class: " + key + " = 0");
    L_[slot(chi)] = c;
  }

  // [arrangement]
  void arrangement_line(const std::string& line) {
    auto w = words(line);
    if (w[0] != "point") fail("unknown key '" + w[0] + "' in [arrangement]");
    SpecialPoint p;
    if (w.back() == "tangent") {
      p.tangent = true;
      w.pop_back();
    }
    if (w.size() < 3) fail("a special point needs at least two curves");
    p.components.assign(w.begin() + 1, w.end());
    arrangement_.points.push_back(std::move(p));
    arrangement_lines_.push_back(lineno_);
  }

  // [resolve]
  void resolve_line(const std::string& line) {
    const auto w = words(line);
    if (w[0] != "triple") fail("unknown key '" + w[0] + "' in [resolve]");
    if (w.size() != 5) fail("expected 'triple distinct|equal <a> <b> <c>'");
    auto kind = parse_triple_case(w[1]);
    if (!kind) fail("triple point kind must be 'distinct' or 'equal'");
    TriplePointSpec r{*kind, {w[2], w[3], w[4]}};
    bool declared = false;
    for (const auto& p : arrangement_.points) declared = declared || p.components == r.components;
    if (!declared) fail("triple point " + w[2] + " " + w[3] + " " + w[4] + " is not a declared special point");
    resolutions_.push_back(std::move(r));
  }

  // [analysis]
  void analysis_line(const std::string& line) {
    const auto w = words(line);
    if (w[0] == "summand") {
      const auto value = trim(std::string_view(line).substr(line.find("summand") + 7));
      // names the resolved surface, so it is checked when the pipeline runs
      if (value.empty()) fail("expected 'summand <expression>'");
      summand_ = value;
      return;
    }
    if (w.size() != 2) fail("expected '" + w[0] + " <value>'");
    if (w[0] == "subgroup") {
      auto z = parse_z32(w[1]);
      if (!z) fail("subgroup generator must be a nonzero element such as 10");
      subgroup_ = *z;
    } else if (w[0] == "trials") {
      trials_ = number<int>(w[1], "a trial count");
      if (*trials_ < 1) fail("trials must be positive");
    } else if (w[0] == "prime") {
      prime_ = number<std::uint64_t>(w[1], "a prime");
    } else if (w[0] == "seed") {
      seed_ = number<std::uint64_t>(w[1], "a seed");
    } else {
      fail("unknown key '" + w[0] + "' in [analysis]");
    }
  }

  // [expected]
  void expected_line(const std::string& line) {
    const auto w = words(line);
    if (w[0] == "row") {
      if (w.size() != 6) fail("expected 'row K2 pg q deg_sigma base_points'");
      row_ = TableRow{number<int>(w[1], "K2"), number<int>(w[2], "p_g"), number<int>(w[3], "q"),
                      number<int>(w[4], "deg Sigma"), number<int>(w[5], "base points")};
    } else if (w[0] == "census") {
      if (w.size() != 3) fail("expected 'census n m'");
      census_ = std::pair{number<int>(w[1], "n"), number<int>(w[2], "m")};
    } else {
      fail("unknown key '" + w[0] + "' in [expected]");
    }
  }

  SpecFile finish() {
    if (!surface_done_) finish_surface();
    SpecFile out;
    out.name = name_.empty() ? "unnamed" : name_;
    out.surface = surface_;
    out.L = L_;
    out.trials = trials_;
    out.prime = prime_;
    out.seed = seed_;
    if (!has_branch_) {
      if (!resolutions_.empty() || !arrangement_.points.empty())
        fail("[arrangement] and [resolve] need a [branch] section");
      return out;
    }

    ConstructionSpec spec;
    spec.name = out.name;
    spec.data.surface = surface_;
    spec.data.D = D_;
    for (Z32 chi : kCharacterOrder) {
      if (!L_[slot(chi)]) fail("missing L" + chi.label() + " in [L]");
      spec.data.L[slot(chi)] = *L_[slot(chi)];
    }
    spec.data.arrangement = arrangement_;

    std::set<std::string> labels;
    std::set<std::pair<int, std::vector<int>>> rigid;
    for (Z32 sigma : kBranchOrder) {
      for (const auto& c : D_[slot(sigma)]) {
        if (!labels.insert(c.label).second) fail("branch not reduced: label " + c.label + " appears twice");
        if (!c.moving) {
          std::vector<int> m(c.cls.multiplicities().begin(), c.cls.multiplicities().end());
          if (!rigid.insert({c.cls.degree(), m}).second)
            fail("branch not reduced: rigid curve " + c.label + " repeats the class " + c.cls.to_string());
        }
      }
    }
    try {
      check_smoothness(spec.data);
    } catch (const InputError& e) {
      if (!arrangement_lines_.empty()) lineno_ = arrangement_lines_.front();
      fail(std::string("lattice inconsistency in [arrangement]: ") + e.what());
    }

    spec.resolutions = resolutions_;
    if (subgroup_) spec.subgroup = *subgroup_;
    spec.summand = summand_;
    spec.expected_row = row_;
    spec.expected_census = census_;
    out.construction = std::move(spec);
    return out;
  }

  std::string origin_;
  std::vector<std::string> lines_;
  int lineno_ = 0;
  std::string section_;
  std::set<std::string> seen_sections_;

  std::string name_;
  std::vector<BlownUpPoint> points_;
  std::vector<std::vector<int>> groups_;
  bool zero_points_ = false;
  bool surface_done_ = false;
  BlowupSurface surface_;

  bool has_branch_ = false;
  std::set<int> branch_seen_;
  PerLabel<std::vector<Component>> D_;
  PerLabel<std::optional<DivisorClass>> L_;
  CurveArrangement arrangement_;
  std::vector<int> arrangement_lines_;
  std::vector<TriplePointSpec> resolutions_;
  std::optional<Z32> subgroup_;
  std::string summand_;
  std::optional<int> trials_;
  std::optional<std::uint64_t> prime_;
  std::optional<std::uint64_t> seed_;
  std::optional<TableRow> row_;
  std::optional<std::pair<int, int>> census_;
};

}  // namespace

NameResolver SpecFile::resolver() const {
  return [this](std::string_view name) -> std::optional<DivisorClass> {
    if (name.size() != 3) return std::nullopt;
    auto z = parse_z32(name.substr(1));
    if (!z) return std::nullopt;
    if (name[0] == 'L') return L[slot(*z)];
    if (name[0] == 'D' && construction) return construction->data.branch_class(*z);
    return std::nullopt;
  };
}

SpecFile parse_spec(std::string_view text, const std::string& origin) { return Parser(text, origin).run(); }

SpecFile load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("error reading '" + path.string() + "'");
  return parse_spec(buf.str(), path.string());
}

}  // namespace tricover
