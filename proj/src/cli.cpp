#include "tricover/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <sstream>

#include "tricover/constructions.hpp"
#include "tricover/errors.hpp"
#include "tricover/spec_file.hpp"

namespace tricover {

namespace {

using nlohmann::json;

H0Options resolve_options(const GlobalOptions& g, const SpecFile* spec) {
  H0Options o;
  if (spec) {
    if (spec->prime) o.prime = *spec->prime;
    if (spec->seed) o.seed = *spec->seed;
    if (spec->trials) o.trials = *spec->trials;
  }
  if (g.prime) o.prime = *g.prime;
  if (g.seed) o.seed = *g.seed;
  if (g.trials) o.trials = *g.trials;
  if (o.trials < 1) throw InputError("--trials must be positive");
  return o;
}

CommandResult input_error(const std::string& msg) { return {2, "", "error: " + msg + "\n"}; }

json row_json(const std::optional<TableRow>& row) {
  if (!row) return nullptr;
  return json{{"K2", row->K2}, {"pg", row->pg}, {"q", row->q}, {"deg_sigma", row->deg_sigma},
              {"base_points", row->base_points}};
}

// Expected row and census become checks when the spec lists them.
void add_expectations(const ConstructionSpec& spec, ConstructionReport& r) {
  if (r.failed_stage) return;
  if (spec.expected_row && r.row) {
    const bool ok = *spec.expected_row == *r.row;
    r.checks.items.push_back({"row matches expected", ok, r.row->to_string() + " vs " + spec.expected_row->to_string()});
    if (!ok) r.failed_stage = "expected";
  }
  if (spec.expected_census && r.census) {
    const auto [n, m] = *spec.expected_census;
    const bool ok = r.census->n == n && r.census->m == m;
    std::ostringstream d;
    d << "(" << r.census->n << ", " << r.census->m << ") vs (" << n << ", " << m << ")";
    r.checks.items.push_back({"census matches expected", ok, d.str()});
    if (!ok && !r.failed_stage) r.failed_stage = "expected";
  }
}

std::string verify_text(const ConstructionReport& r) {
  std::ostringstream os;
  os << "construction: " << r.construction << "\n";
  for (const auto& c : r.checks.items) {
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  if (r.X) os << "invariants: K2 = " << r.X->K2 << ", p_g = " << r.X->pg << ", q = " << r.X->q << ", chi = " << r.X->chi << "\n";
  if (r.census) os << "census: n = " << r.census->n << " (A2), m = " << r.census->m << " (1/3(1,1))\n";
  if (r.base_points) {
    os << "base points: ";
    if (*r.base_points)
      os << **r.base_points << "\n";
    else
      os << "indeterminate\n";
  }
  if (r.canonical) os << "deg Sigma: " << r.canonical->deg_sigma << "\n";
  if (r.row) os << "row: " << r.row->to_string() << "\n";
  if (!r.assumptions.empty()) {
    os << "assumptions:\n";
    for (const auto& a : r.assumptions) os << "  - " << a << "\n";
  }
  if (r.passed())
    os << "result: PASS\n";
  else
    os << "result: FAIL at " << r.failed_stage.value_or("checks") << "\n";
  return os.str();
}

json verify_json(const ConstructionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks.items) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json inv = nullptr;
  if (r.X) inv = {{"K2", r.X->K2}, {"pg", r.X->pg}, {"q", r.X->q}, {"chi", r.X->chi}};
  json census = nullptr;
  if (r.census) census = {{"n", r.census->n}, {"m", r.census->m}};
  json base = nullptr;
  if (r.base_points && *r.base_points) base = **r.base_points;
  json deg = nullptr;
  if (r.canonical) deg = r.canonical->deg_sigma;
  return {{"construction", r.construction}, {"checks", checks},  {"invariants", inv},
          {"census", census},               {"base_points", base}, {"deg_sigma", deg},
          {"assumptions", r.assumptions}};
}

}  // namespace

CommandResult command_verify(const std::filesystem::path& path, const GlobalOptions& g) {
  try {
    const auto spec = load_spec(path);
    if (!spec.construction) return input_error(path.string() + ": no [branch] section, nothing to verify");
    auto report = run_pipeline(*spec.construction, resolve_options(g, &spec));
    add_expectations(*spec.construction, report);
    CommandResult res;
    res.exit_code = report.passed() ? 0 : 1;
    res.out = g.format == OutputFormat::json ? verify_json(report).dump(2) + "\n" : verify_text(report);
    if (auto f = report.checks.first_failure()) res.err = "check failed: " + f->name + "\n";
    return res;
  } catch (const InputError& e) {
    return input_error(e.what());
  }
}

CommandResult command_table(const std::optional<std::string>& only, const GlobalOptions& g) {
  try {
    const auto entries = invariant_tables(resolve_options(g, nullptr), only);
    CommandResult res;
    bool all = true;
    if (g.format == OutputFormat::json) {
      json arr = json::array();
      for (const auto& e : entries) {
        json o = row_json(e.row);
        if (o.is_null()) o = json::object();
        o["construction"] = e.construction;
        o["table"] = e.table;
        o["matches"] = e.matches;
        if (e.failed_stage) o["failed_stage"] = *e.failed_stage;
        arr.push_back(o);
        all = all && e.matches;
      }
      res.out = arr.dump(2) + "\n";
    } else {
      std::ostringstream os;
      int table = 0;
      for (const auto& e : entries) {
        if (e.table != table) {
          table = e.table;
          os << (os.tellp() > 0 ? "\n" : "") << "table " << table << "\n";
          os << "  construction  (K2, p_g, q, deg Sigma, base points)  match\n";
        }
        std::string row = e.row ? e.row->to_string() : "failed at " + e.failed_stage.value_or("?");
        os << "  " << e.construction << std::string(14 - std::min<std::size_t>(13, e.construction.size()), ' ') << row
           << std::string(row.size() < 38 ? 38 - row.size() : 1, ' ') << (e.matches ? "yes" : "NO") << "\n";
        all = all && e.matches;
      }
      res.out = os.str();
    }
    res.exit_code = all ? 0 : 1;
    return res;
  } catch (const InputError& e) {
    return input_error(e.what());
  }
}

CommandResult command_h0(const std::string& expr, const std::filesystem::path& path, const GlobalOptions& g) {
  try {
    const auto spec = load_spec(path);
    const auto opts = resolve_options(g, &spec);
    const auto cls = parse_class_expression(expr, spec.surface, spec.resolver());
    const auto cfgs = sample_configurations(spec.surface, opts);
    std::vector<int> values;
    for (const auto& c : cfgs) values.push_back(h0(cls, c));
    const int value = *std::min_element(values.begin(), values.end());
    const bool stable = std::all_of(values.begin(), values.end(), [&](int v) { return v == value; });

    CommandResult res;
    if (g.format == OutputFormat::json) {
      json o = {{"expression", expr}, {"class", cls.to_string()}, {"h0", value},  {"trials", opts.trials},
                {"seed", opts.seed},  {"prime", opts.prime},       {"values", values}, {"stable", stable}};
      res.out = o.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "h0(" << expr << ") = " << value << "\n";
      os << "class " << cls.to_string() << "; minimum over " << opts.trials << " trials (seed " << opts.seed
         << ", prime " << opts.prime << ")" << (stable ? "" : ", values vary across trials") << "\n";
      res.out = os.str();
    }
    return res;
  } catch (const InputError& e) {
    return input_error(e.what());
  }
}

CommandResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"tricover: canonical triple covers via Z3^2 building data"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  GlobalOptions g;
  std::uint64_t seed = 0, prime = 0;
  int trials = 0;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "first random seed (default 0)");
  auto* trials_opt = app.add_option("--trials", trials, "random configurations per h0 value (default 5)");
  auto* prime_opt = app.add_option("--prime", prime, "field characteristic (default 2147483647)");

  std::string verify_file;
  auto* verify = app.add_subcommand("verify", "run every check on a construction spec");
  verify->add_option("file", verify_file, "spec file")->required();

  std::string only;
  auto* table = app.add_subcommand("table", "reproduce the invariant tables of the built-in constructions");
  auto* only_opt = table->add_option("--only", only, "single construction name");

  std::string expr, h0_spec;
  auto* h0cmd = app.add_subcommand("h0", "h0 of a divisor class on the base surface of a spec");
  auto* expr_opt = h0cmd->add_option("expr", expr, "class expression, e.g. \"K + L01\"");
  h0cmd->add_option("--spec", h0_spec, "spec file")->required();

  // An expression such as "-K" would otherwise be read as a flag.
  std::vector<std::string> argv = args;
  std::optional<std::string> leading_expr;
  static const std::vector<std::string> valued = {"--spec", "--format", "--seed", "--trials", "--prime"};
  const auto h0_at = std::find(argv.begin(), argv.end(), "h0");
  for (auto i = h0_at == argv.end() ? argv.end() : h0_at + 1; i != argv.end(); ++i) {
    if (*i == "--") break;
    if (std::find(valued.begin(), valued.end(), *i) != valued.end()) {
      if (++i == argv.end()) break;
      continue;
    }
    if (i->rfind("--", 0) == 0 || *i == "-h") continue;
    leading_expr = *i;
    argv.erase(i);
    break;
  }
  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), ""};
  } catch (const CLI::CallForAllHelp&) {
    return {0, app.help("", CLI::AppFormatMode::All), ""};
  } catch (const CLI::ParseError& e) {
    return {2, "", std::string("error: ") + e.what() + "\n"};
  }

  g.format = format == "json" ? OutputFormat::json : OutputFormat::text;
  if (*seed_opt) g.seed = seed;
  if (*trials_opt) g.trials = trials;
  if (*prime_opt) g.prime = prime;

  if (*verify) return command_verify(verify_file, g);
  if (*table) return command_table(*only_opt ? std::optional<std::string>(only) : std::nullopt, g);
  if (leading_expr) {
    if (*expr_opt) return {2, "", "error: h0 takes one expression\n"};
    expr = *leading_expr;
  } else if (!*expr_opt) {
    return {2, "", "error: h0 needs a class expression\n"};
  }
  return command_h0(expr, h0_spec, g);
}

}  // namespace tricover
