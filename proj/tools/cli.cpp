#include "cli.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "output.hpp"
#include "stirling/errors.hpp"
#include "stirling/grid.hpp"
#include "stirling/remainder.hpp"
#include "stirling/verify.hpp"

namespace stirling::cli {
namespace {

using nlohmann::ordered_json;

const std::vector<std::string> kQuantities = {"sigma", "lambda", "theta", "h", "lngamma"};
const std::vector<std::string> kSuites = {"thm1", "thm2", "thm3", "envelope", "oracle", "all", "altdiff"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  double tol = 1e-10;
  int gl_order = 96;
  std::string format = "csv";

  EvalConfig config() const {
    EvalConfig cfg;
    cfg.tol = tol;
    cfg.gl_order = gl_order;
    return cfg;
  }
  Format output_format() const { return format == "json" ? Format::json : Format::csv; }
};

struct GridFlags {
  double lo = 1e-2;
  double hi = 1e2;
  int count = 50;
  std::string scale = "log";

  GridSpec spec() const { return {lo, hi, count, scale == "linear" ? GridScale::linear : GridScale::log}; }
  ordered_json params() const { return {{"lo", lo}, {"hi", hi}, {"count", count}, {"scale", scale}}; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "Target absolute accuracy (relative for theta derivatives)")
      ->capture_default_str();
  cmd->add_option("--gl-order", c.gl_order, "Gauss-Laguerre order for x >= 1")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_grid(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--lo", g.lo, "Smallest abscissa")->capture_default_str();
  cmd->add_option("--hi", g.hi, "Largest abscissa")->capture_default_str();
  cmd->add_option("--count", g.count, "Number of abscissae (>= 2)")->capture_default_str();
  cmd->add_option("--scale", g.scale, "Spacing")->check(CLI::IsMember({"log", "linear"}))->capture_default_str();
}

// One quantity at one x.
struct QuantityValue {
  double value = 0.0;
  double accuracy = 0.0;
  Method method = Method::gauss_laguerre;
};

QuantityValue from_remainder(const RemainderEval& r, const std::string& q) {
  if (q == "sigma") return {r.sigma, r.accuracy, r.method};
  if (q == "lambda") return {r.lambda, lambda_accuracy(r), r.method};
  if (q == "theta") return {r.theta, r.accuracy, r.method};
  if (q == "h") return {r.h, h_accuracy(r), r.method};
  // lngamma: ln Gamma(x+1) = (x + 1/2) ln x - x + ln(2 pi)/2 + h
  const double x = r.x;
  const double elementary = (x + 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi);
  return {elementary + r.h, h_accuracy(r), r.method};
}

QuantityValue evaluate(double x, const std::string& q, std::optional<int> n, const EvalConfig& cfg) {
  if (q == "theta" && n) {
    const ScalarEval d = theta_deriv(*n, x, cfg);
    return {d.value, d.accuracy, d.method};
  }
  return from_remainder(sigma(x, cfg), q);
}

void require_n_with_theta(const std::optional<int>& n, const std::vector<std::string>& quantities) {
  if (n && std::find(quantities.begin(), quantities.end(), "theta") == quantities.end())
    throw UsageError("--n is only valid with the theta quantity");
}

ordered_json optional_int(const std::optional<int>& n) { return n ? ordered_json(*n) : ordered_json(nullptr); }

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

int cmd_eval(double x, const std::string& quantity, std::optional<int> n, const Common& c, std::ostream& out) {
  require_n_with_theta(n, {quantity});
  const EvalConfig cfg = c.config();
  const QuantityValue v = evaluate(x, quantity, n, cfg);
  const std::string method(to_string(v.method));
  if (c.output_format() == Format::csv) {
    CsvWriter csv(out);
    csv.row({"x", "quantity", "n", "value", "accuracy", "method"});
    csv.row({format_number(x), quantity, n ? std::to_string(*n) : "", format_number(v.value),
             format_number(v.accuracy), method});
  } else {
    const ordered_json params = {{"x", x},           {"quantity", quantity}, {"n", optional_int(n)},
                                 {"tol", c.tol},     {"gl_order", c.gl_order}};
    ordered_json record = {{"x", x},
                           {"quantity", quantity},
                           {"n", optional_int(n)},
                           {"value", v.value},
                           {"accuracy", v.accuracy},
                           {"method", method}};
    write_json(out, "eval", params, ordered_json::array({record}));
  }
  return kExitOk;
}

int cmd_table(const GridFlags& g, const std::vector<std::string>& quantities, std::optional<int> n, const Common& c,
              std::ostream& out) {
  require_n_with_theta(n, quantities);
  const EvalConfig cfg = c.config();
  validate(cfg);
  const std::vector<double> xs = abscissae(g.spec());

  const auto rows = map_indices<std::vector<QuantityValue>>(
      xs.size(),
      [&](std::size_t i) {
        std::vector<QuantityValue> row;
        std::optional<RemainderEval> r;
        for (const std::string& q : quantities) {
          if (q == "theta" && n) {
            const ScalarEval d = theta_deriv(*n, xs[i], cfg);
            row.push_back({d.value, d.accuracy, d.method});
            continue;
          }
          if (!r) r = sigma(xs[i], cfg);
          row.push_back(from_remainder(*r, q));
        }
        return row;
      },
      Execution::parallel);

  if (c.output_format() == Format::csv) {
    CsvWriter csv(out);
    std::vector<std::string> header{"x"};
    for (const auto& q : quantities) header.push_back(q);
    for (const auto& q : quantities) header.push_back(q + "_accuracy");
    csv.row(header);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<std::string> cells{format_number(xs[i])};
      for (const auto& v : rows[i]) cells.push_back(format_number(v.value));
      for (const auto& v : rows[i]) cells.push_back(format_number(v.accuracy));
      csv.row(cells);
    }
  } else {
    ordered_json params = g.params();
    params["quantities"] = quantities;
    params["n"] = optional_int(n);
    params["tol"] = c.tol;
    params["gl_order"] = c.gl_order;
    ordered_json records = ordered_json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ordered_json rec;
      rec["x"] = xs[i];
      for (std::size_t k = 0; k < quantities.size(); ++k) rec[quantities[k]] = rows[i][k].value;
      for (std::size_t k = 0; k < quantities.size(); ++k) rec[quantities[k] + "_accuracy"] = rows[i][k].accuracy;
      records.push_back(rec);
    }
    write_json(out, "table", params, records);
  }
  return kExitOk;
}

ordered_json report_json(const VerificationReport& r) {
  ordered_json details = ordered_json::array();
  for (const PointRecord& p : r.details) {
    details.push_back({{"x", p.x},
                       {"n", optional_int(p.n)},
                       {"value", p.value},
                       {"bound", p.bound},
                       {"margin", optional_number(p.margin)},
                       {"status", p.status ? ordered_json(std::string(to_string(*p.status))) : ordered_json(nullptr)}});
  }
  return {{"check_name", r.check_name},
          {"passed", r.passed},
          {"status", std::string(to_string(r.status))},
          {"worst_margin", r.worst_margin},
          {"worst_location", r.worst_location},
          {"details", details}};
}

struct VerifyFlags {
  std::string suite = "all";
  int nmax = 8;
  double h = 0.05;
};

int cmd_verify(const VerifyFlags& v, const GridFlags& g, const Common& c, std::ostream& out) {
  const EvalConfig cfg = c.config();
  validate(cfg);
  const GridSpec grid = g.spec();
  const bool all = v.suite == "all";

  std::vector<VerificationReport> reports;
  if (all || v.suite == "envelope") reports.push_back(check_envelope(grid, cfg));
  if (all || v.suite == "thm1") reports.push_back(check_sigma_increasing(grid, cfg));
  if (all || v.suite == "thm2") reports.push_back(check_lambda_decreasing(grid, cfg));
  if (all || v.suite == "thm3") reports.push_back(check_complete_monotonicity(grid, v.nmax, cfg));
  if (all || v.suite == "oracle") reports.push_back(cross_check_vs_oracle(grid, cfg));
  if (v.suite == "altdiff")
    reports.push_back(check_alternating_differences(grid, std::min(v.nmax, kMaxDifferenceOrder), v.h, cfg));

  if (c.output_format() == Format::csv) {
    CsvWriter csv(out);
    csv.row({"check_name", "status", "passed", "worst_margin", "worst_location", "points"});
    for (const auto& r : reports)
      csv.row({r.check_name, std::string(to_string(r.status)), r.passed ? "true" : "false",
               format_number(r.worst_margin), format_number(r.worst_location), std::to_string(r.details.size())});
  } else {
    ordered_json params = g.params();
    params["suite"] = v.suite;
    params["nmax"] = v.nmax;
    params["h"] = v.h;
    params["tol"] = c.tol;
    params["gl_order"] = c.gl_order;
    ordered_json records = ordered_json::array();
    for (const auto& r : reports) records.push_back(report_json(r));
    write_json(out, "verify", params, records);
  }

  const bool any_fail = std::any_of(reports.begin(), reports.end(),
                                    [](const VerificationReport& r) { return r.status == CheckStatus::fail; });
  const bool any_inconclusive = std::any_of(reports.begin(), reports.end(), [](const VerificationReport& r) {
    return r.status == CheckStatus::inconclusive;
  });
  if (any_fail) return kExitFailure;
  if (any_inconclusive) return kExitInconclusive;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stirling remainder: evaluation, tables and monotonicity certificates", "stirling"};
  app.require_subcommand(1);

  Common common;
  GridFlags grid;

  auto* eval = app.add_subcommand("eval", "Evaluate one quantity at one point");
  double x = 0.0;
  std::string quantity;
  std::optional<int> n;
  eval->add_option("--x", x, "Argument x > 0")->required();
  eval->add_option("--quantity", quantity, "sigma | lambda | theta | h | lngamma")
      ->required()
      ->check(CLI::IsMember(kQuantities));
  eval->add_option("--n", n, "Derivative order (theta only)");
  add_common(eval, common);

  auto* table = app.add_subcommand("table", "Tabulate quantities over a grid");
  std::vector<std::string> quantities{"sigma"};
  std::optional<int> table_n;
  add_grid(table, grid);
  table->add_option("--quantities", quantities, "Comma-separated quantity list")
      ->delimiter(',')
      ->check(CLI::IsMember(kQuantities))
      ->capture_default_str();
  table->add_option("--n", table_n, "Derivative order for the theta column");
  add_common(table, common);

  auto* verify = app.add_subcommand("verify", "Certify monotonicity properties over a grid");
  VerifyFlags vflags;
  verify->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  verify->add_option("--suite", vflags.suite, "thm1 | thm2 | thm3 | envelope | oracle | all | altdiff")
      ->check(CLI::IsMember(kSuites))
      ->capture_default_str();
  verify->add_option("--nmax", vflags.nmax, "Highest derivative order for thm3")->capture_default_str();
  verify->add_option("--h", vflags.h, "Step for the altdiff suite")->capture_default_str();
  add_grid(verify, grid);
  add_common(verify, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(x, quantity, n, common, out);
    if (table->parsed()) return cmd_table(grid, quantities, table_n, common, out);
    return cmd_verify(vflags, grid, common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AccuracyError& e) {
    err << "accuracy failure: " << e.what() << " (best value " << format_number(e.best_value())
        << ", achieved bound " << format_number(e.achieved_bound()) << ")\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace stirling::cli
