#ifndef STEKLOV_CLI_HPP
#define STEKLOV_CLI_HPP

#include <cstddef>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steklov/analysis.hpp"
#include "steklov/catalog.hpp"
#include "steklov/error.hpp"
#include "steklov/io.hpp"
#include "steklov/properties.hpp"
#include "steklov/solvers.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/tables.hpp"

namespace steklov::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidConfig = 2,
  kRootFinding = 3,
  kQuadrature = 4,
  kIoFailure = 5,
};

/// Settings shared by every command; filled from flags, validated before use.
struct RunConfig {
  std::string command;
  double h = 1.0;
  std::size_t M = 5;
  std::vector<std::size_t> per_family;  ///< present (possibly empty) when --per-family was given
  std::vector<std::size_t> global;
  std::string selection;
  std::optional<std::size_t> count;
  std::string kind;
  double b = 1.0;
  std::string g;
  std::string exact;
  std::size_t grid = 101;
  std::string points;
  double abstol = 1e-10;
  double reltol = 1e-6;
  std::string out;
  std::string format;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string which = "1-14";
  std::string cache;
  std::string load;
  std::string coefficients_out;
  bool full_precision = false;
  bool corner_reduction = false;
};

namespace detail {

inline CoefficientOptions coefficient_options(const RunConfig& c) {
  if (!(c.abstol >= 0.0) || !(c.reltol >= 0.0) || (c.abstol == 0.0 && c.reltol == 0.0)) {
    throw DomainError("--abstol and --reltol must be non-negative and not both zero");
  }
  return {{c.abstol, c.reltol, 2000}, c.threads};
}

inline Rectangle rectangle(const RunConfig& c) {
  if (!(c.h > 0.0) || !(c.h <= 1.0)) throw DomainError("--h must lie in (0, 1], got " + format_number(c.h));
  return Rectangle(c.h);
}

/// Resolves the selection policy and the expansion order from
/// --per-family [M], --global [M], --selection and --M.
inline std::pair<SelectionPolicy, std::size_t> selection(const RunConfig& c, const CLI::App& app) {
  const bool pf = app.count("--per-family") > 0;
  const bool gl = app.count("--global") > 0;
  const bool named = !c.selection.empty();
  if (static_cast<int>(pf) + static_cast<int>(gl) + static_cast<int>(named) > 1) {
    throw DomainError("choose at most one of --per-family, --global, --selection");
  }
  SelectionPolicy policy = SelectionPolicy::PerFamily;
  std::size_t M = c.M;
  if (pf && !c.per_family.empty()) M = c.per_family.front();
  if (gl) {
    policy = SelectionPolicy::GlobalSorted;
    if (!c.global.empty()) M = c.global.front();
  }
  if (named) policy = policy_from_name(c.selection);
  if (M < 1) throw DomainError("expansion order M must be at least 1");
  return {policy, M};
}

/// Writes to --out when given, else to the fallback stream.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }

private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

inline void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw DomainError("unsupported --format '" + f + "'");
}

struct Problem {
  std::shared_ptr<const Spectrum> spec;
  BoundaryData data;
  ProblemKind kind;
};

inline Problem prepare_problem(const RunConfig& c, const CLI::App& app) {
  if (c.g.empty()) throw DomainError("--g is required");
  std::shared_ptr<const Spectrum> spec;
  if (!c.load.empty()) {
    spec = std::make_shared<const Spectrum>(load_spectrum_cache(c.load));
  } else {
    const auto [policy, M] = selection(c, app);
    spec = std::make_shared<const Spectrum>(build_spectrum(rectangle(c), M, policy));
  }
  const Rectangle& rect = spec->rectangle();
  BoundaryData data = boundary_from_argument(c.g, rect, c.b);
  ProblemKind kind;
  if (!c.kind.empty()) {
    kind = kind_from_name(c.kind);
  } else if (data.builtin_kind) {
    kind = *data.builtin_kind;
  } else {
    throw DomainError("--kind is required for non-builtin boundary data");
  }
  if (kind == ProblemKind::Robin && (!(c.b > 0.0) || !std::isfinite(c.b))) {
    throw DomainError("Robin problems need --b > 0");
  }
  if (!c.exact.empty()) data.exact = exact_solution(c.exact);
  // A builtin's exact solution only solves the problem it was built for.
  if (data.builtin_kind && *data.builtin_kind != kind && c.exact.empty()) data.exact.reset();
  if (c.corner_reduction && kind != ProblemKind::Dirichlet) {
    throw DomainError("--corner-reduction applies to Dirichlet problems only");
  }
  return {std::move(spec), std::move(data), kind};
}

inline std::vector<Point> requested_points(const RunConfig& c) {
  if (c.points == "paper") {
    const auto& p = reference_points();
    return {p.begin(), p.end()};
  }
  return parse_points_csv(read_text_file(c.points));
}

inline void write_coefficients(const std::string& path, const SteklovApproximation& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "index,family,nu,delta,coefficient,weight\n";
  const auto& spec = u.spectrum();
  for (std::size_t j = 0; j < spec.size(); ++j) {
    out << j << ',' << family_name(spec[j].family) << ',' << format_number(spec[j].nu) << ','
        << format_number(spec[j].delta) << ',' << format_number(u.coefficients().values[j]) << ','
        << format_number(u.weights()[j]) << '\n';
  }
}

// --------------------------------------------------------------------------

inline int cmd_spectrum(const RunConfig& c, const CLI::App& app, std::ostream& out) {
  const std::string format = c.format.empty() ? "csv" : c.format;
  require_format(format, {"csv", "json"});
  const Rectangle rect = rectangle(c);
  Spectrum spec = [&] {
    if (c.count) {
      if (app.count("--per-family") || app.count("--global") || app.count("--M")) {
        throw DomainError("--count selects the smallest eigenvalues and excludes --M, --per-family and --global");
      }
      const auto policy = c.selection.empty() ? SelectionPolicy::GlobalSorted : policy_from_name(c.selection);
      return build_sorted_spectrum(rect, *c.count, 1e-13, policy);
    }
    const auto [policy, M] = selection(c, app);
    return build_spectrum(rect, M, policy);
  }();
  if (!c.cache.empty()) save_spectrum_cache(spec, c.cache);
  Sink sink(c.out, out);
  if (format == "json") {
    sink.stream() << spectrum_to_json(spec).dump(2) << '\n';
  } else {
    write_spectrum_csv(sink.stream(), spec);
  }
  return kOk;
}

inline int cmd_solve(const RunConfig& c, const CLI::App& app, std::ostream& out, bool grid_only) {
  const std::string format = c.format.empty() ? "csv" : c.format;
  require_format(format, {"csv"});
  if (c.grid < 2) throw DomainError("--grid needs at least 2 points per direction");
  const auto pb = prepare_problem(c, app);
  const auto u = solve(pb.kind, pb.data.g, pb.spec, c.b, c.corner_reduction, coefficient_options(c));
  const int digits = c.full_precision ? 17 : 6;
  if (!c.coefficients_out.empty()) write_coefficients(c.coefficients_out, u);
  const bool want_points = !grid_only && !c.points.empty();
  const bool want_grid = grid_only || !want_points || app.count("--grid") > 0;
  if (want_points) {
    const auto pts = requested_points(c);
    for (const Point& p : pts) u.rectangle().require_contains(p.x, p.y);
    // Points go to stdout whenever a grid claims --out.
    if (want_grid) {
      write_points_csv(out, u, pts, pb.data.exact, digits);
    } else {
      Sink sink(c.out, out);
      write_points_csv(sink.stream(), u, pts, pb.data.exact, digits);
    }
  }
  if (want_grid) {
    if (want_points && c.out.empty()) throw DomainError("grid output alongside --points needs --out");
    Sink sink(c.out, out);
    write_grid_csv(sink.stream(), u, c.grid, c.grid, pb.data.exact, digits, c.threads);
  }
  return kOk;
}

inline int cmd_tables(const RunConfig& c, const CLI::App& app, std::ostream& out, std::ostream& err) {
  const std::string format = c.format.empty() ? "csv" : c.format;
  require_format(format, {"csv", "json"});
  const auto wanted = parse_table_list(c.which);
  const bool h_given = app.count("--h") > 0;
  if (h_given) rectangle(c);
  TableOptions topt;
  topt.coefficients = coefficient_options(c);
  TableReproducer rep(topt);
  std::vector<TableReproduction> results;
  for (int n : wanted) {
    if (n == 8) {
      err << "table 8 carries no numeric data; skipped\n";
      continue;
    }
    double table_h = 1.0;
    for (const auto& t : reference::kRerrTables) {
      if (t.number == n) table_h = t.h;
    }
    if (h_given && table_h != c.h) {
      if (wanted.size() == 1 || n <= 3 || n >= 11) {
        throw DomainError("table " + std::to_string(n) + " is defined at h=" + format_number(table_h) + ", not " +
                          format_number(c.h));
      }
      continue;
    }
    results.push_back(rep.reproduce(n));
  }
  std::size_t within = 0, total = 0;
  Sink sink(c.out, out);
  if (format == "json") {
    json arr = json::array();
    for (const auto& t : results) arr.push_back(table_to_json(t));
    sink.stream() << arr.dump(2) << '\n';
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (format == "csv") write_table_csv(sink.stream(), results[i], i == 0);
    within += results[i].within_count();
    total += results[i].entries.size();
  }
  err << "summary: " << within << " of " << total << " entries within tolerance across " << results.size()
      << " tables\n";
  return kOk;
}

inline int cmd_check(const RunConfig& c, const CLI::App& app, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  require_format(format, {"text", "json"});
  const auto [policy, M] = selection(c, app);
  PropertyOptions opt;
  opt.policy = policy;
  opt.tol.seed = c.seed;
  opt.threads = c.threads;
  const auto report = property_suite(rectangle(c), M, opt);
  Sink sink(c.out, out);
  if (format == "json") {
    sink.stream() << invariant_report_to_json(report).dump(2) << '\n';
  } else {
    for (const auto& k : report.checks) {
      sink.stream() << (k.passed ? "PASS " : "FAIL ") << k.name << ": worst " << format_number(k.worst, 3)
                    << " (tolerance " << format_number(k.tolerance, 3) << ")";
      if (!k.detail.empty()) sink.stream() << " [" << k.detail << "]";
      sink.stream() << '\n';
    }
    sink.stream() << (report.all_passed() ? "all checks passed" : "some checks failed") << '\n';
  }
  return report.all_passed() ? kOk : kCheckFailed;
}

inline void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--h", c.h, "half-height of the rectangle (-1,1)x(-h,h)");
  sub->add_option("--M", c.M, "expansion order");
  sub->add_option("--per-family", c.per_family, "first M roots of every family (optionally give M)")->expected(0, 1);
  sub->add_option("--global", c.global, "constant plus the 8M smallest eigenvalues (optionally give M)")->expected(0, 1);
  sub->add_option("--selection", c.selection, "per-family | global-sorted | global-inclusive");
  sub->add_option("--abstol", c.abstol, "absolute quadrature tolerance");
  sub->add_option("--reltol", c.reltol, "relative quadrature tolerance");
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--format", c.format, "output format");
  sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  sub->add_option("--seed", c.seed, "seed for randomized checks");
}

inline void add_problem(CLI::App* sub, RunConfig& c) {
  sub->add_option("--kind", c.kind, "dirichlet | robin | neumann (default: the builtin's own kind)");
  sub->add_option("--b", c.b, "Robin coefficient");
  sub->add_option("--g", c.g, "boundary data: builtin:NAME | expr:TEXT | file:PATH");
  sub->add_option("--exact", c.exact, "closed-form solution for error columns");
  sub->add_option("--grid", c.grid, "grid points per direction");
  sub->add_option("--load", c.load, "solve on a cached spectrum instead of building one");
  sub->add_option("--coefficients", c.coefficients_out, "write the Steklov coefficients to this CSV");
  sub->add_flag("--full-precision", c.full_precision, "17 significant digits instead of 6");
  sub->add_flag("--corner-reduction", c.corner_reduction, "expand the data minus its corner bilinear interpolant");
}

}  // namespace detail

/// Runs the command line; returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig c;
  CLI::App app{"Laplace boundary value problems on rectangles by Steklov expansion", "steklov"};
  // --h is the aspect ratio, so help is long-form only.
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  auto* spectrum = app.add_subcommand("spectrum", "compute, list and cache eigenvalues");
  auto* solve_cmd = app.add_subcommand("solve", "solve a problem; write grid and point values");
  auto* tables = app.add_subcommand("tables", "reproduce published tables");
  auto* check = app.add_subcommand("check", "run the invariant and property suite");
  auto* grid = app.add_subcommand("grid", "solve a problem and write only the grid");
  for (auto* s : {spectrum, solve_cmd, tables, check, grid}) detail::add_common(s, c);
  spectrum->add_option("--count", c.count, "constant plus this many smallest eigenvalues");
  spectrum->add_option("--cache", c.cache, "also write the JSON spectrum cache here");
  detail::add_problem(solve_cmd, c);
  detail::add_problem(grid, c);
  solve_cmd->add_option("--points", c.points, "paper (the five reference points P1..P5) | PATH of x,y rows");
  tables->add_option("--which", c.which, "table numbers, e.g. 1-3,11");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }

  try {
    if (spectrum->parsed()) return detail::cmd_spectrum(c, *spectrum, out);
    if (solve_cmd->parsed()) return detail::cmd_solve(c, *solve_cmd, out, false);
    if (grid->parsed()) return detail::cmd_solve(c, *grid, out, true);
    if (tables->parsed()) return detail::cmd_tables(c, *tables, out, err);
    if (check->parsed()) return detail::cmd_check(c, *check, out);
  } catch (const IncompatibleDataError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const RootFindingError& e) {
    err << "root finding failed: " << e.what() << '\n';
    return kRootFinding;
  } catch (const QuadratureError& e) {
    err << "quadrature failed: " << e.what() << '\n';
    return kQuadrature;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const CornerConflictError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kInvalidConfig;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace steklov::cli

#endif  // STEKLOV_CLI_HPP
