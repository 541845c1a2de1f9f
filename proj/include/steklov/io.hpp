#ifndef STEKLOV_IO_HPP
#define STEKLOV_IO_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "steklov/analysis.hpp"
#include "steklov/boundary.hpp"
#include "steklov/catalog.hpp"
#include "steklov/error.hpp"
#include "steklov/expression.hpp"
#include "steklov/solvers.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/tables.hpp"

namespace steklov {

using json = nlohmann::json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(origin + " is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Spectrum cache
// ---------------------------------------------------------------------------

/// Cache document; doubles are emitted as shortest round-trip decimals, so a
/// reload reproduces every bit.
inline json spectrum_to_json(const Spectrum& spec) {
  json modes = json::array();
  for (const auto& m : spec.modes()) {
    modes.push_back({{"family", family_name(m.family)}, {"nu", m.nu}, {"delta", m.delta}, {"normConst", m.norm_const()}});
  }
  return {{"h", spec.rectangle().h()}, {"selection", policy_name(spec.policy())}, {"modes", std::move(modes)}};
}

/// Rebuilds a spectrum from a cache document. Every mode is recomputed from
/// its family and nu; the characteristic residual must vanish to `residual_tol`
/// and the stored delta and normConst must agree with the recomputation.
inline Spectrum spectrum_from_json(const json& j, double residual_tol = 1e-9) {
  try {
    const Rectangle rect(j.at("h").get<double>());
    const auto policy = policy_from_name(j.at("selection").get<std::string>());
    std::vector<SteklovMode> modes;
    for (const auto& jm : j.at("modes")) {
      const Family f = family_from_name(jm.at("family").get<std::string>());
      const double nu = jm.at("nu").get<double>();
      const std::string label = family_name(f) + " nu=" + format_number(nu);
      if (is_separable(f)) {
        const double r = characteristic_residual(f, nu, rect);
        if (!(std::abs(r) <= residual_tol)) {
          throw DomainError("cached mode " + label + " fails its characteristic equation (residual " +
                            format_number(r, 3) + ")");
        }
      }
      SteklovMode m = make_mode(f, nu, rect);
      const double delta = jm.at("delta").get<double>();
      if (!(std::abs(delta - m.delta) <= 1e-12 * std::max(1.0, m.delta))) {
        throw DomainError("cached mode " + label + " stores delta " + format_number(delta) + ", recomputed " +
                          format_number(m.delta));
      }
      const double nc = jm.at("normConst").get<double>();
      if (!(std::abs(nc - m.norm_const()) <= 1e-9 * std::abs(m.norm_const()) + 1e-300)) {
        throw DomainError("cached mode " + label + " stores normConst " + format_number(nc) + ", recomputed " +
                          format_number(m.norm_const()));
      }
      m.index = modes.size();
      modes.push_back(m);
    }
    return Spectrum(rect, std::move(modes), policy);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed spectrum cache: ") + e.what());
  }
}

inline void save_spectrum_cache(const Spectrum& spec, const std::string& path) {
  write_text_file(path, spectrum_to_json(spec).dump(2) + "\n");
}

inline Spectrum load_spectrum_cache(const std::string& path) {
  return spectrum_from_json(parse_json_text(read_text_file(path), "spectrum cache '" + path + "'"));
}

/// Eigenvalue listing with header "index,family,nu,delta".
inline void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
  out << "index,family,nu,delta\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& m = spec[i];
    out << i << ',' << family_name(m.family) << ',' << format_number(m.nu) << ',' << format_number(m.delta) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Boundary-data specifications
// ---------------------------------------------------------------------------

/// Parsed boundary data plus what is known about it.
struct BoundaryData {
  BoundaryFunction g;
  std::optional<std::string> builtin;
  std::optional<ExactSolution> exact;
  std::optional<ProblemKind> builtin_kind;
};

namespace detail {

inline SideMap side_map_from_json(const json& v, const std::string& side) {
  if (v.is_number()) {
    const double c = v.get<double>();
    return [c](double, double) { return c; };
  }
  if (v.is_string()) {
    const auto e = Expression::parse(v.get<std::string>());
    return [e](double x, double y) { return e(x, y); };
  }
  throw DomainError("side " + side + " must be a number or an expression string");
}

}  // namespace detail

inline BoundaryData builtin_data(const std::string& name, const Rectangle& rect, double b) {
  auto pb = builtin_problem(name, rect, b);
  return {pb.data, name, pb.exact, pb.kind};
}

/// {"builtin": name} | {"expr": text} | {"sides": {"G1": c|expr, ..., "G4": ...}}
inline BoundaryData boundary_from_json(const json& j, const Rectangle& rect, double b = 1.0) {
  if (!j.is_object() || j.size() != 1) {
    throw DomainError("boundary spec must be an object with exactly one of builtin, expr, sides");
  }
  try {
    if (j.contains("builtin")) return builtin_data(j.at("builtin").get<std::string>(), rect, b);
    if (j.contains("expr")) return {BoundaryFunction::from_expression(Expression::parse(j.at("expr").get<std::string>())), {}, {}, {}};
    if (j.contains("sides")) {
      const json& s = j.at("sides");
      std::array<SideMap, 4> maps;
      for (Side side : kAllSides) {
        const std::string key = side_name(side);
        if (!s.contains(key)) throw DomainError("boundary spec 'sides' is missing " + key);
        maps[static_cast<std::size_t>(side)] = detail::side_map_from_json(s.at(key), key);
      }
      if (s.size() != 4) throw DomainError("boundary spec 'sides' accepts only G1, G2, G3, G4");
      return {BoundaryFunction("sides " + s.dump(), maps), {}, {}, {}};
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed boundary spec: ") + e.what());
  }
  throw DomainError("boundary spec must use one of the keys builtin, expr, sides");
}

/// Command-line form: builtin:NAME | expr:TEXT | file:PATH (PATH holds the JSON form).
inline BoundaryData boundary_from_argument(std::string_view arg, const Rectangle& rect, double b = 1.0) {
  const auto colon = arg.find(':');
  if (colon == std::string_view::npos) throw DomainError("boundary data '" + std::string(arg) + "' needs a builtin:, expr: or file: prefix");
  const std::string scheme(arg.substr(0, colon));
  const std::string rest(arg.substr(colon + 1));
  if (scheme == "builtin") return builtin_data(rest, rect, b);
  if (scheme == "expr") return {BoundaryFunction::from_expression(Expression::parse(rest)), {}, {}, {}};
  if (scheme == "file") return boundary_from_json(parse_json_text(read_text_file(rest), "boundary file '" + rest + "'"), rect, b);
  throw DomainError("unknown boundary data scheme '" + scheme + "'");
}

// ---------------------------------------------------------------------------
// Error reports
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& error_report_fields() {
  static const std::vector<std::string> f{"M",        "rerr_inf",        "rerr_2",           "err_L2_boundary",
                                          "err_sup_boundary", "err_L2_interior", "err_sup_interior", "spectral_tail",
                                          "robin_bound"};
  return f;
}

inline json error_report_to_json(const ErrorReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"M", r.M},
          {"rerr_inf", r.rerr_inf},
          {"rerr_2", r.rerr_2},
          {"err_L2_boundary", r.err_L2_boundary},
          {"err_sup_boundary", r.err_sup_boundary},
          {"err_L2_interior", opt(r.err_L2_interior)},
          {"err_sup_interior", opt(r.err_sup_interior)},
          {"spectral_tail", opt(r.spectral_tail)},
          {"robin_bound", opt(r.robin_bound)}};
}

/// Missing optional fields are left empty.
inline void write_error_reports_csv(std::ostream& out, const std::vector<ErrorReport>& reports) {
  const auto& f = error_report_fields();
  for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
  out << '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : reports) {
    out << r.M << ',' << format_number(r.rerr_inf) << ',' << format_number(r.rerr_2) << ','
        << format_number(r.err_L2_boundary) << ',' << format_number(r.err_sup_boundary) << ',' << opt(r.err_L2_interior)
        << ',' << opt(r.err_sup_interior) << ',' << opt(r.spectral_tail) << ',' << opt(r.robin_bound) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Grids, points and tables
// ---------------------------------------------------------------------------

/// Tensor grid over the closed rectangle, x fastest. With an exact solution
/// the header is "x,y,u,exact,error" (error = exact - u), else "x,y,u".
inline void write_grid_csv(std::ostream& out, const SteklovApproximation& u, std::size_t nx, std::size_t ny,
                           const std::optional<ExactSolution>& exact, int digits = 6, unsigned threads = 1) {
  const auto values = u.eval_grid(nx, ny, threads);
  const double h = u.rectangle().h();
  out << (exact ? "x,y,u,exact,error\n" : "x,y,u\n");
  for (std::size_t k = 0; k < ny; ++k) {
    const double y = SteklovApproximation::grid_coordinate(k, ny, h);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = SteklovApproximation::grid_coordinate(i, nx, 1.0);
      const double v = values[k * nx + i];
      out << format_number(x, digits) << ',' << format_number(y, digits) << ',' << format_number(v, digits);
      if (exact) {
        const double e = exact->value(x, y);
        out << ',' << format_number(e, digits) << ',' << format_number(e - v, digits);
      }
      out << '\n';
    }
  }
}

/// Reads "x,y" rows; blank lines, '#' comments and a non-numeric header are skipped.
inline std::vector<Point> parse_points_csv(const std::string& text) {
  std::vector<Point> pts;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t ux = 0, uy = 0;
      const std::string xs = line.substr(0, comma), ys = line.substr(comma + 1);
      const double x = std::stod(xs, &ux);
      const double y = std::stod(ys, &uy);
      if (xs.find_first_not_of(" \t", ux) != std::string::npos || ys.find_first_not_of(" \t", uy) != std::string::npos) {
        throw std::invalid_argument("trailing text");
      }
      pts.push_back({x, y});
    } catch (const std::exception&) {
      if (pts.empty() && lineno == 1) continue;
      throw DomainError("points file line " + std::to_string(lineno) + " is not 'x,y': " + line);
    }
  }
  return pts;
}

inline void write_points_csv(std::ostream& out, const SteklovApproximation& u, const std::vector<Point>& pts,
                             const std::optional<ExactSolution>& exact, int digits = 6) {
  out << (exact ? "x,y,u,exact,error\n" : "x,y,u\n");
  for (const Point& p : pts) {
    const double v = u.eval(p.x, p.y);
    out << format_number(p.x, digits) << ',' << format_number(p.y, digits) << ',' << format_number(v, digits);
    if (exact) {
      const double e = exact->value(p.x, p.y);
      out << ',' << format_number(e, digits) << ',' << format_number(std::abs(e - v), digits);
    }
    out << '\n';
  }
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace detail

inline void write_table_csv(std::ostream& out, const TableReproduction& t, bool header = true) {
  if (header) out << "table,row,column,computed,reference,deviation,tolerance,mode,agree,note\n";
  for (const auto& e : t.entries) {
    out << t.number << ',' << e.row << ',' << detail::csv_field(e.column) << ',' << format_number(e.computed, 9) << ','
        << format_number(e.reference, 9) << ',' << format_number(e.deviation(), 3) << ','
        << format_number(e.tolerance, 3) << ',' << (e.relative ? "relative" : "absolute") << ','
        << (e.within ? "yes" : "no") << ',' << detail::csv_field(e.note) << '\n';
  }
}

inline json table_to_json(const TableReproduction& t) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    entries.push_back({{"row", e.row},
                       {"column", e.column},
                       {"computed", e.computed},
                       {"reference", e.reference},
                       {"deviation", e.deviation()},
                       {"tolerance", e.tolerance},
                       {"relative", e.relative},
                       {"agree", e.within},
                       {"note", e.note}});
  }
  return {{"table", t.number}, {"title", t.title}, {"within", t.within_count()}, {"entries", t.entries.size()},
          {"values", std::move(entries)}};
}

inline json invariant_report_to_json(const InvariantReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"tolerance", c.tolerance}, {"detail", c.detail}});
  }
  return {{"all_passed", r.all_passed()}, {"checks", std::move(checks)}};
}

}  // namespace steklov

#endif  // STEKLOV_IO_HPP
