// plbounds: evaluate eigenvalue lower bounds for the p-Laplace Dirichlet
// problem on conformally described planar domains, and check them against a
// finite-difference Rayleigh-quotient oracle.

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "plb/analytic_map.hpp"
#include "plb/p_laplace.hpp"
#include "plb/quadrature.hpp"
#include "plb/raster.hpp"
#include "plb/report.hpp"
#include "plb/sobolev.hpp"
#include "plb/spectral_bounds.hpp"

namespace {

using plb::Json;

struct Flags {
  std::string theorem = "infty";
  std::string map_spec;
  double p = 0.0;
  std::optional<double> alpha, K, beta, h, tol;
  int nodes = 64;
  int levels = 3;
  std::string out;
  std::string format;  // json|csv; per-subcommand default when empty
};

constexpr double kVerifyMargin = 0.05;  // oracle tolerance fraction for verify
constexpr int kPolylineSamples = 4096;
constexpr double kDefaultH = 1.0 / 64.0;
constexpr double kDefaultTol = 1e-7;
constexpr int kMaxIterations = 50000;

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void emit(const Flags& flags, const std::string& text) {
  if (flags.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(flags.out, std::ios::binary);
  if (!os) throw plb::ValidationError("cannot open output path '" + flags.out + "'");
  os << text;
}

Json spec_json(const std::string& subcommand, const Flags& f) {
  Json s;
  s["subcommand"] = subcommand;
  s["theorem"] = f.theorem;
  s["map"] = f.map_spec;
  s["p"] = f.p;
  s["alpha"] = f.alpha ? Json(*f.alpha) : Json(nullptr);
  s["K"] = f.K ? Json(*f.K) : Json(nullptr);
  s["beta"] = f.beta ? Json(*f.beta) : Json(nullptr);
  s["h"] = f.h ? Json(*f.h) : Json(nullptr);
  s["nodes"] = f.nodes;
  s["levels"] = f.levels;
  s["tol"] = f.tol ? Json(*f.tol) : Json(nullptr);
  s["format"] = f.format;
  return s;
}

void validate_common(const Flags& f, bool needs_p) {
  if (needs_p && !(f.p > 2.0))
    throw plb::ValidationError("--p must exceed 2 for eigenvalue bounds");
  if (f.alpha && !(*f.alpha > 1.0))
    throw plb::ValidationError("--alpha must exceed 1");
  if (f.K && !(*f.K >= 1.0)) throw plb::ValidationError("--K must be at least 1");
  if (f.beta && (!(*f.beta >= 0.0) || !(*f.beta < 1.0)))
    throw plb::ValidationError("--beta must lie in [0, 1)");
  if (f.h && !(*f.h > 0.0)) throw plb::ValidationError("--h must be positive");
  if (f.tol && !(*f.tol > 0.0)) throw plb::ValidationError("--tol must be positive");
  if (f.nodes < 8) throw plb::ValidationError("--nodes must be at least 8");
  if (f.levels < 1) throw plb::ValidationError("--levels must be at least 1");
}

void validate_theorem_flags(const Flags& f) {
  if (f.theorem == "alpha") {
    if (!f.alpha) throw plb::ValidationError("--theorem alpha requires --alpha");
    if (f.K || f.beta)
      throw plb::ValidationError("--K/--beta conflict with --theorem alpha");
  } else if (f.theorem == "infty") {
    if (f.alpha) throw plb::ValidationError("--alpha conflicts with --theorem infty");
    if (f.K || f.beta)
      throw plb::ValidationError("--K/--beta conflict with --theorem infty");
  } else if (f.theorem == "quasidisc") {
    if (!f.K) throw plb::ValidationError("--theorem quasidisc requires --K");
    if (f.alpha || f.beta)
      throw plb::ValidationError("--alpha/--beta conflict with --theorem quasidisc");
  } else if (f.theorem == "star") {
    if (!f.beta) throw plb::ValidationError("--theorem star requires --beta");
    if (f.alpha || f.K)
      throw plb::ValidationError("--alpha/--K conflict with --theorem star");
  } else {
    throw plb::ValidationError("--theorem must be one of alpha|infty|quasidisc|star");
  }
}

plb::BoundReport compute_bound(const Flags& f, const plb::AnalyticMap& map) {
  const plb::QuadratureGrid grid{f.nodes, f.nodes, f.levels};
  if (f.theorem == "alpha")
    return plb::lower_bound_alpha_regular(f.p, *f.alpha, map, grid);
  if (f.theorem == "infty") return plb::lower_bound_infty_regular(f.p, map, grid);
  const double area = plb::image_area(map, grid);
  if (f.theorem == "quasidisc")
    return plb::quasidisc_lower_bound(f.p, *f.K, area);
  return plb::star_spiral_lower_bound(f.p, *f.beta, area);
}

std::string bound_report_csv(const plb::BoundReport& r, const std::string& map_spec,
                             const std::optional<double>& oracle_lambda) {
  std::string header = "map,theorem,p,optimal_q";
  std::string row = csv_field(map_spec) + "," + plb::to_string(r.theorem_tag) + "," +
                    format_real(r.p) + "," + format_real(r.optimal_q);
  for (const auto& [name, value] : r.factors) {
    header += "," + name;
    row += "," + format_real(value);
  }
  header += ",log_rhs,lower_bound_lambda,oracle_lambda,margin";
  row += "," + format_real(r.log_rhs) + "," + format_real(r.lower_bound_lambda);
  if (oracle_lambda) {
    row += "," + format_real(*oracle_lambda) + "," +
           format_real(*oracle_lambda - r.lower_bound_lambda);
  } else {
    row += ",,";
  }
  return header + "\n" + row + "\n";
}

struct OracleRun {
  plb::EigenResult result;
  double mask_area = 0.0;
  double h = 0.0;
};

OracleRun run_oracle(const Flags& f, const plb::AnalyticMap& map) {
  const double h = f.h.value_or(kDefaultH);
  const Eigen::ArrayX2d poly = plb::boundary_polyline(map, kPolylineSamples);
  const plb::RasterDomain dom = plb::rasterize(poly, h);
  plb::SolverConfig cfg;
  cfg.p = f.p;
  cfg.tolerance = f.tol.value_or(kDefaultTol);
  cfg.max_iterations = kMaxIterations;
  OracleRun run;
  run.result = plb::first_eigenvalue(dom, cfg);
  run.mask_area = dom.mask_area();
  run.h = h;
  return run;
}

Json oracle_json(const OracleRun& run) {
  Json j;
  j["lambda"] = run.result.lambda;
  j["iterations"] = run.result.iterations;
  j["residual"] = run.result.residual;
  j["mask_area"] = run.mask_area;
  j["h"] = run.h;
  j["converged"] = run.result.converged;
  return j;
}

int cmd_bound(const Flags& f) {
  validate_common(f, true);
  validate_theorem_flags(f);
  if (f.map_spec.empty()) throw plb::ValidationError("bound requires --map");
  const plb::AnalyticMap map = plb::parse_map_spec(f.map_spec);
  const plb::BoundReport report = compute_bound(f, map);
  if (f.format == "csv") {
    emit(f, bound_report_csv(report, f.map_spec, std::nullopt));
  } else {
    Json j;
    j["spec"] = spec_json("bound", f);
    j["report"] = plb::bound_report_to_json(report);
    emit(f, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_oracle(const Flags& f) {
  validate_common(f, false);
  if (!(f.p >= 2.0)) throw plb::ValidationError("--p must be at least 2 for the oracle");
  if (f.map_spec.empty()) throw plb::ValidationError("oracle requires --map");
  const plb::AnalyticMap map = plb::parse_map_spec(f.map_spec);
  const OracleRun run = run_oracle(f, map);
  Json j;
  j["spec"] = spec_json("oracle", f);
  const Json fields = oracle_json(run);
  for (const auto& [key, value] : fields.items()) j[key] = value;
  emit(f, j.dump(2) + "\n");
  return run.result.converged ? 0 : 3;
}

int cmd_verify(const Flags& f) {
  validate_common(f, true);
  validate_theorem_flags(f);
  if (f.map_spec.empty()) throw plb::ValidationError("verify requires --map");
  const plb::AnalyticMap map = plb::parse_map_spec(f.map_spec);
  const plb::BoundReport report = compute_bound(f, map);
  const OracleRun run = run_oracle(f, map);
  const double lambda = run.result.lambda;
  const bool pass = report.lower_bound_lambda <= lambda * (1.0 + kVerifyMargin);
  Json j;
  j["spec"] = spec_json("verify", f);
  j["report"] = plb::bound_report_to_json(report);
  j["oracle"] = oracle_json(run);
  j["margin"] = lambda - report.lower_bound_lambda;
  j["pass"] = pass;
  emit(f, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

/// Expand sweep syntax inside a map spec: an integer range `n=2..6` or a
/// comma list `d=0.5,1,2`. Anything else is a single run.
std::vector<std::string> expand_sweep(const std::string& spec) {
  const auto range_pos = spec.find("..");
  if (range_pos != std::string::npos) {
    const auto eq = spec.rfind('=', range_pos);
    if (eq == std::string::npos)
      throw plb::ValidationError("malformed sweep range in '" + spec + "'");
    const std::string head = spec.substr(0, eq + 1);
    const int lo = std::stoi(spec.substr(eq + 1, range_pos - eq - 1));
    const int hi = std::stoi(spec.substr(range_pos + 2));
    if (hi < lo) throw plb::ValidationError("empty sweep range in '" + spec + "'");
    std::vector<std::string> out;
    for (int v = lo; v <= hi; ++v) out.push_back(head + std::to_string(v));
    return out;
  }
  const auto eq = spec.find("d=");
  if (eq != std::string::npos && spec.find(',', eq) != std::string::npos) {
    const std::string head = spec.substr(0, eq + 2);
    std::vector<std::string> out;
    std::string values = spec.substr(eq + 2);
    std::size_t start = 0;
    while (start <= values.size()) {
      const auto comma = values.find(',', start);
      const std::string v = values.substr(start, comma - start);
      if (!v.empty()) out.push_back(head + v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (out.empty()) throw plb::ValidationError("empty sweep list in '" + spec + "'");
    return out;
  }
  return {spec};
}

int cmd_table(const Flags& f) {
  validate_common(f, true);
  validate_theorem_flags(f);
  if (f.map_spec.empty()) throw plb::ValidationError("table requires --map");
  const std::vector<std::string> specs = expand_sweep(f.map_spec);

  std::vector<plb::BoundReport> reports;
  std::vector<std::optional<double>> lambdas;
  for (const std::string& s : specs) {
    const plb::AnalyticMap map = plb::parse_map_spec(s);
    reports.push_back(compute_bound(f, map));
    if (f.h)
      lambdas.push_back(run_oracle(f, map).result.lambda);
    else
      lambdas.push_back(std::nullopt);
  }

  std::string text;
  if (f.format == "json") {
    Json rows = Json::array();
    for (std::size_t k = 0; k < specs.size(); ++k) {
      Json row;
      row["map"] = specs[k];
      row["report"] = plb::bound_report_to_json(reports[k]);
      row["oracle_lambda"] = lambdas[k] ? Json(*lambdas[k]) : Json(nullptr);
      rows.push_back(row);
    }
    Json j;
    j["spec"] = spec_json("table", f);
    j["rows"] = rows;
    text = j.dump(2) + "\n";
  } else {
    for (std::size_t k = 0; k < specs.size(); ++k) {
      const std::string chunk = bound_report_csv(reports[k], specs[k], lambdas[k]);
      if (k == 0)
        text += chunk;
      else
        text += chunk.substr(chunk.find('\n') + 1);
    }
  }
  emit(f, text);

  if (reports.size() > 1) {
    bool nondec = true, noninc = true;
    for (std::size_t k = 1; k < reports.size(); ++k) {
      if (reports[k].log_rhs > reports[k - 1].log_rhs) nondec = false;
      if (reports[k].log_rhs < reports[k - 1].log_rhs) noninc = false;
    }
    std::cerr << "lower bound trend across rows: "
              << (nondec ? "nondecreasing" : noninc ? "nonincreasing" : "mixed")
              << "\n";
  }
  return 0;
}

int cmd_constants(const Flags& f) {
  const std::vector<double> rs = {3.0, 4.0, 6.0};
  std::vector<std::array<double, 3>> rows;  // r, q, value
  for (double r : rs) {
    for (int qi = 100; qi <= 195; qi += 5) {
      const double q = qi / 100.0;
      if (q < 2.0 && r > 2.0 * q / (2.0 - q) + 1e-12) continue;
      rows.push_back({r, q, plb::sp_constant({r, q, std::nullopt})});
    }
    rows.push_back({r, 2.0, plb::sp_constant({r, 2.0, std::numbers::pi})});
  }
  if (f.format == "json") {
    Json arr = Json::array();
    for (const auto& row : rows)
      arr.push_back(Json{{"r", row[0]}, {"q", row[1]}, {"value", row[2]}});
    Json j;
    j["spec"] = spec_json("constants", f);
    j["rows"] = arr;
    emit(f, j.dump(2) + "\n");
  } else {
    std::string text = "r,q,value\n";
    for (const auto& row : rows) {
      char key[64];
      std::snprintf(key, sizeof(key), "%.6g,%.6g,", row[0], row[1]);
      text += key + format_real(row[2]) + "\n";
    }
    emit(f, text);
  }
  return 0;
}

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--theorem", f.theorem, "alpha|infty|quasidisc|star");
  cmd->add_option("--map", f.map_spec,
                  "identity | epicycloid n=<int> | sine d=<real> | "
                  "poly coeffs=<c0,c1,...> (complex literals a+bi)");
  cmd->add_option("--p", f.p, "Rayleigh exponent p");
  cmd->add_option("--alpha", f.alpha, "Jacobian integrability exponent");
  cmd->add_option("--K", f.K, "quasiconformality coefficient");
  cmd->add_option("--beta", f.beta, "star/spiral shape parameter in [0,1)");
  cmd->add_option("--h", f.h, "oracle grid spacing");
  cmd->add_option("--nodes", f.nodes, "quadrature nodes per direction");
  cmd->add_option("--levels", f.levels, "quadrature refinement levels");
  cmd->add_option("--tol", f.tol, "oracle descent tolerance");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--format", f.format, "json|csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-Laplace Dirichlet eigenvalue lower bounds on conformal images"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print usage");  // keep --h free for grid spacing

  Flags flags;
  CLI::App* bound = app.add_subcommand("bound", "evaluate one eigenvalue bound");
  CLI::App* oracle = app.add_subcommand("oracle", "numerical first eigenvalue");
  CLI::App* verify = app.add_subcommand("verify", "bound vs oracle consistency");
  CLI::App* table = app.add_subcommand("table", "bound sweep as CSV/JSON");
  CLI::App* constants =
      app.add_subcommand("constants", "Sobolev-Poincare constant table");
  for (CLI::App* cmd : {bound, oracle, verify, table, constants}) {
    cmd->set_help_flag("--help", "print usage");
    add_common_flags(cmd, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (flags.format.empty())
      flags.format = (table->parsed() || constants->parsed()) ? "csv" : "json";
    if (flags.format != "json" && flags.format != "csv")
      throw plb::ValidationError("--format must be json or csv");
    if (bound->parsed()) return cmd_bound(flags);
    if (oracle->parsed()) return cmd_oracle(flags);
    if (verify->parsed()) return cmd_verify(flags);
    if (table->parsed()) return cmd_table(flags);
    if (constants->parsed()) return cmd_constants(flags);
  } catch (const plb::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const plb::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const plb::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
