#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "plb/quadrature.hpp"
#include "plb/report.hpp"
#include "plb/sobolev.hpp"

using plb::AnalyticMap;
using plb::BoundReport;
using plb::Json;
using plb::QuadratureGrid;

namespace {

// Runs the CLI when ctest exports its location; returns (exit code, stdout).
struct CliResult {
  int code = -1;
  std::string out;
};

const char* cli_binary() { return std::getenv("PLBOUNDS_BIN"); }

CliResult run_cli(const std::string& args) {
  CliResult res;
  const std::string cmd = std::string("\"") + cli_binary() + "\" " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("bound report JSON round-trip") {
  const QuadratureGrid grid = QuadratureGrid::with_nodes(32);
  const BoundReport r =
      plb::lower_bound_alpha_regular(3.0, 2.0, AnalyticMap::epicycloid(3), grid);
  const Json j = plb::bound_report_to_json(r);
  const BoundReport back = plb::bound_report_from_json(j);
  CHECK(back.theorem_tag == r.theorem_tag);
  CHECK(back.p == r.p);
  CHECK(*back.alpha == *r.alpha);
  CHECK(!back.K);
  CHECK(back.optimal_q == r.optimal_q);
  CHECK(back.log_rhs == r.log_rhs);
  CHECK(back.lower_bound_lambda == r.lower_bound_lambda);
  REQUIRE(back.factors.size() == r.factors.size());
  for (std::size_t k = 0; k < r.factors.size(); ++k) {
    CHECK(back.factors[k].first == r.factors[k].first);
    CHECK(back.factors[k].second == r.factors[k].second);
  }
  // serialization is stable across repeated dumps
  CHECK(j.dump(2) == plb::bound_report_to_json(r).dump(2));
}

TEST_CASE("extreme magnitudes carry a log twin") {
  // K = 1.5 pushes the bound far below the subnormal range
  const BoundReport r = plb::quasidisc_lower_bound(3.0, 1.5, std::numbers::pi);
  const Json j = plb::bound_report_to_json(r);
  CHECK(j.at("lower_bound_lambda").get<double>() == 0.0);
  REQUIRE(j.contains("lower_bound_lambda_log"));
  CHECK(j.at("lower_bound_lambda_log").get<double>() ==
        doctest::Approx(-r.log_rhs).epsilon(1e-15));
  const BoundReport back = plb::bound_report_from_json(j);
  CHECK(back.log_rhs == r.log_rhs);
  CHECK(back.lower_bound_lambda == 0.0);

  // moderate magnitudes stay plain decimals
  Json small;
  plb::add_real_with_log(small, "x", std::log(2.0));
  CHECK(small.at("x").get<double>() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(!small.contains("x_log"));
}

TEST_CASE("theorem tags round-trip") {
  using plb::TheoremTag;
  for (TheoremTag tag : {TheoremTag::AlphaRegular, TheoremTag::InftyRegular,
                         TheoremTag::Quasidisc, TheoremTag::StarSpiral})
    CHECK(plb::theorem_tag_from_string(plb::to_string(tag)) == tag);
  CHECK_THROWS_AS(plb::theorem_tag_from_string("bogus"), plb::ValidationError);
}

TEST_CASE("cli happy path emits a report that round-trips" *
          doctest::skip(cli_binary() == nullptr)) {
  const CliResult r =
      run_cli("bound --theorem infty --map \"epicycloid n=3\" --p 3");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("spec").at("map").get<std::string>() == "epicycloid n=3");
  const BoundReport report = plb::bound_report_from_json(j.at("report"));
  CHECK(report.theorem_tag == plb::TheoremTag::InftyRegular);
  // same inputs through the library give the same numbers
  const BoundReport direct = plb::lower_bound_infty_regular(
      3.0, AnalyticMap::epicycloid(3), QuadratureGrid::with_nodes(64));
  CHECK(report.log_rhs == direct.log_rhs);
  CHECK(report.optimal_q == direct.optimal_q);
}

TEST_CASE("cli validation exit codes" * doctest::skip(cli_binary() == nullptr)) {
  CHECK(run_cli("bound --theorem quasidisc --map identity --p 3 --K 0.5").code == 2);
  CHECK(run_cli("bound --theorem infty --map \"warp q=1\" --p 3").code == 2);
  CHECK(run_cli("bound --theorem infty --map identity --p 1.5").code == 2);
  CHECK(run_cli("bound --theorem infty --map identity --p 3 --alpha 2").code == 2);
  CHECK(run_cli("bound --theorem alpha --map identity --p 3").code == 2);
}

TEST_CASE("cli verify accepts the sine example" *
          doctest::skip(cli_binary() == nullptr)) {
  const CliResult r = run_cli("verify --map \"sine d=1\" --p 3 --h 0.05");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("report").at("lower_bound_lambda").get<double>() <=
        1.05 * j.at("oracle").at("lambda").get<double>());
}

TEST_CASE("cli oracle report fields" * doctest::skip(cli_binary() == nullptr)) {
  const CliResult r = run_cli("oracle --map identity --p 2 --h 0.05");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  for (const char* key : {"lambda", "iterations", "residual", "mask_area", "h"})
    CHECK(j.contains(key));
  CHECK(j.at("h").get<double>() == 0.05);
}

TEST_CASE("cli table sweep rows and trend" * doctest::skip(cli_binary() == nullptr)) {
  const CliResult r = run_cli("table --theorem infty --map \"epicycloid n=2..6\" --p 3");
  REQUIRE(r.code == 0);
  const std::vector<std::string> lines = split_lines(r.out);
  REQUIRE(lines.size() == 6);  // header + 5 rows
  // bound column is monotone nondecreasing across the sweep
  double prev = 0.0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto pos = lines[k].rfind(",,");  // no oracle columns at the end
    REQUIRE(pos != std::string::npos);
    const auto bound_start = lines[k].rfind(',', pos - 1);
    const double bound = std::stod(lines[k].substr(bound_start + 1));
    CHECK(bound >= prev);
    prev = bound;
  }
}

TEST_CASE("cli quasidisc and star paths" * doctest::skip(cli_binary() == nullptr)) {
  const CliResult quasi =
      run_cli("bound --theorem quasidisc --map identity --p 3 --K 1.5");
  REQUIRE(quasi.code == 0);
  const Json jq = Json::parse(quasi.out);
  CHECK(jq.at("report").at("theorem_tag") == "quasidisc");
  CHECK(jq.at("report").at("lower_bound_lambda").get<double>() == 0.0);
  CHECK(jq.at("report").contains("lower_bound_lambda_log"));

  const CliResult star =
      run_cli("bound --theorem star --map \"epicycloid n=2\" --p 3 --beta 0.25");
  REQUIRE(star.code == 0);
  const Json js = Json::parse(star.out);
  CHECK(js.at("report").at("theorem_tag") == "star_spiral");
  CHECK(js.at("report").at("beta").get<double>() == 0.25);

  const CliResult csv = run_cli(
      "bound --theorem infty --map identity --p 3 --format csv");
  REQUIRE(csv.code == 0);
  const std::vector<std::string> lines = split_lines(csv.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].rfind("map,theorem,p,optimal_q", 0) == 0);
}

TEST_CASE("cli constants delegate to sp_constant" *
          doctest::skip(cli_binary() == nullptr)) {
  const CliResult r = run_cli("constants");
  REQUIRE(r.code == 0);
  const std::vector<std::string> lines = split_lines(r.out);
  REQUIRE(lines.size() > 10);
  CHECK(lines[0] == "r,q,value");
  int compared = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    double rr, qq, vv;
    REQUIRE(std::sscanf(lines[k].c_str(), "%lf,%lf,%lf", &rr, &qq, &vv) == 3);
    const std::optional<double> area =
        qq == 2.0 ? std::optional<double>(std::numbers::pi) : std::nullopt;
    CHECK(vv == doctest::Approx(plb::sp_constant({rr, qq, area})).epsilon(1e-12));
    ++compared;
  }
  CHECK(compared >= 30);
}
