#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/mp_oracles.hpp"
#include "plb/analytic_map.hpp"
#include "plb/p_laplace.hpp"
#include "plb/raster.hpp"
#include "plb/spectral_bounds.hpp"

using plb::AnalyticMap;
using plb::RasterDomain;
using plb::SolverConfig;

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::ArrayX2d square_polyline(double side, int per_edge = 256) {
  Eigen::ArrayX2d pts(4 * per_edge, 2);
  int k = 0;
  for (int e = 0; e < per_edge; ++e, ++k) pts.row(k) << side * e / per_edge, 0.0;
  for (int e = 0; e < per_edge; ++e, ++k) pts.row(k) << side, side * e / per_edge;
  for (int e = 0; e < per_edge; ++e, ++k)
    pts.row(k) << side - side * e / per_edge, side;
  for (int e = 0; e < per_edge; ++e, ++k) pts.row(k) << 0.0, side - side * e / per_edge;
  return pts;
}

Eigen::ArrayX2d circle_polyline(double radius, int n = 4096) {
  Eigen::ArrayX2d pts(n, 2);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * k / n;
    pts.row(k) << radius * std::cos(t), radius * std::sin(t);
  }
  return pts;
}
}  // namespace

TEST_CASE("quotient of the sampled first mode on the pi-square") {
  const double h = kPi / 64.0;
  const RasterDomain dom = plb::rasterize(square_polyline(kPi), h);
  Eigen::ArrayXXd f(dom.mask.rows(), dom.mask.cols());
  for (Eigen::Index j = 0; j < f.cols(); ++j)
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
      const double x = dom.origin.x() + double(i) * h;
      const double y = dom.origin.y() + double(j) * h;
      f(i, j) = std::sin(x) * std::sin(y);
    }
  const double q = plb::rayleigh_quotient(dom, f, 2.0);
  CHECK(q == doctest::Approx(2.0).epsilon(0.02));

  // homogeneity: scaling the field cancels exactly
  const double q7 = plb::rayleigh_quotient(dom, (7.0 * f).eval(), 2.0);
  CHECK(q7 == doctest::Approx(q).epsilon(1e-13));

  // positivity on a random field
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::ArrayXXd noise(dom.mask.rows(), dom.mask.cols());
  for (Eigen::Index j = 0; j < noise.cols(); ++j)
    for (Eigen::Index i = 0; i < noise.rows(); ++i) noise(i, j) = u(rng);
  CHECK(plb::rayleigh_quotient(dom, noise, 3.0) > 0.0);

  // degenerate input
  Eigen::ArrayXXd zero = Eigen::ArrayXXd::Zero(dom.mask.rows(), dom.mask.cols());
  CHECK_THROWS_AS(plb::rayleigh_quotient(dom, zero, 2.0), plb::DomainError);
}

TEST_CASE("p = 2 calibration on the unit square and disc") {
  SolverConfig cfg;
  cfg.p = 2.0;
  const RasterDomain square = plb::rasterize(square_polyline(1.0), 1.0 / 64.0);
  const plb::EigenResult rs = plb::first_eigenvalue(square, cfg);
  CHECK(rs.lambda == doctest::Approx(2.0 * kPi * kPi).epsilon(0.01));
  CHECK(rs.converged);

  const RasterDomain disc = plb::rasterize(circle_polyline(1.0), 1.0 / 64.0);
  const plb::EigenResult rd = plb::first_eigenvalue(disc, cfg);
  const double j01 = oracle::bessel_j0_first_zero();
  CHECK(rd.lambda == doctest::Approx(j01 * j01).epsilon(0.02));
}

TEST_CASE("p = 2 eigenvector is a fixed point of the descent") {
  SolverConfig cfg;
  cfg.p = 2.0;
  const RasterDomain disc = plb::rasterize(circle_polyline(1.0), 1.0 / 32.0);
  const double lam = plb::first_eigenvalue(disc, cfg).lambda;
  cfg.run_descent_at_p2 = true;
  cfg.max_iterations = 200;
  const double lam_descended = plb::first_eigenvalue(disc, cfg).lambda;
  CHECK(std::abs(lam_descended - lam) <= 1e-8 * lam);
}

TEST_CASE("two-mesh self-consistency for p = 3 on the disc") {
  SolverConfig cfg;
  cfg.p = 3.0;
  cfg.tolerance = 1e-7;
  const plb::EigenResult coarse =
      plb::first_eigenvalue(plb::rasterize(circle_polyline(1.0), 1.0 / 32.0), cfg);
  const plb::EigenResult fine =
      plb::first_eigenvalue(plb::rasterize(circle_polyline(1.0), 1.0 / 64.0), cfg);
  CHECK(coarse.lambda == doctest::Approx(fine.lambda).epsilon(0.03));
  // the paper-style sanity window: between the p=2 value and a crude test
  // function quotient the truth is ~9.5-10.5; the mesh values must land there
  CHECK(fine.lambda > 8.0);
  CHECK(fine.lambda < 11.0);
}

TEST_CASE("domain monotonicity: disc inside square") {
  SolverConfig cfg;
  cfg.p = 2.0;
  Eigen::ArrayX2d sq = square_polyline(2.5);
  sq.col(0) -= 1.25;  // center both at the origin
  sq.col(1) -= 1.25;
  const double lam_sq =
      plb::first_eigenvalue(plb::rasterize(sq, 1.0 / 32.0), cfg).lambda;
  const double lam_disc =
      plb::first_eigenvalue(plb::rasterize(circle_polyline(1.0), 1.0 / 32.0), cfg)
          .lambda;
  CHECK(lam_disc >= lam_sq - 1e-6);
}

TEST_CASE("dilation scaling law") {
  for (double p : {2.0, 3.0}) {
    SolverConfig cfg;
    cfg.p = p;
    const double h = 1.0 / 32.0;
    const double lam1 =
        plb::first_eigenvalue(plb::rasterize(circle_polyline(1.0), h), cfg).lambda;
    const double lam2 =
        plb::first_eigenvalue(plb::rasterize(circle_polyline(2.0), h), cfg).lambda;
    CHECK(lam2 == doctest::Approx(lam1 * std::pow(2.0, -p)).epsilon(0.03));
  }
}

TEST_CASE("stagnation returns the best value with converged = false") {
  SolverConfig cfg;
  cfg.p = 3.0;
  cfg.tolerance = 1e-300;  // unreachable: the descent must end by stagnation
  cfg.max_iterations = 100000;
  const RasterDomain disc = plb::rasterize(circle_polyline(1.0), 1.0 / 8.0);
  const plb::EigenResult r = plb::first_eigenvalue(disc, cfg);
  CHECK(!r.converged);
  CHECK(r.lambda > 0.0);
  CHECK(std::isfinite(r.lambda));
}

TEST_CASE("faber-krahn gap") {
  SolverConfig cfg;
  cfg.p = 2.0;
  // disc against itself
  const RasterDomain disc = plb::rasterize(circle_polyline(1.0), 1.0 / 32.0);
  const double self_gap = plb::faber_krahn_gap(disc, cfg);
  const double lam = plb::first_eigenvalue(disc, cfg).lambda;
  CHECK(std::abs(self_gap) <= 0.02 * lam);

  // unit square versus the equal-area disc: 2 pi^2 vs pi j01^2 = 1.57 apart.
  // The staircase boundary of the small disc biases its eigenvalue low by a
  // few percent at this spacing, widening the measured gap accordingly.
  const RasterDomain square = plb::rasterize(square_polyline(1.0), 1.0 / 64.0);
  const double gap = plb::faber_krahn_gap(square, cfg);
  const double j01 = oracle::bessel_j0_first_zero();
  const double continuum = 2.0 * kPi * kPi - kPi * j01 * j01;
  CHECK(gap > 0.0);
  CHECK(gap > 0.5 * continuum);
  CHECK(gap < 2.0 * continuum);

  // epicycloid at p = 3 keeps the sign up to solver noise
  SolverConfig cfg3;
  cfg3.p = 3.0;
  const Eigen::ArrayX2d epi = plb::boundary_polyline(AnalyticMap::epicycloid(3), 4096);
  const RasterDomain epi_dom = plb::rasterize(epi, 1.0 / 32.0);
  const double epi_gap = plb::faber_krahn_gap(epi_dom, cfg3);
  const double epi_lam = plb::first_eigenvalue(epi_dom, cfg3).lambda;
  CHECK(epi_gap >= -0.05 * epi_lam);
}

TEST_CASE("quasidisc bound sits below the oracle eigenvalue") {
  // the bound underflows to zero, so the comparison is trivially wide;
  // asserted against a real solve anyway
  SolverConfig cfg;
  cfg.p = 3.0;
  const Eigen::ArrayX2d epi = plb::boundary_polyline(AnalyticMap::epicycloid(3), 4096);
  const double lam = plb::first_eigenvalue(plb::rasterize(epi, 1.0 / 32.0), cfg).lambda;
  for (double K : {1.0, 1.5, 2.0}) {
    const plb::BoundReport r = plb::quasidisc_lower_bound(3.0, K, kPi * 4.0 / 3.0);
    CHECK(r.lower_bound_lambda <= lam);
  }
}

TEST_CASE("solver validation") {
  const RasterDomain disc = plb::rasterize(circle_polyline(1.0), 1.0 / 16.0);
  SolverConfig bad;
  bad.p = 1.5;
  CHECK_THROWS_AS(plb::first_eigenvalue(disc, bad), plb::DomainError);
  SolverConfig bad2;
  bad2.tolerance = -1.0;
  CHECK_THROWS_AS(plb::first_eigenvalue(disc, bad2), plb::DomainError);
}
