#ifndef PLB_ANALYTIC_MAP_HPP
#define PLB_ANALYTIC_MAP_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "plb/base_domain.hpp"

namespace plb {

enum class MapKind { Identity, Polynomial, Epicycloid, Sine, PowerSeries };

/// A conformal map given in closed form on its base domain, evaluable together
/// with its analytic derivative. Construction fixes the base domain per kind:
/// the epicycloid family z + z^n/n lives on the unit disc, sin z on the
/// rectangle (-pi/2, pi/2) x (-d, d); polynomials and power series use the disc.
class AnalyticMap {
 public:
  static AnalyticMap identity();
  static AnalyticMap epicycloid(int n);
  static AnalyticMap sine(double d);
  static AnalyticMap polynomial(std::vector<std::complex<double>> coeffs);
  static AnalyticMap power_series(std::vector<std::complex<double>> coeffs,
                                  double radius);

  MapKind kind() const { return kind_; }
  const BaseDomain& base() const { return base_; }
  int epicycloid_order() const { return n_; }
  double rect_half_height() const { return base_.half_height; }
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
  double series_radius() const { return radius_; }

  /// Text form that parse_map_spec accepts back, e.g. "epicycloid n=3".
  std::string spec_string() const;

 private:
  AnalyticMap() = default;

  MapKind kind_ = MapKind::Identity;
  BaseDomain base_ = BaseDomain::unit_disc();
  int n_ = 0;                                 // epicycloid order
  std::vector<std::complex<double>> coeffs_;  // polynomial / power series
  double radius_ = 0.0;                       // power series validity radius
};

/// phi(z). Throws DomainError when z is outside the open base domain.
std::complex<double> eval_map(const AnalyticMap& map, std::complex<double> z);

/// phi'(z), computed from the closed form of the kind (never by differencing).
std::complex<double> eval_derivative(const AnalyticMap& map, std::complex<double> z);

/// |phi'(z)|^2, strictly positive on the open base domain for a conformal map.
double jacobian(const AnalyticMap& map, std::complex<double> z);

/// Conformal radius of the unit disc, 1 - |w|^2. Requires |w| < 1.
double disc_conformal_radius(std::complex<double> w);

/// Image of the base-domain boundary, traversed once counterclockwise at
/// scale 1 - 1e-9 so every evaluation stays strictly inside. One point per
/// sample, as rows (x, y). n_samples >= 3.
Eigen::ArrayX2d boundary_polyline(const AnalyticMap& map, int n_samples);

/// Parse the textual map grammar:
///   identity | epicycloid n=<int> | sine d=<real> | poly coeffs=<c0,c1,...>
/// Complex coefficient literals have the form a+bi (also a, bi, a-bi).
/// A leading "map=" key is accepted and stripped.
AnalyticMap parse_map_spec(const std::string& text);

}  // namespace plb

#endif
