#ifndef PLB_SOBOLEV_HPP
#define PLB_SOBOLEV_HPP

#include <optional>

#include "plb/analytic_map.hpp"
#include "plb/quadrature.hpp"

namespace plb {

/// Natural log of the gamma function, x > 0.
double log_gamma(double x);

/// Query for the (r,q)-Sobolev-Poincare constant A_{r,q}.
///   r >= 1 is the target Lebesgue exponent, q in [1,2] the gradient exponent.
///   For q < 2 admissibility requires r <= 2q/(2-q); for q = 2 the domain area
///   must be supplied and any finite r >= 1 is allowed.
struct SPQuery {
  double r = 1.0;
  double q = 1.0;
  std::optional<double> area;
};

/// Upper estimate of the best (r,q)-Sobolev-Poincare constant of a planar
/// domain. Three branches: a closed form at q = 1, a gamma-function closed
/// form for 1 < q < 2, and an infimum over inner exponents at q = 2.
double sp_constant(const SPQuery& query);

/// ln of the 1<q<2 branch evaluated at q = 2 - delta. Stable down to
/// delta ~ 1e-300; this is the form every bound optimizer consumes.
double log_sp_between(double delta);

/// Composition-operator norm bound for a conformal map between simply
/// connected domains of finite measure:  |target|^((p-2)/(2p)) * |source|^((2-q)/(2q)).
double composition_norm_bound(double p, double q, double area_target,
                              double area_source);

/// Composition-operator norm of f -> f(phi) computed from the map itself:
/// the Jacobian-power integral with the conformal reduction of the integrand.
/// Requires p > 2 and 1 <= q < p.
double composition_norm_conformal(const AnalyticMap& map, double p, double q,
                                  const QuadratureGrid& grid);

}  // namespace plb

#endif
