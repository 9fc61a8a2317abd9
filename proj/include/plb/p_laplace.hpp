#ifndef PLB_P_LAPLACE_HPP
#define PLB_P_LAPLACE_HPP

#include <Eigen/Dense>

#include "plb/raster.hpp"

namespace plb {

/// Settings for the first-eigenvalue solve. p = 2 is accepted for
/// cross-checks and skips the descent phase unless run_descent_at_p2 is set.
struct SolverConfig {
  double p = 2.0;
  int max_iterations = 20000;
  double tolerance = 1e-7;  // relative change of the quotient per accepted step
  bool run_descent_at_p2 = false;
};

struct EigenResult {
  double lambda = 0.0;
  int iterations = 0;
  double residual = 0.0;  // relative quotient change at the last step
  bool converged = false;
};

/// Discrete Rayleigh quotient: forward-difference gradient per cell with zero
/// extension outside the mask, |grad f|^p summed times h^2 over cells, divided
/// by sum |f|^p h^2 over nodes. f has the mask's shape; values outside the
/// mask are ignored (treated as zero).
double rayleigh_quotient(const RasterDomain& domain, const Eigen::ArrayXXd& f,
                         double p);

/// Minimize the p-Rayleigh quotient on the raster domain. Starts from the
/// p = 2 eigenvector (inverse power iteration on the 5-point Laplacian), then
/// runs normalized gradient descent with backtracking. The result approximates
/// the first eigenvalue up to discretization error; it is not a certified
/// enclosure. Stagnation (50 consecutive fruitless backtracking halvings)
/// returns the best value found with converged = false.
EigenResult first_eigenvalue(const RasterDomain& domain, const SolverConfig& config);

/// lambda(domain) - lambda(disc of the same polygon area), both computed at
/// the domain's h. Nonnegative up to discretization error.
double faber_krahn_gap(const RasterDomain& domain, const SolverConfig& config);

}  // namespace plb

#endif
