#ifndef PLB_QUADRATURE_HPP
#define PLB_QUADRATURE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <vector>

#include "plb/analytic_map.hpp"
#include "plb/base_domain.hpp"
#include "plb/errors.hpp"

namespace plb {

/// Tensor-product rule configuration. Each refinement level doubles both node
/// counts; reported values always come from the finest level.
struct QuadratureGrid {
  int nodes_a = 64;  // radial (disc) or x (rectangle) count at the base level
  int nodes_b = 64;  // angular (disc) or y (rectangle) count at the base level
  int levels = 3;

  static QuadratureGrid with_nodes(int n, int levels = 3) {
    return QuadratureGrid{n, n, levels};
  }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};
GaussLegendre gauss_legendre(int n);

/// Flattened planar rule over a base domain: strictly positive weights summing
/// to the base measure. On the disc the rule is Gauss-Legendre in radius
/// (against the weight r) crossed with a uniform periodic rule in angle; on a
/// rectangle it is a Gauss-Legendre tensor product.
struct PlanarRule {
  Eigen::ArrayXd x, y, w;
  Eigen::Index size() const { return w.size(); }
};
PlanarRule planar_rule(const BaseDomain& base, int nodes_a, int nodes_b);

struct Integration {
  double value = 0.0;                // finest-level quadrature sum
  double error_estimate = 0.0;       // |finest - next-to-finest|
  std::vector<double> level_values;  // one entry per refinement level
};

/// Integrate f over the base domain with level-wise global refinement.
/// f takes the node as a complex point and returns a finite real value;
/// a non-finite value raises EvaluationError naming the node.
template <class F>
Integration integrate(F&& f, const BaseDomain& base, const QuadratureGrid& grid) {
  Integration out;
  int na = grid.nodes_a, nb = grid.nodes_b;
  for (int level = 0; level < grid.levels; ++level, na *= 2, nb *= 2) {
    const PlanarRule rule = planar_rule(base, na, nb);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
      const double v = f(std::complex<double>(rule.x[i], rule.y[i]));
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrand is not finite at node (" << rule.x[i] << ", "
           << rule.y[i] << ")";
        throw EvaluationError(os.str());
      }
      sum += rule.w[i] * v;
    }
    out.level_values.push_back(sum);
  }
  out.value = out.level_values.back();
  out.error_estimate =
      out.level_values.size() > 1
          ? std::abs(out.value - out.level_values[out.level_values.size() - 2])
          : std::numeric_limits<double>::infinity();
  return out;
}

/// Area of the image domain: the Jacobian integrated over the base.
double image_area(const AnalyticMap& map, const QuadratureGrid& grid);

/// L^alpha norm of the Jacobian over the base domain.
struct AlphaNorm {
  double value = 0.0;          // (integral of J^alpha)^(1/alpha); grid max for alpha = inf
  double log_value = 0.0;      // natural log of value, finite even when value overflows
  double error_estimate = 0.0;
  bool converged = true;       // false when refinement keeps drifting upward by > 1%
  std::vector<double> level_values;
  // For alpha = inf the grid max is only a lower estimate of the essential
  // sup; kinds with a closed-form sup pair it with that cap here.
  std::optional<double> sup_cap;

  std::string trend_string() const;
};

/// alpha must exceed 1 or be +infinity. The finite-alpha integral accumulates
/// in log space, so arbitrarily large alpha stays representable. For
/// alpha = inf the value is the max of J over the finest grid nodes, a lower
/// estimate of the essential sup.
AlphaNorm jacobian_alpha_norm(const AnalyticMap& map, double alpha,
                              const QuadratureGrid& grid);

/// Divergence signature of an inadmissible norm exponent: the last refinement
/// step still climbs by more than 1% of the final value and the increments
/// are growing.
bool refinement_diverging(const std::vector<double>& level_values);

/// ln of the integral of J^expo over the base, accumulated stably in log space.
/// Returns one value per refinement level; the last entry is the finest.
std::vector<double> log_jacobian_power_integral(const AnalyticMap& map, double expo,
                                                const QuadratureGrid& grid);

}  // namespace plb

#endif
