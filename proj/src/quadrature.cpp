#include "plb/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace plb {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw ValidationError("Gauss-Legendre rule needs at least one node");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  // Newton iteration on the Legendre polynomial, one root per half.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    gl.nodes[i] = -z;
    gl.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

PlanarRule planar_rule(const BaseDomain& base, int nodes_a, int nodes_b) {
  if (nodes_a < 8 || nodes_b < 8)
    throw ValidationError("quadrature grid needs at least 8 nodes per direction");
  PlanarRule rule;
  if (base.kind == BaseDomain::Kind::UnitDisc) {
    // Radial Gauss-Legendre on (0,1) against the polar weight r, uniform
    // (periodic) rule in the angle.
    const GaussLegendre gl = gauss_legendre(nodes_a);
    const Eigen::ArrayXd r = 0.5 * (gl.nodes + 1.0);
    const Eigen::ArrayXd wr = 0.5 * gl.weights * r;
    const double wt = 2.0 * std::numbers::pi / nodes_b;
    rule.x.resize(nodes_a * nodes_b);
    rule.y.resize(nodes_a * nodes_b);
    rule.w.resize(nodes_a * nodes_b);
    Eigen::Index k = 0;
    for (int j = 0; j < nodes_b; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / nodes_b;
      const double c = std::cos(theta), s = std::sin(theta);
      for (int i = 0; i < nodes_a; ++i, ++k) {
        rule.x[k] = r[i] * c;
        rule.y[k] = r[i] * s;
        rule.w[k] = wr[i] * wt;
      }
    }
    return rule;
  }
  const GaussLegendre glx = gauss_legendre(nodes_a);
  const GaussLegendre gly = gauss_legendre(nodes_b);
  const double a = base.half_width, b = base.half_height;
  rule.x.resize(nodes_a * nodes_b);
  rule.y.resize(nodes_a * nodes_b);
  rule.w.resize(nodes_a * nodes_b);
  Eigen::Index k = 0;
  for (int j = 0; j < nodes_b; ++j) {
    for (int i = 0; i < nodes_a; ++i, ++k) {
      rule.x[k] = a * glx.nodes[i];
      rule.y[k] = b * gly.nodes[j];
      rule.w[k] = a * b * glx.weights[i] * gly.weights[j];
    }
  }
  return rule;
}

double image_area(const AnalyticMap& map, const QuadratureGrid& grid) {
  const double area =
      integrate([&](std::complex<double> z) { return jacobian(map, z); },
                map.base(), grid)
          .value;
  if (!(area > 0.0)) throw NumericError("image area came out non-positive");
  return area;
}

std::vector<double> log_jacobian_power_integral(const AnalyticMap& map, double expo,
                                                const QuadratureGrid& grid) {
  std::vector<double> levels;
  int na = grid.nodes_a, nb = grid.nodes_b;
  for (int level = 0; level < grid.levels; ++level, na *= 2, nb *= 2) {
    const PlanarRule rule = planar_rule(map.base(), na, nb);
    // log-sum-exp over  expo*ln(J_i) + ln(w_i)
    Eigen::ArrayXd terms(rule.size());
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
      const double j = jacobian(map, {rule.x[i], rule.y[i]});
      terms[i] = expo * std::log(j) + std::log(rule.w[i]);
      if (!std::isfinite(terms[i])) {
        std::ostringstream os;
        os << "Jacobian power is not finite at node (" << rule.x[i] << ", "
           << rule.y[i] << ")";
        throw EvaluationError(os.str());
      }
    }
    const double m = terms.maxCoeff();
    levels.push_back(m + std::log((terms - m).exp().sum()));
  }
  return levels;
}

std::string AlphaNorm::trend_string() const {
  std::ostringstream os;
  os << "levels:";
  for (double v : level_values) os << " " << v;
  return os.str();
}

AlphaNorm jacobian_alpha_norm(const AnalyticMap& map, double alpha,
                              const QuadratureGrid& grid) {
  AlphaNorm out;
  if (std::isinf(alpha)) {
    int na = grid.nodes_a, nb = grid.nodes_b;
    for (int level = 0; level < grid.levels; ++level, na *= 2, nb *= 2) {
      const PlanarRule rule = planar_rule(map.base(), na, nb);
      double mx = 0.0;
      for (Eigen::Index i = 0; i < rule.size(); ++i)
        mx = std::max(mx, jacobian(map, {rule.x[i], rule.y[i]}));
      out.level_values.push_back(mx);
    }
    out.value = out.level_values.back();
    out.log_value = std::log(out.value);
    out.error_estimate =
        out.level_values.size() > 1
            ? std::abs(out.value - out.level_values[out.level_values.size() - 2])
            : std::numeric_limits<double>::infinity();
    if (map.kind() == MapKind::Epicycloid) {
      out.sup_cap = 4.0;
    } else if (map.kind() == MapKind::Sine) {
      const double d = map.rect_half_height();
      out.sup_cap = std::cosh(d) * std::cosh(d);
    }
    return out;
  }
  if (!(alpha > 1.0))
    throw DomainError("jacobian norm exponent must exceed 1 (or be inf)");

  const std::vector<double> log_levels =
      log_jacobian_power_integral(map, alpha, grid);
  for (double lv : log_levels) out.level_values.push_back(std::exp(lv / alpha));
  out.log_value = log_levels.back() / alpha;
  out.value = out.level_values.back();
  out.error_estimate =
      out.level_values.size() > 1
          ? std::abs(out.value - out.level_values[out.level_values.size() - 2])
          : std::numeric_limits<double>::infinity();

  out.converged = !refinement_diverging(out.level_values);
  return out;
}

bool refinement_diverging(const std::vector<double>& lv) {
  if (lv.size() < 2) return false;
  const double final = lv.back();
  const double d2 = lv[lv.size() - 1] - lv[lv.size() - 2];
  if (!(d2 > 0.01 * std::abs(final))) return false;
  if (lv.size() == 2) return true;
  const double d1 = lv[lv.size() - 2] - lv[lv.size() - 3];
  return d2 > d1;
}

}  // namespace plb
