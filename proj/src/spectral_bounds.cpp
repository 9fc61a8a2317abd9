#include "plb/spectral_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "plb/optimize.hpp"
#include "plb/sobolev.hpp"

namespace plb {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLogPi = std::log(kPi);

// -K^2 pi^2 (2 + pi^2)^2 / (2 ln 3)
double log_exp_term(double K) {
  const double pi2 = kPi * kPi;
  return -K * K * pi2 * (2.0 + pi2) * (2.0 + pi2) / (2.0 * std::log(3.0));
}

struct QTermMin {
  double q = 0.0;
  double q_gap = 0.0;      // 2 - q, exact
  double log_value = 0.0;  // p ln A + p*gap/(2(2-gap)) * log_base_measure
  double log_A = 0.0;
};

// Minimize  p ln A_{.,q} + (p(2-q)/(2q)) ln|base|  over q in (2 - width, 2).
// The search runs in the normalized coordinate u with q = 2 - width*(1-u),
// which stays exact when the admissible interval is microscopically thin
// (width below 1e-13 occurs in the quasidisc machinery). Clipping is the
// absolute 1e-9 of the wide case, proportional once the interval is thinner.
QTermMin minimize_q_term(double p, double width, double log_base_measure) {
  const auto objective_of_gap = [&](double gap) {
    return p * log_sp_between(gap) +
           p * gap / (2.0 * (2.0 - gap)) * log_base_measure;
  };
  const double u_eps = std::clamp(1e-9 / width, 1e-9, 1e-3);
  const MinResult m = minimize_scan_golden(
      [&](double u) { return objective_of_gap(width * (1.0 - u)); }, u_eps,
      1.0 - u_eps, 200, 1e-10);
  QTermMin out;
  out.q_gap = width * (1.0 - m.x);
  out.q = 2.0 - out.q_gap;
  out.log_value = m.value;
  out.log_A = log_sp_between(out.q_gap);
  return out;
}

void check_p(double p) {
  if (!(p > 2.0)) throw DomainError("eigenvalue bounds require p > 2");
}

void check_K(double K) {
  if (!(K >= 1.0)) throw DomainError("quasiconformality coefficient requires K >= 1");
}

double underflow_safe_exp(double x) {
  const double v = std::exp(x);
  return std::isfinite(v) ? v : 0.0;
}

}  // namespace

std::string to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::AlphaRegular: return "alpha_regular";
    case TheoremTag::InftyRegular: return "infty_regular";
    case TheoremTag::Quasidisc: return "quasidisc";
    case TheoremTag::StarSpiral: return "star_spiral";
  }
  return {};
}

TheoremTag theorem_tag_from_string(const std::string& s) {
  if (s == "alpha_regular") return TheoremTag::AlphaRegular;
  if (s == "infty_regular") return TheoremTag::InftyRegular;
  if (s == "quasidisc") return TheoremTag::Quasidisc;
  if (s == "star_spiral") return TheoremTag::StarSpiral;
  throw ValidationError("unknown theorem tag '" + s + "'");
}

double BoundReport::factor(const std::string& name) const {
  for (const auto& [n, v] : factors)
    if (n == name) return v;
  throw ValidationError("bound report has no factor '" + name + "'");
}

bool BoundReport::has_factor(const std::string& name) const {
  for (const auto& [n, v] : factors)
    if (n == name) return true;
  return false;
}

double qstar(double p, double alpha) {
  check_p(p);
  if (std::isinf(alpha)) return 2.0 * p / (p + 2.0);
  if (!(alpha > 1.0)) throw DomainError("qstar requires alpha > 1");
  return 2.0 * alpha * p / (alpha * p + 2.0 * (alpha - 1.0));
}

double qstar_gap_offset(double p, double eps) {
  return 4.0 * eps / ((1.0 + eps) * p + 2.0 * eps);
}

double qstar_gap(double p, double alpha) {
  check_p(p);
  if (std::isinf(alpha)) return 4.0 / (p + 2.0);
  if (!(alpha > 1.0)) throw DomainError("qstar requires alpha > 1");
  return qstar_gap_offset(p, alpha - 1.0);
}

namespace {

BoundReport assemble_regular_report(TheoremTag tag, double p, const AnalyticMap& map,
                                    const QuadratureGrid& grid, double width,
                                    double log_jacobian_norm,
                                    const char* norm_label) {
  const double log_base_measure = std::log(map.base().measure());
  const QTermMin qmin = minimize_q_term(p, width, log_base_measure);
  const double area = image_area(map, grid);
  const double log_area_factor = 0.5 * (p - 2.0) * std::log(area);

  BoundReport r;
  r.theorem_tag = tag;
  r.p = p;
  r.optimal_q = qmin.q;
  r.log_rhs = qmin.log_value + log_area_factor + log_jacobian_norm;
  r.lower_bound_lambda = underflow_safe_exp(-r.log_rhs);
  r.factors = {
      {"log_sp_infimum", qmin.log_value},
      {"log_A_rq", qmin.log_A},
      {"log_base_measure", log_base_measure},
      {"log_image_area", std::log(area)},
      {"log_area_factor", log_area_factor},
      {norm_label, log_jacobian_norm},
      {"log_optimal_q_gap", std::log(qmin.q_gap)},
  };
  return r;
}

}  // namespace

BoundReport lower_bound_alpha_regular(double p, double alpha, const AnalyticMap& map,
                                      const QuadratureGrid& grid) {
  check_p(p);
  if (!(alpha > 1.0) || std::isinf(alpha))
    throw DomainError("alpha-regular bound requires finite alpha > 1");
  const AlphaNorm norm = jacobian_alpha_norm(map, alpha, grid);
  if (!norm.converged) {
    throw IntegrabilityError(
        "Jacobian L^alpha norm does not settle under refinement (" +
        norm.trend_string() + "); try a smaller alpha");
  }
  BoundReport r = assemble_regular_report(TheoremTag::AlphaRegular, p, map, grid,
                                          qstar_gap(p, alpha), norm.log_value,
                                          "log_jacobian_norm");
  r.alpha = alpha;
  return r;
}

BoundReport lower_bound_infty_regular(double p, const AnalyticMap& map,
                                      const QuadratureGrid& grid,
                                      SupNormSource sup_source) {
  check_p(p);
  const AlphaNorm norm =
      jacobian_alpha_norm(map, std::numeric_limits<double>::infinity(), grid);
  const double sup =
      (sup_source == SupNormSource::ClosedFormIfAvailable && norm.sup_cap)
          ? *norm.sup_cap
          : norm.value;
  BoundReport r =
      assemble_regular_report(TheoremTag::InftyRegular, p, map, grid,
                              qstar_gap(p, std::numeric_limits<double>::infinity()),
                              std::log(sup), "log_jacobian_norm");
  return r;
}

double log_nu_offset(double eps, double K, CAlphaConvention conv) {
  if (!(eps > 0.0)) throw DomainError("nu requires alpha > 1");
  check_K(K);
  const double base = std::log(24.0 * kPi * kPi * K * K);
  const double power = conv == CAlphaConvention::EstimateDerivative ? 2.0 : 1.0;
  return 8.0 * (1.0 + eps) * std::numbers::ln10 + std::log(2.0 * eps) -
         std::log1p(2.0 * eps) + power * (1.0 + eps) * base;
}

double log_nu(double alpha, double K, CAlphaConvention conv) {
  if (!(alpha > 1.0)) throw DomainError("nu requires alpha > 1");
  return log_nu_offset(alpha - 1.0, K, conv);
}

double nu(double alpha, double K) { return std::exp(log_nu(alpha, K)); }

double alpha_tilde_offset(double K, CAlphaConvention conv) {
  check_K(K);
  // ln nu is increasing in ln(eps); bracket the root in log space.
  double lo = std::log(1e-300), hi = 0.0;
  if (!(log_nu_offset(std::exp(lo), K, conv) < 0.0) ||
      !(log_nu_offset(std::exp(hi), K, conv) > 0.0))
    throw NumericError("alpha_tilde bracket failed; nu implementation bug");
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (log_nu_offset(std::exp(mid), K, conv) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

double alpha_tilde(double K) { return 1.0 + alpha_tilde_offset(K); }

double alpha_star_offset(double K) {
  check_K(K);
  const double integrability =
      K > 1.0 ? 1.0 / (K * K - 1.0) : std::numeric_limits<double>::infinity();
  return std::min(integrability, alpha_tilde_offset(K));
}

double log_c_alpha_offset(double eps, double K, CAlphaConvention conv) {
  const double lnnu = log_nu_offset(eps, K, conv);
  if (!(lnnu < 0.0))
    throw DomainError("C_alpha requires nu < 1; alpha exceeds alpha_tilde");
  const double log_one_minus_nu = std::log1p(-std::exp(lnnu));
  const double inv_expo = conv == CAlphaConvention::EstimateDerivative
                              ? 1.0 / (2.0 * (1.0 + eps))
                              : 1.0 / (1.0 + eps);
  return 6.0 * std::numbers::ln10 -
         inv_expo * (std::log1p(2.0 * eps) + log_one_minus_nu);
}

MpkParts m_p_k_parts(double p, double K, CAlphaConvention conv) {
  check_p(p);
  check_K(K);
  const double eps_star = alpha_star_offset(K);
  if (!(eps_star > 0.0)) throw DomainError("empty alpha interval: alpha_star <= 1");

  // Inner objective for fixed alpha = 1 + eps:
  //   min_q [ p ln A + (p/q) ln pi ] + (1/alpha) ln pi + 2 ln C_alpha.
  // The q-minimization reuses the regular-bound q-term with |base| = pi after
  // splitting pi^(p(2-q)/(2q)) = pi^(p/q) pi^(-p/2); the constant -p/2 piece
  // is restored below.
  double opt_q_gap = 0.0;
  const auto inner_of_eps = [&](double eps) {
    const double width = qstar_gap_offset(p, eps);
    const QTermMin qmin = minimize_q_term(p, width, kLogPi);
    opt_q_gap = qmin.q_gap;
    const double q_part = qmin.log_value + 0.5 * p * kLogPi;  // p lnA + (p/q) ln pi
    return q_part + kLogPi / (1.0 + eps) + 2.0 * log_c_alpha_offset(eps, K, conv);
  };

  const double s_eps = 1e-6;
  const MinResult m = minimize_scan_golden(
      [&](double s) { return inner_of_eps(s * eps_star); }, s_eps, 1.0 - s_eps,
      50, 1e-10);
  const double eps_opt = m.x * eps_star;
  inner_of_eps(eps_opt);  // refresh opt_q_gap for the winning alpha

  MpkParts parts;
  parts.log_prefactor = std::log(4.0) + (1.0 + 0.5 * p) * kLogPi - 2.0 * std::log(K);
  parts.log_exp_term = log_exp_term(K);
  parts.log_inner = -m.value;
  parts.optimal_q_gap = opt_q_gap;
  parts.optimal_q = 2.0 - opt_q_gap;
  parts.optimal_alpha_offset = eps_opt;
  return parts;
}

double m_p_k_log(double p, double K) { return m_p_k_parts(p, K).log_m(); }

BoundReport quasidisc_lower_bound(double p, double K, double area,
                                  CAlphaConvention conv) {
  check_p(p);
  check_K(K);
  if (!(area > 0.0)) throw DomainError("quasidisc bound requires a positive area");
  const MpkParts parts = m_p_k_parts(p, K, conv);
  const double log_area = std::log(area);

  BoundReport r;
  r.theorem_tag = TheoremTag::Quasidisc;
  r.p = p;
  r.K = K;
  r.optimal_q = parts.optimal_q;
  r.optimal_alpha = 1.0 + parts.optimal_alpha_offset;
  r.log_rhs = 0.5 * p * log_area - parts.log_m();
  r.lower_bound_lambda = underflow_safe_exp(-r.log_rhs);
  r.factors = {
      {"log_prefactor", parts.log_prefactor},
      {"log_exp_term", parts.log_exp_term},
      {"log_inner_infimum", parts.log_inner},
      {"log_m_p_k", parts.log_m()},
      {"log_m_star", parts.log_m() - 0.5 * p * kLogPi},
      {"log_r_star", 0.5 * (log_area - kLogPi)},
      {"log_area", log_area},
      {"log_optimal_q_gap", std::log(parts.optimal_q_gap)},
      {"log_optimal_alpha_offset", std::log(parts.optimal_alpha_offset)},
  };
  return r;
}

double star_spiral_K(double beta) {
  if (!(beta >= 0.0) || !(beta < 1.0))
    throw DomainError("star/spiral shape parameter requires beta in [0, 1)");
  const double x = (1.0 - beta) * kPi / 4.0;
  const double c = std::cos(x) / std::sin(x);
  return c * c;
}

BoundReport star_spiral_lower_bound(double p, double beta, double area,
                                    CAlphaConvention conv) {
  const double K = star_spiral_K(beta);
  BoundReport r = quasidisc_lower_bound(p, K, area, conv);
  r.theorem_tag = TheoremTag::StarSpiral;
  r.beta = beta;
  return r;
}

double jacobian_norm_bound_quasidisc_log_offset(double kappa_offset, double K,
                                                double area) {
  check_K(K);
  if (!(area > 0.0)) throw DomainError("norm bound requires a positive area");
  const double eps_star = alpha_star_offset(K);
  if (!(kappa_offset > 0.0) || !(kappa_offset < eps_star)) {
    std::ostringstream os;
    os << "kappa = 1 + " << kappa_offset
       << " outside the admissible interval (1, min(K^2/(K^2-1), alpha_tilde)) = (1, "
       << "min(" << (K > 1.0 ? K * K / (K * K - 1.0)
                             : std::numeric_limits<double>::infinity())
       << ", " << 1.0 + alpha_tilde_offset(K) << "))";
    throw DomainError(os.str());
  }
  const double kappa = 1.0 + kappa_offset;
  return 2.0 * log_c_alpha_offset(kappa_offset, K,
                                  CAlphaConvention::EstimateDerivative) +
         2.0 * std::log(K) + (1.0 / kappa - 1.0) * kLogPi - std::log(4.0) -
         log_exp_term(K) + std::log(area);
}

double jacobian_norm_bound_quasidisc_log(double kappa, double K, double area) {
  return jacobian_norm_bound_quasidisc_log_offset(kappa - 1.0, K, area);
}

}  // namespace plb
