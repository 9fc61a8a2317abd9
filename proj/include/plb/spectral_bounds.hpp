#ifndef PLB_SPECTRAL_BOUNDS_HPP
#define PLB_SPECTRAL_BOUNDS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plb/analytic_map.hpp"
#include "plb/quadrature.hpp"

namespace plb {

enum class TheoremTag { AlphaRegular, InftyRegular, Quasidisc, StarSpiral };

std::string to_string(TheoremTag tag);
TheoremTag theorem_tag_from_string(const std::string& s);

/// One evaluated eigenvalue bound: 1/lambda <= exp(log_rhs), reported with the
/// optimal inner exponents and a labeled log-space factor audit. The bound
/// value exp(-log_rhs) is 0 whenever it underflows; log_rhs stays finite.
struct BoundReport {
  TheoremTag theorem_tag = TheoremTag::AlphaRegular;
  double p = 0.0;
  std::optional<double> alpha;
  std::optional<double> K;
  std::optional<double> beta;
  double optimal_q = 0.0;
  std::optional<double> optimal_alpha;
  double log_rhs = 0.0;
  double lower_bound_lambda = 0.0;
  std::vector<std::pair<std::string, double>> factors;

  double factor(const std::string& name) const;
  bool has_factor(const std::string& name) const;
};

/// Admissibility threshold for the inner exponent q: the bounds optimize over
/// q in (qstar, 2). Finite alpha gives 2*alpha*p/(alpha*p + 2(alpha-1));
/// alpha = +inf gives 2p/(p+2). Always in (1, 2) for p > 2.
double qstar(double p, double alpha);

/// 2 - qstar, in a form that stays exact for alpha = 1 + eps with tiny eps.
double qstar_gap(double p, double alpha);
double qstar_gap_offset(double p, double eps);  // eps = alpha - 1

/// Eigenvalue lower bound for the image of the map's base domain when the
/// Jacobian lies in L^alpha of the base (alpha > 1, finite).
BoundReport lower_bound_alpha_regular(double p, double alpha, const AnalyticMap& map,
                                      const QuadratureGrid& grid);

/// Where the sup-norm factor of the inf-regular bound comes from.
enum class SupNormSource { ClosedFormIfAvailable, GridMax };

/// Eigenvalue lower bound when the Jacobian is essentially bounded. The
/// sup-norm factor uses the closed form for the epicycloid (4) and sine
/// (cosh^2 d) families unless GridMax is requested.
BoundReport lower_bound_infty_regular(double p, const AnalyticMap& map,
                                      const QuadratureGrid& grid,
                                      SupNormSource sup_source =
                                          SupNormSource::ClosedFormIfAvailable);

/// The integrability-threshold machinery for quasidiscs. The corollary text
/// for star/spiral domains powers C_alpha and nu differently from the main
/// derivative estimate; both conventions are available, the main one is the
/// default everywhere.
enum class CAlphaConvention { EstimateDerivative, StarSpiralCorollary };

/// ln nu at alpha = 1 + eps. nu crosses 1 at eps below 1e-13 for every K >= 1,
/// so the offset form is the precision-carrying one; the plain-alpha overload
/// is a convenience for macroscopic alpha.
double log_nu_offset(double eps, double K,
                     CAlphaConvention conv = CAlphaConvention::EstimateDerivative);
double log_nu(double alpha, double K,
              CAlphaConvention conv = CAlphaConvention::EstimateDerivative);
double nu(double alpha, double K);

/// Unique solution of nu(alpha) = 1, returned as the offset alpha - 1 (and as
/// 1 + offset for display). Root-finding runs in ln(alpha - 1).
double alpha_tilde_offset(double K,
                          CAlphaConvention conv = CAlphaConvention::EstimateDerivative);
double alpha_tilde(double K);

/// min(K^2/(K^2-1), alpha_tilde) - 1, with K^2/(K^2-1) read as +inf at K = 1.
double alpha_star_offset(double K);

/// ln C_alpha = ln(10^6 / ((2a-1)(1-nu))^(1/(2a))), requires nu < 1.
double log_c_alpha_offset(double eps, double K,
                          CAlphaConvention conv = CAlphaConvention::EstimateDerivative);

/// The quasidisc bound constant, assembled entirely in log space.
struct MpkParts {
  double log_prefactor = 0.0;  // ln 4 + (1 + p/2) ln pi - 2 ln K
  double log_exp_term = 0.0;   // -K^2 pi^2 (2 + pi^2)^2 / (2 ln 3)
  double log_inner = 0.0;      // best over (alpha, q) of the inverted inner product
  double optimal_q = 0.0;
  double optimal_q_gap = 0.0;        // 2 - optimal_q, exact
  double optimal_alpha_offset = 0.0;  // optimal alpha - 1, exact
  double log_m() const { return log_prefactor + log_exp_term + log_inner; }
};
MpkParts m_p_k_parts(double p, double K,
                     CAlphaConvention conv = CAlphaConvention::EstimateDerivative);
double m_p_k_log(double p, double K);

/// lambda >= M_p(K)/|Omega|^(p/2) = M*_p(K)/R*^p for a K-quasidisc of the
/// given area.
BoundReport quasidisc_lower_bound(double p, double K, double area,
                                  CAlphaConvention conv =
                                      CAlphaConvention::EstimateDerivative);

/// Quasiconformality coefficient of beta-star-shaped and beta-spiral-shaped
/// domains: cot^2((1-beta) pi/4), beta in [0, 1).
double star_spiral_K(double beta);

/// Quasidisc bound specialized through star_spiral_K.
BoundReport star_spiral_lower_bound(double p, double beta, double area,
                                    CAlphaConvention conv =
                                        CAlphaConvention::EstimateDerivative);

/// ln of the upper bound on (integral of J^kappa)^(1/kappa) over the unit disc
/// for a conformal map onto a K-quasidisc of the given area. Requires
/// 1 < kappa < min(K^2/(K^2-1), alpha_tilde(K)). The plain value overflows;
/// the log is always finite.
double jacobian_norm_bound_quasidisc_log(double kappa, double K, double area);
double jacobian_norm_bound_quasidisc_log_offset(double kappa_offset, double K,
                                                double area);

}  // namespace plb

#endif
