#include "plb/p_laplace.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <numbers>

namespace plb {

namespace {

using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Padded field: node (i, j) of the mask lives at F(i + 1, j + 1); the one-node
// frame of zeros realizes the Dirichlet extension for forward differences.
struct Workspace {
  const RasterDomain* dom = nullptr;
  double p = 2.0;
  Eigen::Index W = 0, H = 0;  // padded sizes

  Eigen::ArrayXXd gx, gy, g2, t, tg_x, tg_y, grad;

  explicit Workspace(const RasterDomain& d, double p_in)
      : dom(&d),
        p(p_in),
        W(d.mask.rows() + 2),
        H(d.mask.cols() + 2),
        gx(W - 1, H),
        gy(W, H - 1),
        g2(W - 1, H - 1),
        t(W - 1, H - 1),
        tg_x(W - 1, H - 1),
        tg_y(W - 1, H - 1),
        grad(W, H) {}

  // g2^((p-2)/2) with cheap paths for the common exponents.
  void power_term() {
    const double e = 0.5 * (p - 2.0);
    if (e == 0.0)
      t.setOnes();
    else if (e == 0.5)
      t = g2.sqrt();
    else if (e == 1.0)
      t = g2;
    else
      t = g2.pow(e);
  }

  // Numerator sum S = sum over cells of g2^(p/2); N = h^(2-p) S.
  double energy_sum(const Eigen::ArrayXXd& F) {
    gx = F.bottomRows(W - 1) - F.topRows(W - 1);
    gy = F.rightCols(H - 1) - F.leftCols(H - 1);
    g2 = gx.topLeftCorner(W - 1, H - 1).square() +
         gy.topLeftCorner(W - 1, H - 1).square();
    power_term();
    return (t * g2).sum();
  }

  // dS/dF into grad (zero outside the mask).
  void energy_gradient() {
    tg_x = t * gx.topLeftCorner(W - 1, H - 1);
    tg_y = t * gy.topLeftCorner(W - 1, H - 1);
    grad.setZero();
    grad.topLeftCorner(W - 1, H - 1) -= tg_x + tg_y;
    grad.block(1, 0, W - 1, H - 1) += tg_x;
    grad.block(0, 1, W - 1, H - 1) += tg_y;
    grad *= p;
    for (Eigen::Index j = 0; j < H; ++j)
      for (Eigen::Index i = 0; i < W; ++i)
        if (i == 0 || j == 0 || i > W - 2 || j > H - 2 ||
            !(*dom).mask(i - 1, j - 1))
          grad(i, j) = 0.0;
  }
};

Eigen::ArrayXXd masked_pad(const RasterDomain& dom, const Eigen::ArrayXXd& f) {
  Eigen::ArrayXXd F = Eigen::ArrayXXd::Zero(dom.mask.rows() + 2, dom.mask.cols() + 2);
  for (Eigen::Index j = 0; j < dom.mask.cols(); ++j)
    for (Eigen::Index i = 0; i < dom.mask.rows(); ++i)
      if (dom.mask(i, j)) F(i + 1, j + 1) = f(i, j);
  return F;
}

double mass_sum(const Eigen::ArrayXXd& F, double p) {
  if (p == 2.0) return F.square().sum();
  return F.abs().pow(p).sum();
}

double quotient_from_parts(double S, double D, double h, double p) {
  // R = h^(2-p) S / (h^2 D) = h^(-p) S / D
  return std::pow(h, -p) * S / D;
}

// First eigenvector of the 5-point Dirichlet Laplacian by inverse power
// iteration (shift 0), returned as a padded field.
Eigen::ArrayXXd laplace_ground_state(const RasterDomain& dom, double* lambda2_out) {
  const Eigen::Index nx = dom.mask.rows(), ny = dom.mask.cols();
  Eigen::ArrayXXi index = Eigen::ArrayXXi::Constant(nx, ny, -1);
  Eigen::Index n = 0;
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i)
      if (dom.mask(i, j)) index(i, j) = int(n++);

  const double inv_h2 = 1.0 / (dom.h * dom.h);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(std::size_t(5 * n));
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i) {
      const int row = index(i, j);
      if (row < 0) continue;
      trips.emplace_back(row, row, 4.0 * inv_h2);
      const Eigen::Index nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[0] >= nx || q[1] < 0 || q[1] >= ny) continue;
        const int col = index(q[0], q[1]);
        if (col >= 0) trips.emplace_back(row, col, -inv_h2);
      }
    }
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(trips.begin(), trips.end());

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(L);
  if (llt.info() != Eigen::Success)
    throw NumericError("Laplacian factorization failed");

  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 1000; ++it) {
    v = llt.solve(v);
    v.normalize();
    const double next = v.dot(Eigen::VectorXd(L * v));
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  if (lambda2_out) *lambda2_out = lambda;

  Eigen::ArrayXXd F = Eigen::ArrayXXd::Zero(nx + 2, ny + 2);
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i)
      if (index(i, j) >= 0) F(i + 1, j + 1) = v[index(i, j)];
  return F;
}

}  // namespace

double rayleigh_quotient(const RasterDomain& domain, const Eigen::ArrayXXd& f,
                         double p) {
  if (!(p >= 2.0)) throw DomainError("Rayleigh quotient requires p >= 2");
  if (f.rows() != domain.mask.rows() || f.cols() != domain.mask.cols())
    throw ValidationError("nodal field shape does not match the mask");
  Workspace ws(domain, p);
  const Eigen::ArrayXXd F = masked_pad(domain, f);
  const double D = mass_sum(F, p);
  if (!(D > 0.0))
    throw DomainError("Rayleigh quotient of an (effectively) zero field");
  return quotient_from_parts(ws.energy_sum(F), D, domain.h, p);
}

EigenResult first_eigenvalue(const RasterDomain& domain, const SolverConfig& config) {
  if (!(config.p >= 2.0)) throw DomainError("solver requires p >= 2");
  if (!(config.tolerance > 0.0)) throw DomainError("solver tolerance must be positive");
  if (domain.interior_count() == 0) throw ResolutionError("raster domain is empty");

  double lambda2 = 0.0;
  Eigen::ArrayXXd F = laplace_ground_state(domain, &lambda2);

  EigenResult res;
  if (config.p == 2.0 && !config.run_descent_at_p2) {
    res.lambda = lambda2;
    res.iterations = 0;
    res.residual = 0.0;
    res.converged = true;
    return res;
  }

  Workspace ws(domain, config.p);
  const double p = config.p;
  double R = quotient_from_parts(ws.energy_sum(F), mass_sum(F, p),
                                 domain.h, p);

  double best = R;
  double step = 0.1;
  int accepted = 0;
  double last_change = 1.0;
  bool converged = false;

  for (; accepted < config.max_iterations; ) {
    // grad R = (grad N - R grad D) / D, assembled in the h-free scaling of
    // the energy sum; constant factors cancel in the direction.
    ws.energy_gradient();  // dS/dF, uses t/gx/gy from the last energy_sum(F)
    const double hpow = std::pow(domain.h, 2.0 - p);
    Eigen::ArrayXXd gradR = ws.grad * hpow;
    if (p == 2.0) {
      gradR -= (R * domain.h * domain.h * 2.0) * F;
    } else {
      gradR -= (R * domain.h * domain.h * p) * (F.abs().pow(p - 2.0) * F);
    }
    const double gnorm = std::sqrt(gradR.square().sum());
    if (gnorm == 0.0) {
      converged = true;
      break;
    }
    gradR /= gnorm;

    bool moved = false;
    for (int halvings = 0; halvings < 50; ++halvings) {
      // F and gradR are both zero outside the mask, so the trial stays
      // admissible without re-masking.
      Eigen::ArrayXXd trial = F - step * gradR;
      trial /= std::sqrt(trial.square().sum());
      const double Dn = mass_sum(trial, p);
      if (Dn > 0.0) {
        const double Rn = quotient_from_parts(ws.energy_sum(trial), Dn, domain.h, p);
        if (Rn < R) {
          last_change = (R - Rn) / R;
          F.swap(trial);
          R = Rn;
          best = std::min(best, R);
          moved = true;
          step = std::min(step * 1.3, 2.0);
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) break;  // 50 consecutive fruitless halvings: stagnation
    ++accepted;
    if (last_change < config.tolerance) {
      converged = true;
      break;
    }
  }

  // Leave gx/gy/t in sync with the final field for callers probing state.
  ws.energy_sum(F);

  res.lambda = best;
  res.iterations = accepted;
  res.residual = last_change;
  res.converged = converged;
  return res;
}

double faber_krahn_gap(const RasterDomain& domain, const SolverConfig& config) {
  const double area = std::abs(polygon_area(domain.source));
  const double radius = std::sqrt(area / std::numbers::pi);
  const int n = 4096;
  Eigen::ArrayX2d circle(n, 2);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    circle(k, 0) = radius * std::cos(t);
    circle(k, 1) = radius * std::sin(t);
  }
  const RasterDomain disc = rasterize(circle, domain.h);
  const double lam = first_eigenvalue(domain, config).lambda;
  const double lam_disc = first_eigenvalue(disc, config).lambda;
  return lam - lam_disc;
}

}  // namespace plb
