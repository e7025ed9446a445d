#include "fuzzwave/conjugate.hpp"

#include <cmath>
#include <stdexcept>

namespace fuzzwave {

double log_sum_exp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

SpectralForm spectral_form(const DesignMatrices& dm, const GammaStructure& gamma,
                           const Eigen::VectorXd& y, const CoefficientVector& theta0) {
  const Eigen::MatrixXd XG = dm.X * gamma.diag.asDiagonal();
  Eigen::MatrixXd A = XG * dm.X.transpose() + dm.Qn;
  if (!A.allFinite()) throw std::runtime_error("spectral_form: non-finite input");
  A = 0.5 * (A + A.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw std::runtime_error("spectral_form: eigensolver failure");
  const auto n = A.rows();
  SpectralForm sf;
  sf.H.resize(n, n);
  sf.d.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {  // descending order, clip at 0
    sf.d(i) = std::max(0.0, es.eigenvalues()(n - 1 - i));
    sf.H.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  sf.s_vec = sf.H.transpose() * (y - dm.X * theta0.values);
  return sf;
}

UQuadrature make_u_quadrature(const QuadratureConfig& quad) {
  std::vector<double> nodes, weights;
  gauss_legendre(quad.n_nodes, nodes, weights);
  UQuadrature q;
  q.u.resize(quad.n_nodes);
  q.log_base.resize(quad.n_nodes);
  for (int i = 0; i < quad.n_nodes; ++i) {
    const double t = 0.5 * (nodes[i] + 1.0);
    const double w = 0.5 * weights[i];
    q.u(i) = t / (1.0 - t);
    q.log_base(i) = std::log(w) - 2.0 * std::log1p(-t);  // du/dt = (1-t)^{-2}
  }
  return q;
}

namespace {
// log of prod(1+u d_i)^{-1/2} and of S(u) = k + 1/2 sum s_i^2/(1+u d_i).
void likelihood_factors(double u, const SpectralForm& sf, const HyperPrior& hp,
                        double& log_det_half, double& S) {
  log_det_half = 0.0;
  S = hp.k;
  for (Eigen::Index i = 0; i < sf.d.size(); ++i) {
    const double denom = 1.0 + u * sf.d(i);
    log_det_half += 0.5 * std::log(denom);
    S += 0.5 * sf.s_vec(i) * sf.s_vec(i) / denom;
  }
}
}  // namespace

double pi22_log_unnorm(double u, const SpectralForm& sf, const HyperPrior& hp, FKernel kernel) {
  if (u <= 0.0) throw std::invalid_argument("pi22: u must be positive");
  const auto n = static_cast<double>(sf.d.size());
  double log_det_half, S;
  likelihood_factors(u, sf, hp, log_det_half, S);
  double f_factor;
  if (kernel == FKernel::AsPrinted)
    f_factor = 0.5 * hp.b * std::log(u) - 0.5 * (hp.a + hp.b) * std::log(hp.a + hp.b * u);
  else
    f_factor = (0.5 * hp.b - 1.0) * std::log(u) -
               0.5 * (hp.a + hp.b) * std::log1p(hp.b * u / hp.a);
  return f_factor - log_det_half - 0.5 * (n + 2.0 * hp.c) * std::log(2.0 * S);
}

double pi22_unnorm(double u, const SpectralForm& sf, const HyperPrior& hp, FKernel kernel) {
  return std::exp(pi22_log_unnorm(u, sf, hp, kernel));
}

double posterior_u_log_weight(double u, const SpectralForm& sf, const HyperPrior& hp) {
  const auto n = static_cast<double>(sf.d.size());
  double log_det_half, S;
  likelihood_factors(u, sf, hp, log_det_half, S);
  return log_f_density(u, hp.b, hp.a) - log_det_half - (0.5 * n + hp.c - 1.0) * std::log(S);
}

UPosterior u_posterior(const SpectralForm& sf, const HyperPrior& hp,
                       const QuadratureConfig& quad) {
  const UQuadrature q = make_u_quadrature(quad);
  Eigen::VectorXd logw(q.u.size());
  for (Eigen::Index i = 0; i < q.u.size(); ++i)
    logw(i) = posterior_u_log_weight(q.u(i), sf, hp) + q.log_base(i);
  UPosterior post;
  post.u = q.u;
  post.log_normalizer = log_sum_exp(logw);
  if (!std::isfinite(post.log_normalizer))
    throw std::runtime_error("degenerate u-posterior: normalizer underflow");
  post.prob = (logw.array() - post.log_normalizer).exp();
  return post;
}

CoefficientVector posterior_mean(const SpectralForm& sf, const GammaStructure& gamma,
                                 const DesignMatrices& dm, const CoefficientVector& theta0,
                                 const HyperPrior& hp, const QuadratureConfig& quad) {
  const UPosterior post = u_posterior(sf, hp, quad);
  const auto n = sf.d.size();
  Eigen::VectorXd shrink = Eigen::VectorXd::Zero(n);  // E[u/(1+u d_i) | y]
  for (Eigen::Index g = 0; g < post.u.size(); ++g) {
    const double u = post.u(g), w = post.prob(g);
    for (Eigen::Index i = 0; i < n; ++i) shrink(i) += w * u / (1.0 + u * sf.d(i));
  }
  CoefficientVector mean = theta0;
  mean.values += gamma.diag.asDiagonal() * dm.X.transpose() * sf.H *
                 shrink.cwiseProduct(sf.s_vec);
  return mean;
}

Eigen::MatrixXd posterior_cov(const SpectralForm& sf, const GammaStructure& gamma,
                              const DesignMatrices& dm, const HyperPrior& hp,
                              const QuadratureConfig& quad) {
  const UPosterior post = u_posterior(sf, hp, quad);
  const auto n = sf.d.size();
  const auto p = dm.X.cols();
  const double c = hp.c;
  const double nu = 0.5 * static_cast<double>(n) + c - 1.0;  // sigma^2 | y,u shape
  if (nu <= 1.0) throw std::runtime_error("posterior_cov: E[sigma^2 | y] does not exist");

  // G = Gamma X' H so that, given u, theta | y, sigma^2, u is normal with
  // mean theta0 + u G (I+uD)^{-1} s and covariance
  // sigma^2 [u Gamma - u^2 G (I+uD)^{-1} G'].
  const Eigen::MatrixXd G = gamma.diag.asDiagonal() * dm.X.transpose() * sf.H;
  const Eigen::MatrixXd Gamma_full = Eigen::MatrixXd(gamma.diag.asDiagonal());

  Eigen::MatrixXd e_var = Eigen::MatrixXd::Zero(p, p);   // E[ E(sigma^2|u) V(u) ]
  Eigen::MatrixXd e_mm = Eigen::MatrixXd::Zero(p, p);    // E[m(u) m(u)'] (centered below)
  Eigen::VectorXd e_m = Eigen::VectorXd::Zero(p);
  for (Eigen::Index g = 0; g < post.u.size(); ++g) {
    const double u = post.u(g), w = post.prob(g);
    double log_det_half, S;
    likelihood_factors(u, sf, hp, log_det_half, S);
    const double exp_sigma2 = S / (nu - 1.0);
    Eigen::VectorXd inv = (1.0 + u * sf.d.array()).inverse();
    const Eigen::VectorXd m = u * (G * inv.cwiseProduct(sf.s_vec));
    const Eigen::MatrixXd cond_cov =
        u * Gamma_full - u * u * (G * inv.asDiagonal() * G.transpose());
    e_var += (w * exp_sigma2) * cond_cov;
    e_mm += w * (m * m.transpose());
    e_m += w * m;
  }
  Eigen::MatrixXd cov = e_var + e_mm - e_m * e_m.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return cov;
}

PosteriorSummary fit_conjugate(const Eigen::VectorXd& y, const DesignMatrices& dm,
                               const CoefficientVector& theta0, const GammaStructure& gamma,
                               const HyperPrior& hp, const ScalingTable& table,
                               const std::vector<double>& x_out, const QuadratureConfig& quad) {
  validate_hyper(hp);
  PosteriorSummary out{zero_coefficients(theta0.plan), {}, {}, {}};
  const SpectralForm sf = spectral_form(dm, gamma, y, theta0);
  out.u_grid = u_posterior(sf, hp, quad);
  out.mean = posterior_mean(sf, gamma, dm, theta0, hp, quad);
  out.cov = posterior_cov(sf, gamma, dm, hp, quad);
  out.fitted.reserve(x_out.size());
  for (double x : x_out) {
    const Eigen::VectorXd row = basis_row(theta0.plan, table, x);
    const double fit = row.dot(out.mean.values);
    const double var = row.dot(out.cov * row);
    out.fitted.push_back({x, fit, std::sqrt(std::max(0.0, var))});
  }
  return out;
}

}  // namespace fuzzwave
