#pragma once
// Gibbs / Metropolis-within-Gibbs sampling for the membership priors:
// exact normal theta-draws (Gaussian and Student-t-augmented cases),
// random-walk theta-updates under the ellipsoid constraint, log-scale
// variance updates, and chain diagnostics.

#include <Eigen/Dense>
#include <optional>
#include <random>

#include "fuzzwave/conjugate.hpp"

namespace fuzzwave {

struct ChainState {
  CoefficientVector theta;
  double sigma2 = 1.0;
  double u = 1.0;               // tau^2 = u * sigma2
  double delta2 = 1.0;          // Student-t augmentation only
};

struct ChainConfig {
  int iters = 20000;
  int burn_in = 5000;
  int thin = 5;
  std::uint64_t seed = 1;
  double step_sigma = 0.6;      // log-scale random-walk scales
  double step_u = 0.8;
  double step_theta = 0.25;     // ellipsoid random-walk scale (adapted in burn-in)
  int theta_block = 4;          // ellipsoid update block size
};

struct ChainSummary {
  int n_kept = 0;
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
  Eigen::VectorXd ess;
  double accept_sigma = 0.0;
  double accept_u = 0.0;
  double accept_theta = 1.0;    // 1 for exact (Gibbs) theta draws
  Eigen::VectorXd mean_se() const {
    return (var.array() / ess.array().max(1.0)).sqrt();
  }
};

// Shared per-run quantities: eigendecomposition of Qn and projections.
struct McmcWorkspace {
  Eigen::VectorXd y;
  DesignMatrices dm;
  Eigen::VectorXd q_eval;   // eigenvalues of Qn (clipped at 0)
  Eigen::MatrixXd q_evec;   // eigenvectors of Qn
  Eigen::MatrixXd Xt;       // q_evec' X
  Eigen::VectorXd yt;       // q_evec' y
};

McmcWorkspace make_workspace(const Eigen::VectorXd& y, const DesignMatrices& dm);

// Unnormalized log posterior f(y | theta, sigma2, tau2) h_A pi_0.
// For the Gaussian kind, h_A is the N(theta0, tau^2 Gamma) density of §4
// (its tau^2-dependent normalizer matters and is included).
double log_joint(const ChainState& state, const McmcWorkspace& ws, const MembershipSpec& spec,
                 const HyperPrior& hp);

// Exact draw from the normal full conditional of theta (Gaussian
// membership, or Student-t given the current delta2).
Eigen::VectorXd draw_theta_gaussian(const ChainState& state, const McmcWorkspace& ws,
                                    const MembershipSpec& spec, std::mt19937_64& rng);

// One blocked random-walk M-H sweep over theta under the ellipsoid
// indicator; returns acceptance fraction over blocks.
double draw_theta_ellipsoid(ChainState& state, const McmcWorkspace& ws,
                            const MembershipSpec& spec, double step, int block_size,
                            std::mt19937_64& rng);

// Conditional of delta2 given theta: (q delta^2)^{-1} | theta ~
// Gamma((p+q)/2, rate (q + (theta-theta0)' V^{-1} (theta-theta0))/2).
double draw_delta2(const CoefficientVector& theta, const MembershipSpec& spec,
                   std::mt19937_64& rng);

// Log-scale random-walk M-H updates of sigma2 and u; returns accept flags.
std::pair<bool, bool> draw_variances(ChainState& state, const McmcWorkspace& ws,
                                     const MembershipSpec& spec, const HyperPrior& hp,
                                     double step_sigma, double step_u, std::mt19937_64& rng);

struct ChainResult {
  ChainSummary summary;
  Eigen::MatrixXd theta_samples;   // n_kept x p
  Eigen::VectorXd sigma2_samples;
  Eigen::VectorXd u_samples;
};

ChainResult run_chain(const ChainConfig& config, const Eigen::VectorXd& y,
                      const DesignMatrices& dm, const MembershipSpec& spec,
                      const HyperPrior& hp);

// ESS via initial-positive-sequence truncation of the autocorrelation sum.
double effective_sample_size(const Eigen::VectorXd& x);

}  // namespace fuzzwave
