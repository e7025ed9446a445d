#pragma once
// Fuzzy membership functions h_A over wavelet coefficients, the prior
// scale structure Gamma and the (sigma^2, u) hyperpriors.

#include <Eigen/Dense>
#include <vector>

#include "fuzzwave/decomposition.hpp"

namespace fuzzwave {

enum class MembershipKind { Gaussian, StudentT, UniformEllipsoid };

// Diagonal prior scale: 1 for the alpha block, 2^{-2js} for beta_{j,k}.
struct GammaStructure {
  Eigen::VectorXd diag;
};

GammaStructure make_gamma(const ResolutionPlan& plan, double s);

struct MembershipSpec {
  MembershipKind kind = MembershipKind::Gaussian;
  CoefficientVector theta0;
  // Gaussian: h_A proportional to the N(theta0, tau^2 Gamma) density in the
  // conjugate/MCMC paths; `weight` is the free exponent multiplier of the
  // standalone exp(-weight ||theta - theta0||^2) form.
  GammaStructure gamma;
  double weight = 1.0;
  // StudentT: dof q > 2 and p x p positive-definite scale V.
  double q = 4.0;
  Eigen::MatrixXd V;
  // UniformEllipsoid: radius delta > 0.
  double delta = 1.0;
};

MembershipSpec gaussian_membership(const CoefficientVector& theta0, const GammaStructure& gamma,
                                   double weight = 1.0);
MembershipSpec student_t_membership(const CoefficientVector& theta0, double q,
                                    const Eigen::MatrixXd& V);
// Default V = diag(Gamma): same per-level shrinkage as the Gaussian case.
MembershipSpec student_t_membership(const CoefficientVector& theta0, double q,
                                    const GammaStructure& gamma);
MembershipSpec ellipsoid_membership(const CoefficientVector& theta0, double delta);

// Hyperpriors: sigma^2 ~ inverse gamma with density
// (k^{c-1}/Gamma(c-1)) exp(-k/sigma^2) (sigma^2)^{-c}, c > 1, k > 0, and
// u = tau^2/sigma^2 ~ F(b, a).
struct HyperPrior {
  double a = 40.0;
  double b = 3.0;
  double c = 2.0;
  double k = 1.5;
};

HyperPrior validate_hyper(const HyperPrior& hp);

// Truncated squared L2 distance: ||theta - theta0||^2 over levels <= J.
double rho_J_sq(const CoefficientVector& theta, const CoefficientVector& theta0);

// log h_A(theta), normalized so h_A(theta0) = 1 (always <= 0).
double membership_log_eval(const MembershipSpec& spec, const CoefficientVector& theta);

// Product rule h_{A∩B} = h_A h_B: sum of log memberships.
double combined_log_eval(const std::vector<MembershipSpec>& specs,
                         const CoefficientVector& theta);

double log_inv_gamma_density(const HyperPrior& hp, double sigma2);
double log_f_density(double u, double dof1, double dof2);  // F(dof1, dof2)
double hyper_log_density(const HyperPrior& hp, double sigma2, double u);

}  // namespace fuzzwave
