#include "fuzzwave/membership.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fuzzwave {

GammaStructure make_gamma(const ResolutionPlan& plan, double s) {
  GammaStructure g;
  g.diag = Eigen::VectorXd::Ones(plan.p);
  for (int j = 0; j <= plan.J; ++j) {
    const double decay = std::pow(2.0, -2.0 * s * j);
    for (int k = -plan.K[j]; k <= plan.K[j]; ++k) g.diag(plan.beta_index(j, k)) = decay;
  }
  return g;
}

MembershipSpec gaussian_membership(const CoefficientVector& theta0, const GammaStructure& gamma,
                                   double weight) {
  if (weight <= 0.0) throw std::invalid_argument("gaussian_membership: weight must be positive");
  MembershipSpec spec;
  spec.kind = MembershipKind::Gaussian;
  spec.theta0 = theta0;
  spec.gamma = gamma;
  spec.weight = weight;
  return spec;
}

MembershipSpec student_t_membership(const CoefficientVector& theta0, double q,
                                    const Eigen::MatrixXd& V) {
  if (q <= 2.0) throw std::invalid_argument("student_t_membership: q must exceed 2");
  MembershipSpec spec;
  spec.kind = MembershipKind::StudentT;
  spec.theta0 = theta0;
  spec.q = q;
  spec.V = V;
  Eigen::LLT<Eigen::MatrixXd> llt(V);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("student_t_membership: V is not positive definite");
  return spec;
}

MembershipSpec student_t_membership(const CoefficientVector& theta0, double q,
                                    const GammaStructure& gamma) {
  return student_t_membership(theta0, q,
                              Eigen::MatrixXd(gamma.diag.asDiagonal()));
}

MembershipSpec ellipsoid_membership(const CoefficientVector& theta0, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("ellipsoid_membership: delta must be positive");
  MembershipSpec spec;
  spec.kind = MembershipKind::UniformEllipsoid;
  spec.theta0 = theta0;
  spec.delta = delta;
  return spec;
}

HyperPrior validate_hyper(const HyperPrior& hp) {
  if (hp.a <= 0.0 || hp.b <= 0.0) throw std::invalid_argument("hyperprior: a, b must be positive");
  if (hp.c <= 1.0) throw std::invalid_argument("hyperprior: c must exceed 1 (proper prior)");
  if (hp.k <= 0.0) throw std::invalid_argument("hyperprior: k must be positive");
  return hp;
}

double rho_J_sq(const CoefficientVector& theta, const CoefficientVector& theta0) {
  if (theta.plan.p != theta0.plan.p || theta.plan.J != theta0.plan.J)
    throw std::invalid_argument("rho_J_sq: plan mismatch");
  return (theta.values - theta0.values).squaredNorm();
}

double membership_log_eval(const MembershipSpec& spec, const CoefficientVector& theta) {
  const Eigen::VectorXd diff = theta.values - spec.theta0.values;
  switch (spec.kind) {
    case MembershipKind::Gaussian:
      return -spec.weight * diff.squaredNorm();
    case MembershipKind::StudentT: {
      const double p = static_cast<double>(diff.size());
      const double quad = diff.dot(spec.V.llt().solve(diff));
      return -0.5 * (p + spec.q) * std::log1p(quad / spec.q);
    }
    case MembershipKind::UniformEllipsoid:
      return diff.norm() <= spec.delta ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  throw std::logic_error("membership_log_eval: unknown kind");
}

double combined_log_eval(const std::vector<MembershipSpec>& specs,
                         const CoefficientVector& theta) {
  if (specs.empty()) throw std::invalid_argument("combined_log_eval: empty spec list");
  double total = 0.0;
  for (const auto& s : specs) total += membership_log_eval(s, theta);
  return total;
}

double log_inv_gamma_density(const HyperPrior& hp, double sigma2) {
  if (sigma2 <= 0.0) throw std::invalid_argument("log_inv_gamma_density: sigma2 must be positive");
  return (hp.c - 1.0) * std::log(hp.k) - std::lgamma(hp.c - 1.0) - hp.k / sigma2 -
         hp.c * std::log(sigma2);
}

double log_f_density(double u, double dof1, double dof2) {
  if (u <= 0.0) throw std::invalid_argument("log_f_density: argument must be positive");
  const double h1 = 0.5 * dof1, h2 = 0.5 * dof2;
  return std::lgamma(h1 + h2) - std::lgamma(h1) - std::lgamma(h2) + h1 * std::log(dof1 / dof2) +
         (h1 - 1.0) * std::log(u) - (h1 + h2) * std::log1p(dof1 * u / dof2);
}

double hyper_log_density(const HyperPrior& hp, double sigma2, double u) {
  return log_inv_gamma_density(hp, sigma2) + log_f_density(u, hp.b, hp.a);
}

}  // namespace fuzzwave
