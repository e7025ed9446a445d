#pragma once
// Exact hierarchical posterior for the Gaussian membership prior:
// spectral decomposition of X Gamma X' + Qn, the u-posterior, posterior
// moments and fitted-curve prediction.

#include <Eigen/Dense>

#include "fuzzwave/membership.hpp"

namespace fuzzwave {

struct SpectralForm {
  Eigen::MatrixXd H;     // orthogonal eigenvectors
  Eigen::VectorXd d;     // eigenvalues of X Gamma X' + Qn, descending, >= 0
  Eigen::VectorXd s_vec; // H' (y - X theta0)
};

SpectralForm spectral_form(const DesignMatrices& dm, const GammaStructure& gamma,
                           const Eigen::VectorXd& y, const CoefficientVector& theta0);

// u-quadrature: u = t/(1-t) with Gauss-Legendre nodes on (0, 1).
struct QuadratureConfig {
  int n_nodes = 201;
};

struct UQuadrature {
  Eigen::VectorXd u;          // nodes
  Eigen::VectorXd log_base;   // log(GL weight * du/dt) per node
};

UQuadrature make_u_quadrature(const QuadratureConfig& quad = {});

enum class FKernel { AsPrinted, Textbook };

// The Eq 4.11 integrand exactly as printed (log scale):
// (b/2) log u - ((a+b)/2) log(a+bu) - 1/2 sum log(1+u d_i)
// - ((n+2c)/2) log(2k + sum s_i^2/(1+u d_i)).
// The textbook switch replaces the F factor u^{b/2}/(a+bu)^{(a+b)/2} with
// the F(b, a) density kernel u^{b/2-1}(1 + bu/a)^{-(a+b)/2}.
double pi22_log_unnorm(double u, const SpectralForm& sf, const HyperPrior& hp,
                       FKernel kernel = FKernel::AsPrinted);
double pi22_unnorm(double u, const SpectralForm& sf, const HyperPrior& hp,
                   FKernel kernel = FKernel::AsPrinted);

// Exact u-posterior weight after integrating theta and sigma^2:
// F_{b,a}(u) prod(1+u d_i)^{-1/2} (k + 1/2 sum s_i^2/(1+u d_i))^{-(n/2+c-1)}.
double posterior_u_log_weight(double u, const SpectralForm& sf, const HyperPrior& hp);

// Normalized u-posterior on the quadrature grid.
struct UPosterior {
  Eigen::VectorXd u;
  Eigen::VectorXd prob;        // sums to 1
  double log_normalizer = 0.0; // log sum of exp(log weight + log base)
};

UPosterior u_posterior(const SpectralForm& sf, const HyperPrior& hp,
                       const QuadratureConfig& quad = {});

// E(theta | y) = theta0 + Gamma X' H E[u (I + uD)^{-1} | y] s.
CoefficientVector posterior_mean(const SpectralForm& sf, const GammaStructure& gamma,
                                 const DesignMatrices& dm, const CoefficientVector& theta0,
                                 const HyperPrior& hp, const QuadratureConfig& quad = {});

// Law-of-total-variance evaluation of Var(theta | y), symmetrized.
Eigen::MatrixXd posterior_cov(const SpectralForm& sf, const GammaStructure& gamma,
                              const DesignMatrices& dm, const HyperPrior& hp,
                              const QuadratureConfig& quad = {});

struct CurvePoint {
  double x;
  double fit;
  double sd;
};

struct PosteriorSummary {
  CoefficientVector mean;
  Eigen::MatrixXd cov;
  UPosterior u_grid;
  std::vector<CurvePoint> fitted;
};

PosteriorSummary fit_conjugate(const Eigen::VectorXd& y, const DesignMatrices& dm,
                               const CoefficientVector& theta0, const GammaStructure& gamma,
                               const HyperPrior& hp, const ScalingTable& table,
                               const std::vector<double>& x_out,
                               const QuadratureConfig& quad = {});

double log_sum_exp(const Eigen::VectorXd& v);

}  // namespace fuzzwave
