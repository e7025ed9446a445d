#pragma once
// Wavelet coefficient vectors, projection/reconstruction, design matrix
// and the remainder Gram kernel.

#include <Eigen/Dense>
#include <functional>

#include "fuzzwave/wavelet.hpp"

namespace fuzzwave {

// theta = (alpha block, beta blocks) under the plan's ordering contract.
struct CoefficientVector {
  Eigen::VectorXd values;
  ResolutionPlan plan;

  double alpha(int k) const { return values(plan.alpha_index(k)); }
  double beta(int j, int k) const { return values(plan.beta_index(j, k)); }
  int size() const { return static_cast<int>(values.size()); }
};

CoefficientVector zero_coefficients(const ResolutionPlan& plan);

struct DesignMatrices {
  Eigen::MatrixXd X;   // n x p, columns ordered as CoefficientVector
  Eigen::MatrixXd Qn;  // n x n remainder Gram matrix, symmetric PSD
  Eigen::VectorXd x;   // observation abscissae
};

// Coefficient integrals of g0 against each basis function, composite
// Gauss-Legendre on dyadic panels over the basis function's support.
// quad_points >= 64 controls the per-function node budget.
CoefficientVector project_coefficients(const std::function<double(double)>& g0,
                                       const ResolutionPlan& plan, const ScalingTable& table,
                                       int quad_points = 256);

// g_J(x) = sum alpha_k phi_k(x) + sum beta_{j,k} psi_{j,k}(x).
double reconstruct(const CoefficientVector& theta, const ScalingTable& table, double x);

// Basis row (phi_k(x))_k ++ (psi_{j,k}(x))_{j,k}.
Eigen::VectorXd basis_row(const ResolutionPlan& plan, const ScalingTable& table, double x);

Eigen::MatrixXd design_matrix(const Eigen::VectorXd& x, const ResolutionPlan& plan,
                              const ScalingTable& table);

// Q(x, y) = sum_{j > J} 2^{-2js} sum_{|k| <= K_j} psi_{jk}(x) psi_{jk}(y),
// truncated once the geometric tail bound drops below tail_tol.
double remainder_kernel(const ScalingTable& table, const ResolutionPlan& plan, double x, double y,
                        double s_eff, double tail_tol = 1e-8);

// Elementwise remainder kernel, symmetrized, negative eigenvalues clipped.
Eigen::MatrixXd gram_remainder(const Eigen::VectorXd& x, const ResolutionPlan& plan,
                               const ScalingTable& table, double s_eff, double tail_tol = 1e-8);

DesignMatrices build_design(const Eigen::VectorXd& x, const ResolutionPlan& plan,
                            const ScalingTable& table, double s_eff, double tail_tol = 1e-8);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace fuzzwave
