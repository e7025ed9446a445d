#include "fuzzwave/decomposition.hpp"

#include <cmath>
#include <stdexcept>

namespace fuzzwave {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const double eps = 1e-15;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < eps) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

CoefficientVector zero_coefficients(const ResolutionPlan& plan) {
  return {Eigen::VectorXd::Zero(plan.p), plan};
}

namespace {

// Integral of f over [a, b] split into dyadic panels of step 2^-q,
// 16-node Gauss-Legendre per panel. Panels are aligned to multiples of
// 2^-q, which are breakpoints of the tabulated basis functions.
double panel_integral(const std::function<double(double)>& f, double a, double b, int q) {
  static std::vector<double> gl_x, gl_w;
  if (gl_x.empty()) gauss_legendre(16, gl_x, gl_w);
  const double h = std::ldexp(1.0, -q);
  const auto i0 = static_cast<long>(std::floor(a / h));
  const auto i1 = static_cast<long>(std::ceil(b / h));
  double total = 0.0;
  for (long i = i0; i < i1; ++i) {
    const double lo = std::max(a, i * h);
    const double hi = std::min(b, (i + 1) * h);
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t g = 0; g < gl_x.size(); ++g) acc += gl_w[g] * f(mid + half * gl_x[g]);
    total += half * acc;
  }
  return total;
}

int panel_depth(int level, double support_len, int quad_points) {
  // Enough panels that 16 nodes each meet the quad_points budget, and at
  // least matching the basis function's own dyadic scale.
  const int panels = std::max(4, quad_points / 16);
  int q = level + 1;
  while (support_len * std::ldexp(1.0, q - level) < panels) ++q;
  return q;
}

}  // namespace

CoefficientVector project_coefficients(const std::function<double(double)>& g0,
                                       const ResolutionPlan& plan, const ScalingTable& table,
                                       int quad_points) {
  if (quad_points < 64) throw std::invalid_argument("project_coefficients: quad_points < 64");
  CoefficientVector theta = zero_coefficients(plan);
  auto checked_g0 = [&](double x) {
    const double v = g0(x);
    if (!std::isfinite(v)) throw std::runtime_error("project_coefficients: non-finite g0 value");
    return v;
  };

  const int q_alpha = panel_depth(0, plan.l_phi, quad_points);
  for (int k = -plan.K0_alpha; k <= plan.K0_alpha; ++k) {
    auto f = [&](double x) { return eval_phi_k(table, k, x) * checked_g0(x); };
    theta.values(plan.alpha_index(k)) =
        panel_integral(f, k, k + static_cast<double>(plan.l_phi), q_alpha);
  }
  for (int j = 0; j <= plan.J; ++j) {
    const double scale = std::ldexp(1.0, j);
    const int q = panel_depth(j, plan.l_psi / scale, quad_points);
    for (int k = -plan.K[j]; k <= plan.K[j]; ++k) {
      auto f = [&](double x) { return eval_psi_jk(table, j, k, x) * checked_g0(x); };
      theta.values(plan.beta_index(j, k)) =
          panel_integral(f, k / scale, (k + plan.l_psi) / scale, q);
    }
  }
  return theta;
}

Eigen::VectorXd basis_row(const ResolutionPlan& plan, const ScalingTable& table, double x) {
  Eigen::VectorXd row(plan.p);
  for (int k = -plan.K0_alpha; k <= plan.K0_alpha; ++k)
    row(plan.alpha_index(k)) = eval_phi_k(table, k, x);
  for (int j = 0; j <= plan.J; ++j)
    for (int k = -plan.K[j]; k <= plan.K[j]; ++k)
      row(plan.beta_index(j, k)) = eval_psi_jk(table, j, k, x);
  return row;
}

double reconstruct(const CoefficientVector& theta, const ScalingTable& table, double x) {
  return basis_row(theta.plan, table, x).dot(theta.values);
}

Eigen::MatrixXd design_matrix(const Eigen::VectorXd& x, const ResolutionPlan& plan,
                              const ScalingTable& table) {
  for (int i = 0; i < x.size(); ++i)
    if (x(i) < plan.domain.lo || x(i) > plan.domain.hi)
      throw std::invalid_argument("design_matrix: abscissa outside domain");
  Eigen::MatrixXd X(x.size(), plan.p);
  for (int i = 0; i < x.size(); ++i) X.row(i) = basis_row(plan, table, x(i)).transpose();
  return X;
}

double remainder_kernel(const ScalingTable& table, const ResolutionPlan& plan, double x, double y,
                        double s_eff, double tail_tol) {
  if (s_eff <= 0.5) throw std::invalid_argument("remainder_kernel: s_eff must exceed 1/2");
  if (tail_tol <= 0.0) throw std::invalid_argument("remainder_kernel: tail_tol must be positive");
  const int l = plan.l_psi;
  const double psi_max = table.max_abs_psi();
  // Level j contributes at most 2^{j(1-2s)} * l * psi_max^2; the tail from
  // level j0 is geometric with ratio 2^{1-2s} < 1.
  const double ratio = std::pow(2.0, 1.0 - 2.0 * s_eff);
  const double level_const = l * psi_max * psi_max;
  double total = 0.0;
  for (int j = plan.J + 1; j <= 60; ++j) {
    const double tail_bound =
        level_const * std::pow(2.0, static_cast<double>(j) * (1.0 - 2.0 * s_eff)) / (1.0 - ratio);
    if (tail_bound < tail_tol) break;
    const double scale = std::ldexp(1.0, j);
    const int Kj = translation_bound(plan.domain, l, j);
    const auto kx_lo = static_cast<long>(std::floor(scale * x - l)) + 1;
    const auto kx_hi = static_cast<long>(std::ceil(scale * x)) - 1;
    double level_sum = 0.0;
    for (long k = kx_lo; k <= kx_hi; ++k) {
      if (std::labs(k) > Kj) continue;
      const double px = eval_psi_jk(table, j, static_cast<int>(k), x);
      if (px == 0.0) continue;
      const double py = eval_psi_jk(table, j, static_cast<int>(k), y);
      level_sum += px * py;
    }
    total += std::pow(2.0, -2.0 * s_eff * j) * level_sum;
  }
  return total;
}

Eigen::MatrixXd gram_remainder(const Eigen::VectorXd& x, const ResolutionPlan& plan,
                               const ScalingTable& table, double s_eff, double tail_tol) {
  const auto n = x.size();
  Eigen::MatrixXd Q(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = remainder_kernel(table, plan, x(i), x(j), s_eff, tail_tol);
      Q(i, j) = v;
      Q(j, i) = v;
    }
  // Clip negative eigenvalues so the Gaussian-process covariance stays PSD.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

DesignMatrices build_design(const Eigen::VectorXd& x, const ResolutionPlan& plan,
                            const ScalingTable& table, double s_eff, double tail_tol) {
  DesignMatrices dm;
  dm.x = x;
  dm.X = design_matrix(x, plan, table);
  dm.Qn = gram_remainder(x, plan, table, s_eff, tail_tol);
  return dm;
}

}  // namespace fuzzwave
