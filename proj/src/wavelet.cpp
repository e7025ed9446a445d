#include "fuzzwave/wavelet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fuzzwave {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

std::vector<double> family_filter(FamilyName name) {
  switch (name) {
    case FamilyName::Haar:
      return {1.0 / kSqrt2, 1.0 / kSqrt2};
    case FamilyName::Daubechies2:
      return {(1.0 + kSqrt3) / (4.0 * kSqrt2), (3.0 + kSqrt3) / (4.0 * kSqrt2),
              (3.0 - kSqrt3) / (4.0 * kSqrt2), (1.0 - kSqrt3) / (4.0 * kSqrt2)};
    case FamilyName::Daubechies3:
      return {0.33267055295095688, 0.80689150931333875, 0.45987750211933132,
              -0.13501102001039084, -0.08544127388224149, 0.03522629188210562};
    case FamilyName::Daubechies4:
      return {0.23037781330885523, 0.71484657055254153, 0.63088076792959036,
              -0.02798376941698385, -0.18703481171888114, 0.03084138183598697,
              0.03288301166698295, -0.01059740178499728};
  }
  throw std::invalid_argument("unknown wavelet family");
}

double family_smoothness(FamilyName name) {
  // Sobolev regularity exponents; Haar is below the s > 1/2 requirement.
  switch (name) {
    case FamilyName::Haar: return 0.5;
    case FamilyName::Daubechies2: return 1.0;
    case FamilyName::Daubechies3: return 1.415;
    case FamilyName::Daubechies4: return 1.775;
  }
  return 0.5;
}

void validate_filter(const std::vector<double>& h) {
  double sum = 0.0;
  for (double v : h) sum += v;
  if (std::abs(sum - kSqrt2) > 1e-12)
    throw std::runtime_error("filter does not sum to sqrt(2)");
  const int L = static_cast<int>(h.size());
  for (int l = 0; 2 * l < L; ++l) {
    double dot = 0.0;
    for (int m = 0; m + 2 * l < L; ++m) dot += h[m] * h[m + 2 * l];
    const double target = (l == 0) ? 1.0 : 0.0;
    if (std::abs(dot - target) > 1e-12)
      throw std::runtime_error("filter fails orthonormality");
  }
}

}  // namespace

FamilyName parse_family(const std::string& name) {
  if (name == "haar" || name == "Haar") return FamilyName::Haar;
  if (name == "db2" || name == "Daubechies2") return FamilyName::Daubechies2;
  if (name == "db3" || name == "Daubechies3") return FamilyName::Daubechies3;
  if (name == "db4" || name == "Daubechies4") return FamilyName::Daubechies4;
  throw std::invalid_argument("unknown wavelet family: " + name);
}

std::string family_to_string(FamilyName name) {
  switch (name) {
    case FamilyName::Haar: return "haar";
    case FamilyName::Daubechies2: return "db2";
    case FamilyName::Daubechies3: return "db3";
    case FamilyName::Daubechies4: return "db4";
  }
  return "?";
}

WaveletFamily build_family(FamilyName name) {
  WaveletFamily f;
  f.name = name;
  f.filter = family_filter(name);
  validate_filter(f.filter);
  f.support_len_phi = static_cast<int>(f.filter.size()) - 1;
  f.support_len_psi = f.support_len_phi;
  f.smoothness = family_smoothness(name);
  f.test_only = !(f.smoothness > 0.5);
  return f;
}

WaveletFamily build_family(const std::string& name) {
  return build_family(parse_family(name));
}

double ScalingTable::eval_phi(double x) const {
  const int l = family.support_len_phi;
  if (haar_exact) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
  if (x <= 0.0 || x >= l) return 0.0;
  const double step = std::ldexp(1.0, -depth);
  const double t = x / step;
  const auto i = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i);
  return phi[i] * (1.0 - frac) + phi[i + 1] * frac;
}

double ScalingTable::eval_psi(double x) const {
  const int l = family.support_len_psi;
  if (haar_exact) {
    if (x < 0.0 || x >= 1.0) return 0.0;
    return x < 0.5 ? 1.0 : -1.0;
  }
  if (x <= 0.0 || x >= l) return 0.0;
  const double step = std::ldexp(1.0, -depth);
  const double t = x / step;
  const auto i = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i);
  return psi[i] * (1.0 - frac) + psi[i + 1] * frac;
}

double ScalingTable::max_abs_psi() const {
  if (haar_exact) return 1.0;
  double m = 0.0;
  for (double v : psi) m = std::max(m, std::abs(v));
  return m;
}

ScalingTable refine_scaling(const WaveletFamily& family, int depth) {
  if (depth < 4 || depth > 20) throw std::invalid_argument("refine_scaling: depth out of [4, 20]");
  ScalingTable table;
  table.family = family;
  table.depth = depth;
  table.haar_exact = (family.name == FamilyName::Haar);

  const auto& h = family.filter;
  const int L = static_cast<int>(h.size());
  const int l = L - 1;
  const std::size_t npts = static_cast<std::size_t>(l) * (std::size_t(1) << depth) + 1;
  table.phi.assign(npts, 0.0);
  table.psi.assign(npts, 0.0);

  if (table.haar_exact) {
    // Closed form; the table is still filled so that grid-based checks work.
    const double step = std::ldexp(1.0, -depth);
    for (std::size_t i = 0; i < npts; ++i) {
      const double x = static_cast<double>(i) * step;
      table.phi[i] = (x < 1.0) ? 1.0 : 0.0;
      table.psi[i] = (x >= 1.0) ? 0.0 : (x < 0.5 ? 1.0 : -1.0);
    }
    return table;
  }

  // Values at integers: fixed point of phi(x) = sqrt(2) sum h_m phi(2x - m),
  // normalized by sum phi(i) = 1.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(L, L);
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y) {
      const int m = 2 * x - y;
      if (m >= 0 && m < L) A(x, y) = kSqrt2 * h[m];
    }
  Eigen::MatrixXd M = A - Eigen::MatrixXd::Identity(L, L);
  M.row(L - 1).setOnes();  // replace one equation with the normalization
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(L);
  rhs(L - 1) = 1.0;
  Eigen::VectorXd phi_int = M.fullPivLu().solve(rhs);

  const std::size_t stride = std::size_t(1) << depth;
  for (int i = 0; i <= l; ++i) table.phi[static_cast<std::size_t>(i) * stride] = phi_int(i);

  // Midpoint refinement level by level; values at 2x - m are already known.
  for (int r = 1; r <= depth; ++r) {
    const std::size_t coarse = std::size_t(1) << (depth - r + 1);
    const std::size_t fine = coarse / 2;
    for (std::size_t i = fine; i < npts; i += coarse) {
      const double x = static_cast<double>(i) * std::ldexp(1.0, -depth);
      double v = 0.0;
      for (int m = 0; m < L; ++m) {
        const double arg = 2.0 * x - m;
        if (arg <= 0.0 || arg >= l) continue;
        const std::size_t idx = static_cast<std::size_t>(std::llround(arg * std::ldexp(1.0, depth)));
        v += h[m] * table.phi[idx];
      }
      table.phi[i] = kSqrt2 * v;
    }
  }

  // psi(x) = sqrt(2) sum g_k phi(2x - k), g_k = (-1)^k h_{L-1-k}; support [0, l].
  for (std::size_t i = 0; i < npts; ++i) {
    const double x = static_cast<double>(i) * std::ldexp(1.0, -depth);
    double v = 0.0;
    for (int k = 0; k < L; ++k) {
      const double g = ((k % 2 == 0) ? 1.0 : -1.0) * h[L - 1 - k];
      const double arg = 2.0 * x - k;
      if (arg <= 0.0 || arg >= l) continue;
      const std::size_t idx = static_cast<std::size_t>(std::llround(arg * std::ldexp(1.0, depth)));
      v += g * table.phi[idx];
    }
    table.psi[i] = kSqrt2 * v;
  }
  return table;
}

int translation_bound(const Interval& domain, int support_len, int j) {
  const double scale = std::ldexp(1.0, j);
  // psi_{j,k} support (k/2^j, (k+l)/2^j) intersects (lo, hi) iff
  // k < 2^j hi and k + l > 2^j lo.
  const auto k_max = static_cast<long>(std::ceil(scale * domain.hi)) - 1;
  const auto k_min = static_cast<long>(std::floor(scale * domain.lo - support_len)) + 1;
  return static_cast<int>(std::max({std::labs(k_min), std::labs(k_max), 0L}));
}

long resolution_bound(double l_X, int l_phi, int l_psi, int J) {
  const double v = l_X * std::ldexp(1.0, J + 1) + static_cast<double>(J) * (l_psi + 1) +
                   (l_phi + l_psi + 2);
  return static_cast<long>(std::llround(v));
}

namespace {
ResolutionPlan finish_plan(const WaveletFamily& family, const Interval& domain, int J) {
  ResolutionPlan plan;
  plan.J = J;
  plan.domain = domain;
  plan.l_phi = family.support_len_phi;
  plan.l_psi = family.support_len_psi;
  plan.family = family.name;
  plan.K0_alpha = translation_bound(domain, family.support_len_phi, 0);
  plan.K.resize(J + 1);
  plan.M_beta = 0;
  for (int j = 0; j <= J; ++j) {
    plan.K[j] = translation_bound(domain, family.support_len_psi, j);
    plan.M_beta += 2 * plan.K[j] + 1;
  }
  plan.p = plan.alpha_count() + plan.M_beta;
  return plan;
}
}  // namespace

ResolutionPlan plan_resolution(const WaveletFamily& family, const Interval& domain, int n) {
  if (n < 1) throw std::invalid_argument("plan_resolution: n must be >= 1");
  const double l_X = domain.length();
  if (resolution_bound(l_X, family.support_len_phi, family.support_len_psi, 0) > n)
    throw std::runtime_error("insufficient data: parameter bound fails at J = 0");
  int J = 0;
  while (resolution_bound(l_X, family.support_len_phi, family.support_len_psi, J + 1) <= n) ++J;
  return finish_plan(family, domain, J);
}

ResolutionPlan make_plan(const WaveletFamily& family, const Interval& domain, int J) {
  if (J < 0) throw std::invalid_argument("make_plan: J must be >= 0");
  return finish_plan(family, domain, J);
}

int ResolutionPlan::alpha_index(int k) const {
  if (std::abs(k) > K0_alpha) throw std::out_of_range("alpha_index: |k| > K0");
  return k + K0_alpha;
}

int ResolutionPlan::beta_index(int j, int k) const {
  if (j < 0 || j > J) throw std::out_of_range("beta_index: level out of range");
  if (std::abs(k) > K[j]) throw std::out_of_range("beta_index: |k| > K_j");
  int base = alpha_count();
  for (int jj = 0; jj < j; ++jj) base += 2 * K[jj] + 1;
  return base + k + K[j];
}

double eval_psi_jk(const ScalingTable& table, int j, int k, double x) {
  const double scale = std::ldexp(1.0, j);
  return std::sqrt(scale) * table.eval_psi(scale * x - k);
}

double eval_phi_k(const ScalingTable& table, int k, double x) {
  return table.eval_phi(x - k);
}

}  // namespace fuzzwave
