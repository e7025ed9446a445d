#pragma once
// Compactly supported orthonormal wavelet families: filters, cascade
// tabulation of (phi, psi), dilate/translate evaluation and the
// resolution-level bound.

#include <string>
#include <vector>

namespace fuzzwave {

enum class FamilyName { Haar, Daubechies2, Daubechies3, Daubechies4 };

FamilyName parse_family(const std::string& name);
std::string family_to_string(FamilyName name);

struct WaveletFamily {
  FamilyName name;
  std::vector<double> filter;  // low-pass h, sum = sqrt(2)
  int support_len_phi;         // l_phi = filter length - 1 (Haar: 1)
  int support_len_psi;         // l_psi, equal to l_phi here
  double smoothness;           // nominal regularity s
  bool test_only;              // Haar: s not > 1/2
};

// Validates the filter (sum and orthonormality within 1e-12).
WaveletFamily build_family(FamilyName name);
WaveletFamily build_family(const std::string& name);

// phi and psi tabulated on the dyadic grid of step 2^-depth over [0, l].
struct ScalingTable {
  WaveletFamily family;
  int depth;
  std::vector<double> phi;  // phi(i * 2^-depth), i = 0 .. l * 2^depth
  std::vector<double> psi;
  bool haar_exact;  // Haar is evaluated in closed form, not interpolated

  // Linear interpolation on the grid; exactly 0 outside [0, l].
  double eval_phi(double x) const;
  double eval_psi(double x) const;
  double max_abs_psi() const;
};

// Cascade refinement: exact values at integers from the two-scale
// eigenproblem, then dyadic midpoint refinement to the requested depth.
// depth must lie in [4, 20].
ScalingTable refine_scaling(const WaveletFamily& family, int depth);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

struct ResolutionPlan {
  int J = 0;               // max resolution level
  std::vector<int> K;      // K_0 .. K_J
  int K0_alpha = 0;        // translation bound for the phi block
  int M_beta = 0;          // sum of (2 K_j + 1)
  int p = 0;               // (2 K0 + 1) + M_beta
  Interval domain;
  int l_phi = 0;
  int l_psi = 0;
  FamilyName family = FamilyName::Daubechies2;

  int alpha_count() const { return 2 * K0_alpha + 1; }
  // Flat index of alpha_k / beta_{j,k} under the ordering contract
  // (alpha block ascending in k, then beta blocks ascending in (j, k)).
  int alpha_index(int k) const;
  int beta_index(int j, int k) const;
};

// Translation bound at level j: smallest K with psi_{j,k} identically
// zero on the domain whenever |k| > K.
int translation_bound(const Interval& domain, int support_len, int j);

// Paper bound l_X 2^{J+1} + J(l_psi+1) + (l_phi+l_psi+2) for level J.
long resolution_bound(double l_X, int l_phi, int l_psi, int J);

// Largest J with resolution_bound <= n; throws if even J = 0 fails.
ResolutionPlan plan_resolution(const WaveletFamily& family, const Interval& domain, int n);

// Fixed-J plan (bound not enforced); used by tests and select-j sweeps.
ResolutionPlan make_plan(const WaveletFamily& family, const Interval& domain, int J);

// psi_{j,k}(x) = 2^{j/2} psi(2^j x - k); phi_k(x) = phi(x - k).
double eval_psi_jk(const ScalingTable& table, int j, int k, double x);
double eval_phi_k(const ScalingTable& table, int k, double x);

}  // namespace fuzzwave
