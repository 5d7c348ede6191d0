#pragma once

#include <memory>
#include <vector>

#include "msf/cutproject.hpp"

namespace msf {

double sinc(double t);  // sin(pi t) / (pi t)

/// Infinite-convolution smooth window on Omega: the convolution of normalized
/// indicators with geometrically shrinking supports. Its Fourier transform is
/// the product of sinc factors with ratio epsilon^n, truncated at S factors.
struct BumpSpec {
  Window window;       // Omega = [-a, a]
  double epsilon;      // in (0, 1)
  int n;               // shrinkage index: Omega_n = (1 - epsilon^n) Omega
  int S = 40;          // retained convolution factors

  double omega_n_length() const;  // |Omega_n|
  void validate() const;
};

double bump_ft(const BumpSpec& spec, double t);

/// Decreasing upper bound for |bump_ft| built from the factors already in
/// their decay regime.
double bump_ft_envelope(const BumpSpec& spec, double t);

/// Smallest radius T with envelope(T) <= bound.
double bump_ft_cutoff(const BumpSpec& spec, double bound);

/// L1 norm of the Fourier transform, by quadrature.
double bump_ft_l1(const BumpSpec& spec);

/// One-off time-domain value by direct quadrature of the Fourier transform.
double bump_time(const BumpSpec& spec, double x);

/// Cached time-domain evaluator (one FFT at construction, interpolation after).
class BumpFunction {
 public:
  explicit BumpFunction(BumpSpec spec);

  const BumpSpec& spec() const { return spec_; }
  double ft(double t) const { return bump_ft(spec_, t); }
  double time(double x) const;
  double peak() const { return time(0.0); }

 private:
  BumpSpec spec_;
  std::vector<double> grid_;  // time samples on [-x_max, x_max]
  double dx_;
  double x_max_;
};

/// Limit profile of the window family: sinc(|Omega| xi). The closed form is
/// validated against phi_convolution_oracle by the test suite.
double phi_profile(const Window& window, double xi);

/// Independent evaluation of the profile as |Omega| times the autoconvolution
/// of the truncated sinc-product limit, by trapezoid quadrature. xi should be
/// a multiple of the spacing h.
double phi_convolution_oracle(const Window& window, double xi, int n, int S,
                              double h = 0.05, double T = 2500.0);

struct DualWeight {
  LatticePoint point;   // dual lattice point eta
  Eigen::VectorXd p1s;  // p1*(eta)
  double p2s;           // p2*(eta)
  double w;             // vol(Gamma)^{-1} psi_hat(p2s), or its absolute value
};

struct DualWeightTable {
  std::vector<DualWeight> entries;  // sorted by p1s (lexicographic)
  double floor;                     // entries with |w| < floor are dropped
  double p2s_cutoff;
  std::vector<std::pair<double, double>> box;  // enumeration box used
  bool abs_weights;

  /// Entries whose p1s (m = 1) lies in [lo, hi]; table must be sorted.
  std::pair<size_t, size_t> p1s_range(double lo, double hi) const;
};

DualWeightTable dual_weight_table(const CutProjectScheme& scheme, const BumpSpec& spec,
                                  double p1s_extent, double floor = 1e-10,
                                  bool abs_weights = false,
                                  double point_budget = 5e7);

/// Primal weights psi(p2(gamma) + s), aligned with patch.points.
std::vector<double> primal_weights(const ModelSetPatch& patch, const BumpFunction& bump);

struct WeightTable {
  std::shared_ptr<BumpFunction> bump;
  std::vector<double> primal;  // aligned with the patch used to build it
  DualWeightTable dual;
};

WeightTable weight_table(const ModelSetPatch& patch, const BumpSpec& spec,
                         double p1s_extent, double floor = 1e-10,
                         bool abs_weights = false);

}  // namespace msf
