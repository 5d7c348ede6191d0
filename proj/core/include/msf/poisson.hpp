#pragma once

#include "msf/fourier.hpp"

namespace msf {

struct TruncationInfo {
  double patch_radius = 0.0;
  double dual_floor = 0.0;
  double dual_p2s_cutoff = 0.0;
  double quadrature_spacing = 0.0;
  std::vector<std::pair<double, double>> dual_box;
  double tail_estimate = 0.0;
};

struct ResidualReport {
  std::vector<double> grid;       // evaluation points (empty for scalar checks)
  std::vector<double> residuals;  // per grid point, or a single entry
  double max_abs_residual = 0.0;
  TruncationInfo truncation;
  double tolerance = 0.0;
  bool pass = false;

  void finalize(double tol);  // sets max_abs_residual, tolerance, pass
};

/// Slim dual-lattice weight list for long periodization sums (m = 1): only
/// (p1*, weight) pairs, sorted by p1*. Built in strips to keep memory flat.
struct SlimDualTable {
  std::vector<double> p1s;  // sorted
  std::vector<double> w;    // vol^{-1} psi_hat(p2*), aligned with p1s
  double floor = 0.0;
  double p2s_cutoff = 0.0;
  double extent = 0.0;  // covers |p1*| <= extent
};

SlimDualTable slim_dual_table(const CutProjectScheme& scheme, const BumpSpec& spec,
                              double p1s_extent, double floor = 1e-10);

/// The weighted dual-side periodization of ft_f * conj(ft_g): an almost
/// periodic function of t whose Fourier coefficients are the weighted
/// correlations w(lambda) <f, T_lambda g>. The product ft_f * conj(ft_g) is
/// cached on a fine grid, so evaluation cost is one interpolation per
/// retained dual point near t.
class BracketFunction {
 public:
  BracketFunction(const FourierFunction& f, const FourierFunction& g,
                  std::shared_ptr<const SlimDualTable> table);

  cplx operator()(double t) const;
  const SlimDualTable& table() const { return *table_; }

 private:
  std::shared_ptr<const SlimDualTable> table_;
  std::vector<cplx> H_;  // ft_f * conj(ft_g) samples
  double h_;
  double lo_;
  double hi_;
};

/// One-off bracket evaluation without the cached grid.
cplx bracket_value(const FourierFunction& f, const FourierFunction& g,
                   const DualWeightTable& table, double t);

struct PoissonOptions {
  double tolerance = 1e-6;
};

/// Two-way check of the model-set summation formula: the weighted lambda-sum
/// of F against the weighted dual-sum of shifted transforms, over t_grid.
ResidualReport poisson_verify(const ModelSetPatch& patch, const WeightTable& weights,
                              const FourierFunction& F, const std::vector<double>& t_grid,
                              const PoissonOptions& opts = {});

struct BracketCoefficient {
  cplx direct;            // w(lambda) * <f, T_lambda g>
  MeanEstimate birkhoff;  // cube-average extraction at frequency lambda
};

/// Fourier coefficient of the bracket at a patch point lambda, computed two
/// independent ways.
BracketCoefficient bracket_coefficient(const FourierFunction& f, const FourierFunction& g,
                                       const BracketFunction& bracket,
                                       const ModelSetPatch& patch,
                                       const std::vector<double>& primal, double lambda,
                                       const std::vector<double>& R_schedule);

/// |mean of the bracket - psi(0) <f, g>|.
ResidualReport mean_bracket_check(const FourierFunction& f, const FourierFunction& g,
                                  const BracketFunction& bracket, const BumpFunction& bump,
                                  const std::vector<double>& R_schedule, double tolerance);

/// Weighted correlation sum vs the mean of the bracket-product pair.
ResidualReport plancherel_sum_check(const FourierFunction& f, const FourierFunction& g,
                                    const FourierFunction& h,
                                    std::shared_ptr<const SlimDualTable> table,
                                    const ModelSetPatch& patch, const std::vector<double>& primal,
                                    const std::vector<double>& R_schedule, double tolerance);

struct BesselBound {
  double B = 0.0;      // max over the grid of the weighted dual energy sum
  double bound = 0.0;  // B * vol^{-1} * ||psi_hat||_1
  double max_ratio = 0.0;  // max over trials of weighted sum / (bound * ||f||^2)
  bool trials_ok = false;
};

BesselBound bessel_bound(const FourierFunction& g, const DualWeightTable& abs_table,
                         const BumpSpec& spec, const CutProjectScheme& scheme,
                         const std::vector<double>& t_grid, const ModelSetPatch& patch,
                         const std::vector<double>& primal,
                         const std::vector<FourierFunction>& trial_functions);

}  // namespace msf
