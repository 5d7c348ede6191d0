#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "msf/bumps.hpp"

namespace msf {

using cplx = std::complex<double>;

/// A function represented on the Fourier side. The stored base transform is
/// combined with translation/modulation bookkeeping: the value is
///   f = phase * T_lambda M_beta base,
/// so ft(t) = phase * exp(-2 pi i lambda t) * base_ft(t - beta) and
/// time(x) = phase * exp(2 pi i beta (x - lambda)) * base_time(x - lambda).
class FourierFunction {
 public:
  enum class Kind { Zero, Gaussian, IndicatorInterval, SincProduct, SmoothCutoffGaussian, Grid };

  /// Time side A * exp(-pi x^2 / w^2); transform A * w * exp(-pi w^2 t^2).
  static FourierFunction gaussian(double amplitude, double width);
  static FourierFunction unit_gaussian() { return gaussian(1.0, 1.0); }
  /// Transform is the indicator of [-a, a]; time side 2a sinc(2a x).
  static FourierFunction indicator_interval(double a);
  /// Transform is the truncated sinc product of the bump spec.
  static FourierFunction sinc_product(const BumpSpec& spec);
  /// Transform exp(-pi (t/width)^2) times a smooth bump cutoff supported on
  /// [-W, W] and normalized to 1 at 0: compact Fourier support with
  /// superpolynomial time decay (the class-D workhorse).
  static FourierFunction smooth_cutoff_gaussian(double width, double W);
  /// Transform sampled on a uniform grid starting at t_start.
  static FourierFunction grid(std::vector<cplx> samples, double spacing, double t_start);
  static FourierFunction zero();

  Kind kind() const { return kind_; }

  FourierFunction translated(double lambda) const;  // T_lambda
  FourierFunction modulated(double beta) const;     // M_beta
  FourierFunction scaled(cplx c) const;

  cplx ft(double t) const;
  cplx time(double x) const;

  /// Transform support: |ft| <= tail_bound() outside
  /// [center - radius, center + radius].
  double ft_support_center() const;
  double ft_support_radius() const;
  double tail_bound() const;
  bool compact_ft_support() const;  // class D

  double time_shift() const { return lambda_; }
  double freq_shift() const { return beta_; }
  cplx phase() const { return phase_; }

 private:
  FourierFunction() = default;
  cplx base_ft(double t) const;
  cplx base_time(double x) const;

  Kind kind_ = Kind::Zero;
  double lambda_ = 0.0;
  double beta_ = 0.0;
  cplx phase_ = 1.0;

  double amplitude_ = 0.0;  // gaussian
  double width_ = 1.0;      // gaussian / smooth cutoff
  double a_ = 0.0;          // indicator half-width / cutoff half-width W
  std::shared_ptr<const BumpFunction> bump_;   // sinc product
  std::shared_ptr<const BumpFunction> cutoff_; // smooth cutoff gaussian
  std::shared_ptr<const std::vector<cplx>> samples_;  // grid
  double spacing_ = 0.0;
  double t_start_ = 0.0;
};

struct InnerProductResult {
  cplx value;
  double error_estimate;
};

/// <f, g> = int ft_f conj(ft_g), composite Simpson with Richardson refinement.
/// spacing 0 selects the default (1/64 per unit of phase bandwidth); an
/// explicit spacing too coarse for the phase oscillation raises a resolution
/// error.
InnerProductResult inner_product_detailed(const FourierFunction& f, const FourierFunction& g,
                                          double spacing = 0.0);
cplx inner_product(const FourierFunction& f, const FourierFunction& g, double spacing = 0.0);
double norm_sq(const FourierFunction& f);

/// Correlation c(u) = <f, T_u g> on a uniform u-grid via one FFT, with
/// Catmull-Rom interpolation between grid points. Values beyond the covered
/// range (|u| > ~64) are returned as 0.
class CorrelationTable {
 public:
  CorrelationTable(const FourierFunction& f, const FourierFunction& g);
  cplx operator()(double u) const;
  double range() const { return u_max_; }
  double peak() const { return peak_; }

 private:
  std::vector<cplx> vals_;
  double du_;
  double u_max_;
  double peak_;
};

struct MeanEstimate {
  cplx value;                     // estimate at the last radius
  std::vector<double> schedule;   // cube side lengths R
  std::vector<cplx> values;       // one average per R
  std::vector<double> residuals;  // |values[j+1] - values[j]|
};

/// (1/R) int_{-R/2}^{R/2} sample(x) exp(2 pi i x theta) dx along the schedule
/// (composite Simpson; sample values shared across radii).
MeanEstimate birkhoff_coefficient(const std::function<cplx(double)>& sample, double theta,
                                  const std::vector<double>& R_schedule, double h = 1.0 / 64.0);

}  // namespace msf
