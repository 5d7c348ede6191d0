#pragma once

#include <string>

#include "msf/poisson.hpp"

namespace msf {

struct GeneratorFamily {
  std::vector<FourierFunction> g;
  std::vector<FourierFunction> h;  // optional partner family; empty means h = g

  const std::vector<FourierFunction>& partners() const { return h.empty() ? g : h; }
  void validate() const;
};

/// Deterministic test functions with compact transform support [-W, W]:
/// cutoff Gaussians with widths log-uniform in [1/4, 4] (splitmix-based
/// generator, reproducible across platforms).
std::vector<FourierFunction> random_class_d(int count, unsigned long long seed, double W = 1.0);

/// <S f, f> = sum_k sum_lambda |<f, T_lambda g_k>|^2 over the patch.
double frame_sum(const FourierFunction& f, const GeneratorFamily& family,
                 const ModelSetPatch& patch);

/// Mixed version sum_k sum_lambda <f, T_l g_k> <T_l h_k, f>.
cplx mixed_frame_sum(const FourierFunction& f, const GeneratorFamily& family,
                     const ModelSetPatch& patch);

/// Quadratic-form covariance: the sum over the shifted set vs the sum for the
/// shifted function, computed independently.
ResidualReport covariance_check(const FourierFunction& f, const GeneratorFamily& family,
                                const CutProjectScheme& scheme, const Window& window, double x,
                                double R, double tolerance);

/// |<S^{L-x_j} f, f> - <S^{L-x_limit} f, f>| along the sequence.
std::vector<double> continuity_probe(const FourierFunction& f, const GeneratorFamily& family,
                                     const CutProjectScheme& scheme, const Window& window,
                                     const std::vector<double>& x_sequence, double x_limit,
                                     double R);

/// The almost periodic diagnostic N(x) by direct summation over the patch.
std::vector<cplx> n_diagnostic(const FourierFunction& f, const GeneratorFamily& family,
                               const ModelSetPatch& patch, const std::vector<double>& x_grid);

enum class CoeffProvenance { LimitProfile, BumpWeighted };

struct CoefficientEntry {
  Eigen::VectorXi coords;  // integer coordinates of the dual point
  double p1s;
  double p2s;
  cplx value;
};

struct CoefficientTable {
  std::vector<CoefficientEntry> entries;
  double P = 0.0;              // |p2*| cutoff
  double overlap_bound = 0.0;  // |p1*| beyond which coefficients vanish
  CoeffProvenance provenance = CoeffProvenance::LimitProfile;
};

/// Fourier coefficients of N: density * profile(-p2*) * overlap integral, or
/// the bump-weighted variant with vol^{-1} psi_hat^2(-p2*) when a spec is
/// given.
CoefficientTable n_hat_coefficients(const FourierFunction& f, const GeneratorFamily& family,
                                    const CutProjectScheme& scheme, const Window& window,
                                    double P, const BumpSpec* bump_weighted = nullptr);

/// Partial Fourier sums over |p2*| <= P for each P in the sweep; one value row
/// per sweep entry, aligned with x_grid.
std::vector<std::vector<cplx>> n_series_reconstruct(const CoefficientTable& table,
                                                    const std::vector<double>& x_grid,
                                                    const std::vector<double>& P_sweep);

/// Upper-bound transfer: density * sum_k |g_k(t)|^2 <= B_g (1 + slack) on the
/// grid, with B_g estimated from trial functions.
ResidualReport bessel_necessary_check(const GeneratorFamily& family, const ModelSetPatch& patch,
                                      const std::vector<double>& t_grid,
                                      const std::vector<FourierFunction>& trials, double slack);

struct CertificateReport {
  std::string equation;  // "tight" | "tight-bessel" | "dual"
  double max_residual_zero = 0.0;     // against 1 at the zero dual point
  double max_residual_nonzero = 0.0;  // against 0 elsewhere
  double empirical_bound = 0.0;       // tight-bessel only
  TruncationInfo truncation;
  double tolerance = 0.0;
  bool pass = false;
};

CertificateReport tight_certify(const GeneratorFamily& family, const CutProjectScheme& scheme,
                                const Window& window, const std::vector<double>& t_grid,
                                double P, double tolerance);

/// Variant: empirical upper bound <= 1 plus flat energy density on the grid.
CertificateReport tight_certify_v2(const GeneratorFamily& family, const CutProjectScheme& scheme,
                                   const Window& window, const std::vector<double>& t_grid,
                                   const ModelSetPatch& patch,
                                   const std::vector<FourierFunction>& trials, double tolerance);

CertificateReport dual_certify(const GeneratorFamily& fam_g, const GeneratorFamily& fam_h,
                               const CutProjectScheme& scheme, const Window& window,
                               const std::vector<double>& t_grid, double P, double tolerance);

}  // namespace msf
