#pragma once

#include "msf/frame.hpp"

namespace msf {

/// Translates along the model set combined with modulations along A*Z (m = 1):
/// the derived generator family is { M_beta g_l } over the finite modulation
/// patch |beta| <= beta_radius.
struct GaborSystem {
  std::vector<FourierFunction> base;  // g_l
  double A = 1.0;                     // modulation step, |A| > 0
  double beta_radius = 0.0;

  void validate() const;
};

GeneratorFamily expand_gabor(const GaborSystem& system);

/// Radius at which every base transform tail is below `fraction` of its peak
/// over the evaluation grid, for sizing the modulation patch.
double modulation_radius(const GaborSystem& system, const std::vector<double>& t_grid,
                         double fraction = 1e-10);

CertificateReport gabor_tight_certify(const GaborSystem& system, const CutProjectScheme& scheme,
                                      const Window& window, const std::vector<double>& t_grid,
                                      double P, double tolerance);

CertificateReport gabor_dual_certify(const GaborSystem& sys_g, const GaborSystem& sys_h,
                                     const CutProjectScheme& scheme, const Window& window,
                                     const std::vector<double>& t_grid, double P,
                                     double tolerance);

struct WexlerRazEntry {
  Eigen::VectorXi eta_coords;
  double p1s = 0.0;
  double p2s = 0.0;
  long v = 0;
  cplx value;                // biorthogonality quantity
  double residual = 0.0;     // vs the double Kronecker delta
  double identity_residual = 0.0;  // periodization coefficient vs direct inner products
};

struct WexlerRazReport {
  std::vector<WexlerRazEntry> entries;
  double max_residual = 0.0;
  double max_identity_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // delta residuals within tolerance
};

/// Biorthogonality check over the eta_count dual points nearest 0 and
/// |v| <= v_max, with the unconditional two-way Fourier-coefficient identity
/// verified for every entry.
WexlerRazReport wexler_raz_check(const GaborSystem& sys_g, const GaborSystem& sys_h,
                                 const CutProjectScheme& scheme, const Window& window,
                                 int eta_count = 5, long v_max = 2, double tolerance = 1e-6);

struct DensityRecord {
  double formula_density = 0.0;
  double empirical_density = 0.0;
  double det_A = 0.0;
  double margin = 0.0;  // det_A - formula_density
  bool pass = false;    // necessary condition formula_density <= det_A
  bool anomaly = false; // formula vs empirical disagree by more than 2%
};

DensityRecord density_check(const CutProjectScheme& scheme, const Window& window, double A,
                            double R = 2000.0);

}  // namespace msf
