#pragma once

#include <optional>
#include <vector>

#include "msf/lattice.hpp"

namespace msf {

/// Cut-and-project scheme: a lattice in R^{m+1} whose first m coordinates are
/// the physical projection p1 and whose last coordinate is the internal
/// projection p2. The dual lattice carries the same coordinate split.
class CutProjectScheme {
 public:
  CutProjectScheme(Lattice lattice, int m);

  /// Reference scheme with m = 1 and generator [[1+b*a, -b], [-a, 1]]
  /// (det = 1); its dual generator is [[1, a], [b, 1+b*a]].
  static CutProjectScheme canonical(double a, double b);

  int m() const { return m_; }
  const Lattice& lattice() const { return lattice_; }
  const Lattice& dual_lattice() const { return dual_; }

  Eigen::VectorXd p1(const LatticePoint& g) const { return g.ambient.head(m_); }
  double p2(const LatticePoint& g) const { return g.ambient[m_]; }

 private:
  Lattice lattice_;
  Lattice dual_;
  int m_;
};

struct Window {
  explicit Window(double half_width);
  double half_width;                       // Omega = [-a, a]
  double length() const { return 2.0 * half_width; }
};

struct PatchPoint {
  Eigen::VectorXd lambda;  // physical coordinate t + p1(gamma)
  LatticePoint preimage;
};

struct BuildOptions {
  double boundary_tol = 1e-8;   // near-boundary internal points are an error
  double exact_tol = 1e-12;     // machine-exact boundary hits are excluded
  double point_budget = 5e7;
};

/// Finite piece of the (possibly shifted) model set inside the sup-norm ball
/// |lambda| <= R. Points are sorted lexicographically by physical coordinate.
struct ModelSetPatch {
  CutProjectScheme scheme;
  Window window;
  Eigen::VectorXd shift_t;  // physical shift
  double shift_s;           // internal shift
  double radius;
  std::vector<PatchPoint> points;
  int boundary_hits;  // count of excluded exact boundary points
  // Exact window-boundary points (non-generic configurations only). They are
  // excluded from `points`; consumers that compare against Fourier series
  // limits count them at half weight, the symmetric value of the series.
  std::vector<PatchPoint> boundary_points;

  double min_gap() const;
};

ModelSetPatch build_model_set(const CutProjectScheme& scheme, const Window& window,
                              const Eigen::VectorXd& shift_t, double shift_s,
                              double R, const BuildOptions& opts = {});

/// m = 1 convenience overload with scalar shift.
ModelSetPatch build_model_set(const CutProjectScheme& scheme, const Window& window,
                              double shift_t, double shift_s, double R,
                              const BuildOptions& opts = {});

struct DensityEstimate {
  std::vector<std::pair<double, double>> samples;  // (R, count / R^m)
  double extrapolated;
  double formula;  // vol(Gamma)^{-1} |Omega|
};

DensityEstimate density_estimate(const CutProjectScheme& scheme, const Window& window,
                                 const std::vector<double>& R_schedule,
                                 const BuildOptions& opts = {});

double relative_separation(const ModelSetPatch& patch);

struct CloseResult {
  bool close;
  Eigen::VectorXd witness;  // the translation v if close
};

CloseResult is_close(const ModelSetPatch& a, const ModelSetPatch& b, double R,
                     double eps, double match_tol = 1e-9);

std::vector<std::pair<double, double>> pseudometric(
    const ModelSetPatch& a, const ModelSetPatch& b,
    const std::vector<double>& R_schedule, double match_tol = 1e-9);

}  // namespace msf
