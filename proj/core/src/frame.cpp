#include "msf/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "interp.hpp"

namespace msf {

namespace {
constexpr double kPi = std::numbers::pi;

cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

unsigned long long splitmix64(unsigned long long& state) {
  state += 0x9e3779b97f4a7c15ull;
  unsigned long long z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform01(unsigned long long& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double max_support_radius(const std::vector<FourierFunction>& fns) {
  double r = 0.0;
  for (const auto& f : fns) {
    r = std::max(r, std::abs(f.ft_support_center()) + f.ft_support_radius());
  }
  return r;
}

}  // namespace

void GeneratorFamily::validate() const {
  if (g.empty()) throw config_error("generator family is empty");
  if (!h.empty() && h.size() != g.size()) {
    throw config_error("partner family size does not match");
  }
}

std::vector<FourierFunction> random_class_d(int count, unsigned long long seed, double W) {
  unsigned long long state = seed;
  std::vector<FourierFunction> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double u = uniform01(state);
    const double width = std::exp(std::log(0.25) + u * std::log(16.0));
    out.push_back(FourierFunction::smooth_cutoff_gaussian(width, W));
  }
  return out;
}

double frame_sum(const FourierFunction& f, const GeneratorFamily& family,
                 const ModelSetPatch& patch) {
  family.validate();
  double sum = 0.0;
  for (const auto& g : family.g) {
    CorrelationTable c(f, g);
    for (const auto& p : patch.points) {
      const double a = std::abs(c(p.lambda[0]));
      sum += a * a;
    }
  }
  return sum;
}

cplx mixed_frame_sum(const FourierFunction& f, const GeneratorFamily& family,
                     const ModelSetPatch& patch) {
  family.validate();
  const auto& partners = family.partners();
  cplx sum = 0.0;
  for (size_t k = 0; k < family.g.size(); ++k) {
    CorrelationTable cg(f, family.g[k]);
    CorrelationTable ch(f, partners[k]);
    for (const auto& p : patch.points) {
      sum += cg(p.lambda[0]) * std::conj(ch(p.lambda[0]));
    }
  }
  return sum;
}

ResidualReport covariance_check(const FourierFunction& f, const GeneratorFamily& family,
                                const CutProjectScheme& scheme, const Window& window, double x,
                                double R, double tolerance) {
  auto base = build_model_set(scheme, window, 0.0, 0.0, R);
  auto shifted = build_model_set(scheme, window, -x, 0.0, R);
  const double lhs = frame_sum(f, family, shifted);
  const double rhs = frame_sum(f.translated(x), family, base);

  ResidualReport report;
  report.residuals.push_back(std::abs(lhs - rhs));
  report.truncation.patch_radius = R;
  report.finalize(tolerance);
  return report;
}

std::vector<double> continuity_probe(const FourierFunction& f, const GeneratorFamily& family,
                                     const CutProjectScheme& scheme, const Window& window,
                                     const std::vector<double>& x_sequence, double x_limit,
                                     double R) {
  auto eval = [&](double x) {
    auto patch = build_model_set(scheme, window, -x, 0.0, R);
    return frame_sum(f, family, patch);
  };
  const double at_limit = eval(x_limit);
  std::vector<double> out;
  out.reserve(x_sequence.size());
  for (double x : x_sequence) out.push_back(std::abs(eval(x) - at_limit));
  return out;
}

std::vector<cplx> n_diagnostic(const FourierFunction& f, const GeneratorFamily& family,
                               const ModelSetPatch& patch, const std::vector<double>& x_grid) {
  family.validate();
  const auto& partners = family.partners();
  std::vector<cplx> values(x_grid.size(), 0.0);
  for (size_t k = 0; k < family.g.size(); ++k) {
    CorrelationTable cg(f, family.g[k]);
    CorrelationTable ch(f, partners[k]);
    for (size_t j = 0; j < x_grid.size(); ++j) {
      cplx sum = 0.0;
      for (const auto& p : patch.points) {
        const double u = p.lambda[0] - x_grid[j];
        // <T_x f, T_l g> <T_l h, T_x f> = c_g(l - x) conj(c_h(l - x)).
        sum += cg(u) * std::conj(ch(u));
      }
      // The Fourier series of the diagnostic converges to the symmetric
      // value, which counts exact window-boundary points (non-generic
      // configurations only) at half weight.
      for (const auto& p : patch.boundary_points) {
        const double u = p.lambda[0] - x_grid[j];
        sum += 0.5 * cg(u) * std::conj(ch(u));
      }
      values[j] += sum;
    }
  }
  return values;
}

namespace {

/// Overlap integrals I(s) = int ft_f(t) conj(ft_f(t-s)) sum_k conj(ft_gk(t))
/// ft_hk(t-s) dt on a uniform s-grid with interpolation (the integral is a
/// smooth function of the dual shift s).
class OverlapIntegrals {
 public:
  OverlapIntegrals(const FourierFunction& f, const GeneratorFamily& family, double bound)
      : lo_(-bound), h_(1.0 / 128.0) {
    const auto N = static_cast<long>(std::ceil(2.0 * bound / h_)) + 1;
    vals_.resize(N);
    for (long j = 0; j < N; ++j) vals_[j] = direct(f, family, lo_ + j * h_);
    hi_ = lo_ + (N - 1) * h_;
  }

  cplx operator()(double s) const {
    if (s < lo_ || s > hi_) return 0.0;
    return detail::catmull_rom(vals_, (s - lo_) / h_);
  }

  static cplx direct(const FourierFunction& f, const GeneratorFamily& family, double s) {
    const double fr = f.ft_support_radius();
    const double fc = f.ft_support_center();
    const double lo = std::max(fc - fr, fc - fr + s);
    const double hi = std::min(fc + fr, fc + fr + s);
    if (hi <= lo) return 0.0;
    const auto& partners = family.partners();
    const double step = 1.0 / 128.0;
    auto N = static_cast<long>(std::ceil((hi - lo) / step));
    if (N % 2 == 1) ++N;
    if (N < 8) N = 8;
    const double dt = (hi - lo) / N;
    cplx sum = 0.0;
    for (long j = 0; j <= N; ++j) {
      const double t = lo + j * dt;
      const double w = (j == 0 || j == N) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      cplx gen = 0.0;
      for (size_t k = 0; k < family.g.size(); ++k) {
        gen += std::conj(family.g[k].ft(t)) * partners[k].ft(t - s);
      }
      sum += w * f.ft(t) * std::conj(f.ft(t - s)) * gen;
    }
    return sum * dt / 3.0;
  }

 private:
  std::vector<cplx> vals_;
  double lo_, hi_, h_;
};

}  // namespace

CoefficientTable n_hat_coefficients(const FourierFunction& f, const GeneratorFamily& family,
                                    const CutProjectScheme& scheme, const Window& window,
                                    double P, const BumpSpec* bump_weighted) {
  family.validate();
  if (scheme.m() != 1) throw config_error("coefficient tables support m = 1 only");
  if (!f.compact_ft_support()) {
    throw config_error("coefficient extraction needs a compactly supported transform");
  }
  const double W = std::abs(f.ft_support_center()) + f.ft_support_radius();
  const double density = window.length() / scheme.lattice().covolume();
  const double vol = scheme.lattice().covolume();

  CoefficientTable table;
  table.P = P;
  table.overlap_bound = 2.0 * W;
  table.provenance = bump_weighted ? CoeffProvenance::BumpWeighted : CoeffProvenance::LimitProfile;

  OverlapIntegrals integrals(f, family, table.overlap_bound);

  std::vector<std::pair<double, double>> box = {{-table.overlap_bound, table.overlap_bound},
                                                {-P, P}};
  auto points = scheme.dual_lattice().enumerate_in_box(box, 1e8);
  std::sort(points.begin(), points.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.ambient[1] != b.ambient[1] ? a.ambient[1] < b.ambient[1]
                                        : a.ambient[0] < b.ambient[0];
  });
  for (const auto& eta : points) {
    const double p1s = eta.ambient[0];
    const double p2s = eta.ambient[1];
    const double weight = bump_weighted
                              ? bump_ft(*bump_weighted, -p2s) * bump_ft(*bump_weighted, -p2s) / vol
                              : density * phi_profile(window, -p2s);
    const cplx value = weight * integrals(p1s);
    table.entries.push_back(CoefficientEntry{eta.coords, p1s, p2s, value});
  }
  return table;
}

std::vector<std::vector<cplx>> n_series_reconstruct(const CoefficientTable& table,
                                                    const std::vector<double>& x_grid,
                                                    const std::vector<double>& P_sweep) {
  std::vector<std::vector<cplx>> out;
  for (double P : P_sweep) {
    std::vector<cplx> row(x_grid.size(), 0.0);
    for (const auto& e : table.entries) {
      if (std::abs(e.p2s) > P) continue;
      for (size_t j = 0; j < x_grid.size(); ++j) {
        row[j] += e.value * unit_phase(-2.0 * kPi * e.p1s * x_grid[j]);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

ResidualReport bessel_necessary_check(const GeneratorFamily& family, const ModelSetPatch& patch,
                                      const std::vector<double>& t_grid,
                                      const std::vector<FourierFunction>& trials, double slack) {
  family.validate();
  const double density = patch.window.length() / patch.scheme.lattice().covolume();
  double B = 0.0;
  for (const auto& f : trials) {
    B = std::max(B, frame_sum(f, family, patch) / norm_sq(f));
  }

  ResidualReport report;
  report.grid = t_grid;
  report.truncation.patch_radius = patch.radius;
  for (double t : t_grid) {
    double energy = 0.0;
    for (const auto& g : family.g) {
      const double a = std::abs(g.ft(t));
      energy += a * a;
    }
    // Violation amount of density * energy <= B (1 + slack); 0 when satisfied.
    report.residuals.push_back(std::max(0.0, density * energy - B * (1.0 + slack)));
  }
  report.finalize(0.0);
  report.tolerance = slack;
  report.pass = report.max_abs_residual <= 0.0;
  return report;
}

namespace {

CertificateReport characterization_residuals(const std::vector<FourierFunction>& gs,
                                             const std::vector<FourierFunction>& hs,
                                             const CutProjectScheme& scheme,
                                             const Window& window,
                                             const std::vector<double>& t_grid, double P,
                                             double tolerance, std::string equation) {
  const double density = window.length() / scheme.lattice().covolume();
  const double overlap = max_support_radius(gs) + max_support_radius(hs) + 1e-9;

  CertificateReport report;
  report.equation = std::move(equation);
  report.truncation.dual_p2s_cutoff = P;
  report.truncation.dual_box = {{-overlap, overlap}, {-P, P}};

  std::vector<std::pair<double, double>> box = {{-overlap, overlap}, {-P, P}};
  for (const auto& eta : scheme.dual_lattice().enumerate_in_box(box, 1e8)) {
    const double p1s = eta.ambient[0];
    const double p2s = eta.ambient[1];
    const bool zero = eta.coords.isZero();
    const double weight = density * phi_profile(window, -p2s);
    for (double t : t_grid) {
      cplx sum = 0.0;
      for (size_t k = 0; k < gs.size(); ++k) {
        sum += std::conj(gs[k].ft(t)) * hs[k].ft(t - p1s);
      }
      const cplx L = weight * sum;
      if (zero) {
        report.max_residual_zero = std::max(report.max_residual_zero, std::abs(L - 1.0));
      } else {
        report.max_residual_nonzero = std::max(report.max_residual_nonzero, std::abs(L));
      }
    }
  }
  report.tolerance = tolerance;
  report.pass = report.max_residual_zero <= tolerance && report.max_residual_nonzero <= tolerance;
  return report;
}

}  // namespace

CertificateReport tight_certify(const GeneratorFamily& family, const CutProjectScheme& scheme,
                                const Window& window, const std::vector<double>& t_grid,
                                double P, double tolerance) {
  family.validate();
  return characterization_residuals(family.g, family.g, scheme, window, t_grid, P, tolerance,
                                    "tight");
}

CertificateReport tight_certify_v2(const GeneratorFamily& family, const CutProjectScheme& scheme,
                                   const Window& window, const std::vector<double>& t_grid,
                                   const ModelSetPatch& patch,
                                   const std::vector<FourierFunction>& trials, double tolerance) {
  family.validate();
  const double density = window.length() / scheme.lattice().covolume();

  CertificateReport report;
  report.equation = "tight-bessel";
  report.truncation.patch_radius = patch.radius;
  for (const auto& f : trials) {
    report.empirical_bound =
        std::max(report.empirical_bound, frame_sum(f, family, patch) / norm_sq(f));
  }
  for (double t : t_grid) {
    double energy = 0.0;
    for (const auto& g : family.g) {
      const double a = std::abs(g.ft(t));
      energy += a * a;
    }
    report.max_residual_zero = std::max(report.max_residual_zero,
                                        std::abs(density * energy - 1.0));
  }
  report.tolerance = tolerance;
  report.pass = report.empirical_bound <= 1.0 + tolerance && report.max_residual_zero <= tolerance;
  return report;
}

CertificateReport dual_certify(const GeneratorFamily& fam_g, const GeneratorFamily& fam_h,
                               const CutProjectScheme& scheme, const Window& window,
                               const std::vector<double>& t_grid, double P, double tolerance) {
  fam_g.validate();
  fam_h.validate();
  if (fam_g.g.size() != fam_h.g.size()) {
    throw config_error("dual certification needs families of equal size");
  }
  return characterization_residuals(fam_g.g, fam_h.g, scheme, window, t_grid, P, tolerance,
                                    "dual");
}

}  // namespace msf
