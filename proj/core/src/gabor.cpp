#include "msf/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace msf {

namespace {
constexpr double kPi = std::numbers::pi;

cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }
}  // namespace

void GaborSystem::validate() const {
  if (base.empty()) throw config_error("gabor system has no base windows");
  if (!(A > 0.0)) throw config_error("modulation step must be positive");
  if (!(beta_radius >= 0.0)) throw config_error("modulation radius must be nonnegative");
}

GeneratorFamily expand_gabor(const GaborSystem& system) {
  system.validate();
  const auto J = static_cast<long>(std::floor(system.beta_radius / std::abs(system.A) + 1e-12));
  const double budget = static_cast<double>(system.base.size()) * (2.0 * J + 1.0);
  if (budget > 1e6) {
    throw budget_exceeded_error("modulation patch too large", budget);
  }
  GeneratorFamily family;
  for (const auto& g : system.base) {
    for (long j = -J; j <= J; ++j) {
      family.g.push_back(g.modulated(system.A * static_cast<double>(j)));
    }
  }
  return family;
}

double modulation_radius(const GaborSystem& system, const std::vector<double>& t_grid,
                         double fraction) {
  system.validate();
  double t_extent = 0.0;
  for (double t : t_grid) t_extent = std::max(t_extent, std::abs(t));
  double r = 0.0;
  for (const auto& g : system.base) {
    // Beyond support radius the transform is below the declared tail already;
    // the fraction only matters for kinds with nonzero tails.
    (void)fraction;
    r = std::max(r, std::abs(g.ft_support_center()) + g.ft_support_radius());
  }
  return t_extent + r;
}

CertificateReport gabor_tight_certify(const GaborSystem& system, const CutProjectScheme& scheme,
                                      const Window& window, const std::vector<double>& t_grid,
                                      double P, double tolerance) {
  auto family = expand_gabor(system);
  auto report = tight_certify(family, scheme, window, t_grid, P, tolerance);
  report.equation = "gabor-tight";
  return report;
}

CertificateReport gabor_dual_certify(const GaborSystem& sys_g, const GaborSystem& sys_h,
                                     const CutProjectScheme& scheme, const Window& window,
                                     const std::vector<double>& t_grid, double P,
                                     double tolerance) {
  if (std::abs(sys_g.A - sys_h.A) > 1e-12) {
    throw config_error("dual gabor systems must share the modulation lattice");
  }
  auto report = dual_certify(expand_gabor(sys_g), expand_gabor(sys_h), scheme, window, t_grid,
                             P, tolerance);
  report.equation = "gabor-dual";
  return report;
}

namespace {

/// Direct transform-side coefficient: sum_l int ft_h(t - p1s) conj(ft_g(t))
/// exp(-2 pi i (v/A) t) dt, composite Simpson.
cplx direct_coefficient(const GaborSystem& sys_g, const GaborSystem& sys_h, double p1s,
                        double freq) {
  cplx total = 0.0;
  for (size_t l = 0; l < sys_g.base.size(); ++l) {
    const auto& g = sys_g.base[l];
    const auto& h = sys_h.base[l];
    const double lo = std::max(g.ft_support_center() - g.ft_support_radius(),
                               h.ft_support_center() - h.ft_support_radius() + p1s);
    const double hi = std::min(g.ft_support_center() + g.ft_support_radius(),
                               h.ft_support_center() + h.ft_support_radius() + p1s);
    if (hi <= lo) continue;
    const double step = 1.0 / (64.0 * (1.0 + std::abs(freq)));
    auto N = static_cast<long>(std::ceil((hi - lo) / step));
    if (N % 2 == 1) ++N;
    if (N < 8) N = 8;
    const double dt = (hi - lo) / N;
    cplx sum = 0.0;
    for (long j = 0; j <= N; ++j) {
      const double t = lo + j * dt;
      const double w = (j == 0 || j == N) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      sum += w * h.ft(t - p1s) * std::conj(g.ft(t)) * unit_phase(-2.0 * kPi * freq * t);
    }
    total += sum * dt / 3.0;
  }
  return total;
}

/// v-th Fourier coefficient of the A-periodization of
/// sum_l conj(ft_g(t)) ft_h(t - p1s), by trapezoid over one period (the
/// periodized function is smooth and periodic, so the rule is spectrally
/// accurate).
cplx periodization_coefficient(const GaborSystem& sys_g, const GaborSystem& sys_h, double p1s,
                               long v) {
  const double A = std::abs(sys_g.A);
  const long M = 2048;
  const double dt = A / static_cast<double>(M);
  double reach = 0.0;
  for (size_t l = 0; l < sys_g.base.size(); ++l) {
    reach = std::max(reach, std::abs(sys_g.base[l].ft_support_center()) +
                                sys_g.base[l].ft_support_radius());
    reach = std::max(reach, std::abs(sys_h.base[l].ft_support_center()) +
                                sys_h.base[l].ft_support_radius() + std::abs(p1s));
  }
  const auto n_max = static_cast<long>(std::ceil((reach + A) / A));

  cplx sum = 0.0;
  for (long j = 0; j < M; ++j) {
    const double t = j * dt;
    cplx F = 0.0;
    for (long n = -n_max; n <= n_max; ++n) {
      const double tn = t - A * static_cast<double>(n);
      for (size_t l = 0; l < sys_g.base.size(); ++l) {
        F += std::conj(sys_g.base[l].ft(tn)) * sys_h.base[l].ft(tn - p1s);
      }
    }
    sum += F * unit_phase(-2.0 * kPi * static_cast<double>(v) * t / A);
  }
  return sum * dt / A;
}

}  // namespace

WexlerRazReport wexler_raz_check(const GaborSystem& sys_g, const GaborSystem& sys_h,
                                 const CutProjectScheme& scheme, const Window& window,
                                 int eta_count, long v_max, double tolerance) {
  sys_g.validate();
  sys_h.validate();
  if (std::abs(sys_g.A - sys_h.A) > 1e-12) {
    throw config_error("wexler-raz check needs a shared modulation lattice");
  }
  if (scheme.m() != 1) throw config_error("wexler-raz check supports m = 1 only");
  const double A = sys_g.A;
  const double density = window.length() / scheme.lattice().covolume();

  // Dual points nearest the origin (by |p1*| + |p2*|), deterministic order.
  std::vector<std::pair<double, double>> box = {{-20.0, 20.0}, {-20.0, 20.0}};
  auto candidates = scheme.dual_lattice().enumerate_in_box(box, 1e7);
  std::sort(candidates.begin(), candidates.end(),
            [](const LatticePoint& a, const LatticePoint& b) {
              const double na = std::abs(a.ambient[0]) + std::abs(a.ambient[1]);
              const double nb = std::abs(b.ambient[0]) + std::abs(b.ambient[1]);
              if (na != nb) return na < nb;
              if (a.ambient[1] != b.ambient[1]) return a.ambient[1] < b.ambient[1];
              return a.ambient[0] < b.ambient[0];
            });
  if (static_cast<int>(candidates.size()) > eta_count) candidates.resize(eta_count);

  WexlerRazReport report;
  for (const auto& eta : candidates) {
    const double p1s = eta.ambient[0];
    const double p2s = eta.ambient[1];
    const double C = density * phi_profile(window, -p2s);
    const bool eta_zero = eta.coords.isZero();
    for (long v = -v_max; v <= v_max; ++v) {
      WexlerRazEntry entry;
      entry.eta_coords = eta.coords;
      entry.p1s = p1s;
      entry.p2s = p2s;
      entry.v = v;

      // Time-side inner products T_{v/A} M_{p1s} h_l against g_l.
      cplx ip = 0.0;
      for (size_t l = 0; l < sys_g.base.size(); ++l) {
        ip += inner_product(sys_h.base[l].modulated(p1s).translated(static_cast<double>(v) / A),
                            sys_g.base[l]);
      }
      entry.value = C / std::abs(A) * ip;
      const double expected = (eta_zero && v == 0) ? 1.0 : 0.0;
      entry.residual = std::abs(entry.value - expected);

      const cplx direct = C / std::abs(A) * direct_coefficient(sys_g, sys_h, p1s,
                                                               static_cast<double>(v) / A);
      const cplx periodized = C * periodization_coefficient(sys_g, sys_h, p1s, v);
      entry.identity_residual = std::abs(direct - periodized);

      report.max_residual = std::max(report.max_residual, entry.residual);
      report.max_identity_residual =
          std::max(report.max_identity_residual, entry.identity_residual);
      report.entries.push_back(std::move(entry));
    }
  }
  report.tolerance = tolerance;
  report.pass = report.max_residual <= tolerance;
  return report;
}

DensityRecord density_check(const CutProjectScheme& scheme, const Window& window, double A,
                            double R) {
  DensityRecord record;
  record.det_A = std::abs(A);
  record.formula_density = window.length() / scheme.lattice().covolume();
  auto est = density_estimate(scheme, window, {R / 4.0, R / 2.0, R});
  record.empirical_density = est.extrapolated;
  record.margin = record.det_A - record.formula_density;
  record.pass = record.formula_density <= record.det_A + 1e-12;
  record.anomaly = std::abs(record.empirical_density - record.formula_density) >
                   0.02 * record.formula_density;
  return record;
}

}  // namespace msf
