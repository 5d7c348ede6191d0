#include "msf/bumps.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "interp.hpp"

namespace msf {

namespace {
constexpr double kPi = std::numbers::pi;
}

double sinc(double t) {
  const double u = kPi * t;
  if (std::abs(u) < 1e-6) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

double BumpSpec::omega_n_length() const {
  return (1.0 - std::pow(epsilon, n)) * window.length();
}

void BumpSpec::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw config_error("bump epsilon must be in (0,1)");
  if (n < 1) throw config_error("bump shrinkage index must be >= 1");
  if (S < 1) throw config_error("bump truncation must retain >= 1 factor");
}

double bump_ft(const BumpSpec& spec, double t) {
  const double r = std::pow(spec.epsilon, spec.n);
  double a = spec.omega_n_length() * std::abs(t);
  double prod = 1.0;
  for (int s = 0; s < spec.S; ++s) {
    if (a < 1e-4) {
      // Remaining factors to second order: sinc(u) = 1 - (pi u)^2/6 + O(u^4),
      // so their product is exp(-(pi^2/6) * a^2/(1-r^2)) up to ~1e-16.
      return prod * std::exp(-(kPi * kPi / 6.0) * a * a / (1.0 - r * r));
    }
    prod *= sinc(a);
    a *= r;
  }
  return prod;
}

double bump_ft_envelope(const BumpSpec& spec, double t) {
  const double r = std::pow(spec.epsilon, spec.n);
  double a = spec.omega_n_length() * std::abs(t);
  double env = 1.0;
  for (int s = 0; s < spec.S && a >= 1.0; ++s) {
    env /= kPi * a;
    a *= r;
  }
  return env;
}

double bump_ft_cutoff(const BumpSpec& spec, double bound) {
  if (bound >= 1.0) return 0.0;
  double T = 1.0;
  while (bump_ft_envelope(spec, T) > bound) {
    T *= 1.05;
    if (T > 1e9) throw truncation_error("bump transform cutoff exceeds 1e9");
  }
  return T;
}

double bump_ft_l1(const BumpSpec& spec) {
  const double T = bump_ft_cutoff(spec, 1e-13);
  const double h = 1.0 / 512.0;
  const auto N = static_cast<long>(std::ceil(T / h));
  double sum = 0.5 * std::abs(bump_ft(spec, 0.0));
  for (long j = 1; j < N; ++j) sum += std::abs(bump_ft(spec, j * h));
  sum += 0.5 * std::abs(bump_ft(spec, N * h));
  return 2.0 * h * sum;  // even function
}

double bump_time(const BumpSpec& spec, double x) {
  spec.validate();
  const double a = spec.window.half_width;
  if (std::abs(x) > a + 1.0) return 0.0;
  const double T = bump_ft_cutoff(spec, 1e-13);
  const double h = 1.0 / 256.0;
  auto N = static_cast<long>(std::ceil(T / h));
  if (N % 2 == 1) ++N;
  // psi(x) = 2 * int_0^inf psi_hat(t) cos(2 pi x t) dt, composite Simpson.
  auto integrand = [&](long j) {
    const double t = j * h;
    return bump_ft(spec, t) * std::cos(2.0 * kPi * x * t);
  };
  double sum = integrand(0) + integrand(N);
  for (long j = 1; j < N; ++j) sum += (j % 2 == 1 ? 4.0 : 2.0) * integrand(j);
  return 2.0 * sum * h / 3.0;
}

BumpFunction::BumpFunction(BumpSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  const double h_t = 1.0 / 256.0;
  const int N = 1 << 20;
  const double T = std::min(bump_ft_cutoff(spec_, 1e-14), 0.5 * N * h_t);

  std::vector<std::complex<double>> buf(N, 0.0);
  const int jmax = static_cast<int>(T / h_t);
  for (int j = -jmax; j <= jmax; ++j) {
    const double t = j * h_t;
    buf[(j + N) % N] = bump_ft(spec_, t);
  }
  fftw_plan plan = fftw_plan_dft_1d(N, reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  dx_ = 1.0 / (N * h_t);
  x_max_ = spec_.window.half_width + 2.0;
  const int K = static_cast<int>(x_max_ / dx_);
  grid_.resize(K + 1);
  for (int k = 0; k <= K; ++k) grid_[k] = h_t * buf[k].real();
  x_max_ = K * dx_;
}

double BumpFunction::time(double x) const {
  const double ax = std::abs(x);  // psi is even
  if (ax >= x_max_) return 0.0;
  return detail::catmull_rom(grid_, ax / dx_);
}

double phi_profile(const Window& window, double xi) {
  return sinc(window.length() * xi);
}

double phi_convolution_oracle(const Window& window, double xi, int n, int S,
                              double h, double T) {
  // Proxy for the uniform limit of the transforms: the truncated sinc product
  // at shrinkage index n with a small ratio (the proxy's distance to the limit
  // scales like epsilon^n, so epsilon = 0.1 keeps it far below quadrature
  // error). The integrand is band-limited with band < 1/h, so the trapezoid
  // rule is exact up to the truncation tail.
  const double eps = 0.1;
  const double Ln = (1.0 - std::pow(eps, n)) * window.length();
  auto proxy = [&](double t) {
    double a = Ln * std::abs(t);
    double prod = 1.0;
    for (int s = 0; s < S && a > 1e-14; ++s) {
      prod *= sinc(a);
      a *= std::pow(eps, n);
    }
    return prod;
  };
  const auto M = static_cast<long>(std::ceil(T / h));
  double sum = 0.0;
  for (long j = -M; j <= M; ++j) {
    const double t = j * h;
    sum += proxy(t) * proxy(xi - t);
  }
  return window.length() * h * sum;
}

std::pair<size_t, size_t> DualWeightTable::p1s_range(double lo, double hi) const {
  auto cmp_lo = std::lower_bound(entries.begin(), entries.end(), lo,
                                 [](const DualWeight& e, double v) { return e.p1s[0] < v; });
  auto cmp_hi = std::upper_bound(entries.begin(), entries.end(), hi,
                                 [](double v, const DualWeight& e) { return v < e.p1s[0]; });
  return {static_cast<size_t>(cmp_lo - entries.begin()),
          static_cast<size_t>(cmp_hi - entries.begin())};
}

DualWeightTable dual_weight_table(const CutProjectScheme& scheme, const BumpSpec& spec,
                                  double p1s_extent, double floor, bool abs_weights,
                                  double point_budget) {
  spec.validate();
  const int m = scheme.m();
  const double vol = scheme.lattice().covolume();
  const double cutoff = bump_ft_cutoff(spec, floor * vol);

  DualWeightTable table;
  table.floor = floor;
  table.p2s_cutoff = cutoff;
  table.abs_weights = abs_weights;
  table.box.assign(m, {-p1s_extent, p1s_extent});
  table.box.push_back({-cutoff, cutoff});

  for (auto& g : scheme.dual_lattice().enumerate_in_box(table.box, point_budget)) {
    const double p2s = g.ambient[m];
    double w = bump_ft(spec, p2s) / vol;
    if (abs_weights) w = std::abs(w);
    if (std::abs(w) < floor) continue;
    Eigen::VectorXd p1s = g.ambient.head(m);
    table.entries.push_back(DualWeight{std::move(g), std::move(p1s), p2s, w});
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const DualWeight& x, const DualWeight& y) {
              return std::lexicographical_compare(x.p1s.data(), x.p1s.data() + x.p1s.size(),
                                                  y.p1s.data(), y.p1s.data() + y.p1s.size());
            });
  return table;
}

std::vector<double> primal_weights(const ModelSetPatch& patch, const BumpFunction& bump) {
  if (std::abs(bump.spec().window.half_width - patch.window.half_width) > 1e-12) {
    throw config_error("weight table window does not match the patch window");
  }
  std::vector<double> out;
  out.reserve(patch.points.size());
  for (const auto& p : patch.points) {
    // Membership was p2(gamma) in Omega - s, so psi is evaluated at p2 + s.
    out.push_back(bump.time(patch.scheme.p2(p.preimage) + patch.shift_s));
  }
  return out;
}

WeightTable weight_table(const ModelSetPatch& patch, const BumpSpec& spec,
                         double p1s_extent, double floor, bool abs_weights) {
  WeightTable table;
  table.bump = std::make_shared<BumpFunction>(spec);
  table.primal = primal_weights(patch, *table.bump);
  table.dual = dual_weight_table(patch.scheme, spec, p1s_extent, floor, abs_weights);
  return table;
}

}  // namespace msf
