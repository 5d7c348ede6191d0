#include "msf/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "interp.hpp"

namespace msf {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTailFraction = 1e-12;

cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }
}  // namespace

FourierFunction FourierFunction::gaussian(double amplitude, double width) {
  if (!(width > 0.0)) throw config_error("gaussian width must be positive");
  FourierFunction f;
  f.kind_ = Kind::Gaussian;
  f.amplitude_ = amplitude;
  f.width_ = width;
  return f;
}

FourierFunction FourierFunction::indicator_interval(double a) {
  if (!(a > 0.0)) throw config_error("indicator half-width must be positive");
  FourierFunction f;
  f.kind_ = Kind::IndicatorInterval;
  f.a_ = a;
  return f;
}

FourierFunction FourierFunction::sinc_product(const BumpSpec& spec) {
  FourierFunction f;
  f.kind_ = Kind::SincProduct;
  f.bump_ = std::make_shared<const BumpFunction>(spec);
  f.a_ = spec.window.half_width;
  return f;
}

FourierFunction FourierFunction::smooth_cutoff_gaussian(double width, double W) {
  if (!(width > 0.0) || !(W > 0.0)) throw config_error("cutoff gaussian parameters must be positive");
  FourierFunction f;
  f.kind_ = Kind::SmoothCutoffGaussian;
  f.width_ = width;
  f.a_ = W;
  f.cutoff_ = std::make_shared<const BumpFunction>(BumpSpec{Window(W), 0.5, 2, 40});
  return f;
}

FourierFunction FourierFunction::grid(std::vector<cplx> samples, double spacing, double t_start) {
  if (!(spacing > 0.0)) throw config_error("grid spacing must be positive");
  FourierFunction f;
  f.kind_ = Kind::Grid;
  f.samples_ = std::make_shared<const std::vector<cplx>>(std::move(samples));
  f.spacing_ = spacing;
  f.t_start_ = t_start;
  return f;
}

FourierFunction FourierFunction::zero() { return FourierFunction(); }

FourierFunction FourierFunction::translated(double lambda) const {
  FourierFunction f = *this;
  f.lambda_ += lambda;
  return f;
}

FourierFunction FourierFunction::modulated(double beta) const {
  // M_b T_l = e^{2 pi i b l} T_l M_b.
  FourierFunction f = *this;
  f.phase_ *= unit_phase(2.0 * kPi * beta * lambda_);
  f.beta_ += beta;
  return f;
}

FourierFunction FourierFunction::scaled(cplx c) const {
  FourierFunction f = *this;
  f.phase_ *= c;
  return f;
}

cplx FourierFunction::base_ft(double t) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Gaussian:
      return amplitude_ * width_ * std::exp(-kPi * width_ * width_ * t * t);
    case Kind::IndicatorInterval:
      return std::abs(t) <= a_ ? 1.0 : 0.0;
    case Kind::SincProduct:
      return bump_->ft(t);
    case Kind::SmoothCutoffGaussian: {
      if (std::abs(t) >= a_) return 0.0;
      const double chi = cutoff_->time(t) / cutoff_->peak();
      return std::exp(-kPi * (t / width_) * (t / width_)) * chi;
    }
    case Kind::Grid: {
      const double idx = (t - t_start_) / spacing_;
      if (idx < 0.0 || idx > static_cast<double>(samples_->size() - 1)) return 0.0;
      return detail::catmull_rom(*samples_, idx);
    }
  }
  return 0.0;
}

cplx FourierFunction::base_time(double x) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Gaussian:
      return amplitude_ * std::exp(-kPi * x * x / (width_ * width_));
    case Kind::IndicatorInterval:
      return 2.0 * a_ * sinc(2.0 * a_ * x);
    case Kind::SincProduct:
      return bump_->time(x);
    case Kind::SmoothCutoffGaussian:
    case Kind::Grid: {
      // Direct quadrature of the transform; an occasional-use path.
      const double R = ft_support_radius();
      const double h = 1.0 / std::max(1024.0, 64.0 * std::ceil(std::abs(x) + 1.0));
      auto N = static_cast<long>(std::ceil(2.0 * R / h));
      if (N % 2 == 1) ++N;
      const double step = 2.0 * R / N;
      cplx sum = 0.0;
      for (long j = 0; j <= N; ++j) {
        const double t = -R + j * step;
        const double w = (j == 0 || j == N) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        sum += w * base_ft(t) * unit_phase(2.0 * kPi * x * t);
      }
      return sum * step / 3.0;
    }
  }
  return 0.0;
}

cplx FourierFunction::ft(double t) const {
  if (kind_ == Kind::Zero) return 0.0;
  return phase_ * unit_phase(-2.0 * kPi * lambda_ * t) * base_ft(t - beta_);
}

cplx FourierFunction::time(double x) const {
  if (kind_ == Kind::Zero) return 0.0;
  return phase_ * unit_phase(2.0 * kPi * beta_ * (x - lambda_)) * base_time(x - lambda_);
}

double FourierFunction::ft_support_center() const {
  if (kind_ == Kind::Grid) {
    return beta_ + t_start_ + 0.5 * spacing_ * static_cast<double>(samples_->size() - 1);
  }
  return beta_;
}

double FourierFunction::ft_support_radius() const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Gaussian:
      // exp(-pi w^2 t^2) <= 1e-12 beyond this radius.
      return std::sqrt(-std::log(kTailFraction) / kPi) / width_;
    case Kind::IndicatorInterval:
    case Kind::SmoothCutoffGaussian:
      return a_;
    case Kind::SincProduct:
      return bump_ft_cutoff(bump_->spec(), kTailFraction);
    case Kind::Grid:
      return 0.5 * spacing_ * static_cast<double>(samples_->size() - 1);
  }
  return 0.0;
}

double FourierFunction::tail_bound() const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::IndicatorInterval:
    case Kind::SmoothCutoffGaussian:
    case Kind::Grid:
      return 0.0;
    case Kind::Gaussian:
      return kTailFraction * std::abs(amplitude_) * width_;
    case Kind::SincProduct:
      return kTailFraction;
  }
  return 0.0;
}

bool FourierFunction::compact_ft_support() const {
  return kind_ == Kind::Zero || kind_ == Kind::IndicatorInterval ||
         kind_ == Kind::SmoothCutoffGaussian || kind_ == Kind::Grid;
}

namespace {

cplx simpson_product(const FourierFunction& f, const FourierFunction& g, double lo, double hi,
                     long N) {
  const double step = (hi - lo) / static_cast<double>(N);
  cplx sum = 0.0;
  for (long j = 0; j <= N; ++j) {
    const double t = lo + j * step;
    const double w = (j == 0 || j == N) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    sum += w * f.ft(t) * std::conj(g.ft(t));
  }
  return sum * step / 3.0;
}

}  // namespace

InnerProductResult inner_product_detailed(const FourierFunction& f, const FourierFunction& g,
                                          double spacing) {
  const double lo = std::max(f.ft_support_center() - f.ft_support_radius(),
                             g.ft_support_center() - g.ft_support_radius());
  const double hi = std::min(f.ft_support_center() + f.ft_support_radius(),
                             g.ft_support_center() + g.ft_support_radius());
  if (hi <= lo) return {0.0, 0.0};

  // Oscillation of the integrand phase: e^{-2 pi i (lambda_f - lambda_g) t}.
  const double osc = std::abs(f.time_shift() - g.time_shift()) + 1.0;
  if (spacing > 0.0 && spacing > 1.0 / (4.0 * osc)) {
    throw resolution_error("quadrature spacing too coarse for the phase bandwidth");
  }
  const double h = spacing > 0.0 ? spacing : 1.0 / (64.0 * osc);
  auto N = static_cast<long>(std::ceil((hi - lo) / h));
  if (N % 2 == 1) ++N;
  if (N < 8) N = 8;
  const cplx coarse = simpson_product(f, g, lo, hi, N);
  const cplx fine = simpson_product(f, g, lo, hi, 2 * N);
  const cplx value = (16.0 * fine - coarse) / 15.0;
  return {value, std::abs(fine - coarse) / 15.0};
}

cplx inner_product(const FourierFunction& f, const FourierFunction& g, double spacing) {
  return inner_product_detailed(f, g, spacing).value;
}

double norm_sq(const FourierFunction& f) {
  return inner_product(f, f).real();
}

CorrelationTable::CorrelationTable(const FourierFunction& f, const FourierFunction& g) {
  const double h = 1.0 / 128.0;
  const int N = 1 << 19;
  const double lo = std::max(f.ft_support_center() - f.ft_support_radius(),
                             g.ft_support_center() - g.ft_support_radius());
  const double hi = std::min(f.ft_support_center() + f.ft_support_radius(),
                             g.ft_support_center() + g.ft_support_radius());

  std::vector<cplx> buf(N, 0.0);
  if (hi > lo) {
    const auto jlo = static_cast<long>(std::floor(lo / h)) + N / 2;
    const auto jhi = static_cast<long>(std::ceil(hi / h)) + N / 2;
    if (jlo < 0 || jhi >= N) {
      throw truncation_error("transform support exceeds the correlation grid");
    }
    for (long j = jlo; j <= jhi; ++j) {
      const double t = (j - N / 2) * h;
      buf[j] = f.ft(t) * std::conj(g.ft(t));
    }
  }
  fftw_plan plan = fftw_plan_dft_1d(N, reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  du_ = 1.0 / (N * h);
  u_max_ = 0.5 / h;
  vals_.resize(N);
  peak_ = 0.0;
  for (int k = 0; k < N; ++k) {
    const int src = (k - N / 2 + N) % N;  // u_k = (k - N/2) du
    const double sign = (k - N / 2) % 2 == 0 ? 1.0 : -1.0;
    vals_[k] = h * sign * buf[src];
    peak_ = std::max(peak_, std::abs(vals_[k]));
  }
}

cplx CorrelationTable::operator()(double u) const {
  if (std::abs(u) >= u_max_ - 2.0 * du_) return 0.0;
  return detail::catmull_rom(vals_, (u + u_max_) / du_);
}

MeanEstimate birkhoff_coefficient(const std::function<cplx(double)>& sample, double theta,
                                  const std::vector<double>& R_schedule, double h) {
  if (R_schedule.empty()) throw config_error("empty radius schedule");
  for (size_t i = 1; i < R_schedule.size(); ++i) {
    if (R_schedule[i] <= R_schedule[i - 1]) throw config_error("radius schedule must increase");
  }
  std::unordered_map<long, cplx> cache;
  auto value_at = [&](long j) {
    auto it = cache.find(j);
    if (it != cache.end()) return it->second;
    const double x = j * h;
    cplx v = sample(x) * unit_phase(2.0 * kPi * x * theta);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw error("sample evaluation produced a non-finite value");
    }
    cache.emplace(j, v);
    return v;
  };

  MeanEstimate est;
  for (double R : R_schedule) {
    const auto J = static_cast<long>(std::llround(R / (2.0 * h)));
    if (J < 2) throw config_error("radius too small for the sampling step");
    cplx sum = value_at(-J) + value_at(J);
    for (long j = -J + 1; j < J; ++j) {
      sum += ((j + J) % 2 == 1 ? 4.0 : 2.0) * value_at(j);
    }
    const double span = 2.0 * J * h;
    est.schedule.push_back(R);
    est.values.push_back(sum * h / 3.0 / span);
  }
  for (size_t i = 1; i < est.values.size(); ++i) {
    est.residuals.push_back(std::abs(est.values[i] - est.values[i - 1]));
  }
  est.value = est.values.back();
  return est;
}

}  // namespace msf
