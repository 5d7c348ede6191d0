#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "msf/fourier.hpp"

using msf::cplx;
using msf::FourierFunction;

namespace {

const double kPi = 3.14159265358979323846;

// Trapezoid quadrature of int ft_f conj(ft_g) on [-T, T].
cplx trapezoid_inner(const FourierFunction& f, const FourierFunction& g, double T, int n) {
  const double h = 2.0 * T / n;
  cplx sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = -T + i * h;
    cplx term = f.ft(t) * std::conj(g.ft(t));
    if (i == 0 || i == n) term *= 0.5;
    sum += term;
  }
  return sum * h;
}

}  // namespace

TEST_CASE("unit gaussian norm is 2^{-1/2}") {
  auto f = FourierFunction::unit_gaussian();
  CHECK(msf::norm_sq(f) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
  CHECK(msf::inner_product(f, f).real() ==
        doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("gaussian transform values") {
  auto f = FourierFunction::gaussian(2.0, 0.5);
  CHECK(f.time(0.0).real() == doctest::Approx(2.0));
  CHECK(f.ft(0.0).real() == doctest::Approx(1.0));  // A * w
  CHECK(f.ft(1.0).real() == doctest::Approx(std::exp(-kPi * 0.25)).epsilon(1e-12));
}

TEST_CASE("disjoint transform supports give a zero inner product") {
  auto f = FourierFunction::indicator_interval(1.0).modulated(5.0);
  auto g = FourierFunction::indicator_interval(1.0);
  CHECK(std::abs(msf::inner_product(f, g)) < 1e-14);
}

TEST_CASE("inner product matches a dense trapezoid oracle") {
  auto f = FourierFunction::unit_gaussian().translated(0.3);
  auto g = FourierFunction::gaussian(1.5, 0.8).modulated(0.7);
  const cplx oracle = trapezoid_inner(f, g, 12.0, 200000);
  const cplx got = msf::inner_product(f, g);
  CHECK(std::abs(got - oracle) < 1e-8);
}

TEST_CASE("inner product error estimate is honest for gaussians") {
  auto f = FourierFunction::unit_gaussian();
  auto g = FourierFunction::unit_gaussian().translated(1.0);
  auto res = msf::inner_product_detailed(f, g);
  const cplx oracle = trapezoid_inner(f, g, 12.0, 200000);
  CHECK(std::abs(res.value - oracle) <= std::max(res.error_estimate, 1e-10));
}

TEST_CASE("translation and modulation commute up to the phase factor") {
  // M_beta T_lambda = exp(2 pi i beta lambda) T_lambda M_beta.
  const double lambda = 0.37, beta = 1.21;
  auto f = FourierFunction::unit_gaussian();
  auto a = f.translated(lambda).modulated(beta);
  auto b = f.modulated(beta).translated(lambda);
  const cplx phase = std::exp(cplx(0.0, 2.0 * kPi * beta * lambda));
  for (double t : {-1.3, -0.2, 0.0, 0.9, 2.4}) {
    CHECK(std::abs(a.ft(t) - phase * b.ft(t)) < 1e-14);
  }
  for (double x : {-2.0, -0.5, 0.4, 1.7}) {
    CHECK(std::abs(a.time(x) - phase * b.time(x)) < 1e-14);
  }
}

TEST_CASE("time and transform sides are a consistent Fourier pair") {
  // time(x) oracle: int ft(t) exp(2 pi i t x) dt by dense trapezoid.
  auto f = FourierFunction::gaussian(1.3, 0.9).translated(0.4).modulated(-0.6);
  for (double x : {-1.1, 0.0, 0.8}) {
    const int n = 200000;
    const double T = 12.0;
    const double h = 2.0 * T / n;
    cplx sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = -T + i * h;
      cplx term = f.ft(t) * std::exp(cplx(0.0, 2.0 * kPi * t * x));
      if (i == 0 || i == n) term *= 0.5;
      sum += term;
    }
    sum *= h;
    CHECK(std::abs(f.time(x) - sum) < 1e-8);
  }
}

TEST_CASE("parseval on random translated-modulated gaussians") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = FourierFunction::gaussian(1.0 + 0.5 * u(rng), 0.7 + 0.2 * std::abs(u(rng)))
                 .translated(u(rng))
                 .modulated(u(rng));
    auto g = FourierFunction::gaussian(1.0 + 0.5 * u(rng), 0.7 + 0.2 * std::abs(u(rng)))
                 .translated(u(rng))
                 .modulated(u(rng));
    // Time-side trapezoid vs transform-side inner product.
    const int n = 60000;
    const double X = 14.0;
    const double h = 2.0 * X / n;
    cplx sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = -X + i * h;
      cplx term = f.time(x) * std::conj(g.time(x));
      if (i == 0 || i == n) term *= 0.5;
      sum += term;
    }
    sum *= h;
    CHECK(std::abs(sum - msf::inner_product(f, g)) < 1e-6);
  }
}

TEST_CASE("correlation table matches pointwise inner products") {
  auto f = FourierFunction::unit_gaussian();
  auto g = FourierFunction::gaussian(1.2, 0.8);
  msf::CorrelationTable table(f, g);
  for (double u_val : {-3.7, -1.05, 0.0, 0.33, 2.6}) {
    const cplx direct = msf::inner_product(f, g.translated(u_val));
    CHECK(std::abs(table(u_val) - direct) < 1e-8);
  }
  CHECK(std::abs(table(200.0)) == 0.0);
}

TEST_CASE("birkhoff average of a pure tone") {
  // sample(x) = exp(-2 pi i theta0 x): the average at theta0 is 1, and at a
  // well-separated theta it decays like 1/R.
  const double theta0 = 0.375;
  auto sample = [&](double x) { return std::exp(cplx(0.0, -2.0 * kPi * theta0 * x)); };
  auto at0 = msf::birkhoff_coefficient(sample, theta0, {200.0, 400.0, 800.0});
  CHECK(std::abs(at0.value - 1.0) < 1e-10);
  auto off = msf::birkhoff_coefficient(sample, theta0 + 0.11, {200.0, 400.0, 800.0});
  CHECK(std::abs(off.value) < 1e-1);
  CHECK(std::abs(off.values.back()) <= std::abs(off.values.front()) + 1e-12);
}

TEST_CASE("birkhoff recovery of a three-term trigonometric polynomial") {
  const std::vector<double> thetas = {0.2, std::sqrt(2.0) / 3.0, 1.1};
  const std::vector<cplx> coeffs = {cplx(0.8, 0.1), cplx(-0.4, 0.5), cplx(0.25, 0.0)};
  auto sample = [&](double x) {
    cplx s = 0.0;
    for (size_t j = 0; j < thetas.size(); ++j) {
      s += coeffs[j] * std::exp(cplx(0.0, -2.0 * kPi * thetas[j] * x));
    }
    return s;
  };
  for (size_t j = 0; j < thetas.size(); ++j) {
    auto est = msf::birkhoff_coefficient(sample, thetas[j], {250.0, 500.0, 1000.0});
    CHECK(std::abs(est.value - coeffs[j]) < 1e-2);
  }
}

TEST_CASE("bohr mean of |f|^2 for an almost periodic trigonometric polynomial") {
  // M{|f|^2} = sum |c_j|^2 when the frequencies are rationally independent.
  const std::vector<double> thetas = {1.0, std::sqrt(2.0), std::sqrt(3.0)};
  const std::vector<cplx> coeffs = {cplx(0.5, 0.0), cplx(0.3, -0.2), cplx(-0.1, 0.4)};
  auto sample = [&](double x) {
    cplx s = 0.0;
    for (size_t j = 0; j < thetas.size(); ++j) {
      s += coeffs[j] * std::exp(cplx(0.0, -2.0 * kPi * thetas[j] * x));
    }
    return s * std::conj(s);  // |f|^2 as the sampled signal
  };
  double expected = 0.0;
  for (const auto& c : coeffs) expected += std::norm(c);
  auto est = msf::birkhoff_coefficient(sample, 0.0, {250.0, 500.0, 1000.0});
  CHECK(std::abs(est.value - expected) < 1e-2);
}

TEST_CASE("grid functions interpolate their samples") {
  std::vector<cplx> samples;
  const double spacing = 0.01;
  const double t0 = -2.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = t0 + i * spacing;
    samples.push_back(std::exp(-kPi * t * t));
  }
  auto g = FourierFunction::grid(samples, spacing, t0);
  auto f = FourierFunction::unit_gaussian();
  for (double t : {-1.5, -0.333, 0.0, 0.6181, 1.9}) {
    CHECK(std::abs(g.ft(t) - f.ft(t)) < 1e-6);
  }
  CHECK(std::abs(g.ft(5.0)) == 0.0);
}

TEST_CASE("scaling multiplies both sides") {
  auto f = FourierFunction::unit_gaussian().scaled(cplx(0.0, 2.0));
  auto base = FourierFunction::unit_gaussian();
  CHECK(std::abs(f.ft(0.4) - cplx(0.0, 2.0) * base.ft(0.4)) < 1e-15);
  CHECK(std::abs(f.time(1.2) - cplx(0.0, 2.0) * base.time(1.2)) < 1e-15);
}
