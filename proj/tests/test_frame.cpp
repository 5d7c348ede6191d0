#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "msf/frame.hpp"

using msf::FourierFunction;
using msf::GeneratorFamily;
using msf::Window;
using msf::cplx;

namespace {

msf::CutProjectScheme canonical() {
  return msf::CutProjectScheme::canonical(std::sqrt(2.0), std::sqrt(3.0));
}

GeneratorFamily gaussian_family() {
  GeneratorFamily fam;
  fam.g.push_back(FourierFunction::unit_gaussian());
  return fam;
}

std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  return g;
}

}  // namespace

TEST_CASE("frame sum basics: zero input, quadratic scaling, radius stability") {
  auto scheme = canonical();
  auto patch50 = msf::build_model_set(scheme, Window(1.0), 0.0, 0.0, 50.0);
  auto patch100 = msf::build_model_set(scheme, Window(1.0), 0.0, 0.0, 100.0);
  auto fam = gaussian_family();

  CHECK(msf::frame_sum(FourierFunction::zero(), fam, patch50) == 0.0);

  auto f = FourierFunction::gaussian(1.0, 0.8).translated(0.3);
  const double s = msf::frame_sum(f, fam, patch50);
  CHECK(s > 0.0);
  CHECK(msf::frame_sum(f.scaled(cplx(0.0, 3.0)), fam, patch50) ==
        doctest::Approx(9.0 * s).epsilon(1e-10));
  CHECK(msf::frame_sum(f, fam, patch100) == doctest::Approx(s).epsilon(1e-6));
}

TEST_CASE("mixed frame sum reduces to the plain sum and conjugates under swap") {
  auto scheme = canonical();
  auto patch = msf::build_model_set(scheme, Window(1.0), 0.0, 0.0, 40.0);
  auto f = FourierFunction::gaussian(1.0, 0.9).modulated(0.2);

  auto same = gaussian_family();
  CHECK(std::abs(msf::mixed_frame_sum(f, same, patch) -
                 cplx(msf::frame_sum(f, same, patch), 0.0)) < 1e-10);

  GeneratorFamily gh;
  gh.g.push_back(FourierFunction::unit_gaussian());
  gh.h.push_back(FourierFunction::gaussian(0.8, 1.2));
  GeneratorFamily hg;
  hg.g = gh.h;
  hg.h = gh.g;
  CHECK(std::abs(msf::mixed_frame_sum(f, gh, patch) -
                 std::conj(msf::mixed_frame_sum(f, hg, patch))) < 1e-10);
}

TEST_CASE("family validation rejects mismatched partner counts") {
  GeneratorFamily fam;
  fam.g.push_back(FourierFunction::unit_gaussian());
  fam.h.push_back(FourierFunction::unit_gaussian());
  fam.h.push_back(FourierFunction::unit_gaussian());
  CHECK_THROWS_AS(fam.validate(), msf::config_error);
}

TEST_CASE("quadratic form commutes with translation") {
  auto scheme = canonical();
  auto fam = gaussian_family();
  auto f = FourierFunction::gaussian(1.0, 0.7).translated(-0.4);

  auto at0 = msf::covariance_check(f, fam, scheme, Window(1.0), 0.0, 40.0, 1e-8);
  CHECK(at0.max_abs_residual == 0.0);

  for (double x : {0.37, -1.18, 2.05}) {
    auto rep = msf::covariance_check(f, fam, scheme, Window(1.0), x, 40.0, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.max_abs_residual <= 1e-8);
  }
}

TEST_CASE("quadratic form is continuous along a convergent shift sequence") {
  auto scheme = canonical();
  auto fam = gaussian_family();
  auto f = FourierFunction::unit_gaussian();
  auto gaps = msf::continuity_probe(f, fam, scheme, Window(1.0),
                                    {0.5, 0.25, 0.125, 0.0625}, 0.0, 40.0);
  REQUIRE(gaps.size() == 4);
  for (size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] <= gaps[i - 1] + 1e-12);
  CHECK(gaps.back() < gaps.front());
}

TEST_CASE("diagnostic is real nonnegative and matches the mixed sum at zero") {
  auto scheme = canonical();
  auto patch = msf::build_model_set(scheme, Window(1.0), 0.0, 0.0, 60.0);
  auto fam = gaussian_family();
  auto f = FourierFunction::gaussian(1.0, 0.9);
  auto x_grid = grid(-2.0, 2.0, 17);
  auto vals = msf::n_diagnostic(f, fam, patch, x_grid);
  REQUIRE(vals.size() == x_grid.size());
  for (const auto& v : vals) {
    CHECK(std::abs(v.imag()) < 1e-10);
    CHECK(v.real() >= -1e-10);
  }
  // x_grid[8] == 0. The diagnostic interpolates a correlation grid, so it is
  // only accurate to the interpolation error, not machine precision.
  CHECK(std::abs(vals[8] - msf::mixed_frame_sum(f, fam, patch)) < 1e-4);
}

TEST_CASE("series coefficient extraction rejects unbounded transform support") {
  auto fam = gaussian_family();
  CHECK_THROWS_AS(msf::n_hat_coefficients(FourierFunction::unit_gaussian(), fam, canonical(),
                                          Window(1.0), 10.0),
                  msf::config_error);
}

TEST_CASE("series coefficient at the zero dual point is the density-weighted overlap") {
  auto scheme = canonical();
  auto fam = gaussian_family();
  auto f = FourierFunction::smooth_cutoff_gaussian(1.0, 2.0);
  auto table = msf::n_hat_coefficients(f, fam, scheme, Window(1.0), 10.0);

  const msf::CoefficientEntry* zero = nullptr;
  for (const auto& e : table.entries) {
    if (e.coords.isZero()) zero = &e;
  }
  REQUIRE(zero != nullptr);

  // Oracle: density * int |f_hat|^2 |g_hat|^2 dt by trapezoid.
  const int n = 200000;
  const double T = 2.5;
  const double h = 2.0 * T / n;
  double sum = 0.0;
  auto g = fam.g[0];
  for (int i = 0; i <= n; ++i) {
    const double t = -T + i * h;
    double term = std::norm(f.ft(t)) * std::norm(g.ft(t));
    if (i == 0 || i == n) term *= 0.5;
    sum += term;
  }
  sum *= 2.0 * h;  // density of the canonical model set is 2
  CHECK(std::abs(zero->value - sum) < 1e-8);
}

TEST_CASE("series coefficients are conjugate symmetric under eta -> -eta") {
  auto scheme = canonical();
  auto fam = gaussian_family();
  auto f = FourierFunction::smooth_cutoff_gaussian(1.0, 2.0).translated(0.2);
  auto table = msf::n_hat_coefficients(f, fam, scheme, Window(1.0), 10.0);
  for (const auto& e : table.entries) {
    for (const auto& e2 : table.entries) {
      if (e2.coords == -e.coords) {
        CHECK(std::abs(e2.value - std::conj(e.value)) < 1e-10);
      }
    }
  }
}

TEST_CASE("a nonzero series coefficient matches the averaged diagnostic") {
  auto scheme = canonical();
  auto fam = gaussian_family();
  auto f = FourierFunction::smooth_cutoff_gaussian(1.0, 2.0);
  auto table = msf::n_hat_coefficients(f, fam, scheme, Window(1.0), 10.0);

  // Smallest physical dual frequency above 0.3: small enough to be a genuine
  // off-origin coefficient, yet far enough from its neighbours that the cube
  // average separates it at a modest radius.
  const msf::CoefficientEntry* target = nullptr;
  for (const auto& e : table.entries) {
    if (e.p1s > 0.3 && (!target || e.p1s < target->p1s)) target = &e;
  }
  REQUIRE(target != nullptr);

  // Fast diagnostic sampler: one correlation table plus a sorted-lambda sweep,
  // with the two exact window-boundary points at half weight.
  auto patch = msf::build_model_set(scheme, Window(1.0), 0.0, 0.0, 210.0);
  msf::CorrelationTable corr(f, fam.g[0]);
  std::vector<double> lams;
  for (const auto& p : patch.points) lams.push_back(p.lambda[0]);
  auto sample = [&](double x) {
    double s = 0.0;
    auto lo = std::lower_bound(lams.begin(), lams.end(), x - 20.0);
    auto hi = std::upper_bound(lams.begin(), lams.end(), x + 20.0);
    for (auto it = lo; it != hi; ++it) s += std::norm(corr(*it - x));
    for (const auto& p : patch.boundary_points) s += 0.5 * std::norm(corr(p.lambda[0] - x));
    return cplx(s, 0.0);
  };
  auto est = msf::birkhoff_coefficient(sample, target->p1s, {200.0, 400.0}, 1.0 / 32.0);
  CHECK(std::abs(est.value - target->value) < 1e-2);
}

TEST_CASE("series reconstruction degenerate tables") {
  msf::CoefficientTable empty;
  auto x_grid = grid(-1.0, 1.0, 5);
  auto rows = msf::n_series_reconstruct(empty, x_grid, {1.0});
  REQUIRE(rows.size() == 1);
  for (const auto& v : rows[0]) CHECK(std::abs(v) == 0.0);

  msf::CoefficientTable constant;
  constant.P = 1.0;
  constant.entries.push_back({Eigen::VectorXi::Zero(2), 0.0, 0.0, cplx(2.5, 0.0)});
  rows = msf::n_series_reconstruct(constant, x_grid, {1.0});
  for (const auto& v : rows[0]) CHECK(std::abs(v - cplx(2.5, 0.0)) < 1e-14);
}

TEST_CASE("random class-D generators are reproducible and compactly supported") {
  auto a = msf::random_class_d(4, 99);
  auto b = msf::random_class_d(4, 99);
  auto c = msf::random_class_d(4, 100);
  REQUIRE(a.size() == 4);
  bool differs = false;
  for (int i = 0; i < 4; ++i) {
    CHECK(a[i].compact_ft_support());
    for (double t : {-0.7, 0.0, 0.4}) {
      CHECK(std::abs(a[i].ft(t) - b[i].ft(t)) == 0.0);
      if (std::abs(a[i].ft(t) - c[i].ft(t)) > 1e-12) differs = true;
    }
    CHECK(std::abs(a[i].ft(1.5)) < 1e-12);  // support radius W = 1
  }
  CHECK(differs);
}

TEST_CASE("necessary upper-bound check passes for the gaussian family") {
  auto scheme = canonical();
  auto patch = msf::build_model_set(scheme, Window(1.0), 0.0, 0.0, 60.0);
  auto fam = gaussian_family();
  auto trials = msf::random_class_d(8, 5);
  auto rep = msf::bessel_necessary_check(fam, patch, grid(-2.0, 2.0, 41), trials, 1e-2);
  CHECK(rep.pass);
}

TEST_CASE("no single generator of translates is tight") {
  auto scheme = canonical();
  auto fam = gaussian_family();
  auto t_grid = grid(-2.0, 2.0, 41);
  auto rep = msf::tight_certify(fam, scheme, Window(1.0), t_grid, 40.0, 1e-6);
  CHECK(!rep.pass);
  CHECK(rep.max_residual_zero > 0.1);

  auto patch = msf::build_model_set(scheme, Window(1.0), 0.0, 0.0, 60.0);
  auto v2 = msf::tight_certify_v2(fam, scheme, Window(1.0), t_grid, patch,
                                  msf::random_class_d(6, 3), 1e-6);
  CHECK(!v2.pass);
}

TEST_CASE("the zero family certifies at residual exactly one") {
  GeneratorFamily fam;
  fam.g.push_back(FourierFunction::zero());
  auto rep = msf::tight_certify(fam, canonical(), Window(1.0), grid(-1.0, 1.0, 9), 20.0, 1e-6);
  CHECK(!rep.pass);
  CHECK(rep.max_residual_zero == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.max_residual_nonzero == 0.0);
}

TEST_CASE("dual certification with h = g coincides with the tight certificate") {
  auto scheme = canonical();
  auto fam = gaussian_family();
  auto t_grid = grid(-2.0, 2.0, 21);
  auto tight = msf::tight_certify(fam, scheme, Window(1.0), t_grid, 30.0, 1e-6);
  auto dual = msf::dual_certify(fam, fam, scheme, Window(1.0), t_grid, 30.0, 1e-6);
  CHECK(dual.max_residual_zero == doctest::Approx(tight.max_residual_zero).epsilon(1e-10));
  CHECK(dual.max_residual_nonzero == doctest::Approx(tight.max_residual_nonzero).epsilon(1e-10));
  CHECK(dual.pass == tight.pass);

  GeneratorFamily zero_partner;
  zero_partner.g.push_back(FourierFunction::zero());
  auto rep = msf::dual_certify(fam, zero_partner, scheme, Window(1.0), t_grid, 30.0, 1e-6);
  CHECK(!rep.pass);
  CHECK(rep.max_residual_zero == doctest::Approx(1.0).epsilon(1e-12));
}
