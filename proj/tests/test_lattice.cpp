#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "msf/lattice.hpp"

using msf::Lattice;
using msf::LatticePoint;

namespace {

const double kAlpha = std::sqrt(2.0);
const double kBeta = std::sqrt(3.0);

Eigen::MatrixXd canonical_generator() {
  Eigen::MatrixXd A(2, 2);
  A << 1.0 + kBeta * kAlpha, -kBeta, -kAlpha, 1.0;
  return A;
}

std::set<std::pair<long, long>> coord_set(const std::vector<LatticePoint>& pts) {
  std::set<std::pair<long, long>> out;
  for (const auto& p : pts) out.insert({p.coords[0], p.coords[1]});
  return out;
}

}  // namespace

TEST_CASE("identity lattice is self dual") {
  Lattice L(Eigen::MatrixXd::Identity(2, 2));
  CHECK(L.covolume() == doctest::Approx(1.0));
  CHECK((L.dual().generator() - Eigen::MatrixXd::Identity(2, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("canonical scheme generator and dual") {
  Lattice L(canonical_generator());
  CHECK(L.covolume() == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXd expected_dual(2, 2);
  expected_dual << 1.0, kAlpha, kBeta, 1.0 + kBeta * kAlpha;
  CHECK((L.dual().generator() - expected_dual).norm() < 1e-12);

  // Generic matrix-inverse oracle for the dual generator.
  Eigen::MatrixXd oracle = canonical_generator().inverse().transpose();
  CHECK((L.dual().generator() - oracle).norm() < 1e-12);
}

TEST_CASE("singular generator is rejected") {
  Eigen::MatrixXd S(2, 2);
  S << 1.0, 2.0, 2.0, 4.0;
  CHECK_THROWS_AS(Lattice{S}, msf::invalid_lattice_error);
}

TEST_CASE("primal-dual pairings are integers") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  std::uniform_int_distribution<int> coeff(-50, 50);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd A(2, 2);
    do {
      A << entry(rng), entry(rng), entry(rng), entry(rng);
    } while (std::abs(A.determinant()) < 0.3);
    Lattice L(A);
    Lattice D = L.dual();
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXi z(2), w(2);
      z << coeff(rng), coeff(rng);
      w << coeff(rng), coeff(rng);
      const double dot = L.point(z).dot(D.point(w));
      CHECK(std::abs(dot - std::round(dot)) < 1e-9);
    }
  }
}

TEST_CASE("duality involution and covolume reciprocity") {
  Lattice L(canonical_generator());
  CHECK((L.dual().dual().generator() - L.generator()).norm() < 1e-12);
  CHECK(L.dual().covolume() == doctest::Approx(1.0 / L.covolume()).epsilon(1e-12));
}

TEST_CASE("integer lattice in the unit-2 box") {
  Lattice L(Eigen::MatrixXd::Identity(2, 2));
  auto pts = L.enumerate_in_box({{-1.0, 1.0}, {-1.0, 1.0}});
  CHECK(pts.size() == 9);
}

TEST_CASE("canonical enumeration matches the exhaustive integer-range oracle") {
  Lattice L(canonical_generator());
  std::vector<std::pair<double, double>> box = {{-5.0, 5.0}, {-2.0, 2.0}};
  auto pts = L.enumerate_in_box(box);

  std::set<std::pair<long, long>> oracle;
  for (int k = -50; k <= 50; ++k) {
    for (int l = -50; l <= 50; ++l) {
      Eigen::VectorXi z(2);
      z << k, l;
      Eigen::VectorXd p = L.point(z);
      if (p[0] >= box[0].first - 1e-12 && p[0] <= box[0].second + 1e-12 &&
          p[1] >= box[1].first - 1e-12 && p[1] <= box[1].second + 1e-12) {
        oracle.insert({k, l});
      }
    }
  }
  CHECK(coord_set(pts) == oracle);
  CHECK(!pts.empty());
}

TEST_CASE("enumeration rejects an inverted box") {
  Lattice L(Eigen::MatrixXd::Identity(2, 2));
  CHECK_THROWS_AS(L.enumerate_in_box({{1.0, -1.0}, {-1.0, 1.0}}),
                  msf::invalid_lattice_error);
}

TEST_CASE("enumeration enforces the point budget") {
  Lattice L(Eigen::MatrixXd::Identity(2, 2));
  try {
    L.enumerate_in_box({{-1e6, 1e6}, {-1e6, 1e6}}, 1000.0);
    FAIL("expected budget_exceeded_error");
  } catch (const msf::budget_exceeded_error& e) {
    CHECK(e.estimated_count > 1000.0);
  }
}

TEST_CASE("origin-symmetric boxes give sign-symmetric point sets") {
  Lattice L(canonical_generator());
  auto pts = L.enumerate_in_box({{-4.0, 4.0}, {-1.5, 1.5}});
  auto set = coord_set(pts);
  for (const auto& [k, l] : set) {
    CHECK(set.count({-k, -l}) == 1);
  }
}

TEST_CASE("random-box completeness against brute force") {
  Lattice L(canonical_generator());
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lo(-6.0, 0.0);
  std::uniform_real_distribution<double> len(0.5, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<double, double>> box(2);
    for (auto& [a, b] : box) {
      a = lo(rng);
      b = a + len(rng);
    }
    auto pts = L.enumerate_in_box(box);
    std::set<std::pair<long, long>> oracle;
    for (int k = -60; k <= 60; ++k) {
      for (int l = -60; l <= 60; ++l) {
        Eigen::VectorXi z(2);
        z << k, l;
        Eigen::VectorXd p = L.point(z);
        if (p[0] >= box[0].first - 1e-12 && p[0] <= box[0].second + 1e-12 &&
            p[1] >= box[1].first - 1e-12 && p[1] <= box[1].second + 1e-12) {
          oracle.insert({k, l});
        }
      }
    }
    CHECK(coord_set(pts) == oracle);
  }
}

TEST_CASE("lattice_point pairs coordinates with their ambient image") {
  Lattice L(canonical_generator());
  Eigen::VectorXi z(2);
  z << 3, -2;
  auto p = L.lattice_point(z);
  CHECK((p.ambient - L.generator() * z.cast<double>()).norm() == 0.0);
  CHECK(p.coords == z);
}
