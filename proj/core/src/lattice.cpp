#include "msf/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace msf {

Lattice::Lattice(Eigen::MatrixXd generator) : generator_(std::move(generator)) {
  if (generator_.rows() != generator_.cols() || generator_.rows() < 1) {
    throw invalid_lattice_error("generator matrix must be square");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(generator_);
  if (!lu.isInvertible()) {
    throw invalid_lattice_error("generator matrix is singular");
  }
  inverse_ = lu.inverse();
  covolume_ = std::abs(lu.determinant());
}

Lattice Lattice::dual() const {
  return Lattice(inverse_.transpose());
}

Eigen::VectorXd Lattice::point(const Eigen::VectorXi& z) const {
  return generator_ * z.cast<double>();
}

LatticePoint Lattice::lattice_point(const Eigen::VectorXi& z) const {
  return LatticePoint{z, point(z)};
}

std::vector<LatticePoint> Lattice::enumerate_in_box(
    const std::vector<std::pair<double, double>>& box,
    double point_budget) const {
  const int d = dim();
  if (static_cast<int>(box.size()) != d) {
    throw invalid_lattice_error("box dimension does not match lattice dimension");
  }
  for (const auto& [lo, hi] : box) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw invalid_lattice_error("box bounds must be finite");
    }
    if (hi < lo) {
      throw invalid_lattice_error("box upper bound below lower bound");
    }
  }

  // Map all 2^d box corners through A^{-1}; the preimage of the box is
  // contained in the bounding box of the corner preimages.
  Eigen::VectorXd zmin = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  Eigen::VectorXd zmax = -zmin;
  for (unsigned corner = 0; corner < (1u << d); ++corner) {
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) {
      c[i] = (corner >> i) & 1u ? box[i].second : box[i].first;
    }
    Eigen::VectorXd z = inverse_ * c;
    zmin = zmin.cwiseMin(z);
    zmax = zmax.cwiseMax(z);
  }

  Eigen::VectorXd lo_d = zmin.array().floor();
  Eigen::VectorXd hi_d = zmax.array().ceil();
  std::vector<int64_t> lo(d), hi(d);
  double outer = 1.0;   // iterations over all axes but the last
  double expected = 1.0;  // expected point count = box volume / covolume
  for (int i = 0; i < d; ++i) {
    if (lo_d[i] < -9.0e18 || hi_d[i] > 9.0e18) {
      throw budget_exceeded_error("integer bounding box overflows 64-bit range",
                                  std::numeric_limits<double>::infinity());
    }
    lo[i] = static_cast<int64_t>(lo_d[i]);
    hi[i] = static_cast<int64_t>(hi_d[i]);
    if (i < d - 1) outer *= static_cast<double>(hi[i] - lo[i] + 1);
    expected *= box[i].second - box[i].first;
  }
  expected /= covolume_;
  if (expected > point_budget || outer > 100.0 * point_budget) {
    throw budget_exceeded_error("enumeration box exceeds point budget",
                                std::max(expected, outer));
  }

  // Iterate the leading d-1 coordinates over their bounding ranges; for each
  // prefix, intersect the box rows to get the exact range of the last
  // coordinate. This keeps long thin boxes (the model-set case) cheap.
  std::vector<LatticePoint> out;
  Eigen::VectorXi z(d);
  std::vector<int64_t> idx(lo.begin(), lo.end() - 1);
  const int last = d - 1;
  const double tol = 1e-12;
  while (true) {
    for (int i = 0; i < last; ++i) z[i] = static_cast<int>(idx[i]);

    double zlo = static_cast<double>(lo[last]);
    double zhi = static_cast<double>(hi[last]);
    bool feasible = true;
    for (int i = 0; i < d && feasible; ++i) {
      double partial = 0.0;
      for (int j = 0; j < last; ++j) partial += generator_(i, j) * z[j];
      const double a = generator_(i, last);
      const double blo = box[i].first - tol - partial;
      const double bhi = box[i].second + tol - partial;
      if (std::abs(a) < 1e-14) {
        feasible = blo <= 0.0 && 0.0 <= bhi;
      } else if (a > 0.0) {
        zlo = std::max(zlo, std::ceil(blo / a));
        zhi = std::min(zhi, std::floor(bhi / a));
      } else {
        zlo = std::max(zlo, std::ceil(bhi / a));
        zhi = std::min(zhi, std::floor(blo / a));
      }
    }
    if (zlo > zhi) feasible = false;
    if (feasible) {
      for (int64_t zl = static_cast<int64_t>(zlo); zl <= static_cast<int64_t>(zhi); ++zl) {
        z[last] = static_cast<int>(zl);
        Eigen::VectorXd p = generator_ * z.cast<double>();
        bool inside = true;
        for (int i = 0; i < d; ++i) {
          if (p[i] < box[i].first - tol || p[i] > box[i].second + tol) {
            inside = false;
            break;
          }
        }
        if (inside) out.push_back(LatticePoint{z, std::move(p)});
      }
    }

    if (last == 0) break;
    int axis = 0;
    while (axis < last && idx[axis] == hi[axis]) {
      idx[axis] = lo[axis];
      ++axis;
    }
    if (axis == last) break;
    ++idx[axis];
  }
  return out;
}

}  // namespace msf
