#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "msf/errors.hpp"

namespace msf {

struct LatticePoint {
  Eigen::VectorXi coords;   // integer coordinates z
  Eigen::VectorXd ambient;  // A * z
};

/// A full-rank lattice A * Z^d given by its generator matrix. Immutable.
class Lattice {
 public:
  explicit Lattice(Eigen::MatrixXd generator);

  int dim() const { return static_cast<int>(generator_.rows()); }
  const Eigen::MatrixXd& generator() const { return generator_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  double covolume() const { return covolume_; }

  Lattice dual() const;  // generator A^{-T}

  Eigen::VectorXd point(const Eigen::VectorXi& z) const;
  LatticePoint lattice_point(const Eigen::VectorXi& z) const;

  /// All lattice points inside the closed per-axis box. Complete by
  /// construction: the box corners are mapped through A^{-1} and the integer
  /// bounding box is filtered.
  std::vector<LatticePoint> enumerate_in_box(
      const std::vector<std::pair<double, double>>& box,
      double point_budget = 5e7) const;

 private:
  Eigen::MatrixXd generator_;
  Eigen::MatrixXd inverse_;
  double covolume_;
};

}  // namespace msf
