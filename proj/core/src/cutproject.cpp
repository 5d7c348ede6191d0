#include "msf/cutproject.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace msf {

CutProjectScheme::CutProjectScheme(Lattice lattice, int m)
    : lattice_(std::move(lattice)), dual_(lattice_.dual()), m_(m) {
  if (m < 1 || lattice_.dim() != m + 1) {
    throw invalid_lattice_error("scheme needs a lattice of dimension m+1");
  }
}

CutProjectScheme CutProjectScheme::canonical(double a, double b) {
  Eigen::MatrixXd gen(2, 2);
  gen << 1.0 + b * a, -b,
         -a, 1.0;
  return CutProjectScheme(Lattice(gen), 1);
}

Window::Window(double half_width) : half_width(half_width) {
  if (!(half_width > 0.0)) {
    throw config_error("window half-width must be positive");
  }
}

double ModelSetPatch::min_gap() const {
  if (points.size() < 2) return std::numeric_limits<double>::infinity();
  const int m = scheme.m();
  double best = std::numeric_limits<double>::infinity();
  if (m == 1) {
    for (size_t i = 1; i < points.size(); ++i) {
      best = std::min(best, points[i].lambda[0] - points[i - 1].lambda[0]);
    }
    return best;
  }
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      double d = (points[i].lambda - points[j].lambda).lpNorm<Eigen::Infinity>();
      best = std::min(best, d);
    }
  }
  return best;
}

ModelSetPatch build_model_set(const CutProjectScheme& scheme, const Window& window,
                              const Eigen::VectorXd& shift_t, double shift_s,
                              double R, const BuildOptions& opts) {
  if (!(R > 0.0)) throw config_error("patch radius must be positive");
  const int m = scheme.m();
  if (shift_t.size() != m) throw config_error("shift dimension mismatch");

  // Membership: lambda = t + p1(gamma), p2(gamma) in Omega - s, |lambda| <= R.
  const double a = window.half_width;
  std::vector<std::pair<double, double>> box(m + 1);
  for (int i = 0; i < m; ++i) {
    box[i] = {-R - shift_t[i] - 1e-9, R - shift_t[i] + 1e-9};
  }
  box[m] = {-a - shift_s - 2.0 * opts.boundary_tol, a - shift_s + 2.0 * opts.boundary_tol};

  ModelSetPatch patch{scheme, window, shift_t, shift_s, R, {}, 0, {}};
  for (auto& g : scheme.lattice().enumerate_in_box(box, opts.point_budget)) {
    const double p2 = scheme.p2(g);
    const double dist = a - std::abs(p2 + shift_s);  // signed distance to the window boundary
    if (std::abs(dist) <= opts.exact_tol) {
      // Exact boundary hit: the configuration is non-generic at machine
      // precision. Excluded from the patch, but kept on the side so series
      // comparisons can count it at the symmetric half weight.
      ++patch.boundary_hits;
      Eigen::VectorXd lambda = shift_t + scheme.p1(g);
      if (lambda.lpNorm<Eigen::Infinity>() <= R) {
        patch.boundary_points.push_back(PatchPoint{std::move(lambda), std::move(g)});
      }
      continue;
    }
    if (std::abs(dist) <= opts.boundary_tol) {
      throw non_generic_error("internal point within tolerance of the window boundary");
    }
    if (dist < 0.0) continue;
    Eigen::VectorXd lambda = shift_t + scheme.p1(g);
    if (lambda.lpNorm<Eigen::Infinity>() > R) continue;
    patch.points.push_back(PatchPoint{std::move(lambda), std::move(g)});
  }
  std::sort(patch.points.begin(), patch.points.end(),
            [](const PatchPoint& x, const PatchPoint& y) {
              return std::lexicographical_compare(
                  x.lambda.data(), x.lambda.data() + x.lambda.size(),
                  y.lambda.data(), y.lambda.data() + y.lambda.size());
            });
  return patch;
}

ModelSetPatch build_model_set(const CutProjectScheme& scheme, const Window& window,
                              double shift_t, double shift_s, double R,
                              const BuildOptions& opts) {
  Eigen::VectorXd t(1);
  t[0] = shift_t;
  return build_model_set(scheme, window, t, shift_s, R, opts);
}

DensityEstimate density_estimate(const CutProjectScheme& scheme, const Window& window,
                                 const std::vector<double>& R_schedule,
                                 const BuildOptions& opts) {
  if (R_schedule.size() < 3) throw config_error("density schedule needs >= 3 radii");
  for (size_t i = 1; i < R_schedule.size(); ++i) {
    if (R_schedule[i] <= R_schedule[i - 1]) {
      throw config_error("density schedule must be increasing");
    }
  }
  const int m = scheme.m();
  DensityEstimate est;
  est.formula = window.length() / scheme.lattice().covolume();
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(m);
  for (double R : R_schedule) {
    // Paper cubes have side R; the patch is the centered cube [-R/2, R/2]^m.
    auto patch = build_model_set(scheme, window, zero, 0.0, R / 2.0, opts);
    est.samples.emplace_back(R, static_cast<double>(patch.points.size()) / std::pow(R, m));
  }
  est.extrapolated = est.samples.back().second;
  return est;
}

double relative_separation(const ModelSetPatch& patch) {
  if (patch.points.empty()) throw empty_set_error("relative separation of empty patch");
  const int m = patch.scheme.m();
  // Count points in half-open unit cubes on grids shifted by multiples of 1/4;
  // the max over shifts approximates the sup over all unit cubes.
  double best = 0.0;
  const double shifts[] = {0.0, 0.25, 0.5, 0.75};
  for (double sh : shifts) {
    std::map<std::vector<int64_t>, int> counts;
    for (const auto& p : patch.points) {
      std::vector<int64_t> cell(m);
      for (int i = 0; i < m; ++i) {
        cell[i] = static_cast<int64_t>(std::floor(p.lambda[i] - sh));
      }
      best = std::max(best, static_cast<double>(++counts[cell]));
    }
  }
  return best;
}

namespace {

std::vector<Eigen::VectorXd> restrict_ball(const ModelSetPatch& p, double R) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& q : p.points) {
    if (q.lambda.lpNorm<Eigen::Infinity>() <= R) out.push_back(q.lambda);
  }
  return out;
}

bool equal_sets(const std::vector<Eigen::VectorXd>& a,
                const std::vector<Eigen::VectorXd>& b,
                const Eigen::VectorXd& v, double R, double tol) {
  // Compare (a + v) and b restricted to the ball B(0, R). Both lists are
  // lexicographically sorted, so a two-pointer sweep would need care near the
  // ball boundary; sizes here are small enough for the direct quadratic scan.
  std::vector<Eigen::VectorXd> shifted;
  shifted.reserve(a.size());
  for (const auto& x : a) {
    Eigen::VectorXd y = x + v;
    if (y.lpNorm<Eigen::Infinity>() <= R + tol) shifted.push_back(std::move(y));
  }
  std::vector<bool> used(b.size(), false);
  std::vector<size_t> b_idx;
  for (size_t j = 0; j < b.size(); ++j) {
    if (b[j].lpNorm<Eigen::Infinity>() <= R + tol) b_idx.push_back(j);
  }
  for (const auto& y : shifted) {
    bool found = false;
    for (size_t j : b_idx) {
      if (used[j]) continue;
      if ((b[j] - y).lpNorm<Eigen::Infinity>() <= tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    // Points within tol of the ball boundary may legitimately fall on
    // opposite sides for the two sets; ignore unmatched boundary cases.
    if (!found && y.lpNorm<Eigen::Infinity>() <= R - tol) return false;
  }
  for (size_t j : b_idx) {
    if (!used[j] && b[j].lpNorm<Eigen::Infinity>() <= R - tol) return false;
  }
  return true;
}

}  // namespace

CloseResult is_close(const ModelSetPatch& a, const ModelSetPatch& b, double R,
                     double eps, double match_tol) {
  if (a.radius < R + eps || b.radius < R + eps) {
    throw coverage_error("patch radius too small for closeness check");
  }
  const int m = a.scheme.m();
  auto pa = restrict_ball(a, R + eps);
  auto pb = restrict_ball(b, R + eps);

  // Candidate translations: v = 0 and all pairwise differences of size <= eps.
  std::vector<Eigen::VectorXd> candidates;
  candidates.push_back(Eigen::VectorXd::Zero(m));
  for (const auto& x : pa) {
    for (const auto& y : pb) {
      Eigen::VectorXd v = y - x;
      if (v.lpNorm<Eigen::Infinity>() <= eps) candidates.push_back(std::move(v));
    }
  }
  for (const auto& v : candidates) {
    if (equal_sets(pa, pb, v, R, match_tol)) return {true, v};
  }
  return {false, Eigen::VectorXd::Zero(m)};
}

std::vector<std::pair<double, double>> pseudometric(
    const ModelSetPatch& a, const ModelSetPatch& b,
    const std::vector<double>& R_schedule, double match_tol) {
  const int m = a.scheme.m();
  std::vector<std::pair<double, double>> out;
  for (double R : R_schedule) {
    // Paper cube of side R centered at the origin.
    const double half = R / 2.0;
    if (a.radius < half || b.radius < half) {
      throw coverage_error("patch radius too small for pseudometric schedule");
    }
    auto pa = restrict_ball(a, half);
    auto pb = restrict_ball(b, half);
    std::vector<bool> used(pb.size(), false);
    size_t sym_diff = 0;
    for (const auto& x : pa) {
      bool found = false;
      for (size_t j = 0; j < pb.size(); ++j) {
        if (used[j]) continue;
        if ((pb[j] - x).lpNorm<Eigen::Infinity>() <= match_tol) {
          used[j] = true;
          found = true;
          break;
        }
      }
      if (!found) ++sym_diff;
    }
    for (size_t j = 0; j < pb.size(); ++j) {
      if (!used[j]) ++sym_diff;
    }
    out.emplace_back(R, static_cast<double>(sym_diff) / std::pow(R, m));
  }
  return out;
}

}  // namespace msf
