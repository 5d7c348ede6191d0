#include "msf/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "interp.hpp"

namespace msf {

namespace {
constexpr double kPi = std::numbers::pi;

cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }
}  // namespace

void ResidualReport::finalize(double tol) {
  max_abs_residual = 0.0;
  for (double r : residuals) max_abs_residual = std::max(max_abs_residual, r);
  tolerance = tol;
  pass = max_abs_residual <= tol;
}

SlimDualTable slim_dual_table(const CutProjectScheme& scheme, const BumpSpec& spec,
                              double p1s_extent, double floor) {
  if (scheme.m() != 1) throw config_error("slim dual table supports m = 1 only");
  spec.validate();
  const double vol = scheme.lattice().covolume();
  const double cutoff = bump_ft_cutoff(spec, floor * vol);

  SlimDualTable table;
  table.floor = floor;
  table.p2s_cutoff = cutoff;
  table.extent = p1s_extent;

  const double strip = 50.0;
  std::vector<std::pair<double, double>> box(2);
  box[1] = {-cutoff, cutoff};
  for (double lo = -p1s_extent; lo < p1s_extent; lo += strip) {
    const double hi = std::min(lo + strip, p1s_extent);
    // Half-open strips so points are not duplicated on seams.
    box[0] = {lo, hi - 1e-12};
    for (const auto& g : scheme.dual_lattice().enumerate_in_box(box)) {
      const double w = bump_ft(spec, g.ambient[1]) / vol;
      if (std::abs(w) < floor) continue;
      table.p1s.push_back(g.ambient[0]);
      table.w.push_back(w);
    }
  }
  // Strip order is already sorted by p1s up to intra-strip order; sort fully.
  std::vector<size_t> idx(table.p1s.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t i, size_t j) { return table.p1s[i] < table.p1s[j]; });
  SlimDualTable sorted = table;
  for (size_t i = 0; i < idx.size(); ++i) {
    sorted.p1s[i] = table.p1s[idx[i]];
    sorted.w[i] = table.w[idx[i]];
  }
  return sorted;
}

BracketFunction::BracketFunction(const FourierFunction& f, const FourierFunction& g,
                                 std::shared_ptr<const SlimDualTable> table)
    : table_(std::move(table)) {
  lo_ = std::max(f.ft_support_center() - f.ft_support_radius(),
                 g.ft_support_center() - g.ft_support_radius());
  hi_ = std::min(f.ft_support_center() + f.ft_support_radius(),
                 g.ft_support_center() + g.ft_support_radius());
  if (hi_ <= lo_) {
    lo_ = 0.0;
    hi_ = 0.0;
    h_ = 1.0;
    return;
  }
  h_ = 1.0 / 512.0;
  const auto N = static_cast<long>(std::ceil((hi_ - lo_) / h_)) + 1;
  H_.resize(N);
  for (long j = 0; j < N; ++j) {
    const double t = lo_ + j * h_;
    H_[j] = f.ft(t) * std::conj(g.ft(t));
  }
  hi_ = lo_ + (N - 1) * h_;
}

cplx BracketFunction::operator()(double t) const {
  if (H_.empty()) return 0.0;
  // Terms w * H(t - p1s) are nonzero for p1s in [t - hi, t - lo].
  const auto& p1s = table_->p1s;
  auto lo_it = std::lower_bound(p1s.begin(), p1s.end(), t - hi_);
  auto hi_it = std::upper_bound(p1s.begin(), p1s.end(), t - lo_);
  cplx sum = 0.0;
  for (auto it = lo_it; it != hi_it; ++it) {
    const size_t i = static_cast<size_t>(it - p1s.begin());
    const double arg = (t - *it - lo_) / h_;
    sum += table_->w[i] * detail::catmull_rom(H_, arg);
  }
  return sum;
}

cplx bracket_value(const FourierFunction& f, const FourierFunction& g,
                   const DualWeightTable& table, double t) {
  const double lo = std::max(f.ft_support_center() - f.ft_support_radius(),
                             g.ft_support_center() - g.ft_support_radius());
  const double hi = std::min(f.ft_support_center() + f.ft_support_radius(),
                             g.ft_support_center() + g.ft_support_radius());
  if (hi <= lo) return 0.0;
  auto [b, e] = table.p1s_range(t - hi, t - lo);
  cplx sum = 0.0;
  for (size_t i = b; i < e; ++i) {
    const double u = t - table.entries[i].p1s[0];
    sum += table.entries[i].w * f.ft(u) * std::conj(g.ft(u));
  }
  return sum;
}

ResidualReport poisson_verify(const ModelSetPatch& patch, const WeightTable& weights,
                              const FourierFunction& F, const std::vector<double>& t_grid,
                              const PoissonOptions& opts) {
  if (patch.scheme.m() != 1) throw config_error("summation check supports m = 1 only");
  const double R = patch.radius;

  // Primal tail estimate: |F| sampled just outside the patch, times the point
  // density of the model set.
  const double density = patch.window.length() / patch.scheme.lattice().covolume();
  double tail = 0.0;
  for (int k = 0; k <= 40; ++k) {
    tail += (std::abs(F.time(R + 0.5 * k)) + std::abs(F.time(-R - 0.5 * k))) * 0.5 * density;
  }
  // Dual tail: dropped weights are below the floor over the enumeration box.
  const auto& dual = weights.dual;
  double fmax = 0.0;
  for (double t : t_grid) fmax = std::max(fmax, std::abs(F.ft(t)));
  const double box_len = dual.box.empty() ? 0.0 : dual.box[0].second - dual.box[0].first;
  tail += dual.floor * box_len * fmax;
  if (tail > opts.tolerance / 10.0) {
    throw truncation_error("truncation tails exceed a tenth of the tolerance");
  }

  ResidualReport report;
  report.grid = t_grid;
  report.truncation.patch_radius = R;
  report.truncation.dual_floor = dual.floor;
  report.truncation.dual_p2s_cutoff = dual.p2s_cutoff;
  report.truncation.dual_box = dual.box;
  report.truncation.tail_estimate = tail;

  for (double t : t_grid) {
    cplx lhs = 0.0;
    for (size_t i = 0; i < patch.points.size(); ++i) {
      const double lambda = patch.points[i].lambda[0];
      lhs += weights.primal[i] * F.time(lambda) * unit_phase(-2.0 * kPi * lambda * t);
    }
    cplx rhs = 0.0;
    // The weight at -p2* equals the stored one: the transform of the window
    // is even.
    const double fr = F.ft_support_radius();
    const double fc = F.ft_support_center();
    auto [b, e] = dual.p1s_range(t - fc - fr, t - fc + fr);
    for (size_t i = b; i < e; ++i) {
      rhs += dual.entries[i].w * F.ft(t - dual.entries[i].p1s[0]);
    }
    report.residuals.push_back(std::abs(lhs - rhs));
  }
  report.finalize(opts.tolerance);
  return report;
}

BracketCoefficient bracket_coefficient(const FourierFunction& f, const FourierFunction& g,
                                       const BracketFunction& bracket,
                                       const ModelSetPatch& patch,
                                       const std::vector<double>& primal, double lambda,
                                       const std::vector<double>& R_schedule) {
  const auto& pts = patch.points;
  size_t hit = pts.size();
  for (size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i].lambda[0] - lambda) <= 1e-9) {
      hit = i;
      break;
    }
  }
  if (hit == pts.size()) throw membership_error("lambda is not a point of the patch");

  BracketCoefficient out{primal[hit] * inner_product(f, g.translated(lambda)),
                         birkhoff_coefficient([&bracket](double t) { return bracket(t); },
                                              lambda, R_schedule)};
  return out;
}

ResidualReport mean_bracket_check(const FourierFunction& f, const FourierFunction& g,
                                  const BracketFunction& bracket, const BumpFunction& bump,
                                  const std::vector<double>& R_schedule, double tolerance) {
  const auto mean = birkhoff_coefficient([&bracket](double t) { return bracket(t); }, 0.0,
                                         R_schedule);
  const cplx expected = bump.time(0.0) * inner_product(f, g);

  ResidualReport report;
  report.residuals.push_back(std::abs(mean.value - expected));
  report.truncation.dual_floor = bracket.table().floor;
  report.truncation.dual_p2s_cutoff = bracket.table().p2s_cutoff;
  report.finalize(tolerance);
  return report;
}

ResidualReport plancherel_sum_check(const FourierFunction& f, const FourierFunction& g,
                                    const FourierFunction& h,
                                    std::shared_ptr<const SlimDualTable> table,
                                    const ModelSetPatch& patch, const std::vector<double>& primal,
                                    const std::vector<double>& R_schedule, double tolerance) {
  CorrelationTable cg(f, g);
  CorrelationTable ch(f, h);
  cplx direct = 0.0;
  for (size_t i = 0; i < patch.points.size(); ++i) {
    const double lambda = patch.points[i].lambda[0];
    // <f, T_l g> <T_l h, f> = c_g(l) * conj(c_h(l)).
    direct += primal[i] * primal[i] * cg(lambda) * std::conj(ch(lambda));
  }

  BracketFunction b_fg(f, g, table);
  BracketFunction b_hf(h, f, table);
  const auto mean = birkhoff_coefficient(
      [&](double t) { return b_fg(t) * std::conj(b_hf(t)); }, 0.0, R_schedule);

  ResidualReport report;
  report.residuals.push_back(std::abs(direct - mean.value));
  report.truncation.patch_radius = patch.radius;
  report.truncation.dual_floor = table->floor;
  report.truncation.dual_p2s_cutoff = table->p2s_cutoff;
  report.finalize(tolerance);
  return report;
}

BesselBound bessel_bound(const FourierFunction& g, const DualWeightTable& abs_table,
                         const BumpSpec& spec, const CutProjectScheme& scheme,
                         const std::vector<double>& t_grid, const ModelSetPatch& patch,
                         const std::vector<double>& primal,
                         const std::vector<FourierFunction>& trial_functions) {
  if (!abs_table.abs_weights) throw config_error("bessel bound needs the |psi| weight table");
  const double vol = scheme.lattice().covolume();
  const double gr = g.ft_support_radius();
  const double gc = g.ft_support_center();

  BesselBound out;
  for (double t : t_grid) {
    auto [b, e] = abs_table.p1s_range(t - gc - gr, t - gc + gr);
    double sum = 0.0;
    for (size_t i = b; i < e; ++i) {
      const double a = std::abs(g.ft(t - abs_table.entries[i].p1s[0]));
      sum += abs_table.entries[i].w * a * a;
    }
    out.B = std::max(out.B, sum / vol);
  }
  out.bound = out.B * bump_ft_l1(spec) / vol;

  out.trials_ok = true;
  for (const auto& f : trial_functions) {
    CorrelationTable c(f, g);
    double sum = 0.0;
    for (size_t i = 0; i < patch.points.size(); ++i) {
      const double a = std::abs(c(patch.points[i].lambda[0]));
      sum += primal[i] * primal[i] * a * a;
    }
    const double ratio = sum / (out.bound * norm_sq(f));
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (ratio > 1.0) out.trials_ok = false;
  }
  return out;
}

}  // namespace msf
