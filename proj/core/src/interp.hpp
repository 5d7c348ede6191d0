#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace msf::detail {

/// Catmull-Rom interpolation at fractional index `idx` into `v` (clamped).
template <typename T>
T catmull_rom(const std::vector<T>& v, double idx) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
  if (n == 0) return T{};
  if (n == 1) return v[0];
  if (idx <= 0.0) return v[0];
  if (idx >= static_cast<double>(n - 1)) return v[n - 1];
  const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(idx);
  const double u = idx - static_cast<double>(i);
  const T p1 = v[i];
  const T p2 = v[i + 1];
  const T p0 = i > 0 ? v[i - 1] : 2.0 * p1 - p2;
  const T p3 = i + 2 < n ? v[i + 2] : 2.0 * p2 - p1;
  return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * (u * u) +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * (u * u * u));
}

}  // namespace msf::detail
