#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "carto/core_geo.hpp"

namespace carto {

/// One meridian (fixed longitude) or parallel (fixed latitude), sampled.
struct GeoCurve {
  Angle value;  // the fixed longitude or latitude
  std::vector<GeoCoord> points;
};

struct Graticule {
  GeoRegion region;
  Angle lat_step, lon_step;
  std::vector<GeoCurve> parallels;
  std::vector<GeoCurve> meridians;
};

/// Meridians stop this far short of the poles, where both families are singular.
inline constexpr double pole_gap_deg = 1e-6;

namespace detail {

// Multiples of step inside [lo, hi] (degrees), falling back to the two
// boundary values when the step is wider than the interval.
inline std::vector<double> multiples_in(double lo, double hi, double step) {
  std::vector<double> out;
  if (step > hi - lo) return {lo, hi};
  const auto first = static_cast<long long>(std::ceil(lo / step - 1e-9));
  const auto last = static_cast<long long>(std::floor(hi / step + 1e-9));
  for (long long i = first; i <= last; ++i) out.push_back(static_cast<double>(i) * step);
  if (out.empty()) return {lo, hi};
  return out;
}

inline std::vector<double> sample_interval(double lo, double hi, double samples_per_degree) {
  const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((hi - lo) * samples_per_degree)) + 1);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace detail

/// Parallels at multiples of lat_step and meridians at multiples of lon_step
/// that fall inside the region, each sampled samples_per_degree times per
/// degree.  The poles themselves are never drawn as parallels.
inline Graticule build_graticule(const GeoRegion& region, Angle lat_step, Angle lon_step,
                                 double samples_per_degree = 1.0) {
  region.validate();
  if (!(lat_step.rad() > 0.0) || !(lon_step.rad() > 0.0))
    throw Error(ErrorKind::parameter, "graticule spacings must be positive");
  if (!(samples_per_degree > 0.0)) throw Error(ErrorKind::parameter, "graticule sampling density must be positive");

  Graticule g{region, lat_step, lon_step, {}, {}};
  const double lat_lo = region.lat_lo.deg(), lat_hi = region.lat_hi.deg();
  const double lon_lo = region.lon_lo.deg(), lon_hi = region.lon_hi.deg();
  const bool full_circle = lon_hi - lon_lo >= 360.0 - 1e-9;

  const auto lons = detail::sample_interval(lon_lo, lon_hi, samples_per_degree);
  for (double lat : detail::multiples_in(lat_lo, lat_hi, lat_step.deg())) {
    if (std::abs(lat) >= 90.0) continue;
    GeoCurve c{Angle::degrees(lat), {}};
    c.points.reserve(lons.size());
    for (double lon : lons) c.points.push_back(GeoCoord::degrees(lat, lon));
    g.parallels.push_back(std::move(c));
  }

  const auto lats = detail::sample_interval(std::max(lat_lo, -90.0 + pole_gap_deg),
                                            std::min(lat_hi, 90.0 - pole_gap_deg), samples_per_degree);
  for (double lon : detail::multiples_in(lon_lo, lon_hi, lon_step.deg())) {
    // The first and last meridian of a full circle coincide.
    if (full_circle && lon == lon_lo && std::abs(lon_hi - lon_lo - 360.0) < 1e-9 &&
        std::abs(std::remainder(lon_hi, lon_step.deg())) < 1e-9)
      continue;
    GeoCurve c{Angle::degrees(lon), {}};
    c.points.reserve(lats.size());
    for (double lat : lats) c.points.push_back(GeoCoord::degrees(lat, lon));
    g.meridians.push_back(std::move(c));
  }
  return g;
}

}  // namespace carto
