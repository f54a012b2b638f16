#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "carto/core_geo.hpp"
#include "carto/plane.hpp"
#include "carto/projections.hpp"

namespace carto {

/// Forward image of a sampled curve.
///
/// Samples outside the projection's domain (or its rendering cutoff) open a
/// break.  Maps with a central meridian are also split where the curve
/// crosses the opposite meridian; the two sides of the cut each get an
/// interpolated endpoint on it.
inline PlanePolyline project_polyline(const ProjectionSpec& spec, std::span<const GeoCoord> curve) {
  PlanePolyline out;
  const auto cut = cut_meridian(spec);
  std::vector<PlanePoint> seg;

  auto close = [&] {
    if (seg.size() >= 2) out.segments.push_back(std::move(seg));
    seg.clear();
  };

  bool any_inside = false;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const GeoCoord& c = curve[i];
    if (!within_cutoff(spec, c)) {
      close();
      continue;
    }
    any_inside = true;
    if (cut && !seg.empty() && i > 0) {
      const GeoCoord& prev = curve[i - 1];
      // Offsets from the central meridian, in (-pi, pi]; a jump of more than
      // pi between neighbours means the curve went across the cut.
      const double central = cut->rad() + pi;
      const double d0 = normalize_longitude(prev.lon().rad() - central);
      const double d1 = normalize_longitude(c.lon().rad() - central);
      if (std::abs(d1 - d0) > pi) {
        const double edge = d0 > d1 ? pi : -pi;
        const double d1u = d1 + 2.0 * edge;
        const double t = (edge - d0) / (d1u - d0);
        const double lat = prev.lat().rad() + t * (c.lat().rad() - prev.lat().rad());
        constexpr double nudge = 1e-10;
        const double inward = edge > 0 ? -nudge : nudge;
        const GeoCoord end_side(Angle(lat), Angle(central + edge + inward));
        const GeoCoord start_side(Angle(lat), Angle(central - edge - inward));
        if (within_cutoff(spec, end_side)) seg.push_back(forward(spec, end_side));
        close();
        if (within_cutoff(spec, start_side)) seg.push_back(forward(spec, start_side));
      }
    }
    seg.push_back(forward(spec, c));
  }
  close();

  if (out.segments.empty())
    out.empty_reason = any_inside ? "no two consecutive samples lie inside the projection domain"
                                  : "curve lies entirely outside the projection domain";
  return out;
}

inline PlanePolyline project_polyline(const ProjectionSpec& spec, const std::vector<GeoCoord>& curve) {
  return project_polyline(spec, std::span<const GeoCoord>(curve));
}

}  // namespace carto
