#pragma once

// Map-plane primitives shared by the projection, distortion and geodesic code.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carto/error.hpp"

namespace carto {

/// Point on the map, in unit-sphere map units.
struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const PlanePoint&) const = default;
};

inline double distance(PlanePoint a, PlanePoint b) { return std::hypot(b.x - a.x, b.y - a.y); }

/// Projected curve, split into unbroken segments wherever the source curve
/// left the projection domain or crossed the cut meridian.
struct PlanePolyline {
  std::vector<std::vector<PlanePoint>> segments;
  std::optional<std::string> empty_reason;

  bool empty() const { return segments.empty(); }
  bool broken() const { return segments.size() > 1; }

  std::size_t point_count() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.size();
    return n;
  }
};

struct Straightness {
  double chord = 0.0;
  double sagitta = 0.0;
  double ratio = 0.0;        // sagitta / chord
  std::size_t apex = 0;      // index of the sample farthest from the chord
};

/// Chord between the endpoints and the largest perpendicular deviation from it.
inline Straightness straightness(std::span<const PlanePoint> pts) {
  if (pts.size() < 3) throw Error(ErrorKind::parameter, "straightness needs at least 3 points");
  const PlanePoint a = pts.front();
  const PlanePoint b = pts.back();
  Straightness s;
  s.chord = distance(a, b);
  if (s.chord == 0.0) throw Error(ErrorKind::parameter, "polyline endpoints coincide");
  const double ux = (b.x - a.x) / s.chord;
  const double uy = (b.y - a.y) / s.chord;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double d = std::abs(ux * (pts[i].y - a.y) - uy * (pts[i].x - a.x));
    if (d > s.sagitta) {
      s.sagitta = d;
      s.apex = i;
    }
  }
  s.ratio = s.sagitta / s.chord;
  return s;
}

inline Straightness straightness(const PlanePolyline& poly) {
  if (poly.segments.size() != 1)
    throw Error(ErrorKind::parameter,
                "straightness needs a single unbroken segment; analyze each segment separately");
  return straightness(std::span<const PlanePoint>(poly.segments.front()));
}

}  // namespace carto
