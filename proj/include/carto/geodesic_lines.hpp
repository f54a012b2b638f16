#pragma once

// Images of great circles: projection, straightness, and circular-arc fits.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "carto/core_geo.hpp"
#include "carto/plane.hpp"
#include "carto/project_polyline.hpp"
#include "carto/projections.hpp"

namespace carto {

/// Image of the minor great-circle arc from a to b sampled at n points.
inline PlanePolyline project_geodesic(const ProjectionSpec& spec, const GeoCoord& a, const GeoCoord& b,
                                      std::size_t n) {
  if (n < 3) throw Error(ErrorKind::parameter, "geodesic projection needs at least 3 samples");
  if (!in_domain(spec, a) && !in_domain(spec, b))
    throw Error(ErrorKind::empty_result, "both geodesic endpoints " + describe(a) + " and " + describe(b) +
                                             " lie outside the " + std::string(family_name(family_of(spec))) +
                                             " domain");
  const auto samples = sample_great_circle(a, b, n);
  return project_polyline(spec, samples);
}

struct CircleFit {
  PlanePoint center;
  double radius = 0.0;
  double max_residual = 0.0;
};

struct ArcFit {
  PlanePoint center;
  double radius = std::numeric_limits<double>::infinity();
  double max_residual = 0.0;  // max | |p - center| - radius | over the samples
  double chord = 0.0;
  double sagitta = 0.0;
  bool infinite_radius = false;  // samples are collinear
  /// Geometric least-squares circle started from the three-point fit.
  std::optional<CircleFit> refined;
};

namespace detail {

inline std::optional<PlanePoint> circumcenter(PlanePoint a, PlanePoint b, PlanePoint c) {
  // Relative to a to limit cancellation for large circles.
  const double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (d == 0.0) return std::nullopt;
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return PlanePoint{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

inline double max_radial_residual(std::span<const PlanePoint> pts, PlanePoint c, double r) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, std::abs(distance(p, c) - r));
  return m;
}

// Gauss-Newton on sum (|p - c| - r)^2, Cramer's rule for the 3x3 normal equations.
inline std::optional<CircleFit> refine_circle(std::span<const PlanePoint> pts, PlanePoint c0, double r0) {
  double cx = c0.x, cy = c0.y, r = r0;
  for (int it = 0; it < 50; ++it) {
    double jtj[3][3] = {}, jtr[3] = {};
    for (const auto& p : pts) {
      const double dx = p.x - cx, dy = p.y - cy;
      const double d = std::hypot(dx, dy);
      if (d == 0.0) return std::nullopt;
      const double res = d - r;
      const double jrow[3] = {-dx / d, -dy / d, -1.0};
      for (int i = 0; i < 3; ++i) {
        jtr[i] += jrow[i] * res;
        for (int k = 0; k < 3; ++k) jtj[i][k] += jrow[i] * jrow[k];
      }
    }
    auto det3 = [](const double m[3][3]) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(jtj);
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    double step[3];
    for (int col = 0; col < 3; ++col) {
      double m[3][3];
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m[i][k] = k == col ? -jtr[i] : jtj[i][k];
      step[col] = det3(m) / det;
    }
    cx += step[0];
    cy += step[1];
    r += step[2];
    if (std::abs(step[0]) + std::abs(step[1]) + std::abs(step[2]) <= 1e-14 * (1.0 + std::abs(r))) break;
  }
  if (!std::isfinite(r) || r <= 0.0) return std::nullopt;
  const PlanePoint c{cx, cy};
  return CircleFit{c, r, max_radial_residual(pts, c, r)};
}

}  // namespace detail

/// Circle through both endpoints and the sample farthest from the chord,
/// with a least-squares refinement reported alongside.  Collinear samples
/// set infinite_radius instead of failing.
inline ArcFit fit_circular_arc(std::span<const PlanePoint> pts) {
  if (pts.size() < 3) throw Error(ErrorKind::parameter, "arc fit needs at least 3 points");
  const Straightness st = straightness(pts);
  ArcFit fit;
  fit.chord = st.chord;
  fit.sagitta = st.sagitta;
  const auto c = st.sagitta > 0.0 ? detail::circumcenter(pts.front(), pts[st.apex], pts.back()) : std::nullopt;
  if (!c) {
    fit.infinite_radius = true;
    fit.max_residual = st.sagitta;  // distance from the chord line
    return fit;
  }
  fit.center = *c;
  fit.radius = distance(*c, pts.front());
  fit.max_residual = detail::max_radial_residual(pts, *c, fit.radius);
  fit.refined = detail::refine_circle(pts, *c, fit.radius);
  return fit;
}

inline ArcFit fit_circular_arc(const PlanePolyline& poly) {
  if (poly.segments.size() != 1)
    throw Error(ErrorKind::parameter, "arc fit needs a single unbroken segment; fit each segment separately");
  return fit_circular_arc(std::span<const PlanePoint>(poly.segments.front()));
}

}  // namespace carto
