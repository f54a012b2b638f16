#pragma once

// Local distortion of a projection: scale along meridians (h) and parallels
// (k), the angle between their images, the Tissot semi-axes, and grid scans
// of those quantities including the four meridian/parallel desiderata.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "carto/core_geo.hpp"
#include "carto/plane.hpp"
#include "carto/projections.hpp"

namespace carto {

/// Central differences of the forward map in latitude and longitude.
///
/// A neighborhood that leaves the domain (past a pole, outside the valid
/// region, or across the cut meridian) is retried once with a step ten
/// times smaller before giving up.
inline Jacobian local_jacobian(const ProjectionSpec& spec, const GeoCoord& c, Angle step = Angle(1e-6)) {
  const auto cut = cut_meridian(spec);
  double h = step.rad();
  if (!(h > 0.0)) throw Error(ErrorKind::parameter, "finite-difference step must be positive");

  for (int attempt = 0; attempt < 2; ++attempt, h /= 10.0) {
    const double lat = c.lat().rad(), lon = c.lon().rad();
    if (std::abs(lat) + h > half_pi) continue;
    if (cut && std::abs(normalize_longitude(lon - cut->rad())) < h) continue;
    const GeoCoord n{Angle(lat + h), Angle(lon)}, s{Angle(lat - h), Angle(lon)};
    const GeoCoord e{Angle(lat), Angle(lon + h)}, w{Angle(lat), Angle(lon - h)};
    if (!in_domain(spec, n) || !in_domain(spec, s) || !in_domain(spec, e) || !in_domain(spec, w)) continue;
    const PlanePoint pn = forward(spec, n), ps = forward(spec, s);
    const PlanePoint pe = forward(spec, e), pw = forward(spec, w);
    return {{(pn.x - ps.x) / (2 * h), (pn.y - ps.y) / (2 * h)}, {(pe.x - pw.x) / (2 * h), (pe.y - pw.y) / (2 * h)}};
  }
  throw Error(ErrorKind::out_of_domain,
              "finite-difference neighborhood of " + describe(c) + " leaves the " +
                  std::string(family_name(family_of(spec))) + " domain");
}

enum class Derivatives { analytic, finite_difference };

struct DistortionSample {
  double h = 1.0;            // meridian scale
  double k = 1.0;            // parallel scale
  double theta_prime = half_pi;  // angle between meridian and parallel images, radians
  double a = 1.0;            // Tissot semi-major axis
  double b = 1.0;            // Tissot semi-minor axis
  double omega = 0.0;        // maximum angular deformation, radians
  double s = 1.0;            // area scale h k sin(theta_prime) = a b
};

/// Tissot decomposition of the Jacobian with the sphere metric divided out
/// (latitude column as is, longitude column over cos(lat)).
inline DistortionSample tissot(const Jacobian& j, Angle lat) {
  const double cl = std::cos(lat.rad());
  if (!(cl > 1e-15))
    throw Error(ErrorKind::domain, "parallel scale is undefined at the pole");
  const double p = j.d_lat.x, q = j.d_lat.y;
  const double r = j.d_lon.x / cl, t = j.d_lon.y / cl;

  DistortionSample d;
  d.h = std::hypot(p, q);
  d.k = std::hypot(r, t);
  const double det = p * t - q * r;
  d.theta_prime = std::atan2(std::abs(det), p * r + q * t);
  // Singular values from |c1 +- J c2|; avoids the cancellation in sqrt(E + G - 2|det|).
  const double u = std::hypot(p + t, q - r);
  const double v = std::hypot(p - t, q + r);
  const double sum = det >= 0 ? u : v;
  const double diff = det >= 0 ? v : u;
  d.a = (sum + diff) / 2.0;
  d.b = (sum - diff) / 2.0;
  d.s = std::abs(det);
  d.omega = 2.0 * std::asin(std::min(1.0, diff / sum));
  return d;
}

inline DistortionSample tissot(const ProjectionSpec& spec, const GeoCoord& c,
                               Derivatives how = Derivatives::analytic) {
  if (std::abs(c.lat().rad()) >= half_pi)
    throw Error(ErrorKind::domain, "parallel scale is undefined at the pole");
  const Jacobian j = how == Derivatives::analytic ? analytic_jacobian(spec, c) : local_jacobian(spec, c);
  return tissot(j, c.lat());
}

struct Grid {
  std::size_t n_lat = 21;
  std::size_t n_lon = 21;
};

namespace detail {

inline void require_grid(const GeoRegion& region, const Grid& grid) {
  region.validate();
  if (grid.n_lat < 3 || grid.n_lon < 3)
    throw Error(ErrorKind::parameter, "distortion grids need at least 3 x 3 points");
}

inline Angle grid_lat(const GeoRegion& r, const Grid& g, std::size_t i) {
  return r.lat_lo + (r.lat_hi - r.lat_lo) * (static_cast<double>(i) / static_cast<double>(g.n_lat - 1));
}

inline Angle grid_lon(const GeoRegion& r, const Grid& g, std::size_t j) {
  return r.lon_lo + (r.lon_hi - r.lon_lo) * (static_cast<double>(j) / static_cast<double>(g.n_lon - 1));
}

}  // namespace detail

/// Maximum violation of each desideratum over a grid:
///   P1 meridian images are straight (sagitta / chord of each sampled meridian),
///   P2 meridian degrees are true (|h - 1|),
///   P3 meridians cross parallels at right angles (|theta' - pi/2|),
///   P4 the parallel-to-meridian degree ratio is cos(lat) as on the sphere (|k/h - 1|).
struct PropertyReport {
  double p1_meridian_straightness = 0.0;
  double p2_meridian_isometry = 0.0;
  double p3_orthogonality = 0.0;
  double p4_degree_ratio = 0.0;
  /// Largest angle between a meridian chord and the map's y axis.
  double meridian_tilt = 0.0;
  GeoRegion region;
  Grid grid;

  /// max(P2, P3, P4): zero only for a map that is true along meridians and
  /// parallels and preserves their right angle.
  double perfection_violation() const { return std::max({p2_meridian_isometry, p3_orthogonality, p4_degree_ratio}); }

  std::string grid_description() const {
    return std::to_string(grid.n_lat) + "x" + std::to_string(grid.n_lon) + " grid over lat [" +
           format_degrees(region.lat_lo.deg()) + ", " + format_degrees(region.lat_hi.deg()) + "] lon [" +
           format_degrees(region.lon_lo.deg()) + ", " + format_degrees(region.lon_hi.deg()) + "]";
  }
};

inline PropertyReport euler_property_report(const ProjectionSpec& spec, const GeoRegion& region, const Grid& grid) {
  detail::require_grid(region, grid);
  PropertyReport rep{.region = region, .grid = grid};

  std::vector<PlanePoint> meridian(grid.n_lat);
  for (std::size_t j = 0; j < grid.n_lon; ++j) {
    const Angle lon = detail::grid_lon(region, grid, j);
    for (std::size_t i = 0; i < grid.n_lat; ++i) {
      const GeoCoord c(detail::grid_lat(region, grid, i), lon);
      meridian[i] = forward(spec, c);
      if (std::abs(c.lat().rad()) < half_pi) {
        const DistortionSample d = tissot(spec, c);
        rep.p2_meridian_isometry = std::max(rep.p2_meridian_isometry, std::abs(d.h - 1.0));
        rep.p3_orthogonality = std::max(rep.p3_orthogonality, std::abs(d.theta_prime - half_pi));
        rep.p4_degree_ratio = std::max(rep.p4_degree_ratio, std::abs(d.k / d.h - 1.0));
      }
    }
    const Straightness st = straightness(std::span<const PlanePoint>(meridian));
    rep.p1_meridian_straightness = std::max(rep.p1_meridian_straightness, st.ratio);
    const PlanePoint a = meridian.front(), b = meridian.back();
    rep.meridian_tilt = std::max(rep.meridian_tilt, std::atan2(std::abs(b.x - a.x), std::abs(b.y - a.y)));
  }
  return rep;
}

struct GridSample {
  GeoCoord coord;
  DistortionSample d;
};

/// Row-major scan (latitude outer, longitude inner).
inline std::vector<GridSample> scan_distortion(const ProjectionSpec& spec, const GeoRegion& region, const Grid& grid,
                                               Derivatives how = Derivatives::analytic) {
  detail::require_grid(region, grid);
  std::vector<GridSample> out;
  out.reserve(grid.n_lat * grid.n_lon);
  for (std::size_t i = 0; i < grid.n_lat; ++i)
    for (std::size_t j = 0; j < grid.n_lon; ++j) {
      const GeoCoord c(detail::grid_lat(region, grid, i), detail::grid_lon(region, grid, j));
      out.push_back({c, tissot(spec, c, how)});
    }
  return out;
}

struct FieldExtremes {
  double min = 0.0, max = 0.0;
  GeoCoord argmin, argmax;
};

struct DistortionExtremes {
  FieldExtremes h, k, theta_prime, a, b, omega, s;
  std::size_t samples = 0;
};

/// Per-field extremes; ties keep the lowest grid index.
inline DistortionExtremes max_distortion_scan(const std::vector<GridSample>& samples) {
  if (samples.empty()) throw Error(ErrorKind::parameter, "empty distortion scan");
  DistortionExtremes ex;
  ex.samples = samples.size();
  auto update = [](FieldExtremes& f, double v, const GeoCoord& c, bool first) {
    if (first || v < f.min) f.min = v, f.argmin = c;
    if (first || v > f.max) f.max = v, f.argmax = c;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [c, d] = samples[i];
    const bool first = i == 0;
    update(ex.h, d.h, c, first);
    update(ex.k, d.k, c, first);
    update(ex.theta_prime, d.theta_prime, c, first);
    update(ex.a, d.a, c, first);
    update(ex.b, d.b, c, first);
    update(ex.omega, d.omega, c, first);
    update(ex.s, d.s, c, first);
  }
  return ex;
}

inline DistortionExtremes max_distortion_scan(const ProjectionSpec& spec, const GeoRegion& region, const Grid& grid) {
  return max_distortion_scan(scan_distortion(spec, region, grid));
}

/// One CSV row per grid point.  Angles (lat, lon, theta_prime, omega) in degrees.
inline void write_distortion_csv(std::ostream& os, const std::vector<GridSample>& samples) {
  os << "lat,lon,h,k,theta_prime,a,b,omega,s\n";
  for (const auto& [c, d] : samples) {
    os << format_degrees(c.lat().deg()) << ',' << format_degrees(c.lon().deg()) << ',' << format_degrees(d.h) << ','
       << format_degrees(d.k) << ',' << format_degrees(Angle(d.theta_prime).deg()) << ',' << format_degrees(d.a)
       << ',' << format_degrees(d.b) << ',' << format_degrees(Angle(d.omega).deg()) << ',' << format_degrees(d.s)
       << '\n';
  }
}

}  // namespace carto
