#pragma once

// Angles, sphere coordinates and spherical trigonometry on the unit sphere.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "carto/error.hpp"

namespace carto {

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2;
inline constexpr double two_pi = 2 * std::numbers::pi;

/// Plane angle, stored in radians.  Degrees exist only at I/O boundaries.
class Angle {
 public:
  constexpr Angle() = default;
  constexpr explicit Angle(double radians) : rad_(radians) {}

  static constexpr Angle radians(double r) { return Angle(r); }
  // deg / 180 * pi keeps 90 -> pi/2 and 45 -> pi/4 exact.
  static constexpr Angle degrees(double d) { return Angle(d / 180.0 * pi); }

  constexpr double rad() const { return rad_; }
  constexpr double deg() const { return rad_ / pi * 180.0; }

  constexpr Angle operator-() const { return Angle(-rad_); }
  constexpr Angle operator+(Angle o) const { return Angle(rad_ + o.rad_); }
  constexpr Angle operator-(Angle o) const { return Angle(rad_ - o.rad_); }
  constexpr Angle operator*(double s) const { return Angle(rad_ * s); }
  constexpr Angle operator/(double s) const { return Angle(rad_ / s); }
  constexpr auto operator<=>(const Angle&) const = default;

 private:
  double rad_ = 0.0;
};

constexpr Angle operator*(double s, Angle a) { return a * s; }

namespace literals {
constexpr Angle operator""_deg(long double d) { return Angle::degrees(static_cast<double>(d)); }
constexpr Angle operator""_deg(unsigned long long d) { return Angle::degrees(static_cast<double>(d)); }
}  // namespace literals

/// Maps any finite longitude into (-pi, pi].
inline double normalize_longitude(double lon) {
  double r = std::remainder(lon, two_pi);
  if (r <= -pi) r += two_pi;
  return r;
}

inline Angle normalize_longitude(Angle lon) { return Angle(normalize_longitude(lon.rad())); }

/// Locale-independent number text, 12 significant digits.
inline std::string format_degrees(double deg) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, deg, std::chars_format::general, 12);
  std::string s(buf, res.ptr);
  return s == "-0" ? "0" : s;
}

/// Latitude in [-pi/2, pi/2] (north positive), longitude in (-pi, pi]
/// (east positive).  At either pole the longitude is canonicalized to 0.
class GeoCoord {
 public:
  constexpr GeoCoord() = default;

  GeoCoord(Angle lat, Angle lon) {
    double la = lat.rad();
    double lo = lon.rad();
    if (!std::isfinite(la) || !std::isfinite(lo))
      throw Error(ErrorKind::invalid_input, "coordinate is not finite");
    if (std::abs(la) > half_pi + 1e-12)
      throw Error(ErrorKind::invalid_input,
                  "latitude " + format_degrees(lat.deg()) + " outside [-90, 90]");
    la = std::clamp(la, -half_pi, half_pi);
    lo = normalize_longitude(lo);
    if (std::abs(la) == half_pi) lo = 0.0;
    lat_ = Angle(la);
    lon_ = Angle(lo);
  }

  static GeoCoord degrees(double lat, double lon) {
    return GeoCoord(Angle::degrees(lat), Angle::degrees(lon));
  }

  Angle lat() const { return lat_; }
  Angle lon() const { return lon_; }

  bool operator==(const GeoCoord&) const = default;

 private:
  Angle lat_{};
  Angle lon_{};
};

inline std::string describe(const GeoCoord& c) {
  return "(" + format_degrees(c.lat().deg()) + ", " + format_degrees(c.lon().deg()) + ")";
}

struct UnitVector3 {
  double x = 1.0, y = 0.0, z = 0.0;

  double dot(const UnitVector3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline std::array<double, 3> cross(const UnitVector3& a, const UnitVector3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline UnitVector3 to_unit_vector(const GeoCoord& c) {
  const double cl = std::cos(c.lat().rad());
  return {cl * std::cos(c.lon().rad()), cl * std::sin(c.lon().rad()), std::sin(c.lat().rad())};
}

/// Inverse of to_unit_vector; the input norm must be 1 within 1e-9.
inline GeoCoord from_unit_vector(const UnitVector3& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9)
    throw Error(ErrorKind::invalid_input, "vector is not of unit length");
  const double lat = std::atan2(v.z, std::hypot(v.x, v.y));
  const double lon = (v.x == 0.0 && v.y == 0.0) ? 0.0 : std::atan2(v.y, v.x);
  return GeoCoord(Angle(lat), Angle(lon));
}

/// Central angle between two points: atan2(|a x b|, a . b), accurate for
/// coincident and antipodal pairs alike.
inline Angle great_circle_distance(const GeoCoord& a, const GeoCoord& b) {
  const UnitVector3 u = to_unit_vector(a);
  const UnitVector3 v = to_unit_vector(b);
  const auto c = cross(u, v);
  return Angle(std::atan2(std::hypot(c[0], c[1], c[2]), u.dot(v)));
}

/// Angle at A of the spherical triangle with sides ab, ac (adjacent to A) and
/// bc (opposite), from the spherical law of cosines.
inline Angle spherical_angle_from_sides(Angle ab, Angle ac, Angle bc) {
  for (Angle s : {ab, ac, bc})
    if (!(s.rad() > 0.0 && s.rad() < pi))
      throw Error(ErrorKind::domain, "triangle side " + format_degrees(s.deg()) + " outside (0, 180)");
  const double num = std::cos(bc.rad()) - std::cos(ab.rad()) * std::cos(ac.rad());
  const double den = std::sin(ab.rad()) * std::sin(ac.rad());
  double cos_a = num / den;
  constexpr double clamp_tol = 1e-9;
  if (cos_a > 1.0 + clamp_tol || cos_a < -1.0 - clamp_tol)
    throw Error(ErrorKind::inconsistent_triangle, "sides do not form a spherical triangle");
  cos_a = std::clamp(cos_a, -1.0, 1.0);
  return Angle(std::acos(cos_a));
}

/// n points from a to b along the minor arc, equally spaced in arc length.
inline std::vector<GeoCoord> sample_great_circle(const GeoCoord& a, const GeoCoord& b, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::parameter, "great-circle sampling needs at least 2 points");
  const UnitVector3 u = to_unit_vector(a);
  const UnitVector3 v = to_unit_vector(b);
  const auto c = cross(u, v);
  const double s = std::hypot(c[0], c[1], c[2]);
  const double omega = std::atan2(s, u.dot(v));
  if (omega == 0.0) throw Error(ErrorKind::parameter, "great-circle endpoints coincide");
  if (s < 1e-12 && u.dot(v) < 0)
    throw Error(ErrorKind::ambiguous_geodesic, "endpoints " + describe(a) + " and " + describe(b) + " are antipodal");

  std::vector<GeoCoord> out;
  out.reserve(n);
  out.push_back(a);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    const double wa = std::sin((1.0 - t) * omega) / std::sin(omega);
    const double wb = std::sin(t * omega) / std::sin(omega);
    UnitVector3 p{wa * u.x + wb * v.x, wa * u.y + wb * v.y, wa * u.z + wb * v.z};
    const double len = p.norm();
    p = {p.x / len, p.y / len, p.z / len};
    out.push_back(from_unit_vector(p));
  }
  out.push_back(b);
  return out;
}

/// Rectangle in latitude/longitude, used for grids, graticules and scans.
/// Longitudes are given as an increasing pair and are not wrapped, so a
/// region may be written as [170, 190] to straddle the antimeridian.
struct GeoRegion {
  Angle lat_lo, lat_hi, lon_lo, lon_hi;

  static GeoRegion degrees(double lat_lo, double lat_hi, double lon_lo, double lon_hi) {
    GeoRegion r{Angle::degrees(lat_lo), Angle::degrees(lat_hi), Angle::degrees(lon_lo), Angle::degrees(lon_hi)};
    r.validate();
    return r;
  }

  static GeoRegion globe() { return degrees(-90, 90, -180, 180); }

  void validate() const {
    if (!(lat_lo < lat_hi) || lat_lo.rad() < -half_pi || lat_hi.rad() > half_pi)
      throw Error(ErrorKind::parameter, "region latitudes must satisfy -90 <= lo < hi <= 90");
    if (!(lon_lo < lon_hi) || (lon_hi - lon_lo).rad() > two_pi + 1e-12)
      throw Error(ErrorKind::parameter, "region longitudes must satisfy lo < hi with span <= 360");
  }
};

/// 3x3 rotation (or reflection) acting on sphere vectors.
struct Rotation3 {
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  std::array<double, 3> apply(const std::array<double, 3>& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
  }

  // Orthogonal, so the inverse is the transpose.
  std::array<double, 3> apply_inverse(const std::array<double, 3>& v) const {
    return {m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
            m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
            m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2]};
  }

  Rotation3 operator*(const Rotation3& o) const {
    Rotation3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
    return r;
  }

  static Rotation3 about_z(double t) {
    const double c = std::cos(t), s = std::sin(t);
    return {{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}};
  }
  static Rotation3 about_y(double t) {
    const double c = std::cos(t), s = std::sin(t);
    return {{{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}}};
  }
  static Rotation3 mirror_z() { return {{{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}}}; }
};

}  // namespace carto
