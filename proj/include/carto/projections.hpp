#pragma once

// Forward, inverse and analytic Jacobian for every supported projection
// family.  All maps act on the unit sphere; the plane has x east and y north
// along the central meridian.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "carto/core_geo.hpp"
#include "carto/error.hpp"
#include "carto/plane.hpp"

namespace carto {

enum class Family {
  equirectangular,
  stereographic,
  gnomonic,
  orthographic,
  central_tangent,
  mercator,
  equidistant_conic,
  lambert_conformal_conic,
  lambert_azimuthal_equal_area,
  lambert_cylindrical_equal_area,
  werner,
};

inline constexpr std::array<Family, 11> all_families{
    Family::equirectangular,          Family::stereographic,
    Family::gnomonic,                 Family::orthographic,
    Family::central_tangent,          Family::mercator,
    Family::equidistant_conic,        Family::lambert_conformal_conic,
    Family::lambert_azimuthal_equal_area, Family::lambert_cylindrical_equal_area,
    Family::werner,
};

constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::equirectangular: return "equirectangular";
    case Family::stereographic: return "stereographic";
    case Family::gnomonic: return "gnomonic";
    case Family::orthographic: return "orthographic";
    case Family::central_tangent: return "central";
    case Family::mercator: return "mercator";
    case Family::equidistant_conic: return "equidistant-conic";
    case Family::lambert_conformal_conic: return "lambert-conformal-conic";
    case Family::lambert_azimuthal_equal_area: return "lambert-azimuthal-equal-area";
    case Family::lambert_cylindrical_equal_area: return "lambert-cylindrical-equal-area";
    case Family::werner: return "werner";
  }
  return "?";
}

/// Columns of d(x, y): derivative with respect to latitude, then longitude.
struct Jacobian {
  PlanePoint d_lat;
  PlanePoint d_lon;
};

namespace detail {

inline Error out_of_domain(ErrorKind kind, Family f, const GeoCoord& c, std::string_view why) {
  return Error(kind, std::string(family_name(f)) + ": coordinate " + describe(c) + " " + std::string(why));
}

inline Error no_preimage(Family f, PlanePoint p) {
  return Error(ErrorKind::no_preimage, std::string(family_name(f)) + ": plane point (" +
                                           format_degrees(p.x) + ", " + format_degrees(p.y) +
                                           ") is outside the image region");
}

inline void require_latitude_in(Angle lat, double lo, double hi, std::string_view what) {
  if (!(lat.rad() > lo && lat.rad() < hi))
    throw Error(ErrorKind::parameter, std::string(what) + " " + format_degrees(lat.deg()) + " outside its valid range");
}

inline std::array<double, 3> d_unit_d_lat(const GeoCoord& c) {
  const double sl = std::sin(c.lat().rad()), cl = std::cos(c.lon().rad()), sn = std::sin(c.lon().rad());
  return {-sl * cl, -sl * sn, std::cos(c.lat().rad())};
}

inline std::array<double, 3> d_unit_d_lon(const GeoCoord& c) {
  const double cp = std::cos(c.lat().rad());
  return {-cp * std::sin(c.lon().rad()), cp * std::cos(c.lon().rad()), 0.0};
}

// Gudermannian inverse, ln tan(pi/4 + lat/2), written in its stable form.
inline double isometric_latitude(double lat) { return std::asinh(std::tan(lat)); }
inline double inverse_isometric_latitude(double psi) { return std::atan(std::sinh(psi)); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Azimuthal families.
//
// A center c is rotated to the north pole, after which every azimuthal map is
// (x, y) = m(z) * (q1, q2) with q the rotated unit vector and z = q3 the cosine
// of the angular distance from the center.  Centers in the southern hemisphere
// are first reflected through the equator, so a map tangent at the south pole
// is seen from above and keeps azimuth = longitude.
// ---------------------------------------------------------------------------

class AzimuthalFrame {
 public:
  explicit AzimuthalFrame(const GeoCoord& center) : center_(center) {
    double lat = center.lat().rad();
    mirrored_ = lat < 0.0;
    if (mirrored_) lat = -lat;
    rot_ = Rotation3::about_y(-(half_pi - lat)) * Rotation3::about_z(-center.lon().rad());
    if (mirrored_) rot_ = rot_ * Rotation3::mirror_z();
  }

  std::array<double, 3> to_frame(const std::array<double, 3>& v) const { return rot_.apply(v); }
  std::array<double, 3> from_frame(const std::array<double, 3>& q) const { return rot_.apply_inverse(q); }

  std::array<double, 3> to_frame(const GeoCoord& c) const {
    const UnitVector3 u = to_unit_vector(c);
    return to_frame({u.x, u.y, u.z});
  }

  const GeoCoord& center() const { return center_; }

 private:
  GeoCoord center_;
  bool mirrored_ = false;
  Rotation3 rot_;
};

namespace law {

struct Stereographic {
  static constexpr Family family = Family::stereographic;
  static constexpr double default_center_lat = -90.0;  // tangent at the south pole
  static constexpr double default_cutoff = 160.0;

  static double scale(double z) { return 2.0 / (1.0 + z); }
  static double scale_dz(double z) { return -2.0 / ((1.0 + z) * (1.0 + z)); }
  static std::optional<ErrorKind> reject(double z) {
    if (1.0 + z < 1e-14) return ErrorKind::at_infinity;
    return std::nullopt;
  }
  static std::optional<std::array<double, 3>> unproject(double x, double y) {
    const double r2 = x * x + y * y;
    const double d = 4.0 + r2;
    return std::array<double, 3>{4.0 * x / d, 4.0 * y / d, (4.0 - r2) / d};
  }
};

struct Gnomonic {
  static constexpr Family family = Family::gnomonic;
  static constexpr double default_center_lat = -90.0;
  static constexpr double default_cutoff = 80.0;

  static double scale(double z) { return 1.0 / z; }
  static double scale_dz(double z) { return -1.0 / (z * z); }
  static std::optional<ErrorKind> reject(double z) {
    if (!(z > 0.0)) return ErrorKind::out_of_hemisphere;
    return std::nullopt;
  }
  static std::optional<std::array<double, 3>> unproject(double x, double y) {
    const double d = std::sqrt(1.0 + x * x + y * y);
    return std::array<double, 3>{x / d, y / d, 1.0 / d};
  }
};

// Same mathematics as the gnomonic map, tangent at the north pole by default.
struct CentralTangent : Gnomonic {
  static constexpr Family family = Family::central_tangent;
  static constexpr double default_center_lat = 90.0;
};

struct Orthographic {
  static constexpr Family family = Family::orthographic;
  static constexpr double default_center_lat = 90.0;
  static constexpr double default_cutoff = 90.0;

  static double scale(double) { return 1.0; }
  static double scale_dz(double) { return 0.0; }
  static std::optional<ErrorKind> reject(double z) {
    if (z < -1e-12) return ErrorKind::out_of_hemisphere;
    return std::nullopt;
  }
  static std::optional<std::array<double, 3>> unproject(double x, double y) {
    const double r2 = x * x + y * y;
    if (r2 > 1.0 + 1e-12) return std::nullopt;
    return std::array<double, 3>{x, y, std::sqrt(std::max(0.0, (1.0 - r2)))};
  }
};

struct LambertAzimuthalEqualArea {
  static constexpr Family family = Family::lambert_azimuthal_equal_area;
  static constexpr double default_center_lat = 90.0;
  static constexpr double default_cutoff = 180.0;

  static double scale(double z) { return std::sqrt(2.0 / (1.0 + z)); }
  static double scale_dz(double z) { return -0.5 * std::sqrt(2.0) * std::pow(1.0 + z, -1.5); }
  static std::optional<ErrorKind> reject(double z) {
    if (1.0 + z < 1e-14) return ErrorKind::out_of_domain;
    return std::nullopt;
  }
  static std::optional<std::array<double, 3>> unproject(double x, double y) {
    const double r2 = x * x + y * y;
    if (!(r2 < 4.0)) return std::nullopt;
    const double s = std::sqrt(4.0 - r2) / 2.0;
    return std::array<double, 3>{x * s, y * s, 1.0 - r2 / 2.0};
  }
};

}  // namespace law

template <class Law>
class Azimuthal {
 public:
  static constexpr Family family = Law::family;

  Azimuthal() : Azimuthal(GeoCoord::degrees(Law::default_center_lat, 0.0)) {}

  explicit Azimuthal(const GeoCoord& center, Angle cutoff = Angle::degrees(Law::default_cutoff))
      : frame_(center), cutoff_(cutoff) {
    if (!(cutoff.rad() > 0.0 && cutoff.rad() <= pi))
      throw Error(ErrorKind::parameter, "azimuthal cutoff must lie in (0, 180]");
  }

  const GeoCoord& center() const { return frame_.center(); }
  Angle cutoff() const { return cutoff_; }

  std::optional<Error> domain_error(const GeoCoord& c) const {
    const double z = frame_.to_frame(c)[2];
    if (auto kind = Law::reject(z)) {
      const char* why = *kind == ErrorKind::at_infinity ? "is the projection center and maps to infinity"
                        : *kind == ErrorKind::out_of_hemisphere ? "lies outside the mapped hemisphere"
                                                                : "is the antipode of the map center";
      return detail::out_of_domain(*kind, family, c, why);
    }
    return std::nullopt;
  }

  bool in_domain(const GeoCoord& c) const { return !domain_error(c); }

  /// Rendering clip: angular distance from the center at most the cutoff.
  bool within_cutoff(const GeoCoord& c) const {
    return in_domain(c) && great_circle_distance(frame_.center(), c) <= cutoff_;
  }

  PlanePoint forward(const GeoCoord& c) const {
    const auto q = frame_.to_frame(c);
    if (auto e = domain_error(c)) throw *e;
    const double m = Law::scale(q[2]);
    return {m * q[0], m * q[1]};
  }

  GeoCoord inverse(const PlanePoint& p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw detail::no_preimage(family, p);
    const auto q = Law::unproject(p.x, p.y);
    if (!q) throw detail::no_preimage(family, p);
    const auto v = frame_.from_frame(*q);
    const double n = std::hypot(v[0], v[1], v[2]);
    return from_unit_vector({v[0] / n, v[1] / n, v[2] / n});
  }

  Jacobian jacobian(const GeoCoord& c) const {
    if (auto e = domain_error(c)) throw *e;
    const auto q = frame_.to_frame(c);
    const auto dq_lat = frame_.to_frame(detail::d_unit_d_lat(c));
    const auto dq_lon = frame_.to_frame(detail::d_unit_d_lon(c));
    const double m = Law::scale(q[2]);
    const double dm = Law::scale_dz(q[2]);
    auto column = [&](const std::array<double, 3>& dq) {
      return PlanePoint{dm * dq[2] * q[0] + m * dq[0], dm * dq[2] * q[1] + m * dq[1]};
    };
    return {column(dq_lat), column(dq_lon)};
  }

  std::optional<Angle> cut_meridian() const { return std::nullopt; }

 private:
  AzimuthalFrame frame_;
  Angle cutoff_;
};

using Stereographic = Azimuthal<law::Stereographic>;
using Gnomonic = Azimuthal<law::Gnomonic>;
using CentralTangent = Azimuthal<law::CentralTangent>;
using Orthographic = Azimuthal<law::Orthographic>;
using LambertAzimuthalEqualArea = Azimuthal<law::LambertAzimuthalEqualArea>;

// ---------------------------------------------------------------------------
// Families with a central meridian.
// ---------------------------------------------------------------------------

/// Base for maps parameterized by a central meridian; the cut sits on its
/// antimeridian.
class MeridianCentered {
 public:
  explicit MeridianCentered(Angle lon0) : lon0_(normalize_longitude(lon0)) {}

  Angle lon0() const { return lon0_; }
  std::optional<Angle> cut_meridian() const { return normalize_longitude(lon0_ + Angle(pi)); }

 protected:
  double delta_lon(const GeoCoord& c) const { return normalize_longitude(c.lon().rad() - lon0_.rad()); }
  Angle restore_lon(double dl) const { return Angle(dl + lon0_.rad()); }

  Angle lon0_;
};

/// x = (lon - lon0) cos(lat0), y = lat.
class Equirectangular : public MeridianCentered {
 public:
  static constexpr Family family = Family::equirectangular;

  explicit Equirectangular(Angle lat0 = {}, Angle lon0 = {}) : MeridianCentered(lon0), lat0_(lat0) {
    detail::require_latitude_in(lat0, -half_pi, half_pi, "standard parallel");
    cos0_ = std::cos(lat0.rad());
  }

  Angle lat0() const { return lat0_; }

  std::optional<Error> domain_error(const GeoCoord&) const { return std::nullopt; }
  bool in_domain(const GeoCoord&) const { return true; }
  bool within_cutoff(const GeoCoord&) const { return true; }

  PlanePoint forward(const GeoCoord& c) const { return {delta_lon(c) * cos0_, c.lat().rad()}; }

  GeoCoord inverse(const PlanePoint& p) const {
    const double dl = p.x / cos0_;
    if (!(std::abs(p.y) <= half_pi + 1e-12 && std::abs(dl) <= pi + 1e-12)) throw detail::no_preimage(family, p);
    return GeoCoord(Angle(std::clamp(p.y, -half_pi, half_pi)), restore_lon(dl));
  }

  Jacobian jacobian(const GeoCoord&) const { return {{0.0, 1.0}, {cos0_, 0.0}}; }

 private:
  Angle lat0_;
  double cos0_ = 1.0;
};

/// x = lon - lon0, y = ln tan(pi/4 + lat/2), defined for |lat| <= cutoff.
class Mercator : public MeridianCentered {
 public:
  static constexpr Family family = Family::mercator;

  explicit Mercator(Angle lon0 = {}, Angle cutoff = Angle::degrees(85.0)) : MeridianCentered(lon0), cutoff_(cutoff) {
    if (!(cutoff.rad() > 0.0 && cutoff.rad() < half_pi))
      throw Error(ErrorKind::parameter, "mercator cutoff " + format_degrees(cutoff.deg()) + " must lie in (0, 90)");
  }

  Angle cutoff() const { return cutoff_; }

  std::optional<Error> domain_error(const GeoCoord& c) const {
    if (std::abs(c.lat().rad()) > cutoff_.rad())
      return detail::out_of_domain(ErrorKind::out_of_domain, family, c,
                                   "lies beyond the latitude cutoff " + format_degrees(cutoff_.deg()));
    return std::nullopt;
  }
  bool in_domain(const GeoCoord& c) const { return !domain_error(c); }
  bool within_cutoff(const GeoCoord& c) const { return in_domain(c); }

  PlanePoint forward(const GeoCoord& c) const {
    if (auto e = domain_error(c)) throw *e;
    return {delta_lon(c), detail::isometric_latitude(c.lat().rad())};
  }

  GeoCoord inverse(const PlanePoint& p) const {
    const double lat = detail::inverse_isometric_latitude(p.y);
    if (!(std::abs(p.x) <= pi + 1e-12 && std::abs(lat) <= cutoff_.rad() + 1e-12)) throw detail::no_preimage(family, p);
    return GeoCoord(Angle(lat), restore_lon(p.x));
  }

  Jacobian jacobian(const GeoCoord& c) const {
    if (auto e = domain_error(c)) throw *e;
    return {{0.0, 1.0 / std::cos(c.lat().rad())}, {1.0, 0.0}};
  }

 private:
  Angle cutoff_;
};

/// x = (lon - lon0) cos(lat0), y = sin(lat) / cos(lat0).
class LambertCylindricalEqualArea : public MeridianCentered {
 public:
  static constexpr Family family = Family::lambert_cylindrical_equal_area;

  explicit LambertCylindricalEqualArea(Angle lat0 = {}, Angle lon0 = {}) : MeridianCentered(lon0), lat0_(lat0) {
    detail::require_latitude_in(lat0, -half_pi, half_pi, "standard parallel");
    cos0_ = std::cos(lat0.rad());
  }

  Angle lat0() const { return lat0_; }

  std::optional<Error> domain_error(const GeoCoord&) const { return std::nullopt; }
  bool in_domain(const GeoCoord&) const { return true; }
  bool within_cutoff(const GeoCoord&) const { return true; }

  PlanePoint forward(const GeoCoord& c) const {
    return {delta_lon(c) * cos0_, std::sin(c.lat().rad()) / cos0_};
  }

  GeoCoord inverse(const PlanePoint& p) const {
    const double s = p.y * cos0_;
    const double dl = p.x / cos0_;
    if (!(std::abs(s) <= 1.0 + 1e-12 && std::abs(dl) <= pi + 1e-12)) throw detail::no_preimage(family, p);
    return GeoCoord(Angle(std::asin(std::clamp(s, -1.0, 1.0))), restore_lon(dl));
  }

  Jacobian jacobian(const GeoCoord& c) const {
    return {{0.0, std::cos(c.lat().rad()) / cos0_}, {cos0_, 0.0}};
  }

 private:
  Angle lat0_;
  double cos0_ = 1.0;
};

/// Cordiform equal-area map: parallels are arcs of radius equal to the
/// colatitude about the north pole, with true length along every parallel
/// and along the central meridian.  The pole sits at (0, pi/2) so the
/// central meridian reads y = lat.
class Werner : public MeridianCentered {
 public:
  static constexpr Family family = Family::werner;
  static constexpr double pole_offset = half_pi;

  explicit Werner(Angle lon0 = {}) : MeridianCentered(lon0) {}

  std::optional<Error> domain_error(const GeoCoord&) const { return std::nullopt; }
  bool in_domain(const GeoCoord&) const { return true; }
  bool within_cutoff(const GeoCoord&) const { return true; }

  PlanePoint forward(const GeoCoord& c) const {
    const double r = half_pi - c.lat().rad();
    const double theta = r > 0.0 ? delta_lon(c) * std::cos(c.lat().rad()) / r : 0.0;
    return {r * std::sin(theta), pole_offset - r * std::cos(theta)};
  }

  GeoCoord inverse(const PlanePoint& p) const {
    const double dy = pole_offset - p.y;
    const double r = std::hypot(p.x, dy);
    if (!(r <= pi + 1e-12)) throw detail::no_preimage(family, p);
    const double lat = half_pi - std::min(r, pi);
    if (r == 0.0) return GeoCoord(Angle(half_pi), Angle(0.0));
    const double theta = std::atan2(p.x, dy);
    const double cl = std::cos(lat);
    if (cl <= 0.0 || r >= pi) {
      if (std::abs(theta) > 1e-9) throw detail::no_preimage(family, p);
      return GeoCoord(Angle(-half_pi), Angle(0.0));
    }
    const double dl = theta * r / cl;
    if (!(std::abs(dl) <= pi + 1e-12)) throw detail::no_preimage(family, p);
    return GeoCoord(Angle(lat), restore_lon(dl));
  }

  Jacobian jacobian(const GeoCoord& c) const {
    const double lat = c.lat().rad();
    const double r = half_pi - lat;
    if (r <= 0.0) throw detail::out_of_domain(ErrorKind::domain, family, c, "is the pole, where the map is singular");
    const double dl = delta_lon(c);
    const double cl = std::cos(lat), sl = std::sin(lat);
    const double theta = dl * cl / r;
    const double dtheta_dlat = dl * (cl - r * sl) / (r * r);
    const double dtheta_dlon = cl / r;
    const double ct = std::cos(theta), st = std::sin(theta);
    return {{-st + r * ct * dtheta_dlat, ct + r * st * dtheta_dlat},
            {r * ct * dtheta_dlon, r * st * dtheta_dlon}};
  }
};

// ---------------------------------------------------------------------------
// Conic families.  Parallels are arcs about the apex (0, rho_ref) and
// meridians are rays through it; x = rho sin(n dlon), y = rho_ref - rho cos(n dlon).
// Southern parallels are handled by negating latitudes and mirroring y.
// ---------------------------------------------------------------------------

/// Cone constant, radius of the first standard parallel, and how far beyond
/// the pole the meridians converge (radians).
struct ConicConstants {
  double n = 0.0;
  double rho_ref = 0.0;
  double apex_overshoot = 0.0;
};

/// Equidistant conic through two standard parallels 0 < lat_a < lat_b < pi/2.
inline ConicConstants conic_constants(Angle lat_a, Angle lat_b) {
  const double a = lat_a.rad(), b = lat_b.rad();
  if (!(0.0 < a && a < b && b < half_pi))
    throw Error(ErrorKind::parameter, "standard parallels must satisfy 0 < " + format_degrees(lat_a.deg()) + " < " +
                                          format_degrees(lat_b.deg()) + " < 90");
  // (cos a - cos b) / (b - a) without cancellation for close parallels.
  const double half = (b - a) / 2.0;
  const double n = std::sin((a + b) / 2.0) * std::sin(half) / half;
  ConicConstants k;
  k.n = n;
  k.rho_ref = std::cos(a) / n;
  k.apex_overshoot = k.rho_ref - (half_pi - a);
  return k;
}

namespace law {

struct EquidistantConic {
  static constexpr Family family = Family::equidistant_conic;

  double n = 0.0, rho_ref = 0.0, lat_a = 0.0;

  EquidistantConic(double a, double b) {
    const ConicConstants k = conic_constants(Angle(a), Angle(b));
    n = k.n;
    rho_ref = k.rho_ref;
    lat_a = a;
  }

  double rho(double lat) const { return rho_ref + lat_a - lat; }
  double drho_dlat(double) const { return -1.0; }
  std::optional<double> lat_of(double r) const {
    const double lat = rho_ref + lat_a - r;
    if (!(lat >= -half_pi - 1e-12 && lat <= half_pi + 1e-12)) return std::nullopt;
    return std::clamp(lat, -half_pi, half_pi);
  }
  // Poles are regular points of this map (the pole is an arc short of the apex).
  bool excludes(double lat) const { return !(rho(lat) > 1e-9); }
};

struct LambertConformalConic {
  static constexpr Family family = Family::lambert_conformal_conic;

  double n = 0.0, f = 0.0, rho_ref = 0.0;

  LambertConformalConic(double a, double b) {
    if (!(0.0 < a && a < b && b < half_pi))
      throw Error(ErrorKind::parameter, "standard parallels must satisfy 0 < lat1 < lat2 < 90");
    n = std::log(std::cos(a) / std::cos(b)) / (detail::isometric_latitude(b) - detail::isometric_latitude(a));
    f = std::cos(a) * std::exp(n * detail::isometric_latitude(a)) / n;
    rho_ref = rho(a);
  }

  double rho(double lat) const { return f * std::exp(-n * detail::isometric_latitude(lat)); }
  double drho_dlat(double lat) const { return -n * rho(lat) / std::cos(lat); }
  std::optional<double> lat_of(double r) const {
    if (!(r > 0.0)) return std::nullopt;
    return detail::inverse_isometric_latitude(-std::log(r / f) / n);
  }
  bool excludes(double lat) const { return !(std::abs(lat) < half_pi); }
};

}  // namespace law

template <class Law>
class Conic : public MeridianCentered {
 public:
  static constexpr Family family = Law::family;

  /// Standard parallels in either order, both north or both south of the
  /// equator.  `cutoff` bounds |lat| on the mapped domain.
  Conic(Angle lat1, Angle lat2, Angle lon0 = {}, Angle cutoff = Angle(half_pi))
      : MeridianCentered(lon0), cutoff_(cutoff), law_(init(lat1, lat2)) {
    if (!(cutoff.rad() > 0.0 && cutoff.rad() <= half_pi))
      throw Error(ErrorKind::parameter, "conic cutoff must lie in (0, 90]");
  }

  Angle lat1() const { return Angle(sign_ * lat_a_); }
  Angle lat2() const { return Angle(sign_ * lat_b_); }
  Angle cutoff() const { return cutoff_; }
  double n() const { return law_.n; }
  double rho_ref() const { return law_.rho_ref; }
  bool southern() const { return sign_ < 0; }
  /// Apex of the meridian rays.
  PlanePoint apex() const { return {0.0, sign_ * law_.rho_ref}; }
  /// Radius of the image of the parallel at `lat`.
  double rho(Angle lat) const { return law_.rho(sign_ * lat.rad()); }

  std::optional<Error> domain_error(const GeoCoord& c) const {
    const double lat = sign_ * c.lat().rad();
    if (law_.excludes(lat))
      return detail::out_of_domain(ErrorKind::out_of_domain, family, c, "lies at or beyond the apex of the cone");
    if (std::abs(c.lat().rad()) > cutoff_.rad())
      return detail::out_of_domain(ErrorKind::out_of_domain, family, c,
                                   "lies beyond the latitude cutoff " + format_degrees(cutoff_.deg()));
    return std::nullopt;
  }
  bool in_domain(const GeoCoord& c) const { return !domain_error(c); }
  bool within_cutoff(const GeoCoord& c) const { return in_domain(c); }

  PlanePoint forward(const GeoCoord& c) const {
    if (auto e = domain_error(c)) throw *e;
    const double r = law_.rho(sign_ * c.lat().rad());
    const double t = law_.n * delta_lon(c);
    return {r * std::sin(t), sign_ * (law_.rho_ref - r * std::cos(t))};
  }

  GeoCoord inverse(const PlanePoint& p) const {
    const double dx = p.x;
    const double dy = law_.rho_ref - sign_ * p.y;
    const double r = std::hypot(dx, dy);
    // The apex itself never has a preimage; the radius test resolves points near it.
    if (!(r > 1e-9)) throw detail::no_preimage(family, p);
    const double dl = std::atan2(dx, dy) / law_.n;
    const auto lat = law_.lat_of(r);
    if (!lat || !(std::abs(dl) <= pi + 1e-12) || law_.excludes(*lat) || std::abs(*lat) > cutoff_.rad() + 1e-12)
      throw detail::no_preimage(family, p);
    return GeoCoord(Angle(sign_ * *lat), restore_lon(dl));
  }

  Jacobian jacobian(const GeoCoord& c) const {
    if (auto e = domain_error(c)) throw *e;
    const double lat = sign_ * c.lat().rad();
    const double r = law_.rho(lat);
    const double dr = law_.drho_dlat(lat) * sign_;  // d rho / d(signed latitude)
    const double t = law_.n * delta_lon(c);
    const double ct = std::cos(t), st = std::sin(t);
    return {{dr * st, -sign_ * dr * ct}, {r * law_.n * ct, sign_ * r * law_.n * st}};
  }

 private:
  Law init(Angle lat1, Angle lat2) {
    double a = lat1.rad(), b = lat2.rad();
    if (!(std::abs(a) < half_pi && std::abs(b) < half_pi) || a == 0.0 || b == 0.0 || (a > 0) != (b > 0))
      throw Error(ErrorKind::parameter, "conic standard parallels must be nonzero, inside (-90, 90) and in one hemisphere");
    if (a == b) throw Error(ErrorKind::parameter, "conic standard parallels must be distinct");
    sign_ = a > 0 ? 1.0 : -1.0;
    a = std::abs(a);
    b = std::abs(b);
    if (a > b) std::swap(a, b);
    lat_a_ = a;
    lat_b_ = b;
    return Law(a, b);
  }

  double sign_ = 1.0;
  double lat_a_ = 0.0, lat_b_ = 0.0;
  Angle cutoff_;
  Law law_;
};

using EquidistantConic = Conic<law::EquidistantConic>;
using LambertConformalConic = Conic<law::LambertConformalConic>;

// ---------------------------------------------------------------------------
// Tagged union over every family and the dispatching free functions.
// ---------------------------------------------------------------------------

template <class P>
concept Projection = requires(const P& p, const GeoCoord& c, const PlanePoint& q) {
  { P::family } -> std::convertible_to<Family>;
  { p.forward(c) } -> std::same_as<PlanePoint>;
  { p.inverse(q) } -> std::same_as<GeoCoord>;
  { p.jacobian(c) } -> std::same_as<Jacobian>;
  { p.in_domain(c) } -> std::same_as<bool>;
  { p.within_cutoff(c) } -> std::same_as<bool>;
  { p.cut_meridian() } -> std::same_as<std::optional<Angle>>;
};

using ProjectionSpec = std::variant<Equirectangular, Stereographic, Gnomonic, Orthographic, CentralTangent, Mercator,
                                    EquidistantConic, LambertConformalConic, LambertAzimuthalEqualArea,
                                    LambertCylindricalEqualArea, Werner>;

inline Family family_of(const ProjectionSpec& s) {
  return std::visit([](const auto& p) { return std::decay_t<decltype(p)>::family; }, s);
}

inline PlanePoint forward(const ProjectionSpec& s, const GeoCoord& c) {
  return std::visit([&](const Projection auto& p) { return p.forward(c); }, s);
}

inline GeoCoord inverse(const ProjectionSpec& s, const PlanePoint& q) {
  return std::visit([&](const Projection auto& p) { return p.inverse(q); }, s);
}

inline Jacobian analytic_jacobian(const ProjectionSpec& s, const GeoCoord& c) {
  return std::visit([&](const Projection auto& p) { return p.jacobian(c); }, s);
}

inline bool in_domain(const ProjectionSpec& s, const GeoCoord& c) {
  return std::visit([&](const Projection auto& p) { return p.in_domain(c); }, s);
}

inline bool within_cutoff(const ProjectionSpec& s, const GeoCoord& c) {
  return std::visit([&](const Projection auto& p) { return p.within_cutoff(c); }, s);
}

/// Meridian along which the map is cut open, if any (antimeridian of lon0).
inline std::optional<Angle> cut_meridian(const ProjectionSpec& s) {
  return std::visit([](const Projection auto& p) { return p.cut_meridian(); }, s);
}

inline bool is_conic(Family f) { return f == Family::equidistant_conic || f == Family::lambert_conformal_conic; }

inline bool is_azimuthal(Family f) {
  return f == Family::stereographic || f == Family::gnomonic || f == Family::orthographic ||
         f == Family::central_tangent || f == Family::lambert_azimuthal_equal_area;
}

inline bool is_cylindrical(Family f) {
  return f == Family::equirectangular || f == Family::mercator || f == Family::lambert_cylindrical_equal_area;
}

}  // namespace carto
