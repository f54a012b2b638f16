#pragma once

// Choosing the two standard parallels of an equidistant conic for a latitude
// band: the quarter-point rule and the minimax choice that minimizes the
// largest parallel-scale error over the band.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "carto/core_geo.hpp"
#include "carto/projections.hpp"

namespace carto {

/// Northern latitude band 0 <= lo < hi < pi/2.
class LatBand {
 public:
  LatBand(Angle lo, Angle hi) : lo_(lo), hi_(hi) {
    if (!(lo.rad() >= 0.0 && lo < hi && hi.rad() < half_pi))
      throw Error(ErrorKind::parameter, "latitude band must satisfy 0 <= lo < hi < 90");
    if (!((hi - lo).rad() > 1e-6)) throw Error(ErrorKind::parameter, "latitude band is narrower than 1e-6 rad");
  }

  static LatBand degrees(double lo, double hi) { return LatBand(Angle::degrees(lo), Angle::degrees(hi)); }

  Angle lo() const { return lo_; }
  Angle hi() const { return hi_; }
  Angle width() const { return hi_ - lo_; }
  Angle mid() const { return (lo_ + hi_) / 2.0; }

 private:
  Angle lo_, hi_;
};

struct ProfilePoint {
  Angle lat;
  double error = 0.0;  // k(lat) - 1
};

struct ParallelChoice {
  Angle phi_a, phi_b;
  double max_error = 0.0;
  std::vector<ProfilePoint> error_profile;
};

/// Raised when the minimax search hits its iteration cap; carries the best
/// choice seen so far.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, ParallelChoice best)
      : Error(ErrorKind::convergence, what), best_(std::move(best)) {}

  const ParallelChoice& best() const { return best_; }

 private:
  ParallelChoice best_;
};

/// Parallel scale k = n rho(lat) / cos(lat) of the equidistant conic whose
/// first standard parallel is lat_a.
inline double parallel_scale(const ConicConstants& cc, Angle lat_a, Angle lat) {
  const double rho = cc.rho_ref + lat_a.rad() - lat.rad();
  if (!(rho > 0.0) || !(std::abs(lat.rad()) < half_pi))
    throw Error(ErrorKind::domain, "latitude " + format_degrees(lat.deg()) + " lies at or beyond the cone apex");
  return cc.n * rho / std::cos(lat.rad());
}

inline constexpr std::size_t dense_scan_intervals = 10000;
inline constexpr std::size_t profile_points = 201;
inline constexpr int default_max_iterations = 200;

namespace detail {

inline constexpr double inv_phi = 0.6180339887498949;  // 1 / golden ratio

/// Golden-section minimization on [lo, hi].  Returns (argmin, min, converged)
/// where converged means the bracket shrank below tol within max_iter steps.
template <class F>
std::tuple<double, double, bool> golden_minimize(F&& f, double lo, double hi, double tol, int max_iter) {
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  double best_x = fc <= fd ? c : d, best_f = std::min(fc, fd);
  int it = 0;
  for (; it < max_iter && (hi - lo) > tol; ++it) {
    if (fc <= fd) {
      hi = d;
      d = c, fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
      if (fc < best_f) best_f = fc, best_x = c;
    } else {
      lo = c;
      c = d, fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
      if (fd < best_f) best_f = fd, best_x = d;
    }
  }
  return {best_x, best_f, (hi - lo) <= tol};
}

struct ScaleErrorScan {
  double max_abs = 0.0;   // max |k - 1| over the band
  double at_lo = 0.0;     // k(lo) - 1
  double at_hi = 0.0;     // k(hi) - 1
  double interior_min = 0.0;  // min of k - 1 over the band
};

/// Dense scan of k - 1 on the band, refined by golden section around the
/// interior minimum of k.
inline ScaleErrorScan scan_scale_error(double a, double b, const LatBand& band) {
  const ConicConstants cc = conic_constants(Angle(a), Angle(b));
  auto err = [&](double lat) { return parallel_scale(cc, Angle(a), Angle(lat)) - 1.0; };
  const double lo = band.lo().rad(), hi = band.hi().rad();
  const double step = (hi - lo) / static_cast<double>(dense_scan_intervals);

  std::size_t imin = 0;
  double emin = err(lo);
  ScaleErrorScan s;
  s.at_lo = emin;
  for (std::size_t i = 1; i <= dense_scan_intervals; ++i) {
    const double lat = i == dense_scan_intervals ? hi : lo + step * static_cast<double>(i);
    const double e = err(lat);
    if (e < emin) emin = e, imin = i;
    if (i == dense_scan_intervals) s.at_hi = e;
  }
  if (imin > 0 && imin < dense_scan_intervals) {
    const double l = lo + step * static_cast<double>(imin - 1);
    const double r = std::min(hi, lo + step * static_cast<double>(imin + 1));
    auto [x, fx, ok] = golden_minimize(err, l, r, 1e-12, 200);
    (void)x;
    (void)ok;
    emin = std::min(emin, fx);
  }
  s.interior_min = emin;
  s.max_abs = std::max({std::abs(s.at_lo), std::abs(s.at_hi), std::abs(emin)});
  return s;
}

inline ParallelChoice make_choice(double a, double b, const LatBand& band) {
  ParallelChoice pc;
  pc.phi_a = Angle(a);
  pc.phi_b = Angle(b);
  pc.max_error = scan_scale_error(a, b, band).max_abs;
  const ConicConstants cc = conic_constants(pc.phi_a, pc.phi_b);
  const double lo = band.lo().rad(), hi = band.hi().rad();
  pc.error_profile.reserve(profile_points);
  for (std::size_t i = 0; i < profile_points; ++i) {
    const double lat = i + 1 == profile_points ? hi : lo + (hi - lo) * static_cast<double>(i) / (profile_points - 1);
    pc.error_profile.push_back({Angle(lat), parallel_scale(cc, pc.phi_a, Angle(lat)) - 1.0});
  }
  return pc;
}

}  // namespace detail

/// Largest |k - 1| over the band for standard parallels (a, b).
inline double max_scale_error(Angle a, Angle b, const LatBand& band) {
  return detail::scan_scale_error(a.rad(), b.rad(), band).max_abs;
}

/// Standard parallels a quarter of the band width in from each edge.
inline ParallelChoice quarter_rule(const LatBand& band) {
  const double q = band.width().rad() / 4.0;
  return detail::make_choice(band.lo().rad() + q, band.hi().rad() - q, band);
}

/// Standard parallels minimizing max |k - 1| over the band.
///
/// Nested golden-section searches: for each candidate first parallel the
/// second is optimized, and the resulting best error is minimized over the
/// first.  Both searches stop once their bracket is narrower than tol (rad);
/// either one exceeding the iteration cap raises ConvergenceError.
inline ParallelChoice minimax_parallels(const LatBand& band, double tol = 1e-6,
                                        int max_iterations = default_max_iterations) {
  if (!(tol > 0.0)) throw Error(ErrorKind::parameter, "minimax tolerance must be positive");
  const double lo = band.lo().rad(), hi = band.hi().rad();
  const double gap = std::min(1e-9, band.width().rad() * 1e-3);

  bool converged = true;
  double best_a = lo + band.width().rad() / 4.0, best_b = hi - band.width().rad() / 4.0;
  double best_err = max_scale_error(Angle(best_a), Angle(best_b), band);

  auto best_second = [&](double a) {
    auto objective = [&](double b) { return max_scale_error(Angle(a), Angle(b), band); };
    auto [b, err, ok] = detail::golden_minimize(objective, a + gap, hi, tol, max_iterations);
    converged = converged && ok;
    if (err < best_err) best_err = err, best_a = a, best_b = b;
    return std::pair{b, err};
  };
  auto outer = [&](double a) { return best_second(a).second; };
  auto [a, err, ok] = detail::golden_minimize(outer, lo + gap, hi - 2 * gap, tol, max_iterations);
  (void)a;
  (void)err;

  ParallelChoice pc = detail::make_choice(best_a, best_b, band);
  if (!ok || !converged)
    throw ConvergenceError("minimax parallel search did not reach tolerance within " +
                               std::to_string(max_iterations) + " iterations",
                           std::move(pc));
  return pc;
}

/// How far the errors at the band edges and at the interior minimum are from
/// equal magnitude E with alternating sign (+E, -E, +E).
inline double equioscillation_residual(const ParallelChoice& pc, const LatBand& band) {
  const auto s = detail::scan_scale_error(pc.phi_a.rad(), pc.phi_b.rad(), band);
  const double e = s.max_abs;
  return std::max({std::abs(s.at_lo - e), std::abs(s.at_hi - e), std::abs(s.interior_min + e)});
}

/// Distance beyond the pole, in degrees, at which the meridians converge.
inline double apex_overshoot_degrees(Angle lat_a, Angle lat_b) {
  return Angle(conic_constants(lat_a, lat_b).apex_overshoot).deg();
}

/// Longitude range, in degrees, covered by a half circle on the map: 180 / n.
inline double semicircle_longitude_span(Angle lat_a, Angle lat_b) {
  return 180.0 / conic_constants(lat_a, lat_b).n;
}

}  // namespace carto
