#pragma once

// Command-line front end.  cli_main is kept separate from main() so tests can
// drive it with in-memory streams.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carto/carto.hpp"

namespace carto::cli {

enum ExitCode { ok = 0, failure = 1, usage_error = 2 };

namespace detail {

inline std::pair<double, double> parse_pair(const std::string& text, char sep, const std::string& what) {
  const auto pos = text.find(sep);
  if (pos == std::string::npos)
    throw Error(ErrorKind::usage, what + " '" + text + "' must be written a" + sep + "b");
  const auto a = carto::detail::parse_number(carto::detail::trim(std::string_view(text).substr(0, pos)));
  const auto b = carto::detail::parse_number(carto::detail::trim(std::string_view(text).substr(pos + 1)));
  if (!a || !b) throw Error(ErrorKind::usage, what + " '" + text + "' is not a pair of numbers");
  return {*a, *b};
}

inline GeoCoord parse_point(const std::string& text, double prime_meridian) {
  const auto [lat, lon] = parse_pair(text, ',', "coordinate");
  if (std::abs(lat) > 90.0) throw Error(ErrorKind::domain, "latitude " + format_degrees(lat) + " outside [-90, 90]");
  return GeoCoord::degrees(lat, lon + prime_meridian);
}

inline Grid parse_grid(const std::string& text) {
  auto number = [&](std::string_view s) {
    const auto v = carto::detail::parse_number(s);
    if (!v || *v < 3 || *v != std::floor(*v) || *v > 100000)
      throw Error(ErrorKind::usage, "grid '" + text + "' must be N or NxM with integers >= 3");
    return static_cast<std::size_t>(*v);
  };
  const auto x = text.find('x');
  if (x == std::string::npos) {
    const auto n = number(text);
    return {n, n};
  }
  return {number(std::string_view(text).substr(0, x)), number(std::string_view(text).substr(x + 1))};
}

inline std::string f6(double v) { return fixed6(v); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::usage, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Runs one invocation.  Results go to `out` (or --out), diagnostics to `err`.
/// Exit 0 on success, 1 on domain and parse errors, 2 on usage errors.
inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Map projections, distortion analysis and standard-parallel design on the unit sphere", "carto"};
  app.require_subcommand(1, 1);
  app.fallthrough();  // global flags may follow the subcommand

  double prime_meridian = 0.0;
  std::string out_path;
  app.add_option("--prime-meridian", prime_meridian,
                 "Longitude (deg, east of Greenwich) of the meridian that input longitudes are measured from");
  app.add_option("--out", out_path, "Write results to this file instead of standard output");

  std::string proj, band = "-90:90", lons = "-180:180", grid = "21", from, to;
  double lat = 0, lon = 0, x = 0, y = 0, tol = 1e-6, scale = 200, margin = 20, step = 10, density = 1;
  std::size_t samples = 101;
  bool csv = false;
  std::string gazetteer_path, profile_path;
  std::vector<std::string> geodesic_pairs;

  auto* project = app.add_subcommand("project", "Project one coordinate to the plane");
  project->add_option("--proj", proj, "Projection spec, e.g. \"mercator lon0=0\"")->required();
  project->add_option("--lat", lat, "Latitude (deg)")->required();
  project->add_option("--lon", lon, "Longitude (deg)")->required();

  auto* inv = app.add_subcommand("inverse", "Map a plane point back to the sphere");
  inv->add_option("--proj", proj, "Projection spec")->required();
  inv->add_option("--x", x, "Plane x (map units)")->required();
  inv->add_option("--y", y, "Plane y (map units)")->required();

  auto* dist = app.add_subcommand("distance", "Great-circle distance between two points");
  dist->add_option("--from", from, "lat,lon (deg)")->required();
  dist->add_option("--to", to, "lat,lon (deg)")->required();

  auto* distortion = app.add_subcommand("distortion", "Scan local distortion over a grid");
  distortion->add_option("--proj", proj, "Projection spec")->required();
  distortion->add_option("--band", band, "Latitude range lo:hi (deg)");
  distortion->add_option("--lons", lons, "Longitude range lo:hi (deg)");
  distortion->add_option("--grid", grid, "Grid size N or NxM");
  distortion->add_flag("--csv", csv, "Emit one CSV row per grid point instead of the summary table");

  auto* properties = app.add_subcommand("properties", "Report violations of the four meridian/parallel desiderata");
  properties->add_option("--proj", proj, "Projection spec")->required();
  properties->add_option("--band", band, "Latitude range lo:hi (deg)");
  properties->add_option("--lons", lons, "Longitude range lo:hi (deg)");
  properties->add_option("--grid", grid, "Grid size N or NxM");

  auto* optimize = app.add_subcommand("optimize", "Choose equidistant-conic standard parallels for a band");
  optimize->add_option("--band", band, "Latitude band lo:hi (deg), 0 <= lo < hi < 90")->required();
  optimize->add_option("--tol", tol, "Tolerance on parallel positions (rad)");
  optimize->add_option("--profile", profile_path, "Write the error profiles of both choices as CSV");

  auto* geodesic = app.add_subcommand("geodesic", "Straightness and arc fit of a great-circle image");
  geodesic->add_option("--proj", proj, "Projection spec")->required();
  geodesic->add_option("--from", from, "lat,lon (deg)")->required();
  geodesic->add_option("--to", to, "lat,lon (deg)")->required();
  geodesic->add_option("--samples", samples, "Number of samples along the arc");
  geodesic->add_flag("--csv", csv, "Also emit the projected samples as CSV");

  auto* render = app.add_subcommand("render", "Render graticule, places and geodesics to SVG");
  render->add_option("--proj", proj, "Projection spec")->required();
  render->add_option("--band", band, "Latitude range lo:hi (deg)");
  render->add_option("--lons", lons, "Longitude range lo:hi (deg)");
  render->add_option("--step", step, "Graticule spacing (deg)");
  render->add_option("--density", density, "Graticule samples per degree");
  render->add_option("--gazetteer", gazetteer_path, "Gazetteer CSV (name,lat,lon)");
  render->add_option("--geodesic", geodesic_pairs, "Great circle lat,lon:lat,lon (repeatable)");
  render->add_option("--scale", scale, "SVG units per sphere radius");
  render->add_option("--margin", margin, "Margin around the drawing (SVG units)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "carto: " << e.what() << "\n" << app.help();
    return usage_error;
  }

  try {
    // Validate paths before doing any work.
    if (!out_path.empty()) {
      const auto parent = std::filesystem::path(out_path).parent_path();
      if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw Error(ErrorKind::usage, "output directory '" + parent.string() + "' does not exist");
    }
    if (!profile_path.empty()) {
      const auto parent = std::filesystem::path(profile_path).parent_path();
      if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw Error(ErrorKind::usage, "profile directory '" + parent.string() + "' does not exist");
    }
    if (!gazetteer_path.empty() && !std::filesystem::is_regular_file(gazetteer_path))
      throw Error(ErrorKind::usage, "gazetteer '" + gazetteer_path + "' does not exist");

    const Angle pm = Angle::degrees(prime_meridian);
    std::ostringstream res;

    auto region = [&] {
      const auto [la0, la1] = detail::parse_pair(band, ':', "latitude range");
      const auto [lo0, lo1] = detail::parse_pair(lons, ':', "longitude range");
      return GeoRegion::degrees(la0, la1, lo0 + prime_meridian, lo1 + prime_meridian);
    };

    if (*project) {
      const ProjectionSpec spec = parse_projection(proj);
      if (std::abs(lat) > 90.0) throw Error(ErrorKind::domain, "latitude " + format_degrees(lat) + " outside [-90, 90]");
      const PlanePoint p = forward(spec, GeoCoord::degrees(lat, lon + prime_meridian));
      res << "x=" << detail::f6(p.x) << " y=" << detail::f6(p.y) << "\n";
    } else if (*inv) {
      const ProjectionSpec spec = parse_projection(proj);
      const GeoCoord c = inverse(spec, {x, y});
      res << "lat=" << detail::f6(c.lat().deg()) << " lon=" << detail::f6(normalize_longitude(c.lon() - pm).deg())
          << "\n";
    } else if (*dist) {
      const Angle d = great_circle_distance(detail::parse_point(from, prime_meridian),
                                            detail::parse_point(to, prime_meridian));
      res << "distance=" << detail::f6(d.deg()) << "\n";
    } else if (*distortion) {
      const ProjectionSpec spec = parse_projection(proj);
      const auto samples_grid = scan_distortion(spec, region(), detail::parse_grid(grid));
      if (csv) {
        write_distortion_csv(res, samples_grid);
      } else {
        const DistortionExtremes ex = max_distortion_scan(samples_grid);
        res << format_projection(spec) << "\n" << ex.samples << " samples\n";
        res << std::left << std::setw(12) << "field" << std::setw(14) << "min" << std::setw(24) << "at (lat, lon)"
            << std::setw(14) << "max" << "at (lat, lon)\n";
        auto row = [&](const char* name, const FieldExtremes& f, bool angle) {
          auto v = [&](double d) { return detail::f6(angle ? Angle(d).deg() : d); };
          auto at = [&](const GeoCoord& c) {
            return "(" + detail::f6(c.lat().deg()) + ", " + detail::f6(normalize_longitude(c.lon() - pm).deg()) + ")";
          };
          res << std::setw(12) << name << std::setw(14) << v(f.min) << std::setw(24) << at(f.argmin) << std::setw(14)
              << v(f.max) << at(f.argmax) << "\n";
        };
        row("h", ex.h, false);
        row("k", ex.k, false);
        row("theta_prime", ex.theta_prime, true);
        row("a", ex.a, false);
        row("b", ex.b, false);
        row("omega", ex.omega, true);
        row("s", ex.s, false);
      }
    } else if (*properties) {
      const ProjectionSpec spec = parse_projection(proj);
      const PropertyReport r = euler_property_report(spec, region(), detail::parse_grid(grid));
      res << format_projection(spec) << "\n" << r.grid_description() << "\n";
      res << "P1 meridians straight     " << detail::f6(r.p1_meridian_straightness) << "\n";
      res << "P2 meridian degrees true  " << detail::f6(r.p2_meridian_isometry) << "\n";
      res << "P3 right angles (deg)     " << detail::f6(Angle(r.p3_orthogonality).deg()) << "\n";
      res << "P4 degree ratio true      " << detail::f6(r.p4_degree_ratio) << "\n";
    } else if (*optimize) {
      const auto [lo, hi] = detail::parse_pair(band, ':', "latitude band");
      const LatBand lb = LatBand::degrees(lo, hi);
      const ParallelChoice q = quarter_rule(lb);
      const ParallelChoice m = minimax_parallels(lb, tol);
      res << "band " << detail::f6(lo) << " .. " << detail::f6(hi) << "\n";
      res << std::left << std::setw(12) << "choice" << std::setw(14) << "lat1" << std::setw(14) << "lat2"
          << "max |k-1|\n";
      res << std::setw(12) << "quarter" << std::setw(14) << detail::f6(q.phi_a.deg()) << std::setw(14)
          << detail::f6(q.phi_b.deg()) << detail::f6(q.max_error) << "\n";
      res << std::setw(12) << "minimax" << std::setw(14) << detail::f6(m.phi_a.deg()) << std::setw(14)
          << detail::f6(m.phi_b.deg()) << detail::f6(m.max_error) << "\n";
      res << "equioscillation residual " << std::scientific << std::setprecision(3)
          << equioscillation_residual(m, lb) << std::defaultfloat << "\n";
      if (!profile_path.empty()) {
        std::ofstream pf(profile_path, std::ios::binary);
        if (!pf) throw Error(ErrorKind::usage, "cannot write '" + profile_path + "'");
        pf << "lat,quarter_error,minimax_error\n";
        for (std::size_t i = 0; i < q.error_profile.size(); ++i)
          pf << detail::f6(q.error_profile[i].lat.deg()) << ',' << format_degrees(q.error_profile[i].error) << ','
             << format_degrees(m.error_profile[i].error) << '\n';
      }
    } else if (*geodesic) {
      const ProjectionSpec spec = parse_projection(proj);
      const PlanePolyline poly = project_geodesic(spec, detail::parse_point(from, prime_meridian),
                                                  detail::parse_point(to, prime_meridian), samples);
      for (std::size_t i = 0; i < poly.segments.size(); ++i) {
        const auto& seg = poly.segments[i];
        if (poly.segments.size() > 1) res << "segment " << i << "\n";
        if (seg.size() < 3) {
          res << "points " << seg.size() << " (too few to analyze)\n";
          continue;
        }
        const ArcFit fit = fit_circular_arc(seg);
        res << "chord=" << detail::f6(fit.chord) << " sagitta=" << detail::f6(fit.sagitta)
            << " ratio=" << detail::f6(fit.sagitta / fit.chord) << "\n";
        if (fit.infinite_radius) {
          res << "radius=inf\n";
        } else {
          res << "radius=" << detail::f6(fit.radius) << " radius/chord=" << detail::f6(fit.radius / fit.chord)
              << " max_residual=" << detail::f6(fit.max_residual) << "\n";
          if (fit.refined)
            res << "least_squares radius=" << detail::f6(fit.refined->radius)
                << " max_residual=" << detail::f6(fit.refined->max_residual) << "\n";
        }
      }
      if (csv) {
        res << "segment,x,y\n";
        for (std::size_t i = 0; i < poly.segments.size(); ++i)
          for (const auto& p : poly.segments[i]) res << i << ',' << detail::f6(p.x) << ',' << detail::f6(p.y) << '\n';
      }
    } else if (*render) {
      MapScene scene;
      scene.projection = parse_projection(proj);
      scene.scale = scale;
      scene.margin = margin;
      scene.graticule = build_graticule(region(), Angle::degrees(step), Angle::degrees(step), density);
      if (!gazetteer_path.empty()) scene.places = load_gazetteer(detail::read_file(gazetteer_path), pm);
      for (const auto& g : geodesic_pairs) {
        const auto colon = g.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::usage, "geodesic '" + g + "' must be lat,lon:lat,lon");
        scene.geodesics.push_back({detail::parse_point(g.substr(0, colon), prime_meridian),
                                   detail::parse_point(g.substr(colon + 1), prime_meridian), 101});
      }
      res << render_svg(scene);
    }

    if (out_path.empty()) {
      out << res.str();
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw Error(ErrorKind::usage, "cannot write '" + out_path + "'");
      f << res.str();
    }
    return ok;
  } catch (const Error& e) {
    err << "carto: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::usage ? usage_error : failure;
  } catch (const std::exception& e) {
    err << "carto: " << e.what() << "\n";
    return failure;
  }
}

}  // namespace carto::cli
