#pragma once

// Deterministic SVG 1.1 output for a projected scene.  Layers are written in
// a fixed order (parallels, meridians, geodesics, points, labels), every
// number is fixed to 6 decimals, and the y axis is flipped so north is up.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "carto/gazetteer.hpp"
#include "carto/geodesic_lines.hpp"
#include "carto/graticule.hpp"
#include "carto/project_polyline.hpp"
#include "carto/projections.hpp"

namespace carto {

struct GeodesicOverlay {
  GeoCoord from, to;
  std::size_t samples = 101;
};

struct MapScene {
  ProjectionSpec projection = Equirectangular();
  std::optional<Graticule> graticule;
  std::vector<GazetteerEntry> places;
  std::vector<GeodesicOverlay> geodesics;
  double scale = 200.0;  // SVG units per map unit (the sphere's radius)
  double margin = 20.0;
  double point_radius = 3.0;
};

/// Fixed-point text with 6 decimals, independent of locale; -0 prints as 0.
inline std::string fixed6(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string s(buf, res.ptr);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;

  void add(double x, double y) {
    min_x = std::min(min_x, x), max_x = std::max(max_x, x);
    min_y = std::min(min_y, y), max_y = std::max(max_y, y);
  }
  bool empty() const { return !(min_x <= max_x); }
};

struct SvgPoint {
  double x, y;
};

inline std::string polyline_path(const std::vector<SvgPoint>& pts) {
  std::string d = "M" + fixed6(pts.front().x) + " " + fixed6(pts.front().y);
  for (std::size_t i = 1; i < pts.size(); ++i) d += " L" + fixed6(pts[i].x) + " " + fixed6(pts[i].y);
  return d;
}

// One circular arc about `center`, swept through the samples in order.
inline std::string arc_path(const std::vector<SvgPoint>& pts, SvgPoint center, double radius) {
  double swept = 0.0;
  double prev = std::atan2(pts.front().y - center.y, pts.front().x - center.x);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a = std::atan2(pts[i].y - center.y, pts[i].x - center.x);
    swept += std::remainder(a - prev, 2 * pi);
    prev = a;
  }
  const int large = std::abs(swept) > pi ? 1 : 0;
  const int sweep = swept > 0 ? 1 : 0;
  const SvgPoint& a = pts.front();
  const SvgPoint& b = pts.back();
  return "M" + fixed6(a.x) + " " + fixed6(a.y) + " A" + fixed6(radius) + " " + fixed6(radius) + " 0 " +
         std::to_string(large) + " " + std::to_string(sweep) + " " + fixed6(b.x) + " " + fixed6(b.y);
}

}  // namespace detail

inline std::string render_svg(const MapScene& scene) {
  const ProjectionSpec& spec = scene.projection;
  const double s = scene.scale;
  if (!(s > 0.0) || !(scene.margin >= 0.0) || !(scene.point_radius >= 0.0))
    throw Error(ErrorKind::parameter, "scene scale must be positive and margins non-negative");
  auto to_svg = [s](PlanePoint p) { return detail::SvgPoint{p.x * s, -p.y * s}; };

  struct Path {
    std::vector<detail::SvgPoint> pts;
    std::optional<double> arc_radius;
  };
  detail::Bounds bounds;
  auto collect = [&](const PlanePolyline& poly, std::optional<double> radius) {
    std::vector<Path> out;
    for (const auto& seg : poly.segments) {
      Path path{{}, radius};
      for (const auto& p : seg) {
        const auto q = to_svg(p);
        bounds.add(q.x, q.y);
        path.pts.push_back(q);
      }
      out.push_back(std::move(path));
    }
    return out;
  };

  const Family fam = family_of(spec);
  std::optional<detail::SvgPoint> apex;
  auto conic_radius = [&](Angle lat) -> std::optional<double> {
    return std::visit(
        [&]<class P>(const P& p) -> std::optional<double> {
          if constexpr (std::is_same_v<P, EquidistantConic> || std::is_same_v<P, LambertConformalConic>) {
            apex = to_svg(p.apex());
            return p.rho(lat) * s;
          } else {
            (void)p;
            return std::nullopt;
          }
        },
        spec);
  };

  std::vector<Path> parallels, meridians, geodesics;
  if (scene.graticule) {
    for (const auto& c : scene.graticule->parallels) {
      auto paths = collect(project_polyline(spec, c.points), is_conic(fam) ? conic_radius(c.value) : std::nullopt);
      parallels.insert(parallels.end(), paths.begin(), paths.end());
    }
    for (const auto& c : scene.graticule->meridians) {
      auto paths = collect(project_polyline(spec, c.points), std::nullopt);
      meridians.insert(meridians.end(), paths.begin(), paths.end());
    }
  }
  for (const auto& g : scene.geodesics) {
    const auto samples = sample_great_circle(g.from, g.to, std::max<std::size_t>(g.samples, 2));
    auto paths = collect(project_polyline(spec, samples), std::nullopt);
    geodesics.insert(geodesics.end(), paths.begin(), paths.end());
  }
  struct Place {
    detail::SvgPoint at;
    std::string name;
  };
  std::vector<Place> places;
  for (const auto& e : scene.places) {
    if (!within_cutoff(spec, e.coord)) continue;
    const auto q = to_svg(forward(spec, e.coord));
    bounds.add(q.x, q.y);
    places.push_back({q, e.name});
  }

  double vx = -scene.margin, vy = -scene.margin, vw = 2 * scene.margin, vh = 2 * scene.margin;
  if (!bounds.empty()) {
    vx = bounds.min_x - scene.margin;
    vy = bounds.min_y - scene.margin;
    vw = bounds.max_x - bounds.min_x + 2 * scene.margin;
    vh = bounds.max_y - bounds.min_y + 2 * scene.margin;
  }
  if (vw <= 0.0) vw = 1.0;
  if (vh <= 0.0) vh = 1.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + fixed6(vx) + " " + fixed6(vy) +
         " " + fixed6(vw) + " " + fixed6(vh) + "\" width=\"" + fixed6(vw) + "\" height=\"" + fixed6(vh) + "\">\n";
  out += "<desc>" + detail::xml_escape(format_projection(spec)) + "</desc>\n";

  auto write_layer = [&](const char* id, const char* style, const std::vector<Path>& paths) {
    out += std::string("<g id=\"") + id + "\" " + style + ">\n";
    for (const auto& p : paths) {
      const std::string d = p.arc_radius && apex ? detail::arc_path(p.pts, *apex, *p.arc_radius)
                                                 : detail::polyline_path(p.pts);
      out += "<path d=\"" + d + "\"/>\n";
    }
    out += "</g>\n";
  };
  write_layer("parallels", "fill=\"none\" stroke=\"#4a6fa5\" stroke-width=\"0.5\"", parallels);
  write_layer("meridians", "fill=\"none\" stroke=\"#4a6fa5\" stroke-width=\"0.5\"", meridians);
  write_layer("geodesics", "fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1\"", geodesics);

  out += "<g id=\"points\" fill=\"#000000\">\n";
  for (const auto& p : places)
    out += "<circle cx=\"" + fixed6(p.at.x) + "\" cy=\"" + fixed6(p.at.y) + "\" r=\"" + fixed6(scene.point_radius) +
           "\"/>\n";
  out += "</g>\n";
  out += "<g id=\"labels\" font-family=\"serif\" font-size=\"10\">\n";
  for (const auto& p : places)
    out += "<text x=\"" + fixed6(p.at.x + 1.5 * scene.point_radius) + "\" y=\"" +
           fixed6(p.at.y - 1.5 * scene.point_radius) + "\">" + detail::xml_escape(p.name) + "</text>\n";
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace carto
