#pragma once

// Plain-text projection descriptions, shared by the command line and config
// files:
//
//   <family> [key=value ...]
//
// Angles are decimal degrees.  Keys by family:
//   equirectangular, lambert-cylindrical-equal-area : lat0 (standard parallel), lon0
//   mercator                                        : lon0, cutoff (max |lat|, default 85)
//   werner                                          : lon0
//   stereographic, gnomonic, central, orthographic,
//   lambert-azimuthal-equal-area                    : center=<lat>,<lon>, cutoff (max distance from center)
//   equidistant-conic, lambert-conformal-conic      : lat1, lat2 (required), lon0, cutoff (max |lat|)
//
// Aliases: delisle, lcc, laea, cea, plate-carree, central-tangent.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "carto/projections.hpp"

namespace carto {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::string family_list() {
  std::string out;
  for (Family f : all_families) {
    if (!out.empty()) out += ", ";
    out += family_name(f);
  }
  return out;
}

}  // namespace detail

inline Family parse_family(std::string_view name) {
  for (Family f : all_families)
    if (family_name(f) == name) return f;
  static const std::map<std::string_view, Family> aliases{
      {"delisle", Family::equidistant_conic},
      {"lcc", Family::lambert_conformal_conic},
      {"laea", Family::lambert_azimuthal_equal_area},
      {"cea", Family::lambert_cylindrical_equal_area},
      {"plate-carree", Family::equirectangular},
      {"central-tangent", Family::central_tangent},
  };
  if (auto it = aliases.find(name); it != aliases.end()) return it->second;
  throw Error(ErrorKind::usage,
              "unknown projection family '" + std::string(name) + "'; valid families: " + detail::family_list());
}

inline ProjectionSpec parse_projection(std::string_view text) {
  const auto words = detail::split_ws(text);
  if (words.empty()) throw Error(ErrorKind::usage, "empty projection spec; valid families: " + detail::family_list());
  const Family family = parse_family(words.front());

  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto eq = words[i].find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorKind::parse, "projection parameter '" + words[i] + "' is not of the form key=value");
    auto [it, inserted] = kv.emplace(words[i].substr(0, eq), words[i].substr(eq + 1));
    if (!inserted) throw Error(ErrorKind::parse, "projection parameter '" + it->first + "' given twice");
  }

  auto take_angle = [&](const std::string& key) -> std::optional<Angle> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = detail::parse_number(it->second);
    if (!v) throw Error(ErrorKind::parse, "projection parameter " + key + "='" + it->second + "' is not a number");
    kv.erase(it);
    return Angle::degrees(*v);
  };
  auto take_center = [&]() -> std::optional<GeoCoord> {
    auto it = kv.find("center");
    if (it == kv.end()) return std::nullopt;
    const std::string value = it->second;
    kv.erase(it);
    const auto comma = value.find(',');
    auto lat = comma == std::string::npos ? std::nullopt : detail::parse_number(std::string_view(value).substr(0, comma));
    auto lon = comma == std::string::npos ? std::nullopt : detail::parse_number(std::string_view(value).substr(comma + 1));
    if (!lat || !lon) throw Error(ErrorKind::parse, "center='" + value + "' must be <lat>,<lon> in degrees");
    if (std::abs(*lat) > 90.0) throw Error(ErrorKind::parameter, "center latitude " + value + " outside [-90, 90]");
    return GeoCoord::degrees(*lat, *lon);
  };
  auto require = [&](const std::string& key) {
    auto v = take_angle(key);
    if (!v) throw Error(ErrorKind::parse, std::string(family_name(family)) + " requires " + key + "=<degrees>");
    return *v;
  };

  auto build = [&]() -> ProjectionSpec {
    switch (family) {
      case Family::equirectangular: {
        auto lat0 = take_angle("lat0").value_or(Angle{});
        return Equirectangular(lat0, take_angle("lon0").value_or(Angle{}));
      }
      case Family::lambert_cylindrical_equal_area: {
        auto lat0 = take_angle("lat0").value_or(Angle{});
        return LambertCylindricalEqualArea(lat0, take_angle("lon0").value_or(Angle{}));
      }
      case Family::mercator: {
        auto lon0 = take_angle("lon0").value_or(Angle{});
        return Mercator(lon0, take_angle("cutoff").value_or(Angle::degrees(85.0)));
      }
      case Family::werner:
        return Werner(take_angle("lon0").value_or(Angle{}));
      case Family::equidistant_conic:
      case Family::lambert_conformal_conic: {
        const Angle lat1 = require("lat1");
        const Angle lat2 = require("lat2");
        const Angle lon0 = take_angle("lon0").value_or(Angle{});
        const Angle cutoff = take_angle("cutoff").value_or(Angle(half_pi));
        if (family == Family::equidistant_conic) return EquidistantConic(lat1, lat2, lon0, cutoff);
        return LambertConformalConic(lat1, lat2, lon0, cutoff);
      }
      case Family::stereographic:
      case Family::gnomonic:
      case Family::central_tangent:
      case Family::orthographic:
      case Family::lambert_azimuthal_equal_area: {
        auto center = take_center();
        auto cutoff = take_angle("cutoff");
        auto make = [&]<class P>(std::type_identity<P>) -> ProjectionSpec {
          const P defaults;
          return P(center.value_or(defaults.center()), cutoff.value_or(defaults.cutoff()));
        };
        if (family == Family::stereographic) return make(std::type_identity<Stereographic>{});
        if (family == Family::gnomonic) return make(std::type_identity<Gnomonic>{});
        if (family == Family::central_tangent) return make(std::type_identity<CentralTangent>{});
        if (family == Family::orthographic) return make(std::type_identity<Orthographic>{});
        return make(std::type_identity<LambertAzimuthalEqualArea>{});
      }
    }
    throw Error(ErrorKind::usage, "unsupported projection family");
  };

  ProjectionSpec spec = build();
  if (!kv.empty())
    throw Error(ErrorKind::parse, "unknown parameter '" + kv.begin()->first + "' for " + std::string(family_name(family)));
  return spec;
}

/// Canonical text form; parse_projection(format_projection(s)) rebuilds s.
inline std::string format_projection(const ProjectionSpec& spec) {
  auto deg = [](Angle a) { return format_degrees(a.deg()); };
  std::string out(family_name(family_of(spec)));
  std::visit(
      [&]<class P>(const P& p) {
        if constexpr (std::is_same_v<P, Equirectangular> || std::is_same_v<P, LambertCylindricalEqualArea>) {
          out += " lat0=" + deg(p.lat0()) + " lon0=" + deg(p.lon0());
        } else if constexpr (std::is_same_v<P, Mercator>) {
          out += " lon0=" + deg(p.lon0()) + " cutoff=" + deg(p.cutoff());
        } else if constexpr (std::is_same_v<P, Werner>) {
          out += " lon0=" + deg(p.lon0());
        } else if constexpr (std::is_same_v<P, EquidistantConic> || std::is_same_v<P, LambertConformalConic>) {
          out += " lat1=" + deg(p.lat1()) + " lat2=" + deg(p.lat2()) + " lon0=" + deg(p.lon0()) +
                 " cutoff=" + deg(p.cutoff());
        } else {
          out += " center=" + deg(p.center().lat()) + "," + deg(p.center().lon()) + " cutoff=" + deg(p.cutoff());
        }
      },
      spec);
  return out;
}

}  // namespace carto
