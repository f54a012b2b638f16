#pragma once

// Gazetteer CSV: a `name,lat,lon` header, then one place per row.  Lines
// starting with '#' and blank lines are ignored.  Coordinates are decimal
// degrees or degrees and minutes written D°M′ (an ASCII ' is accepted for
// the minute mark).  Names containing commas or quotes are double-quoted.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carto/core_geo.hpp"
#include "carto/projection_string.hpp"

namespace carto {

struct GazetteerEntry {
  std::string name;
  GeoCoord coord;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one CSV record; nullopt on an unterminated quote.
inline std::optional<std::vector<std::string>> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"' && trim(field).empty()) {
      field.clear();
      quoted = was_quoted = true;
    } else if (ch == ',') {
      out.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) return std::nullopt;
  out.push_back(was_quoted ? field : std::string(trim(field)));
  return out;
}

/// Decimal degrees, or D°M′ with an optional leading sign.
inline std::optional<double> parse_angle_text(std::string_view s) {
  s = trim(s);
  static constexpr std::string_view degree_mark = "\xC2\xB0";    // °
  static constexpr std::string_view minute_mark = "\xE2\x80\xB2";  // ′
  const auto deg_pos = s.find(degree_mark);
  if (deg_pos == std::string_view::npos) return parse_number(s);

  double sign = 1.0;
  std::string_view d = s.substr(0, deg_pos);
  if (!d.empty() && (d.front() == '-' || d.front() == '+')) {
    sign = d.front() == '-' ? -1.0 : 1.0;
    d.remove_prefix(1);
  }
  const auto degrees = parse_number(d);
  if (!degrees || *degrees < 0) return std::nullopt;

  std::string_view rest = s.substr(deg_pos + degree_mark.size());
  double minutes = 0.0;
  if (!rest.empty()) {
    if (rest.ends_with(minute_mark)) rest.remove_suffix(minute_mark.size());
    else if (rest.ends_with('\'')) rest.remove_suffix(1);
    else return std::nullopt;
    const auto m = parse_number(rest);
    if (!m || *m < 0 || *m >= 60) return std::nullopt;
    minutes = *m;
  }
  return sign * (*degrees + minutes / 60.0);
}

inline Error gazetteer_error(const std::string& what, std::size_t line) {
  return Error(ErrorKind::parse, what + ", line " + std::to_string(line));
}

}  // namespace detail

/// Parses a gazetteer document.  Longitudes in the file are measured from a
/// reference meridian lying `prime_meridian` east of the one used internally
/// (e.g. about 29.92 degrees for tables referenced to Alexandria).
inline std::vector<GazetteerEntry> load_gazetteer(std::string_view text, Angle prime_meridian = {}) {
  std::vector<GazetteerEntry> out;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);  // UTF-8 BOM
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;

    const auto fields = detail::split_csv(t);
    if (!fields) throw detail::gazetteer_error("unterminated quote", line_no);
    if (!header_seen) {
      if (fields->size() != 3 || (*fields)[0] != "name" || (*fields)[1] != "lat" || (*fields)[2] != "lon")
        throw detail::gazetteer_error("expected header name,lat,lon", line_no);
      header_seen = true;
      continue;
    }
    if (fields->size() != 3) throw detail::gazetteer_error("malformed row: expected 3 fields", line_no);
    const std::string& name = (*fields)[0];
    if (name.empty()) throw detail::gazetteer_error("empty name", line_no);
    const auto lat = detail::parse_angle_text((*fields)[1]);
    if (!lat) throw detail::gazetteer_error("lat is not a coordinate", line_no);
    const auto lon = detail::parse_angle_text((*fields)[2]);
    if (!lon) throw detail::gazetteer_error("lon is not a coordinate", line_no);
    if (std::abs(*lat) > 90.0) throw detail::gazetteer_error("lat out of range", line_no);
    if (std::abs(*lon) > 180.0) throw detail::gazetteer_error("lon out of range", line_no);
    out.push_back({name, GeoCoord(Angle::degrees(*lat), Angle::degrees(*lon) + prime_meridian)});
  }
  if (!header_seen) throw detail::gazetteer_error("missing header name,lat,lon", line_no + 1);
  return out;
}

/// Inverse of load_gazetteer: decimal degrees at full precision.
inline std::string serialize_gazetteer(const std::vector<GazetteerEntry>& entries, Angle prime_meridian = {}) {
  auto number = [](double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  std::string out = "name,lat,lon\n";
  for (const auto& e : entries) {
    if (e.name.find_first_of(",\"") != std::string::npos || e.name != detail::trim(e.name) ||
        e.name.front() == '#') {
      out += '"';
      for (char ch : e.name) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      out += '"';
    } else {
      out += e.name;
    }
    out += ',' + number(e.coord.lat().deg()) + ',' +
           number(normalize_longitude(e.coord.lon() - prime_meridian).deg()) + '\n';
  }
  return out;
}

}  // namespace carto
