#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "carto/carto.hpp"

namespace carto::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const std::string golden_svg_path = std::string(CARTO_TEST_DATA) + "/delisle_scene.svg";
inline const std::string places_path = std::string(CARTO_TEST_DATA) + "/places.csv";

/// Delisle 45/60 conic over [45, 70] N x [30, 150] E with a 5 degree
/// graticule, six places and the Moscow-Okhotsk great circle.
inline MapScene golden_scene() {
  MapScene s;
  s.projection = EquidistantConic(Angle::degrees(45), Angle::degrees(60), Angle::degrees(90));
  s.graticule = build_graticule(GeoRegion::degrees(45, 70, 30, 150), Angle::degrees(5), Angle::degrees(5), 2);
  s.places = load_gazetteer(read_text(places_path));
  s.geodesics.push_back({GeoCoord::degrees(55.75, 37.6), GeoCoord::degrees(59.4, 143.2), 101});
  return s;
}

/// CLI arguments that render the same scene.
inline std::vector<std::string> golden_cli_args(const std::string& out) {
  return {"render", "--proj", "delisle lat1=45 lat2=60 lon0=90", "--band", "45:70", "--lons", "30:150",
          "--step", "5", "--density", "2", "--gazetteer", places_path, "--geodesic", "55.75,37.6:59.4,143.2",
          "--out", out};
}

}  // namespace carto::testing
