#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "golden_scene.hpp"
#include "test_support.hpp"

using namespace carto;

namespace {

template <class F>
std::string error_text(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  ADD_FAILURE() << "no error raised";
  return {};
}

std::string group(const std::string& svg, const std::string& id) {
  const auto open = svg.find("<g id=\"" + id + "\"");
  if (open == std::string::npos) return {};
  return svg.substr(open, svg.find("</g>", open) - open);
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Graticule, GlobalTenDegrees) {
  const Graticule g = build_graticule(GeoRegion::globe(), Angle::degrees(10), Angle::degrees(10));
  EXPECT_EQ(g.parallels.size(), 17u);
  EXPECT_EQ(g.meridians.size(), 36u);
  EXPECT_NEAR(g.parallels.front().value.deg(), -80.0, 1e-12);
  EXPECT_NEAR(g.parallels.back().value.deg(), 80.0, 1e-12);
}

TEST(Graticule, DelisleRegion) {
  const Graticule g = build_graticule(GeoRegion::degrees(45, 70, 30, 150), Angle::degrees(5), Angle::degrees(5));
  EXPECT_EQ(g.parallels.size(), 6u);
  EXPECT_EQ(g.meridians.size(), 25u);
  // One sample per degree, both ends included.
  EXPECT_EQ(g.parallels.front().points.size(), 121u);
  EXPECT_EQ(g.meridians.front().points.size(), 26u);
}

TEST(Graticule, SpacingWiderThanRegion) {
  const Graticule g = build_graticule(GeoRegion::degrees(41, 44, 11, 13), Angle::degrees(30), Angle::degrees(30));
  ASSERT_EQ(g.parallels.size(), 2u);
  EXPECT_NEAR(g.parallels[0].value.deg(), 41.0, 1e-12);
  EXPECT_NEAR(g.parallels[1].value.deg(), 44.0, 1e-12);
  EXPECT_EQ(g.meridians.size(), 2u);
}

TEST(Graticule, Errors) {
  EXPECT_THROW(build_graticule(GeoRegion::globe(), Angle(0), Angle::degrees(10)), Error);
  EXPECT_THROW(build_graticule(GeoRegion::globe(), Angle::degrees(10), Angle::degrees(10), 0.0), Error);
}

TEST(Gazetteer, Examples) {
  const auto e = load_gazetteer("name,lat,lon\nAlexandria,31.2,29.92\nX,60°30′,24°58′\n");
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].name, "Alexandria");
  EXPECT_NEAR(e[0].coord.lat().deg(), 31.2, 1e-12);
  EXPECT_NEAR(e[0].coord.lon().deg(), 29.92, 1e-12);
  EXPECT_NEAR(e[1].coord.lat().deg(), 60.5, 1e-12);
  EXPECT_NEAR(e[1].coord.lon().deg(), 24.0 + 58.0 / 60.0, 1e-12);
  EXPECT_EQ(error_text([] { load_gazetteer("name,lat,lon\nX,1,2\nY,95,10\n"); }), "lat out of range, line 3");
  EXPECT_EQ(error_text([] { load_gazetteer("name,lat,lon\nY,5,190\n"); }), "lon out of range, line 2");
}

TEST(Gazetteer, CommentsQuotesAndDuplicates) {
  const auto e = load_gazetteer(
      "\xEF\xBB\xBF# header follows\r\nname,lat,lon\r\n\r\n\"Rome, Italy\",41°54',12°30'\r\n"
      "# note\nRome,-0°30′,-12.5\nRome,0,0\n");
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0].name, "Rome, Italy");
  EXPECT_NEAR(e[0].coord.lat().deg(), 41.9, 1e-12);
  EXPECT_NEAR(e[1].coord.lat().deg(), -0.5, 1e-12);
  EXPECT_NEAR(e[1].coord.lon().deg(), -12.5, 1e-12);
  EXPECT_EQ(e[2].name, "Rome");
}

TEST(Gazetteer, MalformedRows) {
  EXPECT_EQ(error_text([] { load_gazetteer("name,lat,lon\nA,1\n"); }), "malformed row: expected 3 fields, line 2");
  EXPECT_EQ(error_text([] { load_gazetteer("name,lat\nA,1\n"); }), "expected header name,lat,lon, line 1");
  EXPECT_EQ(error_text([] { load_gazetteer("name,lat,lon\n\"A,1,2\n"); }), "unterminated quote, line 2");
  EXPECT_EQ(error_text([] { load_gazetteer("name,lat,lon\nA,1°75′,2\n"); }), "lat is not a coordinate, line 2");
  EXPECT_EQ(error_text([] { load_gazetteer("# only\n"); }), "missing header name,lat,lon, line 2");
  try {
    load_gazetteer("name,lat,lon\nA,x,2\n");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
  }
}

TEST(Gazetteer, PrimeMeridianOffset) {
  const Angle alexandria = Angle::degrees(29.92);
  const auto e = load_gazetteer("name,lat,lon\nRome,41.9,-17.42\n", alexandria);
  EXPECT_NEAR(e[0].coord.lon().deg(), 12.5, 1e-12);
  EXPECT_NE(serialize_gazetteer(e, alexandria).find("Rome,41.9,-17.42"), std::string::npos);
}

TEST(Gazetteer, SerializeThenLoadIsIdentity) {
  std::mt19937_64 rng(carto::testing::seed + 50);
  const char* names[] = {"Plain", "With, comma", "Say \"hi\"", " padded ", "#hash", "Ünïcode"};
  std::vector<GazetteerEntry> entries;
  for (int i = 0; i < 300; ++i) entries.push_back({names[i % 6], carto::testing::random_point(rng)});
  for (Angle pm : {Angle(), Angle::degrees(29.92)}) {
    const auto back = load_gazetteer(serialize_gazetteer(entries, pm), pm);
    ASSERT_EQ(back.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      EXPECT_EQ(back[i].name, entries[i].name);
      EXPECT_LT(great_circle_distance(back[i].coord, entries[i].coord).rad(), 1e-14);
    }
  }
}

TEST(Svg, EmptySceneIsWellFormed) {
  const std::string svg = render_svg(MapScene{});
  EXPECT_TRUE(svg.starts_with("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg "));
  EXPECT_TRUE(svg.ends_with("</svg>\n"));
  EXPECT_NE(svg.find("viewBox=\""), std::string::npos);
  for (const char* id : {"parallels", "meridians", "geodesics", "points", "labels"})
    EXPECT_NE(svg.find(std::string("<g id=\"") + id + "\""), std::string::npos) << id;
  EXPECT_EQ(count(svg, "<g "), count(svg, "</g>"));
}

TEST(Svg, LayerOrder) {
  const std::string svg = render_svg(carto::testing::golden_scene());
  std::size_t prev = 0;
  for (const char* id : {"parallels", "meridians", "geodesics", "points", "labels"}) {
    const auto at = svg.find(std::string("<g id=\"") + id + "\"");
    ASSERT_NE(at, std::string::npos);
    EXPECT_GT(at, prev);
    prev = at;
  }
}

TEST(Svg, OnePointOneCircle) {
  MapScene s;
  s.projection = Mercator();
  s.places = {{"P & Q", GeoCoord::degrees(45, 10)}};
  const std::string svg = render_svg(s);
  EXPECT_EQ(count(svg, "<circle"), 1u);
  const PlanePoint p = Mercator().forward(GeoCoord::degrees(45, 10));
  EXPECT_NE(svg.find("<circle cx=\"" + fixed6(p.x * s.scale) + "\" cy=\"" + fixed6(-p.y * s.scale) + "\""),
            std::string::npos);
  EXPECT_NE(svg.find(">P &amp; Q</text>"), std::string::npos);
}

TEST(Svg, PlacesOutsideTheMapAreDropped) {
  MapScene s;
  s.projection = Mercator();
  s.places = {{"North", GeoCoord::degrees(89, 0)}, {"Here", GeoCoord::degrees(0, 0)}};
  EXPECT_EQ(count(render_svg(s), "<circle"), 1u);
}

TEST(Svg, FixedSixDecimals) {
  EXPECT_EQ(fixed6(-0.0), "0.000000");
  EXPECT_EQ(fixed6(-1e-9), "0.000000");
  EXPECT_EQ(fixed6(1.25), "1.250000");
  // Geometry only: skip the XML declaration and the style attributes of the groups.
  std::string svg;
  std::istringstream lines(render_svg(carto::testing::golden_scene()));
  for (std::string line; std::getline(lines, line);)
    if (!line.starts_with("<?xml") && !line.starts_with("<g ")) {
      if (const auto v = line.find(" version=\"1.1\""); v != std::string::npos) line.erase(v, 14);
      svg += line + "\n";
    }
  const std::regex number(R"(-?\d+\.\d+)");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), number); it != std::sregex_iterator(); ++it) {
    const std::string m = it->str();
    EXPECT_EQ(m.size() - m.find('.') - 1, 6u) << m;
  }
}

// Conic parallels are emitted as arcs; parsing them back gives circles about the apex.
TEST(Svg, ConicParallelsAreConcentricArcs) {
  const MapScene scene = carto::testing::golden_scene();
  const auto& conic = std::get<EquidistantConic>(scene.projection);
  const std::string layer = group(render_svg(scene), "parallels");
  const std::regex arc(R"(M(\S+) (\S+) A(\S+) (\S+) 0 ([01]) ([01]) (\S+) (\S+)\")");
  const double ax = conic.apex().x * scene.scale, ay = -conic.apex().y * scene.scale;
  std::size_t arcs = 0;
  for (auto it = std::sregex_iterator(layer.begin(), layer.end(), arc); it != std::sregex_iterator(); ++it, ++arcs) {
    const auto& m = *it;
    const double x0 = std::stod(m[1]), y0 = std::stod(m[2]), r = std::stod(m[3]);
    const double x1 = std::stod(m[7]), y1 = std::stod(m[8]);
    EXPECT_EQ(m[3], m[4]);
    EXPECT_NEAR(std::hypot(x0 - ax, y0 - ay), r, 2e-6);
    EXPECT_NEAR(std::hypot(x1 - ax, y1 - ay), r, 2e-6);
    EXPECT_NEAR(r, conic.rho(scene.graticule->parallels[arcs].value) * scene.scale, 1e-6);
  }
  EXPECT_EQ(arcs, scene.graticule->parallels.size());
  EXPECT_EQ(count(layer, " L"), 0u);
}

TEST(Svg, PureFunctionOfTheScene) {
  const MapScene s = carto::testing::golden_scene();
  EXPECT_EQ(render_svg(s), render_svg(s));
}

TEST(Svg, MatchesGoldenFile) {
  EXPECT_EQ(render_svg(carto::testing::golden_scene()), carto::testing::read_text(carto::testing::golden_svg_path));
}

// Where graticule lines cross, the drawn angle matches theta' from the distortion module.
TEST(Svg, GraticuleCrossingAnglesMatchDistortion) {
  const ProjectionSpec specs[] = {Werner(), EquidistantConic(Angle::degrees(45), Angle::degrees(60)),
                                  Orthographic(GeoCoord::degrees(40, 10)), Equirectangular()};
  const GeoRegion region = GeoRegion::degrees(-60, 60, -120, 120);
  for (const auto& spec : specs) {
    const Graticule g = build_graticule(region, Angle::degrees(30), Angle::degrees(30), 20);
    for (const auto& par : g.parallels)
      for (const auto& mer : g.meridians) {
        const GeoCoord at(par.value, mer.value);
        auto index = [](const std::vector<GeoCoord>& pts, auto&& key) {
          std::size_t best = 0;
          for (std::size_t i = 1; i < pts.size(); ++i)
            if (std::abs(key(pts[i])) < std::abs(key(pts[best]))) best = i;
          return best;
        };
        const std::size_t i = index(par.points, [&](const GeoCoord& c) { return (c.lon() - mer.value).rad(); });
        const std::size_t j = index(mer.points, [&](const GeoCoord& c) { return (c.lat() - par.value).rad(); });
        if (i == 0 || i + 1 >= par.points.size() || j == 0 || j + 1 >= mer.points.size()) continue;
        const GeoCoord pa = par.points[i - 1], pb = par.points[i + 1], ma = mer.points[j - 1], mb = mer.points[j + 1];
        if (!within_cutoff(spec, pa) || !within_cutoff(spec, pb) || !within_cutoff(spec, ma) ||
            !within_cutoff(spec, mb))
          continue;
        const PlanePoint e0 = forward(spec, pa), e1 = forward(spec, pb);
        const PlanePoint n0 = forward(spec, ma), n1 = forward(spec, mb);
        const double ex = e1.x - e0.x, ey = e1.y - e0.y, nx = n1.x - n0.x, ny = n1.y - n0.y;
        const double drawn = std::atan2(std::abs(nx * ey - ny * ex), nx * ex + ny * ey);
        EXPECT_NEAR(drawn, tissot(spec, at).theta_prime, 1e-3) << family_name(family_of(spec)) << " " << describe(at);
      }
  }
}
