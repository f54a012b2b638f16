#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace carto;
using carto::testing::random_drawable;
using carto::testing::standard_specs;

namespace {

const Angle d45 = Angle::degrees(45), d60 = Angle::degrees(60);

double radius(PlanePoint p) { return std::hypot(p.x, p.y); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::usage;
}

}  // namespace

TEST(Equirectangular, Examples) {
  const Equirectangular p;
  const PlanePoint o = p.forward(GeoCoord::degrees(0, 0));
  EXPECT_EQ(o.x, 0.0);
  EXPECT_EQ(o.y, 0.0);
  const PlanePoint q = p.forward(GeoCoord::degrees(30, 45));
  EXPECT_NEAR(q.x, 0.7853982, 1e-7);
  EXPECT_NEAR(q.y, 0.5235988, 1e-7);
}

TEST(Stereographic, Examples) {
  const Stereographic p;  // tangent at the south pole
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(-90, 0))), 0.0, 1e-15);
  const PlanePoint e = p.forward(GeoCoord::degrees(0, 0));
  EXPECT_NEAR(e.x, 2.0, 1e-15);
  EXPECT_NEAR(e.y, 0.0, 1e-15);
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(-45, 123))), 0.8284271247461903, 1e-15);
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(90, 0)); }), ErrorKind::at_infinity);
}

TEST(Stereographic, AzimuthEqualsLongitudeAtTheSouthPole) {
  const Stereographic p;
  const PlanePoint q = p.forward(GeoCoord::degrees(-30, 70));
  EXPECT_NEAR(std::atan2(q.y, q.x), Angle::degrees(70).rad(), 1e-14);
}

TEST(Gnomonic, Examples) {
  const Gnomonic p;
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(-90, 0))), 0.0, 1e-15);
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(-45, 10))), 1.0, 1e-14);
  const GeoCoord near_equator = GeoCoord::degrees(-1, 0);
  const double r = radius(p.forward(near_equator));
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_NEAR(r, 57.28996163075943, 1e-9);
  EXPECT_TRUE(p.in_domain(near_equator));
  EXPECT_FALSE(p.within_cutoff(near_equator));
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(0, 0)); }), ErrorKind::out_of_hemisphere);
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(10, 0)); }), ErrorKind::out_of_hemisphere);
}

TEST(Orthographic, Examples) {
  const Orthographic p;  // north polar aspect
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(90, 0))), 0.0, 1e-15);
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(0, 33))), 1.0, 1e-15);
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(60, -20))), 0.5, 1e-15);
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(-10, 0)); }), ErrorKind::out_of_hemisphere);
  EXPECT_EQ(kind_of([&] { p.inverse({0.9, 0.9}); }), ErrorKind::no_preimage);
}

TEST(CentralTangent, IsGnomonicAtTheNorthPole) {
  const CentralTangent p;
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(45, 80))), 1.0, 1e-14);
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(-5, 0)); }), ErrorKind::out_of_hemisphere);
}

TEST(Mercator, Examples) {
  const Mercator p;
  const PlanePoint o = p.forward(GeoCoord::degrees(0, 0));
  EXPECT_EQ(o.x, 0.0);
  EXPECT_EQ(o.y, 0.0);
  EXPECT_NEAR(p.forward(GeoCoord::degrees(45, 0)).y, 0.8813735870195429, 1e-14);
  EXPECT_NEAR(p.inverse({0.0, 0.8813736}).lat().deg(), 45.0, 1e-5);
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(86, 0)); }), ErrorKind::out_of_domain);
  EXPECT_EQ(kind_of([] { Mercator(Angle(), Angle::degrees(90)); }), ErrorKind::parameter);
}

// Integrating sec(phi) from 0 to 45 degrees by Simpson's rule.
TEST(Mercator, OrdinateIsIntegralOfSecant) {
  const int n = 2000;
  const double h = (pi / 4) / n;
  double s = 1.0 + 1.0 / std::cos(pi / 4);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) / std::cos(i * h);
  EXPECT_NEAR(Mercator().forward(GeoCoord::degrees(45, 0)).y, s * h / 3, 1e-12);
}

TEST(Mercator, LoxodromesAreStraight) {
  const Mercator p;
  for (double az_deg : {10.0, 35.0, 60.0, 80.0, -50.0}) {
    const double t = std::tan(Angle::degrees(az_deg).rad());
    std::vector<PlanePoint> pts;
    for (int i = 0; i <= 50; ++i) {
      const double lat = Angle::degrees(-60 + 2.0 * i).rad();
      const double lon = 0.3 + t * (detail::isometric_latitude(lat) - detail::isometric_latitude(Angle::degrees(-60).rad()));
      if (std::abs(lon) > pi - 0.01) break;
      pts.push_back(p.forward(GeoCoord(Angle(lat), Angle(lon))));
    }
    ASSERT_GE(pts.size(), 3u);
    EXPECT_LT(straightness(std::span<const PlanePoint>(pts)).ratio, 1e-12) << az_deg;
  }
}

TEST(ConicConstants, Examples) {
  const ConicConstants k = conic_constants(d45, d60);
  EXPECT_NEAR(k.n, 0.7910896313685742, 1e-14);
  EXPECT_NEAR(k.rho_ref, 0.8938390204448294, 1e-14);
  EXPECT_NEAR(k.apex_overshoot, Angle::degrees(6.21320343559643).rad(), 1e-13);
  EXPECT_EQ(kind_of([] { conic_constants(Angle::degrees(60), Angle::degrees(45)); }), ErrorKind::parameter);
  EXPECT_EQ(kind_of([] { conic_constants(Angle::degrees(0), Angle::degrees(45)); }), ErrorKind::parameter);
}

TEST(ConicConstants, TangentConeLimit) {
  const Angle a = Angle::degrees(40);
  const ConicConstants k = conic_constants(a, a + Angle(1e-6));
  EXPECT_NEAR(k.n, std::sin(a.rad()), 1e-4);
}

TEST(EquidistantConic, Examples) {
  const EquidistantConic p(d45, d60);
  const PlanePoint o = p.forward(GeoCoord(d45, Angle()));
  EXPECT_NEAR(o.x, 0.0, 1e-15);
  EXPECT_NEAR(o.y, 0.0, 1e-15);
  const PlanePoint q = p.forward(GeoCoord(d45, Angle::degrees(90)));
  EXPECT_NEAR(q.x, 0.8461423278681302, 1e-13);
  EXPECT_NEAR(q.y, 0.6057568178364872, 1e-13);
  EXPECT_NEAR(p.rho(Angle::degrees(70)), 0.4575067074462471, 1e-14);
}

TEST(EquidistantConic, MeridiansAreRaysAndParallelsConcentric) {
  for (const ProjectionSpec& spec : {ProjectionSpec(EquidistantConic(d45, d60)),
                                    ProjectionSpec(LambertConformalConic(d45, d60))}) {
    std::visit(
        [&]<class P>(const P& p) {
          if constexpr (requires { p.apex(); }) {
            const PlanePoint apex = p.apex();
            for (double lon = -170; lon <= 170; lon += 20) {
              std::vector<PlanePoint> ray{apex};
              for (double lat = -60; lat <= 85; lat += 5) ray.push_back(p.forward(GeoCoord::degrees(lat, lon)));
              EXPECT_LT(straightness(std::span<const PlanePoint>(ray)).ratio, 1e-12);
            }
            for (double lat = -60; lat <= 85; lat += 5)
              for (double lon = -179; lon <= 179; lon += 17)
                EXPECT_NEAR(distance(apex, p.forward(GeoCoord::degrees(lat, lon))), p.rho(Angle::degrees(lat)), 1e-13);
          }
        },
        spec);
  }
}

TEST(EquidistantConic, SouthernMirror) {
  const EquidistantConic n(d45, d60), s(-d60, -d45);
  EXPECT_TRUE(s.southern());
  for (double lat : {-80.0, -20.0, 10.0, 55.0})
    for (double lon : {-150.0, 0.0, 40.0}) {
      const PlanePoint a = n.forward(GeoCoord::degrees(lat, lon));
      const PlanePoint b = s.forward(GeoCoord::degrees(-lat, lon));
      EXPECT_NEAR(a.x, b.x, 1e-14);
      EXPECT_NEAR(a.y, -b.y, 1e-14);
    }
}

TEST(EquidistantConic, ParameterErrors) {
  EXPECT_EQ(kind_of([] { EquidistantConic(Angle::degrees(-10), Angle::degrees(20)); }), ErrorKind::parameter);
  EXPECT_EQ(kind_of([] { EquidistantConic(Angle::degrees(30), Angle::degrees(30)); }), ErrorKind::parameter);
  EXPECT_EQ(kind_of([] { EquidistantConic(Angle::degrees(0), Angle::degrees(30)); }), ErrorKind::parameter);
}

TEST(LambertConformalConic, PolesExcluded) {
  const LambertConformalConic p(d45, d60);
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(90, 0)); }), ErrorKind::out_of_domain);
  EXPECT_EQ(kind_of([&] { p.forward(GeoCoord::degrees(-90, 0)); }), ErrorKind::out_of_domain);
}

TEST(LambertAzimuthalEqualArea, Examples) {
  const LambertAzimuthalEqualArea p;
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(90, 0))), 0.0, 1e-15);
  EXPECT_NEAR(radius(p.forward(GeoCoord::degrees(0, 12))), std::sqrt(2.0), 1e-15);
  // The disc inside a parallel has the area of the cap above it.
  for (double lat : {-60.0, -10.0, 30.0, 75.0}) {
    const double r = radius(p.forward(GeoCoord::degrees(lat, 0)));
    EXPECT_NEAR(pi * r * r, two_pi * (1 - std::sin(Angle::degrees(lat).rad())), 1e-13);
  }
  EXPECT_EQ(kind_of([&] { p.inverse({2.5, 0}); }), ErrorKind::no_preimage);
}

TEST(Werner, Examples) {
  const Werner p;
  const PlanePoint pole = p.forward(GeoCoord::degrees(90, 0));
  for (double lon : {-120.0, 10.0, 170.0}) {
    const PlanePoint q = p.forward(GeoCoord::degrees(90, lon));
    EXPECT_EQ(q.x, pole.x);
    EXPECT_EQ(q.y, pole.y);
  }
  const PlanePoint q = p.forward(GeoCoord::degrees(0, 90));
  EXPECT_NEAR(q.x, 1.321779532040728, 1e-14);
  EXPECT_NEAR(q.y - pole.y, -0.8487048774164866, 1e-14);
}

TEST(Werner, PreservesCentralMeridianAndParallels) {
  const Werner p;
  const PlanePoint pole = p.forward(GeoCoord::degrees(90, 0));
  for (double lat = -85; lat <= 85; lat += 5) {
    const double r = half_pi - Angle::degrees(lat).rad();
    const PlanePoint m = p.forward(GeoCoord::degrees(lat, 0));
    EXPECT_NEAR(m.x, 0.0, 1e-15);
    EXPECT_NEAR(pole.y - m.y, r, 1e-14);
    for (double lon = -175; lon <= 175; lon += 25) {
      const PlanePoint c = p.forward(GeoCoord::degrees(lat, lon));
      EXPECT_NEAR(distance(pole, c), r, 1e-14);
      const double arc = r * std::atan2(c.x - pole.x, pole.y - c.y);
      EXPECT_NEAR(arc, Angle::degrees(lon).rad() * std::cos(Angle::degrees(lat).rad()), 1e-13);
    }
  }
}

TEST(Inverse, Examples) {
  EXPECT_NEAR(inverse(Mercator(), {0, 0.8813736}).lat().deg(), 45.0, 1e-5);
  const GeoCoord e = inverse(Stereographic(), {2, 0});
  EXPECT_NEAR(e.lat().deg(), 0.0, 1e-13);
  EXPECT_NEAR(e.lon().deg(), 0.0, 1e-13);
  EXPECT_EQ(kind_of([] { inverse(Werner(), {4, 0}); }), ErrorKind::no_preimage);
  EXPECT_EQ(kind_of([] { inverse(EquidistantConic(d45, d60), EquidistantConic(d45, d60).apex()); }),
            ErrorKind::no_preimage);
}

TEST(RoundTrip, EveryFamily) {
  std::mt19937_64 rng(carto::testing::seed + 10);
  for (const ProjectionSpec& spec : standard_specs()) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const GeoCoord c = random_drawable(spec, rng);
      worst = std::max(worst, great_circle_distance(c, inverse(spec, forward(spec, c))).rad());
    }
    EXPECT_LT(worst, 1e-9) << family_name(family_of(spec));
  }
}

TEST(RoundTrip, ObliqueAspects) {
  std::mt19937_64 rng(carto::testing::seed + 11);
  const GeoCoord centers[] = {GeoCoord::degrees(35, -20), GeoCoord::degrees(-48, 150), GeoCoord::degrees(0, 90)};
  for (const auto& ctr : centers) {
    for (const ProjectionSpec& spec : {ProjectionSpec(Stereographic(ctr)), ProjectionSpec(Gnomonic(ctr)),
                                      ProjectionSpec(Orthographic(ctr)), ProjectionSpec(LambertAzimuthalEqualArea(ctr))}) {
      for (int i = 0; i < 300; ++i) {
        const GeoCoord c = random_drawable(spec, rng);
        EXPECT_LT(great_circle_distance(c, inverse(spec, forward(spec, c))).rad(), 1e-9);
      }
    }
  }
}

TEST(Jacobian, AnalyticMatchesFiniteDifference) {
  std::mt19937_64 rng(carto::testing::seed + 12);
  for (const ProjectionSpec& spec : standard_specs()) {
    int checked = 0;
    while (checked < 200) {
      const GeoCoord c = random_drawable(spec, rng);
      if (std::abs(c.lat().deg()) > 85) continue;
      if (auto cut = cut_meridian(spec); cut && std::abs(normalize_longitude(c.lon() - *cut).rad()) < 1e-3) continue;
      Jacobian fd;
      try {
        fd = local_jacobian(spec, c);
      } catch (const Error&) {
        continue;  // neighborhood leaves the domain
      }
      const Jacobian an = analytic_jacobian(spec, c);
      const double scale = 1.0 + std::max({std::abs(an.d_lat.x), std::abs(an.d_lat.y), std::abs(an.d_lon.x),
                                           std::abs(an.d_lon.y)});
      EXPECT_NEAR(fd.d_lat.x, an.d_lat.x, 1e-5 * scale) << family_name(family_of(spec));
      EXPECT_NEAR(fd.d_lat.y, an.d_lat.y, 1e-5 * scale) << family_name(family_of(spec));
      EXPECT_NEAR(fd.d_lon.x, an.d_lon.x, 1e-5 * scale) << family_name(family_of(spec));
      EXPECT_NEAR(fd.d_lon.y, an.d_lon.y, 1e-5 * scale) << family_name(family_of(spec));
      ++checked;
    }
  }
}

// Shifting the central meridian (or the center) and the point together leaves the image unchanged.
TEST(Equivariance, RotationAboutThePolarAxis) {
  std::mt19937_64 rng(carto::testing::seed + 13);
  const Angle shift = Angle::degrees(37.5);
  auto shifted = [&](const GeoCoord& c) { return GeoCoord(c.lat(), c.lon() + shift); };
  const std::pair<ProjectionSpec, ProjectionSpec> pairs[] = {
      {Equirectangular(Angle::degrees(20)), Equirectangular(Angle::degrees(20), shift)},
      {Mercator(), Mercator(shift)},
      {Werner(), Werner(shift)},
      {LambertCylindricalEqualArea(), LambertCylindricalEqualArea(Angle(), shift)},
      {EquidistantConic(d45, d60), EquidistantConic(d45, d60, shift)},
      {LambertConformalConic(d45, d60), LambertConformalConic(d45, d60, shift)},
      {Stereographic(GeoCoord::degrees(30, 10)), Stereographic(shifted(GeoCoord::degrees(30, 10)))},
      {LambertAzimuthalEqualArea(GeoCoord::degrees(-20, 10)), LambertAzimuthalEqualArea(shifted(GeoCoord::degrees(-20, 10)))},
  };
  for (const auto& [base, moved] : pairs) {
    for (int i = 0; i < 200; ++i) {
      const GeoCoord c = random_drawable(base, rng);
      if (!within_cutoff(moved, shifted(c))) continue;
      const PlanePoint a = forward(base, c), b = forward(moved, shifted(c));
      EXPECT_NEAR(a.x, b.x, 1e-12) << family_name(family_of(base));
      EXPECT_NEAR(a.y, b.y, 1e-12) << family_name(family_of(base));
    }
  }
}

TEST(Gnomonic, GreatCirclesAreStraight) {
  std::mt19937_64 rng(carto::testing::seed + 14);
  const Gnomonic p(GeoCoord::degrees(25, 40));
  for (int i = 0; i < 100; ++i) {
    const GeoCoord a = random_drawable(p, rng), b = random_drawable(p, rng);
    if (great_circle_distance(a, b).rad() < 1e-3) continue;
    std::vector<PlanePoint> pts;
    for (const auto& c : sample_great_circle(a, b, 41)) pts.push_back(p.forward(c));
    EXPECT_LT(straightness(std::span<const PlanePoint>(pts)).ratio, 1e-9);
  }
}

TEST(ProjectionString, ParseFormatRoundTrip) {
  for (const ProjectionSpec& spec : standard_specs()) {
    const std::string text = format_projection(spec);
    EXPECT_EQ(format_projection(parse_projection(text)), text);
  }
  EXPECT_EQ(format_projection(parse_projection("delisle lat1=60 lat2=45 lon0=90")),
            "equidistant-conic lat1=45 lat2=60 lon0=90 cutoff=90");
  EXPECT_EQ(family_of(parse_projection("mercator lon0=0")), Family::mercator);
  EXPECT_EQ(family_of(parse_projection("lcc lat1=30 lat2=50")), Family::lambert_conformal_conic);
  const ProjectionSpec g = parse_projection("gnomonic center=90,0");
  EXPECT_EQ(std::get<Gnomonic>(g).center().lat().deg(), 90.0);
}

TEST(ProjectionString, Errors) {
  EXPECT_EQ(kind_of([] { parse_projection("bogus lat0=1"); }), ErrorKind::usage);
  EXPECT_EQ(kind_of([] { parse_projection("mercator speed=3"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { parse_projection("mercator lon0=abc"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { parse_projection(""); }), ErrorKind::usage);
  try {
    parse_family("nope");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("lambert-azimuthal-equal-area"), std::string::npos);
  }
}

static_assert(Projection<Werner> && Projection<Stereographic> && Projection<EquidistantConic>);
