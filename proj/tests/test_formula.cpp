#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "interp/error.hpp"
#include "interp/formula.hpp"
#include "interp/quasiflat.hpp"

using namespace interp;

namespace {

RegionPoint marking_point(const Marking11& m) { return RegionPoint{{m}}; }

std::vector<RegionPoint> sample_markings(int count, std::uint64_t seed) {
  auto r = make_region({BlockKind::Torus1}, -2);
  auto g = region_ball(r, base_point(r), 5);
  std::mt19937_64 rng(seed);
  std::vector<RegionPoint> out;
  for (int i = 0; i < count; ++i) out.push_back(parse_point(r, g.vertices()[rng() % g.size()]));
  return out;
}

}  // namespace

TEST(Threshold, Basics) {
  ThresholdParams k(4);
  EXPECT_EQ(threshold(4, k), 0);
  EXPECT_EQ(threshold(5, k), 5);
  EXPECT_EQ(threshold(0, k), 0);
  EXPECT_THROW(ThresholdParams(0), InvalidArgument);
}

TEST(Projection, BlockSelectorOnEqualPoints) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Sphere4}, 0);
  auto x = parse_point(r, "2/3 | 1/0");
  EXPECT_EQ(projection_distance(r, BlockSelector{0}, x, x), 0);
  EXPECT_EQ(projection_distance(r, BlockSelector{1}, x, parse_point(r, "2/3 | 0/1")), 1);
  EXPECT_THROW(projection_distance(r, BlockSelector{2}, x, x), InvalidArgument);
}

TEST(Projection, AnnularTwist) {
  auto r = make_region({BlockKind::Torus1}, -2);
  Slope axis(0, 1);
  auto x = marking_point(Marking11(axis, Slope::infinity()));
  auto y = marking_point(Marking11(axis, dehn_twist(axis, 5, Slope::infinity())));
  EXPECT_EQ(projection_distance(r, AnnularSelector{0, axis}, x, y), 5);
  EXPECT_EQ(projection_distance(r, AnnularSelector{0, axis}, y, x), 5);
}

TEST(Projection, CurveGraph) {
  auto r = make_region({BlockKind::Torus1}, -2);
  auto x = marking_point(Marking11(Slope(0, 1), Slope::infinity()));
  auto y = marking_point(Marking11(Slope(3, 5), Slope(1, 2)));
  EXPECT_EQ(projection_distance(r, CurveGraphSelector{0}, x, y), 2);
  auto z = marking_point(Marking11(Slope(0, 1), Slope(1, 1)));
  EXPECT_EQ(projection_distance(r, CurveGraphSelector{0}, x, z), 1);
}

TEST(Projection, SelectorMismatch) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Torus1}, 0);
  auto x = base_point(r);
  EXPECT_THROW(projection_distance(r, AnnularSelector{0, Slope(0, 1)}, x, x), InvalidArgument);
  EXPECT_THROW(projection_distance(r, CurveGraphSelector{1}, x, x), InvalidArgument);
}

TEST(Selectors, MarkingFamily) {
  auto r = make_region({BlockKind::Torus1}, -2);
  auto x = marking_point(Marking11(Slope(0, 1), Slope::infinity()));
  auto y = marking_point(Marking11(Slope(3, 5), Slope(1, 2)));
  auto ws = formula_selectors(r, x, y);
  ASSERT_EQ(ws.size(), 1u + 3u);  // curve graph; annuli at 0/1, 1/2, 3/5
  EXPECT_EQ(to_string(ws[0]), "curve graph of block 0");
  EXPECT_EQ(to_string(ws[1]), "annulus 0/1 in block 0");
  EXPECT_EQ(to_string(ws[2]), "annulus 1/2 in block 0");
  EXPECT_EQ(to_string(ws[3]), "annulus 3/5 in block 0");
}

TEST(Selectors, SkipsConedAndPants) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Pants, BlockKind::Sphere4}, 0);
  auto ws = formula_selectors(r, base_point(r), base_point(r));
  EXPECT_EQ(ws.size(), 2u);
  auto coned = make_region({BlockKind::Torus1, BlockKind::Sphere4}, 1);
  EXPECT_TRUE(formula_selectors(coned, base_point(coned), base_point(coned)).empty());
}

TEST(Formula, Examples) {
  auto r = make_region({BlockKind::Torus1}, -1);
  auto x = base_point(r);
  EXPECT_EQ(distance_formula(r, ThresholdParams(1), x, x), 0);
  std::optional<Slope> far;
  for (const auto& s : slopes_up_to_height(40)) {
    if (farey_distance(Slope(0, 1), s) == 5) {
      far = s;
      break;
    }
  }
  ASSERT_TRUE(far);
  RegionPoint y{{*far}};
  EXPECT_EQ(distance_formula(r, ThresholdParams(1), x, y), 5);
  EXPECT_EQ(distance_formula(r, ThresholdParams(5), x, y), 0);
}

TEST(Formula, SymmetricAndMonotoneInK) {
  auto r = make_region({BlockKind::Torus1}, -2);
  auto pts = sample_markings(40, 21);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    const auto& x = pts[i];
    const auto& y = pts[i + 1];
    std::int64_t previous = -1;
    for (std::int64_t k = 1; k <= 8; ++k) {
      auto f = distance_formula(r, ThresholdParams(k), x, y);
      EXPECT_EQ(f, distance_formula(r, ThresholdParams(k), y, x));
      if (previous >= 0) EXPECT_LE(f, previous);
      previous = f;
    }
    EXPECT_EQ(distance_formula(r, ThresholdParams(1), x, x), 0);
  }
}

TEST(Formula, ZeroAboveLargestProjection) {
  auto r = make_region({BlockKind::Torus1}, -2);
  auto pts = sample_markings(40, 22);
  std::int64_t largest = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    for (const auto& w : formula_selectors(r, pts[i], pts[i + 1])) {
      largest = std::max(largest, projection_distance(r, w, pts[i], pts[i + 1]));
    }
  }
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    EXPECT_EQ(distance_formula(r, ThresholdParams(largest), pts[i], pts[i + 1]), 0);
  }
}

TEST(Formula, MarkingFormulaTracksGraphDistanceAtLowThreshold) {
  // With K = 1 every nonzero term counts; the formula should stay within a
  // bounded factor of the marking distance.
  auto r = make_region({BlockKind::Torus1}, -2);
  auto pts = sample_markings(60, 23);
  std::vector<DistanceSample> samples;
  RegionMetric metric(r);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    samples.push_back({metric.distance(pts[i], pts[i + 1]),
                       distance_formula(r, ThresholdParams(1), pts[i], pts[i + 1])});
  }
  auto fit = fit_qi_constants(samples, 3);
  ASSERT_TRUE(fit);
  EXPECT_LE(fit->a, Rational(4));
}

TEST(Fit, Examples) {
  EXPECT_EQ(fit_qi_constants({{3, 3}, {7, 7}}).a, Rational(1));
  EXPECT_EQ(fit_qi_constants({{3, 3}, {7, 7}}).b, 0);
  auto f = fit_qi_constants({{5, 0}});
  EXPECT_EQ(f.a, Rational(1));
  EXPECT_EQ(f.b, 5);
}

TEST(Fit, CappedSearch) {
  std::vector<DistanceSample> s{{10, 5}};
  auto f = fit_qi_constants(s, 0);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->a, Rational(2));
  EXPECT_EQ(f->b, 0);
  auto g = fit_qi_constants(s, 3);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->a, Rational(3, 2));
  EXPECT_EQ(g->b, 3);
  EXPECT_FALSE(fit_qi_constants({{5, 0}}, 4));
  EXPECT_FALSE(fit_qi_constants(s, -1));
}

TEST(Fit, AlwaysSatisfied) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DistanceSample> s;
    for (int i = 0; i < 20; ++i) s.push_back({static_cast<std::int64_t>(rng() % 30), static_cast<std::int64_t>(rng() % 30)});
    auto f = fit_qi_constants(s);
    EXPECT_TRUE(satisfies(f, s));
    if (f.b > 0) EXPECT_FALSE(satisfies(QIFit{f.a, f.b - 1}, s));
    auto g = fit_qi_constants(s, 5);
    if (g) EXPECT_TRUE(satisfies(*g, s));
  }
}

TEST(Fit, Json) {
  EXPECT_EQ(to_json(QIFit{Rational(5, 4), 3}).dump(), R"({"a":"5/4","b":3})");
}

TEST(QuasiFlat, FareyLineIsGeodesic) {
  auto g = farey_line(0, 8);
  EXPECT_EQ(g.min_index, -8);
  EXPECT_EQ(g.max_index(), 8);
  EXPECT_EQ(std::get<Slope>(g.at(0)), Slope(0, 1));
  EXPECT_EQ(std::get<Slope>(g.at(1)), Slope::infinity());
  for (std::int64_t i = -8; i <= 8; ++i) {
    for (std::int64_t j = -8; j <= 8; ++j) {
      EXPECT_EQ(farey_distance(std::get<Slope>(g.at(i)), std::get<Slope>(g.at(j))), std::abs(i - j));
    }
  }
  EXPECT_THROW(g.at(9), InvalidArgument);
  EXPECT_THROW(farey_line(0, 0), InvalidArgument);
}

TEST(QuasiFlat, Points) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Pants, BlockKind::Sphere4}, 0);
  auto q = farey_quasiflat(r, 4);
  ASSERT_EQ(q.rank(), 2u);
  EXPECT_EQ(quasiflat_point(q, {0, 0}), base_point(r));
  auto p = quasiflat_point(q, {3, 0});
  EXPECT_NE(p.coords[0], base_point(r).coords[0]);
  EXPECT_EQ(p.coords[1], base_point(r).coords[1]);
  EXPECT_EQ(p.coords[2], base_point(r).coords[2]);
  EXPECT_THROW(quasiflat_point(q, {1}), InvalidArgument);
  EXPECT_THROW(quasiflat_point(q, {5, 0}), InvalidArgument);

  auto single = farey_quasiflat(make_region({BlockKind::Torus1}, 0), 3);
  EXPECT_EQ(quasiflat_point(single, {3}).coords[0], single.geodesics[0].at(3));
}

TEST(QuasiFlat, TwoBlocksGridThree) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Torus1}, 0);
  auto report = verify_quasiflat(farey_quasiflat(r, 3), 3);
  EXPECT_EQ(report.pairs_checked, 49u * 49u);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.upper_tight);
  EXPECT_TRUE(report.lower_tight);
  EXPECT_EQ(report.summary(), "OK: 0 violations, bounds tight");
  EXPECT_EQ(report.max_distance, 12);
}

TEST(QuasiFlat, ConedBlocksAreFlagged) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Torus1}, 1);
  auto report = verify_quasiflat(farey_quasiflat(r, 3), 3);
  EXPECT_TRUE(report.degenerate);
  EXPECT_FALSE(report.ok());
  EXPECT_LE(report.max_distance, 2);
  EXPECT_EQ(report.summary().rfind("DEGENERATE", 0), 0u);
}

TEST(QuasiFlat, NonGeodesicLineBreaksTightness) {
  // 0/1, 1/1, 2/1, ... is a path but not a geodesic: d(0/1, 3/1) = 2.
  auto r = make_region({BlockKind::Torus1}, 0);
  BlockGeodesic window{0, -3, {}};
  for (int i = -3; i <= 3; ++i) window.points.emplace_back(Slope(i, 1));
  QuasiFlatSpec q{r, base_point(r), {window}};
  auto report = verify_quasiflat(q, 3);
  EXPECT_FALSE(report.upper_tight);
  EXPECT_EQ(report.upper_violations, 0u);
  EXPECT_GT(report.lower_violations, 0u);
  ASSERT_TRUE(report.witness);
}

TEST(QuasiFlat, SpecValidation) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Torus1}, 0);
  QuasiFlatSpec q{r, base_point(r), {farey_line(0, 2), farey_line(0, 2)}};
  EXPECT_THROW(validate(q), InvalidArgument);
  QuasiFlatSpec jump{r, base_point(r), {BlockGeodesic{0, 0, {Slope(0, 1), Slope(2, 1)}}}};
  EXPECT_THROW(validate(jump), InvalidArgument);
  QuasiFlatSpec repeat{r, base_point(r), {BlockGeodesic{0, 0, {Slope(0, 1), Slope(1, 1), Slope(0, 1)}}}};
  EXPECT_THROW(validate(repeat), InvalidArgument);
  QuasiFlatSpec offset{r, base_point(r), {BlockGeodesic{0, 1, {Slope(0, 1), Slope(1, 1)}}}};
  EXPECT_THROW(validate(offset), InvalidArgument);
  EXPECT_THROW(verify_quasiflat(farey_quasiflat(r, 2), 3), InvalidArgument);
}

TEST(QuasiFlat, JsonRoundTrip) {
  auto r = make_region({BlockKind::Torus1, BlockKind::Sphere4}, 0);
  auto q = farey_quasiflat(r, 3);
  auto j = to_json(q);
  auto back = quasiflat_from_json(r, j["geodesics"]);
  ASSERT_EQ(back.geodesics.size(), q.geodesics.size());
  for (std::size_t i = 0; i < q.geodesics.size(); ++i) {
    EXPECT_EQ(back.geodesics[i].points, q.geodesics[i].points);
    EXPECT_EQ(back.geodesics[i].min_index, q.geodesics[i].min_index);
  }
  EXPECT_THROW(quasiflat_from_json(r, nlohmann::json::parse(R"({"geodesics": [{"block": 0}]})")),
               InvalidArgument);
}

TEST(QuasiFlat, RowsCarryFormula) {
  auto r = make_region({BlockKind::Torus1}, 0);
  QuasiFlatOptions options;
  options.collect_rows = true;
  options.threshold = 1;
  auto report = verify_quasiflat(farey_quasiflat(r, 2), 2, options);
  ASSERT_EQ(report.rows.size(), 25u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.distance, std::abs(row.k[0] - row.l[0]));
    EXPECT_EQ(row.formula, row.distance > 1 ? row.distance : 0);
  }
}
