#include "bezierfit/corners.hpp"
#include "bezierfit/errors.hpp"

#include "support/oracles.hpp"
#include "support/shapes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace bezierfit {
namespace {

std::size_t circular_gap(std::size_t a, std::size_t b, std::size_t n) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n - d);
}

std::size_t index_of(const Contour& c, Pixel p) {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c.points[i] == p) return i;
    return static_cast<std::size_t>(-1);
}

void expect_matches_oracle(const std::vector<Point2>& loop, const CornerParams& params) {
    const CornerSet got = detect_corners(loop, params);
    const auto want = oracle::corners(loop, params.support_length, params.threshold, params.effective_suppress_range());
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
        EXPECT_EQ(got.indices[k], want[k].index);
        EXPECT_EQ(got.strengths[k], want[k].distance);
    }
}

TEST(DetectCorners, RectangleHasFourCornersAtVertices) {
    const Contour c = testing::single_contour(testing::filled_rect(60, 50, 5, 5, 40, 30));
    const auto pts = c.to_points();
    const CornerSet cs = detect_corners(pts, {});
    ASSERT_EQ(cs.size(), 4u);
    const Pixel vertices[] = {{5, 5}, {44, 5}, {44, 34}, {5, 34}};
    for (const Pixel& v : vertices) {
        const std::size_t vi = index_of(c, v);
        ASSERT_NE(vi, static_cast<std::size_t>(-1));
        std::size_t best = c.size();
        for (std::size_t k : cs.indices) best = std::min(best, circular_gap(k, vi, c.size()));
        EXPECT_LE(best, 2u);
    }
    for (double s : cs.strengths) EXPECT_GT(s, 2.6);
    expect_matches_oracle(pts, {});
}

TEST(DetectCorners, CircleHasNoCorners) {
    const Contour c = testing::single_contour(testing::digital_disk(50, 60, 60, 121, 121));
    const auto pts = c.to_points();
    double perimeter = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) perimeter += distance(pts[i], pts[(i + 1) % pts.size()]);
    // Sagitta of the arc spanned by one region of support.
    const double theta = 14.0 * perimeter / static_cast<double>(pts.size()) / 50.0;
    const double sagitta = 50.0 * (1.0 - std::cos(theta / 2.0));
    EXPECT_LT(sagitta, 2.6);
    EXPECT_TRUE(detect_corners(pts, {}).empty());
    EXPECT_TRUE(oracle::corners(pts, 14, 2.6, 14).empty());
}

TEST(DetectCorners, PentagonHasFiveCorners) {
    const auto poly = testing::regular_polygon(5, 60, {70, 70}, 0.3);
    const Contour c = testing::single_contour(testing::rasterize_polygon({poly}, 140, 140));
    const auto pts = c.to_points();
    const CornerSet cs = detect_corners(pts, {});
    EXPECT_EQ(cs.size(), 5u);
    expect_matches_oracle(pts, {});
    for (const Point2& v : poly) {
        double best = 1e9;
        for (std::size_t k : cs.indices) best = std::min(best, distance(pts[k], v));
        EXPECT_LT(best, 3.0);
    }
}

TEST(DetectCorners, MatchesOracleOnRandomPolygons) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const auto poly = testing::random_star_polygon(rng, 7, {60, 60}, 20, 55);
        const auto loops = trace_boundaries(testing::rasterize_polygon({poly}, 120, 120));
        for (const auto& c : loops) {
            if (c.size() <= 28) continue;
            expect_matches_oracle(c.to_points(), {});
            expect_matches_oracle(c.to_points(), {10, 1.5, 6});
        }
    }
}

TEST(DetectCorners, RotationEquivariance) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto poly = testing::random_star_polygon(rng, 8, {0, 0}, 30, 80);
        std::vector<Point2> loop;
        std::normal_distribution<double> noise(0.0, 0.05);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
            const int steps = static_cast<int>(distance(a, b));
            for (int s = 0; s < steps; ++s) loop.push_back(a + (b - a) * (double(s) / steps) + Point2{noise(rng), noise(rng)});
        }
        const std::size_t n = loop.size();
        const CornerSet base = detect_corners(loop, {});
        std::uniform_int_distribution<std::size_t> shift(1, n - 1);
        const std::size_t s = shift(rng);
        std::vector<Point2> rotated(n);
        for (std::size_t i = 0; i < n; ++i) rotated[(i + s) % n] = loop[i];
        const CornerSet rot = detect_corners(rotated, {});
        std::vector<std::size_t> mapped;
        for (std::size_t j : base.indices) mapped.push_back((j + s) % n);
        std::sort(mapped.begin(), mapped.end());
        EXPECT_EQ(rot.indices, mapped);
    }
}

TEST(DetectCorners, MirrorKeepsIndices) {
    const auto poly = testing::regular_polygon(6, 40, {60, 60}, 0.1);
    const auto pts = testing::single_contour(testing::rasterize_polygon({poly}, 120, 120)).to_points();
    std::vector<Point2> mirrored;
    for (const Point2& p : pts) mirrored.push_back({p.x, -p.y});
    const CornerSet a = detect_corners(pts, {});
    const CornerSet b = detect_corners(mirrored, {});
    EXPECT_EQ(a.indices, b.indices);
    EXPECT_EQ(a.strengths, b.strengths);
}

TEST(DetectCorners, RaisingThresholdNeverAddsCorners) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto poly = testing::random_star_polygon(rng, 9, {60, 60}, 15, 55);
        const auto pts = testing::single_contour(testing::rasterize_polygon({poly}, 120, 120)).to_points();
        std::vector<std::size_t> previous;
        bool first = true;
        for (double D : {0.5, 1.0, 2.0, 2.6, 4.0, 8.0, 1e9}) {
            const CornerSet cs = detect_corners(pts, {14, D, {}});
            if (!first) {
                for (std::size_t j : cs.indices) {
                    EXPECT_TRUE(std::binary_search(previous.begin(), previous.end(), j));
                }
            }
            previous = cs.indices;
            first = false;
        }
        EXPECT_TRUE(previous.empty());
    }
}

TEST(DetectCorners, CollinearRunsHaveNoCorners) {
    std::vector<Point2> loop;
    for (int x = 0; x < 100; ++x) loop.push_back({double(x), 0});
    for (int y = 0; y < 100; ++y) loop.push_back({100, double(y)});
    for (int x = 100; x > 0; --x) loop.push_back({double(x), 100});
    for (int y = 100; y > 0; --y) loop.push_back({0, double(y)});
    const CornerSet cs = detect_corners(loop, {});
    EXPECT_EQ(cs.indices, (std::vector<std::size_t>{0, 100, 200, 300}));
}

TEST(DetectCorners, SuppressionKeepsSmallestIndexOnTies) {
    // Two identical spikes 5 points apart: equal strengths, one survives.
    std::vector<Point2> loop;
    for (int x = 0; x < 60; ++x) {
        const double y = (x == 20 || x == 25) ? 10.0 : 0.0;
        loop.push_back({double(x), y});
    }
    for (int x = 60; x > 0; --x) loop.push_back({double(x), -40});
    const CornerSet cs = detect_corners(loop, {14, 2.6, 14});
    ASSERT_FALSE(cs.empty());
    EXPECT_TRUE(std::find(cs.indices.begin(), cs.indices.end(), 20u) != cs.indices.end());
    EXPECT_TRUE(std::find(cs.indices.begin(), cs.indices.end(), 25u) == cs.indices.end());
    for (std::size_t k = 1; k < cs.size(); ++k) EXPECT_GT(circular_gap(cs.indices[k - 1], cs.indices[k], loop.size()), 14u);
}

TEST(DetectCorners, RejectsShortLoops) {
    std::vector<Point2> loop(28);
    for (std::size_t i = 0; i < loop.size(); ++i) loop[i] = {std::cos(i * 0.2), std::sin(i * 0.2)};
    EXPECT_THROW(detect_corners(loop, {}), PreconditionError);
    loop.push_back({5, 5});
    EXPECT_NO_THROW(detect_corners(loop, {}));
}

TEST(SegmentBoundaries, Examples) {
    CornerSet three;
    three.indices = {10, 50, 90};
    EXPECT_EQ(segment_boundaries(120, three), (std::vector<IndexRange>{{10, 50}, {50, 90}, {90, 10}}));

    EXPECT_EQ(segment_boundaries(200, {}), (std::vector<IndexRange>{{0, 100}, {100, 0}}));

    CornerSet one;
    one.indices = {7};
    EXPECT_EQ(segment_boundaries(100, one), (std::vector<IndexRange>{{7, 57}, {57, 7}}));
}

TEST(SegmentBoundaries, RangesTileTheLoop) {
    CornerSet cs;
    cs.indices = {3, 17, 40, 41, 90};
    const std::size_t n = 97;
    const auto ranges = segment_boundaries(n, cs);
    std::size_t covered = 0;
    for (const auto& r : ranges) covered += range_length(n, r) - 1;
    EXPECT_EQ(covered, n);
    std::vector<Point2> loop(n);
    for (std::size_t i = 0; i < n; ++i) loop[i] = {double(i), 0};
    const auto wrap = extract_range(loop, ranges.back());
    EXPECT_EQ(wrap.front().x, 90);
    EXPECT_EQ(wrap.back().x, 3);
    EXPECT_EQ(wrap.size(), 11u);
}

}  // namespace
}  // namespace bezierfit
