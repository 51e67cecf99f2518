#include "bezierfit/errors.hpp"
#include "bezierfit/metrics.hpp"
#include "bezierfit/segment_fit.hpp"

#include "support/oracles.hpp"
#include "support/shapes.hpp"

#include <gtest/gtest.h>

#include <random>

namespace bezierfit {
namespace {

TEST(PointDeviation, Examples) {
    const CubicBezier c = testing::chord_aligned_cubic({0, 0}, {40, 10}, 15, -5);
    EXPECT_LT(point_deviation(evaluate(c, 0.37), c), 1e-4);
    const CubicBezier flat = chord_fit({0, 0}, {10, 0});
    EXPECT_NEAR(point_deviation({5, 2}, flat), 2.0, 1e-3);
    EXPECT_NEAR(point_deviation({-3, 4}, flat), 5.0, 1e-3);
}

TEST(PointDeviation, AgreesWithBruteForce) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> C(-50, 50);
    for (int i = 0; i < 40; ++i) {
        const CubicBezier c{{C(rng), C(rng)}, {C(rng), C(rng)}, {C(rng), C(rng)}, {C(rng), C(rng)}};
        for (int k = 0; k < 5; ++k) {
            const Point2 p{C(rng), C(rng)};
            EXPECT_NEAR(point_deviation(p, c), oracle::brute_force_deviation(p, c), 1e-3);
        }
    }
}

TEST(PointDeviation, IsOneLipschitz) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> C(-50, 50);
    std::normal_distribution<double> step(0, 2);
    const CubicBezier c{{-30, 0}, {-10, 40}, {20, -30}, {35, 10}};
    for (int i = 0; i < 2000; ++i) {
        const Point2 p{C(rng), C(rng)};
        const Point2 q = p + Point2{step(rng), step(rng)};
        ASSERT_LE(std::abs(point_deviation(p, c) - point_deviation(q, c)), distance(p, q) + 2e-4);
    }
}

Spline single_segment_spline(const std::vector<Point2>& loop, const CubicBezier& first, const CubicBezier& second,
                             std::size_t split) {
    Spline s;
    s.n_points = loop.size();
    s.segments.push_back({first, 0, split, {}});
    s.segments.push_back({second, split, 0, {}});
    return s;
}

TEST(SplineErrors, ExactRoundTripIsZero) {
    const auto loop = testing::lens_outline({0, 0}, {100, 0}, 30, 30, 25, 25, 50);
    const Spline s = single_segment_spline(loop, testing::chord_aligned_cubic({0, 0}, {100, 0}, 30, 30),
                                           testing::chord_aligned_cubic({100, 0}, {0, 0}, 25, 25), 49);
    const ErrorStats e = spline_errors(loop, s);
    EXPECT_LT(e.max_dev, 1e-3);
    EXPECT_LT(e.avg_error, 1e-3);
}

TEST(SplineErrors, ChordFitOfArchMeasuresItsHeight) {
    std::vector<Point2> loop;
    for (int i = 0; i <= 40; ++i) loop.push_back({double(i), 0.01 * i * (40 - i)});  // height 4 at x = 20
    for (int i = 39; i > 0; --i) loop.push_back({double(i), 0.0});
    const Spline s = single_segment_spline(loop, chord_fit(loop[0], loop[40]), chord_fit(loop[40], loop[0]), 40);
    const ErrorStats e = spline_errors(loop, s);
    EXPECT_NEAR(e.max_dev, 4.0, 1e-2);
    EXPECT_LE(e.avg_error, e.max_dev);
}

TEST(SplineErrors, RequiresExactTiling) {
    const auto loop = testing::lens_outline({0, 0}, {100, 0}, 30, 30, 25, 25, 50);
    Spline s;
    s.n_points = loop.size();
    s.segments.push_back({chord_fit(loop[0], loop[49]), 0, 49, {}});
    EXPECT_THROW(spline_errors(loop, s), ConsistencyError);
    s.segments.push_back({chord_fit(loop[49], loop[0]), 49, 0, {}});
    s.segments.push_back({chord_fit(loop[0], loop[10]), 0, 10, {}});
    EXPECT_THROW(spline_errors(loop, s), ConsistencyError);
    s.segments.pop_back();
    s.n_points = loop.size() + 1;
    EXPECT_THROW(spline_errors(loop, s), ConsistencyError);
}

TEST(SplineErrors, InvariantUnderRigidMotion) {
    const auto loop = testing::lens_outline({10, 5}, {90, 35}, 20, 35, 15, 5, 40);
    const Spline s = single_segment_spline(loop, chord_fit(loop[0], loop[39]), chord_fit(loop[39], loop[0]), 39);
    const ErrorStats e = spline_errors(loop, s);
    std::vector<Point2> moved;
    for (const Point2& p : loop) moved.push_back(testing::rotate(p, 1.1, {50, 50}) + Point2{-7, 3});
    Spline ms = s;
    for (auto& seg : ms.segments) {
        for (Point2* p : {&seg.curve.p0, &seg.curve.p1, &seg.curve.p2, &seg.curve.p3}) {
            *p = testing::rotate(*p, 1.1, {50, 50}) + Point2{-7, 3};
        }
    }
    const ErrorStats m = spline_errors(moved, ms);
    EXPECT_NEAR(m.max_dev, e.max_dev, 1e-6);
    EXPECT_NEAR(m.avg_error, e.avg_error, 1e-6);
}

TEST(CompressionRatio, Values) {
    EXPECT_NEAR(compression_ratio(1612, 20), 80.60, 0.005);
    EXPECT_NEAR(compression_ratio(1612, 15), 107.47, 0.005);
    EXPECT_EQ(compression_ratio(77, 77), 1.0);
    EXPECT_THROW(compression_ratio(10, 0), DomainError);
}

TEST(Report, AggregatesInOrder) {
    const FitReport r = make_report({{0.5, 1.5}, {0.0, 2.0, 1.0}}, 2);
    EXPECT_EQ(r.n_points, 5u);
    EXPECT_EQ(r.n_segments, 2u);
    EXPECT_DOUBLE_EQ(r.max_dev, 2.0);
    EXPECT_DOUBLE_EQ(r.avg_error, 1.0);
    EXPECT_DOUBLE_EQ(r.compression_ratio * r.n_segments, 5.0);
    const std::string table = format_report_table(r, "x");
    EXPECT_NE(table.find("No. of segs."), std::string::npos);
    EXPECT_NE(table.find("Compression ratio"), std::string::npos);
    EXPECT_NE(table.find("Avg. error"), std::string::npos);
}

}  // namespace
}  // namespace bezierfit
