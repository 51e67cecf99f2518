#pragma once

#include "bezierfit/geometry.hpp"
#include "bezierfit/spline.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bezierfit {

/// Fit quality and storage figures for one or more fitted loops.
struct FitReport {
    std::size_t n_points = 0;
    std::size_t n_segments = 0;
    double max_dev = 0.0;
    double avg_error = 0.0;
    double compression_ratio = 0.0;
    double wall_time = 0.0;  // seconds
};

struct ErrorStats {
    double max_dev = 0.0;
    double avg_error = 0.0;
};

/// Smallest distance from p to the curve. The curve is scanned at
/// max(256, 4 * segment_points) uniform parameters and the best sample is
/// refined by golden-section search to 1e-4 px.
double point_deviation(const Point2& p, const CubicBezier& c, std::size_t segment_points = 0);

/// Deviation of every loop point from the curve of the segment it belongs to.
/// A segment owns its points from `begin` up to, not including, `end`.
/// Throws ConsistencyError unless the segments tile the loop exactly once.
std::vector<double> point_deviations(std::span<const Point2> loop, const Spline& spline);

ErrorStats spline_errors(std::span<const Point2> loop, const Spline& spline);

/// Points per segment. Throws DomainError for zero segments.
double compression_ratio(std::size_t n_points, std::size_t n_segments);

/// Combines per-loop deviations (in loop order) into one report.
FitReport make_report(const std::vector<std::vector<double>>& deviations, std::size_t n_segments,
                      double wall_time = 0.0);

/// Aligned two-line table: header and one row.
std::string format_report_table(const FitReport& r, std::string_view label = "");

}  // namespace bezierfit
