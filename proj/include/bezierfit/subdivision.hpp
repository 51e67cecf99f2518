#pragma once

#include "bezierfit/corners.hpp"
#include "bezierfit/segment_fit.hpp"
#include "bezierfit/spline.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bezierfit {

inline constexpr int kMaxSubdivisionDepth = 16;

/// True when either candidate cloud is wider than the spread threshold.
bool needs_subdivision(const CandidateSpread& sp, const FitConfig& cfg);

/// Interior point farthest from the fitted curve (smallest index on ties),
/// clamped so both halves keep min_segment_points points. Empty when the
/// segment has fewer than 2 * min_segment_points points.
std::optional<std::size_t> split_point(std::span<const Point2> pts, const CubicBezier& fitted, int min_segment_points);

/// Segment fitted over local point indices begin .. end.
struct LocalSegment {
    CubicBezier curve;
    std::size_t begin = 0;
    std::size_t end = 0;
    SegmentFlags flags;
};

/// Fits a cubic and keeps splitting at split_point while the candidate spread
/// (or, when configured, the maximum deviation) is over its limit.
std::vector<LocalSegment> fit_recursive(std::span<const Point2> pts, const FitConfig& cfg);

/// Joins per-range fits into one spline over a loop of n points.
Spline stitch_spline(std::size_t n, const CornerSet& corners, const std::vector<IndexRange>& ranges,
                     const std::vector<std::vector<LocalSegment>>& fits);

/// Segments the outline at its corners and fits every range recursively.
/// Throws PreconditionError for open outlines.
Spline assemble_spline(const Outline& outline, const CornerSet& corners, const FitConfig& cfg);

}  // namespace bezierfit
