#pragma once

#include "bezierfit/geometry.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bezierfit {

/// Region-of-support corner detector settings.
struct CornerParams {
    int support_length = 14;            // L, in contour points
    double threshold = 2.6;             // D, pixels; a candidate needs distance > D
    std::optional<int> suppress_range;  // R, in contour points; defaults to L

    int effective_suppress_range() const { return suppress_range.value_or(support_length); }
};

struct CornerSet {
    std::vector<std::size_t> indices;  // strictly increasing
    std::vector<double> strengths;     // assigned distance per corner

    std::size_t size() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
};

/// Inclusive circular index range [begin .. end] on a closed loop. `end` may be
/// smaller than `begin` when the range wraps past the last point.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Corner points of a closed loop.
///
/// For every point i the chord to point (i + L) mod n is formed, and the
/// points strictly between them are measured with perpendicular_distance.
/// All points attaining the maximum become candidates when that maximum
/// exceeds D; a point reached from several chords keeps its largest distance.
/// A candidate survives suppression only if no other candidate within R
/// points on either side has a larger distance, or an equal distance and a
/// smaller index.
///
/// Throws PreconditionError unless n > 2L, L >= 1 and R >= 1.
CornerSet detect_corners(std::span<const Point2> loop, const CornerParams& params);

/// Splits a loop of n points at its corners. With fewer than two corners the
/// loop is broken at the corner (or 0) and the index half way round.
std::vector<IndexRange> segment_boundaries(std::size_t n, const CornerSet& corners);

/// Number of points covered by an inclusive circular range on a loop of n points.
std::size_t range_length(std::size_t n, const IndexRange& r);

/// Copies the points of an inclusive circular range.
std::vector<Point2> extract_range(std::span<const Point2> loop, const IndexRange& r);

}  // namespace bezierfit
