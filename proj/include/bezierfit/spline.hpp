#pragma once

#include "bezierfit/geometry.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace bezierfit {

/// Ordered outline points. Only closed outlines can be fitted.
struct Outline {
    std::vector<Point2> points;
    bool closed = true;
};

/// How a spline segment came to be.
struct SegmentFlags {
    bool subdivided = false;    // produced by splitting a corner-delimited range
    bool fallback = false;      // chord fit
    bool arc_length = false;    // arc-length parameterization was used
    bool depth_capped = false;  // recursion limit reached while still over threshold

    std::string_view provenance() const {
        return fallback ? "fallback" : subdivided ? "subdivided" : "corner-delimited";
    }
    friend bool operator==(const SegmentFlags&, const SegmentFlags&) = default;
};

/// One cubic covering contour points begin .. end (inclusive, circular).
struct SplineSegment {
    CubicBezier curve;
    std::size_t begin = 0;
    std::size_t end = 0;
    SegmentFlags flags;

    friend bool operator==(const SplineSegment&, const SplineSegment&) = default;
};

/// Cubic segments covering one closed loop, joined end to start.
struct Spline {
    std::size_t n_points = 0;         // points of the loop the spline was fitted to
    std::vector<std::size_t> corners;  // detected corner indices
    std::vector<SplineSegment> segments;

    /// Start index of every segment; a superset of `corners`.
    std::vector<std::size_t> breaks() const {
        std::vector<std::size_t> out;
        out.reserve(segments.size());
        for (const auto& s : segments) out.push_back(s.begin);
        return out;
    }

    friend bool operator==(const Spline&, const Spline&) = default;
};

}  // namespace bezierfit
