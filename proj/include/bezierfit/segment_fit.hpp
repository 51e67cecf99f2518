#pragma once

#include "bezierfit/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bezierfit {

struct FitConfig {
    double removal_rate = 0.05;    // fraction of candidates dropped per pruning pass
    int removal_iters = 2;         // pruning passes
    double spread_threshold = 10;  // pixels; spread radius that triggers subdivision
    double eps_t = 1e-3;           // exclusion band around t = 0, 0.5, 1
    int min_segment_points = 8;    // shorter segments get the chord fit
    std::optional<double> max_error;  // optional second subdivision trigger, pixels

    /// Throws PreconditionError on out-of-range settings.
    void validate() const;
};

/// Segment points with one parameter per point; params run 0 -> 1, strictly increasing.
struct SegmentSamples {
    std::vector<Point2> pts;
    std::vector<double> params;
    bool arc_length = false;  // chord projection was not monotone; arc length used instead
};

struct ControlPair {
    Point2 p1;
    Point2 p2;
};

/// One candidate solution for the interior control points, obtained from the
/// contour sample at `t` and the mirrored sample at 1 - t.
struct CandidatePair {
    double t = 0.0;
    Point2 at;      // contour at t
    Point2 mirror;  // contour at 1 - t
    Point2 p1;
    Point2 p2;
};

struct CandidateSpread {
    std::vector<CandidatePair> candidates;
    Point2 mean1, mean2;
    Point2 var1, var2;  // population variance per coordinate
    double radius1 = 0.0;
    double radius2 = 0.0;

    bool empty() const { return candidates.empty(); }
    std::size_t size() const { return candidates.size(); }
    /// Recomputes mean, variance and radius from `candidates`.
    void update_statistics();
};

struct SegmentFit {
    CubicBezier curve;
    CandidateSpread spread;  // after pruning; empty for chord fits
    bool fallback = false;   // chord fit (too few points or no usable candidates)
    bool arc_length = false;
};

/// Parameterizes by orthogonal projection on the endpoint chord. Falls back to
/// normalized cumulative chord length when the projections are not strictly
/// increasing. Throws PreconditionError for fewer than 2 points and
/// DegenerateError for coincident endpoints or repeated consecutive points.
SegmentSamples parameterize(std::span<const Point2> pts);

/// Piecewise-linear interpolation of the samples at t in [0, 1].
Point2 sample_at(const SegmentSamples& s, double t);

/// Solves
///   P1*B1(t) + P2*B2(t) = c1,   P1*B2(t) + P2*B1(t) = c2
/// with c1 = C(t) - P0*B0(t) - P3*B3(t) and c2 = C(1-t) - P0*B0(1-t) - P3*B3(1-t).
/// Throws SingularParameterError when t lies within eps_t of 0, 0.5 or 1 or the
/// determinant B1^2 - B2^2 falls below 1e-9.
ControlPair solve_candidate(const Point2& p0, const Point2& p3, const Point2& at, const Point2& mirror, double t,
                            double eps_t = 1e-3);

/// Candidates from every sample with eps_t < t < 0.5 - eps_t. An empty result
/// means no usable parameter. Throws PreconditionError when the segment has
/// fewer than min_segment_points points.
CandidateSpread build_spread(const SegmentSamples& s, const FitConfig& cfg);

/// Drops the ceil(rate * count) pairs farthest from the means, removal_iters
/// times, keeping at least one pair.
CandidateSpread prune_spread(CandidateSpread sp, const FitConfig& cfg);

/// Straight-line cubic with interior controls at 1/3 and 2/3 of the chord.
CubicBezier chord_fit(const Point2& p0, const Point2& p3);

/// Cubic through the first and last point with interior controls at the
/// means of the pruned candidate spread; chord fit when the segment is
/// shorter than min_segment_points or no candidate survives.
SegmentFit fit_segment(std::span<const Point2> pts, const FitConfig& cfg);

}  // namespace bezierfit
