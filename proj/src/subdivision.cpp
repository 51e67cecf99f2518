#include "bezierfit/subdivision.hpp"

#include "bezierfit/errors.hpp"
#include "bezierfit/metrics.hpp"

#include <algorithm>

namespace bezierfit {

namespace {

double max_deviation(std::span<const Point2> pts, const CubicBezier& c) {
    double worst = 0.0;
    for (const Point2& p : pts) worst = std::max(worst, point_deviation(p, c, pts.size()));
    return worst;
}

void fit_into(std::span<const Point2> pts, const FitConfig& cfg, std::size_t offset, int depth,
              std::vector<LocalSegment>& out) {
    const SegmentFit fit = fit_segment(pts, cfg);
    LocalSegment seg{fit.curve, offset, offset + pts.size() - 1, {}};
    seg.flags.fallback = fit.fallback;
    seg.flags.arc_length = fit.arc_length;
    seg.flags.subdivided = depth > 0;

    const bool too_wide = !fit.fallback && needs_subdivision(fit.spread, cfg);
    const bool too_far = cfg.max_error && max_deviation(pts, fit.curve) > *cfg.max_error;
    if (!too_wide && !too_far) {
        out.push_back(seg);
        return;
    }
    if (depth >= kMaxSubdivisionDepth) {
        seg.flags.depth_capped = true;
        out.push_back(seg);
        return;
    }
    const auto split = split_point(pts, fit.curve, cfg.min_segment_points);
    if (!split) {
        out.push_back(seg);
        return;
    }
    fit_into(pts.subspan(0, *split + 1), cfg, offset, depth + 1, out);
    fit_into(pts.subspan(*split), cfg, offset + *split, depth + 1, out);
}

}  // namespace

bool needs_subdivision(const CandidateSpread& sp, const FitConfig& cfg) {
    return std::max(sp.radius1, sp.radius2) > cfg.spread_threshold;
}

std::optional<std::size_t> split_point(std::span<const Point2> pts, const CubicBezier& fitted, int min_segment_points) {
    const std::size_t len = pts.size();
    const auto msp = static_cast<std::size_t>(std::max(min_segment_points, 2));
    if (len < 2 * msp) return std::nullopt;
    std::size_t best = 1;
    double worst = -1.0;
    // Differences below 1e-9 px are rounding noise and count as ties.
    for (std::size_t i = 1; i + 1 < len; ++i) {
        const double d = point_deviation(pts[i], fitted, len);
        if (d > worst + 1e-9) {
            worst = d;
            best = i;
        }
    }
    return std::clamp(best, msp - 1, len - msp);
}

std::vector<LocalSegment> fit_recursive(std::span<const Point2> pts, const FitConfig& cfg) {
    std::vector<LocalSegment> out;
    fit_into(pts, cfg, 0, 0, out);
    return out;
}

Spline stitch_spline(std::size_t n, const CornerSet& corners, const std::vector<IndexRange>& ranges,
                     const std::vector<std::vector<LocalSegment>>& fits) {
    Spline spline;
    spline.n_points = n;
    spline.corners = corners.indices;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
        for (const LocalSegment& local : fits[r]) {
            spline.segments.push_back({local.curve, (ranges[r].begin + local.begin) % n,
                                       (ranges[r].begin + local.end) % n, local.flags});
        }
    }
    return spline;
}

Spline assemble_spline(const Outline& outline, const CornerSet& corners, const FitConfig& cfg) {
    if (!outline.closed) throw PreconditionError("only closed outlines can be fitted");
    const std::size_t n = outline.points.size();
    if (n < 4) throw PreconditionError("outline needs at least 4 points");
    const std::vector<IndexRange> ranges = segment_boundaries(n, corners);
    std::vector<std::vector<LocalSegment>> fits;
    fits.reserve(ranges.size());
    for (const IndexRange& r : ranges) {
        fits.push_back(fit_recursive(extract_range(outline.points, r), cfg));
    }
    return stitch_spline(n, corners, ranges, fits);
}

}  // namespace bezierfit
