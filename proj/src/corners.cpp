#include "bezierfit/corners.hpp"

#include "bezierfit/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace bezierfit {

CornerSet detect_corners(std::span<const Point2> loop, const CornerParams& params) {
    const std::size_t n = loop.size();
    const int L = params.support_length;
    const int R = params.effective_suppress_range();
    if (L < 1) throw PreconditionError("support length must be at least 1");
    if (R < 1) throw PreconditionError("suppression range must be at least 1");
    if (n <= 2 * static_cast<std::size_t>(L)) {
        throw PreconditionError("contour of " + std::to_string(n) + " points is too short for support length " +
                                std::to_string(L));
    }
    const auto ul = static_cast<std::size_t>(L);

    constexpr double kUnassigned = -1.0;
    std::vector<double> assigned(n, kUnassigned);
    std::vector<double> dist(ul > 1 ? ul - 1 : 0);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + ul) % n;
        if (loop[i] == loop[k] || ul < 2) continue;
        double best = -1.0;
        for (std::size_t s = 1; s < ul; ++s) {
            const double d = perpendicular_distance(loop[(i + s) % n], loop[i], loop[k]);
            dist[s - 1] = d;
            best = std::max(best, d);
        }
        if (!(best > params.threshold)) continue;
        for (std::size_t s = 1; s < ul; ++s) {
            if (dist[s - 1] == best) {
                double& slot = assigned[(i + s) % n];
                slot = std::max(slot, best);
            }
        }
    }

    CornerSet out;
    const auto ur = static_cast<std::size_t>(R);
    for (std::size_t j = 0; j < n; ++j) {
        const double dj = assigned[j];
        if (dj == kUnassigned) continue;
        bool keep = true;
        for (std::size_t off = 1; off <= ur && keep; ++off) {
            for (const std::size_t q : {(j + off) % n, (j + n - off % n) % n}) {
                if (q == j || assigned[q] == kUnassigned) continue;
                if (assigned[q] > dj || (assigned[q] == dj && q < j)) {
                    keep = false;
                    break;
                }
            }
        }
        if (keep) {
            out.indices.push_back(j);
            out.strengths.push_back(dj);
        }
    }
    return out;
}

std::vector<IndexRange> segment_boundaries(std::size_t n, const CornerSet& corners) {
    std::vector<std::size_t> breaks = corners.indices;
    if (breaks.size() < 2) {
        const std::size_t first = breaks.empty() ? 0 : breaks.front();
        breaks = {first, (first + n / 2) % n};
        std::sort(breaks.begin(), breaks.end());
    }
    std::vector<IndexRange> ranges;
    ranges.reserve(breaks.size());
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        ranges.push_back({breaks[i], breaks[(i + 1) % breaks.size()]});
    }
    return ranges;
}

std::size_t range_length(std::size_t n, const IndexRange& r) {
    return (r.end + n - r.begin) % n + 1;
}

std::vector<Point2> extract_range(std::span<const Point2> loop, const IndexRange& r) {
    const std::size_t n = loop.size();
    const std::size_t m = range_length(n, r);
    std::vector<Point2> out;
    out.reserve(m);
    for (std::size_t s = 0; s < m; ++s) out.push_back(loop[(r.begin + s) % n]);
    return out;
}

}  // namespace bezierfit
