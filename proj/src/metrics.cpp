#include "bezierfit/metrics.hpp"

#include "bezierfit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bezierfit {

double point_deviation(const Point2& p, const CubicBezier& c, std::size_t segment_points) {
    const std::size_t steps = std::max<std::size_t>(256, 4 * segment_points);
    std::size_t best_k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= steps; ++k) {
        const double d = distance(p, evaluate(c, static_cast<double>(k) / static_cast<double>(steps)));
        if (d < best) {
            best = d;
            best_k = k;
        }
    }

    double lo = static_cast<double>(best_k == 0 ? 0 : best_k - 1) / static_cast<double>(steps);
    double hi = static_cast<double>(std::min(best_k + 1, steps)) / static_cast<double>(steps);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = distance(p, evaluate(c, a));
    double fb = distance(p, evaluate(c, b));
    for (int iter = 0; iter < 200 && distance(evaluate(c, lo), evaluate(c, hi)) > 1e-5; ++iter) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = distance(p, evaluate(c, a));
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = distance(p, evaluate(c, b));
        }
    }
    best = std::min({best, fa, fb});

    // Newton polish on the squared distance; the bracket search alone stops near 1e-6 px.
    double u = fa < fb ? a : b;
    const Point2 d1a = 3.0 * (c.p1 - c.p0), d1b = 3.0 * (c.p2 - c.p1), d1c = 3.0 * (c.p3 - c.p2);
    for (int iter = 0; iter < 20; ++iter) {
        const double v = 1.0 - u;
        const Point2 r = evaluate(c, u) - p;
        const Point2 d1 = d1a * (v * v) + d1b * (2.0 * u * v) + d1c * (u * u);
        const Point2 d2 = (d1b - d1a) * (2.0 * v) + (d1c - d1b) * (2.0 * u);
        const double g = dot(r, d1);
        const double h = dot(d1, d1) + dot(r, d2);
        if (!(h > 0.0)) break;
        const double next = std::clamp(u - g / h, lo, hi);
        const double dn = distance(p, evaluate(c, next));
        if (!(dn < best)) break;
        best = dn;
        u = next;
    }
    return best;
}

std::vector<double> point_deviations(std::span<const Point2> loop, const Spline& spline) {
    const std::size_t n = loop.size();
    if (spline.segments.empty()) throw ConsistencyError("spline has no segments");
    if (spline.n_points != n) {
        throw ConsistencyError("spline was fitted to " + std::to_string(spline.n_points) + " points, contour has " +
                               std::to_string(n));
    }
    std::vector<double> out(n, -1.0);
    for (const SplineSegment& s : spline.segments) {
        if (s.begin >= n || s.end >= n) throw ConsistencyError("segment index outside contour");
        const std::size_t m = (s.end + n - s.begin) % n + 1;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            const std::size_t idx = (s.begin + k) % n;
            if (out[idx] >= 0.0) throw ConsistencyError("contour point " + std::to_string(idx) + " assigned twice");
            out[idx] = point_deviation(loop[idx], s.curve, m);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out[i] < 0.0) throw ConsistencyError("contour point " + std::to_string(i) + " not assigned to a segment");
    }
    return out;
}

ErrorStats spline_errors(std::span<const Point2> loop, const Spline& spline) {
    const std::vector<double> dev = point_deviations(loop, spline);
    ErrorStats e;
    double sum = 0.0;
    for (const double d : dev) {
        e.max_dev = std::max(e.max_dev, d);
        sum += d;
    }
    e.avg_error = dev.empty() ? 0.0 : sum / static_cast<double>(dev.size());
    return e;
}

double compression_ratio(std::size_t n_points, std::size_t n_segments) {
    if (n_segments == 0) throw DomainError("compression ratio undefined for zero segments");
    return static_cast<double>(n_points) / static_cast<double>(n_segments);
}

FitReport make_report(const std::vector<std::vector<double>>& deviations, std::size_t n_segments, double wall_time) {
    FitReport r;
    double sum = 0.0;
    for (const auto& loop : deviations) {
        for (const double d : loop) {
            r.max_dev = std::max(r.max_dev, d);
            sum += d;
        }
        r.n_points += loop.size();
    }
    r.n_segments = n_segments;
    r.avg_error = r.n_points ? sum / static_cast<double>(r.n_points) : 0.0;
    r.compression_ratio = n_segments ? compression_ratio(r.n_points, n_segments) : 0.0;
    r.wall_time = wall_time;
    return r;
}

std::string format_report_table(const FitReport& r, std::string_view label) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-16s %12s %18s %10s %11s %21s\n%-16.*s %12zu %18.2f %10.2f %11.2f %21.4f\n", "",
                  "No. of segs.", "Compression ratio", "Max dev.", "Avg. error", "Computation time (s)",
                  static_cast<int>(label.size()), label.data(), r.n_segments, r.compression_ratio, r.max_dev,
                  r.avg_error, r.wall_time);
    return buf;
}

}  // namespace bezierfit
