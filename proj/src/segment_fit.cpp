#include "bezierfit/segment_fit.hpp"

#include "bezierfit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bezierfit {

namespace {

constexpr double kMinDeterminant = 1e-9;

}  // namespace

void FitConfig::validate() const {
    if (!(removal_rate >= 0.0 && removal_rate < 0.5)) throw PreconditionError("removal rate must be in [0, 0.5)");
    if (removal_iters < 0) throw PreconditionError("removal iterations must be non-negative");
    if (!(spread_threshold > 0.0)) throw PreconditionError("spread threshold must be positive");
    if (!(eps_t > 0.0 && eps_t < 0.25)) throw PreconditionError("eps_t must be in (0, 0.25)");
    if (min_segment_points < 2) throw PreconditionError("minimum segment points must be at least 2");
    if (max_error && !(*max_error > 0.0)) throw PreconditionError("max error must be positive");
}

void CandidateSpread::update_statistics() {
    mean1 = mean2 = var1 = var2 = {};
    radius1 = radius2 = 0.0;
    if (candidates.empty()) return;
    const auto n = static_cast<double>(candidates.size());
    for (const CandidatePair& c : candidates) {
        mean1 += c.p1;
        mean2 += c.p2;
    }
    mean1 = mean1 / n;
    mean2 = mean2 / n;
    for (const CandidatePair& c : candidates) {
        const Point2 d1 = c.p1 - mean1;
        const Point2 d2 = c.p2 - mean2;
        var1 += Point2{d1.x * d1.x, d1.y * d1.y};
        var2 += Point2{d2.x * d2.x, d2.y * d2.y};
        radius1 = std::max(radius1, norm(d1));
        radius2 = std::max(radius2, norm(d2));
    }
    var1 = var1 / n;
    var2 = var2 / n;
}

SegmentSamples parameterize(std::span<const Point2> pts) {
    if (pts.size() < 2) throw PreconditionError("segment needs at least 2 points");
    const Point2& a = pts.front();
    const Point2& b = pts.back();
    if (a == b) throw DegenerateError("segment endpoints coincide");

    SegmentSamples s;
    s.pts.assign(pts.begin(), pts.end());
    s.params.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) s.params[i] = project_parameter(pts[i], a, b);
    s.params.front() = 0.0;
    s.params.back() = 1.0;

    const bool monotone = std::adjacent_find(s.params.begin(), s.params.end(),
                                             [](double x, double y) { return !(x < y); }) == s.params.end();
    if (!monotone) {
        s.arc_length = true;
        double total = 0.0;
        s.params[0] = 0.0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double step = distance(pts[i - 1], pts[i]);
            if (step == 0.0) throw DegenerateError("segment repeats point " + std::to_string(i));
            total += step;
            s.params[i] = total;
        }
        for (double& t : s.params) t /= total;
        s.params.back() = 1.0;
    }
    return s;
}

Point2 sample_at(const SegmentSamples& s, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("sample_at: parameter " + std::to_string(t) + " outside [0, 1]");
    const auto it = std::upper_bound(s.params.begin(), s.params.end(), t);
    if (it == s.params.end()) return s.pts.back();
    const auto hi = static_cast<std::size_t>(it - s.params.begin());
    const std::size_t lo = hi - 1;
    if (s.params[lo] == t) return s.pts[lo];
    const double f = (t - s.params[lo]) / (s.params[hi] - s.params[lo]);
    return s.pts[lo] + (s.pts[hi] - s.pts[lo]) * f;
}

ControlPair solve_candidate(const Point2& p0, const Point2& p3, const Point2& at, const Point2& mirror, double t,
                            double eps_t) {
    if (std::abs(t) <= eps_t || std::abs(t - 0.5) <= eps_t || std::abs(1.0 - t) <= eps_t) {
        throw SingularParameterError("parameter " + std::to_string(t) + " too close to 0, 0.5 or 1");
    }
    const BlendingVector b = blend(t);
    const BlendingVector m = blend(1.0 - t);
    const double det = b.b1 * b.b1 - b.b2 * b.b2;
    if (std::abs(det) < kMinDeterminant) {
        throw SingularParameterError("vanishing determinant at parameter " + std::to_string(t));
    }
    const Point2 c1 = at - p0 * b.b0 - p3 * b.b3;
    const Point2 c2 = mirror - p0 * m.b0 - p3 * m.b3;
    return {(c1 * b.b1 - c2 * b.b2) / det, (c2 * b.b1 - c1 * b.b2) / det};
}

CandidateSpread build_spread(const SegmentSamples& s, const FitConfig& cfg) {
    if (s.pts.size() < static_cast<std::size_t>(cfg.min_segment_points)) {
        throw PreconditionError("segment of " + std::to_string(s.pts.size()) + " points is shorter than " +
                                std::to_string(cfg.min_segment_points));
    }
    const Point2& p0 = s.pts.front();
    const Point2& p3 = s.pts.back();
    CandidateSpread sp;
    for (std::size_t i = 1; i + 1 < s.pts.size(); ++i) {
        const double t = s.params[i];
        if (!(t > cfg.eps_t && t < 0.5 - cfg.eps_t)) continue;
        const Point2 mirror = sample_at(s, 1.0 - t);
        try {
            const ControlPair cp = solve_candidate(p0, p3, s.pts[i], mirror, t, cfg.eps_t);
            sp.candidates.push_back({t, s.pts[i], mirror, cp.p1, cp.p2});
        } catch (const SingularParameterError&) {
        }
    }
    sp.update_statistics();
    return sp;
}

CandidateSpread prune_spread(CandidateSpread sp, const FitConfig& cfg) {
    for (int iter = 0; iter < cfg.removal_iters && sp.size() > 1; ++iter) {
        const std::size_t count = sp.size();
        std::size_t drop = static_cast<std::size_t>(std::ceil(cfg.removal_rate * static_cast<double>(count)));
        drop = std::min(drop, count - 1);
        if (drop == 0) break;

        std::vector<double> score(count);
        for (std::size_t i = 0; i < count; ++i) {
            const Point2 d1 = sp.candidates[i].p1 - sp.mean1;
            const Point2 d2 = sp.candidates[i].p2 - sp.mean2;
            score[i] = dot(d1, d1) + dot(d2, d2);
        }
        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

        std::vector<bool> removed(count, false);
        for (std::size_t k = 0; k < drop; ++k) removed[order[k]] = true;
        std::vector<CandidatePair> kept;
        kept.reserve(count - drop);
        for (std::size_t i = 0; i < count; ++i) {
            if (!removed[i]) kept.push_back(sp.candidates[i]);
        }
        sp.candidates = std::move(kept);
        sp.update_statistics();
    }
    return sp;
}

CubicBezier chord_fit(const Point2& p0, const Point2& p3) {
    const Point2 d = p3 - p0;
    return {p0, p0 + d / 3.0, p0 + d * (2.0 / 3.0), p3};
}

SegmentFit fit_segment(std::span<const Point2> pts, const FitConfig& cfg) {
    if (pts.size() < 2) throw PreconditionError("segment needs at least 2 points");
    if (pts.front() == pts.back()) throw DegenerateError("segment endpoints coincide");

    SegmentFit fit;
    fit.curve = chord_fit(pts.front(), pts.back());
    if (pts.size() < static_cast<std::size_t>(cfg.min_segment_points)) {
        fit.fallback = true;
        return fit;
    }
    const SegmentSamples s = parameterize(pts);
    fit.arc_length = s.arc_length;
    CandidateSpread sp = build_spread(s, cfg);
    if (sp.empty()) {
        fit.fallback = true;
        return fit;
    }
    fit.spread = prune_spread(std::move(sp), cfg);
    fit.curve.p1 = fit.spread.mean1;
    fit.curve.p2 = fit.spread.mean2;
    return fit;
}

}  // namespace bezierfit
