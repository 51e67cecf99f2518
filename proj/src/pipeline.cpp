#include "bezierfit/pipeline.hpp"

#include "bezierfit/errors.hpp"
#include "bezierfit/metrics.hpp"
#include "bezierfit/subdivision.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

namespace bezierfit {

void PipelineConfig::validate() const {
    fit.validate();
    if (corners.support_length < 1) throw PreconditionError("support length must be at least 1");
    if (!(corners.threshold > 0.0)) throw PreconditionError("corner threshold must be positive");
    if (corners.effective_suppress_range() < 1) throw PreconditionError("suppression range must be at least 1");
    if (repeat < 1) throw PreconditionError("repeat count must be at least 1");
}

unsigned PipelineConfig::effective_threads() const {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run(i);
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

namespace {

struct LoopWork {
    std::size_t source = 0;
    CornerSet corners;
    std::vector<IndexRange> ranges;
    std::vector<std::vector<LocalSegment>> fits;
    std::string error;
};

PipelineResult run_once(const std::vector<Outline>& outlines, int width, int height, const PipelineConfig& cfg) {
    PipelineResult res;
    res.doc.width = width;
    res.doc.height = height;
    res.doc.corner_params = cfg.corners;
    res.doc.corner_params.suppress_range = cfg.corners.effective_suppress_range();
    res.doc.fit_config = cfg.fit;
    const unsigned threads = cfg.effective_threads();

    const auto min_points = 2 * static_cast<std::size_t>(cfg.corners.support_length) + 1;
    std::vector<LoopWork> work;
    for (std::size_t i = 0; i < outlines.size(); ++i) {
        if (!outlines[i].closed) {
            res.warnings.push_back("contour " + std::to_string(i) + ": open outline skipped");
            ++res.skipped;
        } else if (outlines[i].points.size() < min_points) {
            res.warnings.push_back("contour " + std::to_string(i) + ": " + std::to_string(outlines[i].points.size()) +
                                   " points, shorter than 2L+1 = " + std::to_string(min_points) + "; skipped");
            ++res.skipped;
        } else {
            work.push_back({i, {}, {}, {}, {}});
        }
    }

    parallel_for(work.size(), threads, [&](std::size_t w) {
        LoopWork& lw = work[w];
        try {
            lw.corners = detect_corners(outlines[lw.source].points, cfg.corners);
            lw.ranges = segment_boundaries(outlines[lw.source].points.size(), lw.corners);
            lw.fits.resize(lw.ranges.size());
        } catch (const std::exception& e) {
            lw.error = e.what();
        }
    });

    struct Task {
        std::size_t loop;
        std::size_t range;
    };
    std::vector<Task> tasks;
    for (std::size_t w = 0; w < work.size(); ++w) {
        if (!work[w].error.empty()) continue;
        for (std::size_t r = 0; r < work[w].ranges.size(); ++r) tasks.push_back({w, r});
    }
    std::vector<std::string> task_errors(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t t) {
        LoopWork& lw = work[tasks[t].loop];
        try {
            const auto pts = extract_range(outlines[lw.source].points, lw.ranges[tasks[t].range]);
            lw.fits[tasks[t].range] = fit_recursive(pts, cfg.fit);
        } catch (const std::exception& e) {
            task_errors[t] = e.what();
        }
    });
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (!task_errors[t].empty() && work[tasks[t].loop].error.empty()) work[tasks[t].loop].error = task_errors[t];
    }

    std::vector<std::size_t> fitted;
    for (std::size_t w = 0; w < work.size(); ++w) {
        if (!work[w].error.empty()) {
            res.warnings.push_back("contour " + std::to_string(work[w].source) + ": " + work[w].error + "; skipped");
            ++res.skipped;
            continue;
        }
        fitted.push_back(w);
        const auto n = outlines[work[w].source].points.size();
        res.doc.contours.push_back({work[w].source, stitch_spline(n, work[w].corners, work[w].ranges, work[w].fits)});
        for (const SplineSegment& s : res.doc.contours.back().spline.segments) {
            if (s.flags.depth_capped) {
                res.warnings.push_back("contour " + std::to_string(work[w].source) +
                                       ": subdivision depth limit reached");
                break;
            }
        }
    }

    res.deviations.resize(res.doc.contours.size());
    parallel_for(res.doc.contours.size(), threads, [&](std::size_t c) {
        const ContourSpline& cs = res.doc.contours[c];
        res.deviations[c] = point_deviations(outlines[cs.contour].points, cs.spline);
    });

    std::size_t segments = 0;
    for (const ContourSpline& cs : res.doc.contours) segments += cs.spline.segments.size();
    res.doc.report = make_report(res.deviations, segments);
    return res;
}

}  // namespace

PipelineResult fit_outlines(const std::vector<Outline>& outlines, int width, int height, const PipelineConfig& cfg) {
    cfg.validate();
    std::vector<double> times;
    PipelineResult res;
    for (int r = 0; r < cfg.repeat; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        res = run_once(outlines, width, height, cfg);
        times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t m = times.size();
    res.doc.report.wall_time = m % 2 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
    return res;
}

PipelineResult fit_contours(const ContourSet& set, const PipelineConfig& cfg) {
    std::vector<Outline> outlines;
    outlines.reserve(set.contours.size());
    for (const Contour& c : set.contours) outlines.push_back({c.to_points(), true});
    return fit_outlines(outlines, set.width, set.height, cfg);
}

FitReport measure(const ContourSet& set, const SplineDocument& doc, unsigned threads) {
    std::vector<std::vector<double>> deviations(doc.contours.size());
    for (const ContourSpline& cs : doc.contours) {
        if (cs.contour >= set.contours.size()) {
            throw ConsistencyError("spline refers to contour " + std::to_string(cs.contour) + " but the file has " +
                                   std::to_string(set.contours.size()));
        }
    }
    parallel_for(doc.contours.size(), threads, [&](std::size_t c) {
        const ContourSpline& cs = doc.contours[c];
        deviations[c] = point_deviations(set.contours[cs.contour].to_points(), cs.spline);
    });
    std::size_t segments = 0;
    for (const ContourSpline& cs : doc.contours) segments += cs.spline.segments.size();
    return make_report(deviations, segments);
}

}  // namespace bezierfit
