#pragma once

#include "bezierfit/contour.hpp"
#include "bezierfit/corners.hpp"
#include "bezierfit/render_io.hpp"
#include "bezierfit/segment_fit.hpp"
#include "bezierfit/spline.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace bezierfit {

struct PipelineConfig {
    CornerParams corners;
    FitConfig fit;
    unsigned threads = 0;  // 0 = hardware concurrency
    int repeat = 1;        // timing runs; the reported time is their median

    void validate() const;
    unsigned effective_threads() const;
};

struct PipelineResult {
    SplineDocument doc;
    std::vector<std::vector<double>> deviations;  // per fitted contour, in contour order
    std::vector<std::string> warnings;
    std::size_t skipped = 0;  // contours not fitted
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Corner detection, recursive fitting and error measurement for every outline.
/// Outlines shorter than 2L + 1 points are skipped with a warning, as are
/// outlines whose fit fails. The result does not depend on the thread count.
PipelineResult fit_outlines(const std::vector<Outline>& outlines, int width, int height, const PipelineConfig& cfg);

PipelineResult fit_contours(const ContourSet& set, const PipelineConfig& cfg);

/// Recomputes the report of an existing spline document against its contours.
/// Throws ConsistencyError when the document does not match the contour set.
FitReport measure(const ContourSet& set, const SplineDocument& doc, unsigned threads = 1);

}  // namespace bezierfit
