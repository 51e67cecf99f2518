#pragma once

#include "bezierfit/corners.hpp"
#include "bezierfit/metrics.hpp"
#include "bezierfit/segment_fit.hpp"
#include "bezierfit/spline.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bezierfit {

inline constexpr int kSplineFormatVersion = 1;

/// Spline of the contour at `contour` in the source contour file.
struct ContourSpline {
    std::size_t contour = 0;
    Spline spline;

    friend bool operator==(const ContourSpline&, const ContourSpline&) = default;
};

struct SplineDocument {
    int width = 0;
    int height = 0;
    CornerParams corner_params;
    FitConfig fit_config;
    FitReport report;  // wall_time is not serialized
    std::vector<ContourSpline> contours;
};

struct SvgLayers {
    bool outline = false;   // input polylines
    bool breaks = false;    // segment end points
    bool controls = false;  // interior control points
    bool polygons = false;  // control polygons

    bool any() const { return outline || breaks || controls || polygons; }
};

/// Parses a comma separated layer list ("outline,breaks,controls,polygons" or "all").
SvgLayers parse_layers(std::string_view list);

/// SVG 1.1 drawing of the fitted splines, one path per contour.
/// `outlines` (indexed like ContourSpline::contour) is only needed for the outline layer.
std::string to_svg(const SplineDocument& doc, const SvgLayers& layers = {},
                   const std::vector<std::vector<Point2>>* outlines = nullptr);

/// Path data "M x,y C ... Z" with three decimals.
std::string path_data(const Spline& spline);

/// Report as a JSON object; the timing field is included only when asked for.
std::string format_report_json(const FitReport& r, bool with_time = false);

std::string format_spline(const SplineDocument& doc);
SplineDocument parse_spline(std::string_view text);
void write_spline(const std::filesystem::path& path, const SplineDocument& doc);
SplineDocument read_spline(const std::filesystem::path& path);

}  // namespace bezierfit
