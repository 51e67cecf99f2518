#include "cli.hpp"

#include "bezierfit/contour.hpp"
#include "bezierfit/corners.hpp"
#include "bezierfit/errors.hpp"
#include "bezierfit/metrics.hpp"
#include "bezierfit/pipeline.hpp"
#include "bezierfit/render_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace bezierfit::cli {

namespace {

struct Options {
    std::string input;
    std::string second_input;
    std::string output;
    std::string report_path;
    std::string format = "both";
    std::string debug_layers;
    bool json = false;
    std::optional<double> max_error;
    PipelineConfig pipeline;
};

void add_corner_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--support-length", o.pipeline.corners.support_length,
                     "Region-of-support length L in contour points (default: 14)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--corner-threshold", o.pipeline.corners.threshold,
                    "Distance threshold D in pixels; a corner needs distance > D (default: 2.6)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--suppress-range", o.pipeline.corners.suppress_range,
                    "Suppression range R in contour points (default: equal to L)")
        ->check(CLI::PositiveNumber);
}

void add_fit_flags(CLI::App* cmd, Options& o) {
    add_corner_flags(cmd, o);
    cmd->add_option("--removal-rate", o.pipeline.fit.removal_rate,
                    "Fraction of candidate pairs removed per pruning pass (default: 0.05)")
        ->check(CLI::Range(0.0, 0.4999999));
    cmd->add_option("--removal-iters", o.pipeline.fit.removal_iters, "Pruning passes (default: 2)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--spread-threshold", o.pipeline.fit.spread_threshold,
                    "Candidate spread radius in pixels above which a segment is split (default: 10)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-segment-points", o.pipeline.fit.min_segment_points,
                    "Segments with fewer points get a straight chord fit (default 8)")
        ->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--max-error", o.max_error,
                    "Also split segments whose maximum deviation exceeds this many pixels (off by default)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.pipeline.threads, "Worker threads (default: available parallelism)")
        ->check(CLI::NonNegativeNumber);
}

ContourSet load_contours(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FormatError("no such file: " + path);
    return read_contour(path);
}

int cmd_trace(const Options& o, std::ostream& out) {
    if (!std::filesystem::exists(o.input)) throw FormatError("no such file: " + o.input);
    const RasterImage img = load_image(o.input);
    ContourSet set{img.width(), img.height(), trace_boundaries(img)};
    write_contour(o.output, set);
    out << set.contours.size() << (set.contours.size() == 1 ? " loop" : " loops") << " traced from " << o.input
        << "\n";
    for (std::size_t i = 0; i < set.contours.size(); ++i) {
        out << "  loop " << i << ": " << set.contours[i].size() << " points"
            << (set.contours[i].is_hole() ? " (hole)" : "") << "\n";
    }
    return kOk;
}

int cmd_corners(const Options& o, std::ostream& out, std::ostream& err) {
    o.pipeline.validate();
    const ContourSet set = load_contours(o.input);
    std::string json = "{\n  \"contours\": [";
    bool first = true;
    for (std::size_t i = 0; i < set.contours.size(); ++i) {
        const std::vector<Point2> pts = set.contours[i].to_points();
        if (pts.size() <= 2 * static_cast<std::size_t>(o.pipeline.corners.support_length)) {
            err << "warning: contour " << i << " has " << pts.size() << " points, too short for L="
                << o.pipeline.corners.support_length << "; skipped\n";
            continue;
        }
        const CornerSet cs = detect_corners(pts, o.pipeline.corners);
        if (o.json) {
            json += first ? "\n" : ",\n";
            first = false;
            json += "    {\"contour\": " + std::to_string(i) + ", \"corners\": [";
            for (std::size_t k = 0; k < cs.size(); ++k) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%s{\"index\": %zu, \"x\": %d, \"y\": %d, \"strength\": %.17g}",
                              k ? ", " : "", cs.indices[k], set.contours[i].points[cs.indices[k]].x,
                              set.contours[i].points[cs.indices[k]].y, cs.strengths[k]);
                json += buf;
            }
            json += "]}";
        } else {
            out << "contour " << i << ": " << cs.size() << (cs.size() == 1 ? " corner" : " corners") << "\n";
            for (std::size_t k = 0; k < cs.size(); ++k) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "  index %6zu  at (%d, %d)  strength %.3f\n", cs.indices[k],
                              set.contours[i].points[cs.indices[k]].x, set.contours[i].points[cs.indices[k]].y,
                              cs.strengths[k]);
                out << buf;
            }
        }
    }
    if (o.json) out << json << (first ? "]\n}\n" : "\n  ]\n}\n");
    return kOk;
}

int cmd_fit(Options o, std::ostream& out, std::ostream& err) {
    o.pipeline.fit.max_error = o.max_error;
    const SvgLayers layers = parse_layers(o.debug_layers);
    o.pipeline.validate();
    const ContourSet set = load_contours(o.input);
    const PipelineResult res = fit_contours(set, o.pipeline);
    for (const std::string& w : res.warnings) err << "warning: " << w << "\n";

    const bool svg = o.format == "svg" || o.format == "both";
    const bool spline = o.format == "json" || o.format == "both";
    if (svg) {
        std::vector<std::vector<Point2>> outlines;
        if (layers.outline) {
            for (const Contour& c : set.contours) outlines.push_back(c.to_points());
        }
        write_file(o.output + ".svg", to_svg(res.doc, layers, layers.outline ? &outlines : nullptr));
    }
    if (spline) write_spline(o.output + ".json", res.doc);
    if (!o.report_path.empty()) write_file(o.report_path, format_report_json(res.doc.report));

    out << format_report_table(res.doc.report, "fit");
    if (res.doc.contours.empty() && res.skipped > 0) {
        err << "error: no contour could be fitted\n";
        return kNumeric;
    }
    return kOk;
}

int cmd_metrics(const Options& o, std::ostream& out) {
    const ContourSet set = load_contours(o.input);
    if (!std::filesystem::exists(o.second_input)) throw FormatError("no such file: " + o.second_input);
    const SplineDocument doc = read_spline(o.second_input);
    const FitReport r = measure(set, doc);
    if (o.json) {
        out << format_report_json(r);
    } else {
        out << format_report_table(r, "metrics");
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fits cubic Bezier splines to closed outlines traced from bitmaps"};
    app.require_subcommand(1);
    Options o;

    CLI::App* trace = app.add_subcommand("trace", "Trace object and hole boundaries of a PBM image");
    trace->add_option("image", o.input, "Input bitmap (P1 or P4)")->required();
    trace->add_option("-o,--output", o.output, "Output contour file")->required();

    CLI::App* corners = app.add_subcommand("corners", "List detected corner points of every contour");
    corners->add_option("contours", o.input, "Contour file")->required();
    corners->add_flag("--json", o.json, "Machine-readable output");
    add_corner_flags(corners, o);

    CLI::App* fit = app.add_subcommand("fit", "Fit cubic Bezier splines and report fit quality");
    fit->add_option("contours", o.input, "Contour file")->required();
    fit->add_option("-o,--output", o.output, "Output path prefix; writes PREFIX.svg and/or PREFIX.json")->required();
    fit->add_option("--format", o.format, "Outputs to write")->check(CLI::IsMember({"svg", "json", "both"}));
    fit->add_option("--report", o.report_path, "Also write the report as JSON to this path");
    fit->add_option("--debug-layers", o.debug_layers,
                    "Extra SVG layers: outline,breaks,controls,polygons or all");
    fit->add_option("--repeat", o.pipeline.repeat, "Timing runs; the median is reported")->check(CLI::PositiveNumber);
    add_fit_flags(fit, o);

    CLI::App* metrics = app.add_subcommand("metrics", "Recompute the report of a spline against its contours");
    metrics->add_option("contours", o.input, "Contour file")->required();
    metrics->add_option("spline", o.second_input, "Spline file written by fit")->required();
    metrics->add_flag("--json", o.json, "Machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*trace) return cmd_trace(o, out);
        if (*corners) return cmd_corners(o, out, err);
        if (*fit) return cmd_fit(o, out, err);
        if (*metrics) return cmd_metrics(o, out);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kFormat;
    } catch (const ConsistencyError& e) {
        err << "error: " << e.what() << "\n";
        return kFormat;
    } catch (const SingularParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const DegenerateError& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFormat;
    }
    return kUsage;
}

}  // namespace bezierfit::cli
