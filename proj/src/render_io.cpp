#include "bezierfit/render_io.hpp"

#include "bezierfit/contour.hpp"
#include "bezierfit/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace bezierfit {

namespace {

using ojson = nlohmann::ordered_json;

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string coord(const Point2& p) { return fixed3(p.x) + "," + fixed3(p.y); }

ojson point_json(const Point2& p) { return ojson::array({p.x, p.y}); }

const ojson& field(const ojson& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw FormatError(where + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(where + "." + key + ": missing");
    return *it;
}

double real_field(const ojson& v, const std::string& where) {
    if (!v.is_number()) throw FormatError(where + ": expected a finite number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw FormatError(where + ": expected a finite number");
    return x;
}

long long int_field(const ojson& v, const std::string& where) {
    if (!v.is_number_integer()) throw FormatError(where + ": expected an integer");
    return v.get<long long>();
}

std::size_t index_field(const ojson& v, const std::string& where) {
    const long long x = int_field(v, where);
    if (x < 0) throw FormatError(where + ": expected a non-negative integer");
    return static_cast<std::size_t>(x);
}

bool bool_field(const ojson& v, const std::string& where) {
    if (!v.is_boolean()) throw FormatError(where + ": expected a boolean");
    return v.get<bool>();
}

Point2 point_field(const ojson& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw FormatError(where + ": expected [x, y]");
    return {real_field(v[0], where + "[0]"), real_field(v[1], where + "[1]")};
}

}  // namespace

SvgLayers parse_layers(std::string_view list) {
    SvgLayers layers;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = std::min(list.find(',', pos), list.size());
        const std::string_view name = list.substr(pos, comma - pos);
        if (name == "all") {
            layers = {true, true, true, true};
        } else if (name == "outline") {
            layers.outline = true;
        } else if (name == "breaks") {
            layers.breaks = true;
        } else if (name == "controls") {
            layers.controls = true;
        } else if (name == "polygons") {
            layers.polygons = true;
        } else if (!name.empty() && name != "none") {
            throw FormatError("unknown debug layer '" + std::string(name) + "'");
        }
        pos = comma + 1;
    }
    return layers;
}

std::string path_data(const Spline& spline) {
    if (spline.segments.empty()) return {};
    std::string d = "M " + coord(spline.segments.front().curve.p0);
    for (const SplineSegment& s : spline.segments) {
        d += " C " + coord(s.curve.p1) + " " + coord(s.curve.p2) + " " + coord(s.curve.p3);
    }
    d += " Z";
    return d;
}

std::string to_svg(const SplineDocument& doc, const SvgLayers& layers,
                   const std::vector<std::vector<Point2>>* outlines) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << doc.width << "\" height=\""
       << doc.height << "\" viewBox=\"0 0 " << doc.width << " " << doc.height << "\">\n";

    if (layers.outline && outlines) {
        os << "  <g id=\"outline\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.5\">\n";
        for (const ContourSpline& cs : doc.contours) {
            if (cs.contour >= outlines->size()) continue;
            os << "    <polygon points=\"";
            const auto& pts = (*outlines)[cs.contour];
            for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << coord(pts[i]);
            os << "\"/>\n";
        }
        os << "  </g>\n";
    }

    os << "  <g id=\"splines\" fill=\"none\" fill-rule=\"evenodd\" stroke=\"#d00000\" stroke-width=\"1\">\n";
    for (const ContourSpline& cs : doc.contours) {
        if (cs.spline.segments.empty()) continue;
        os << "    <path d=\"" << path_data(cs.spline) << "\"/>\n";
    }
    os << "  </g>\n";

    if (layers.polygons) {
        os << "  <g id=\"control-polygons\" fill=\"none\" stroke=\"#808080\" stroke-width=\"0.3\">\n";
        for (const ContourSpline& cs : doc.contours) {
            for (const SplineSegment& s : cs.spline.segments) {
                os << "    <polyline points=\"" << coord(s.curve.p0) << " " << coord(s.curve.p1) << " "
                   << coord(s.curve.p2) << " " << coord(s.curve.p3) << "\"/>\n";
            }
        }
        os << "  </g>\n";
    }
    if (layers.controls) {
        os << "  <g id=\"controls\" fill=\"#e0c000\" stroke=\"none\">\n";
        for (const ContourSpline& cs : doc.contours) {
            for (const SplineSegment& s : cs.spline.segments) {
                for (const Point2& p : {s.curve.p1, s.curve.p2}) {
                    os << "    <circle cx=\"" << fixed3(p.x) << "\" cy=\"" << fixed3(p.y) << "\" r=\"1.5\"/>\n";
                }
            }
        }
        os << "  </g>\n";
    }
    if (layers.breaks) {
        os << "  <g id=\"breaks\" stroke=\"none\">\n";
        for (const ContourSpline& cs : doc.contours) {
            for (const SplineSegment& s : cs.spline.segments) {
                const char* colour = s.flags.subdivided ? "#a000c0" : "#0040ff";
                os << "    <circle cx=\"" << fixed3(s.curve.p0.x) << "\" cy=\"" << fixed3(s.curve.p0.y)
                   << "\" r=\"2\" fill=\"" << colour << "\"/>\n";
            }
        }
        os << "  </g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string format_report_json(const FitReport& r, bool with_time) {
    ojson j;
    j["n_points"] = r.n_points;
    j["n_segments"] = r.n_segments;
    j["compression_ratio"] = r.compression_ratio;
    j["max_dev"] = r.max_dev;
    j["avg_error"] = r.avg_error;
    if (with_time) j["wall_time"] = r.wall_time;
    return j.dump(2) + "\n";
}

std::string format_spline(const SplineDocument& doc) {
    ojson root;
    root["format_version"] = kSplineFormatVersion;
    root["width"] = doc.width;
    root["height"] = doc.height;

    ojson cfg;
    cfg["support_length"] = doc.corner_params.support_length;
    cfg["corner_threshold"] = doc.corner_params.threshold;
    cfg["suppress_range"] = doc.corner_params.effective_suppress_range();
    cfg["removal_rate"] = doc.fit_config.removal_rate;
    cfg["removal_iters"] = doc.fit_config.removal_iters;
    cfg["spread_threshold"] = doc.fit_config.spread_threshold;
    cfg["eps_t"] = doc.fit_config.eps_t;
    cfg["min_segment_points"] = doc.fit_config.min_segment_points;
    cfg["max_error"] = doc.fit_config.max_error ? ojson(*doc.fit_config.max_error) : ojson(nullptr);
    root["config"] = std::move(cfg);

    ojson rep;
    rep["n_points"] = doc.report.n_points;
    rep["n_segments"] = doc.report.n_segments;
    rep["max_dev"] = doc.report.max_dev;
    rep["avg_error"] = doc.report.avg_error;
    rep["compression_ratio"] = doc.report.compression_ratio;
    rep["variance"] = "population";
    root["report"] = std::move(rep);

    ojson contours = ojson::array();
    for (const ContourSpline& cs : doc.contours) {
        ojson c;
        c["contour"] = cs.contour;
        c["n_points"] = cs.spline.n_points;
        c["corners"] = cs.spline.corners;
        ojson segs = ojson::array();
        for (const SplineSegment& s : cs.spline.segments) {
            ojson j;
            j["begin"] = s.begin;
            j["end"] = s.end;
            j["provenance"] = std::string(s.flags.provenance());
            j["subdivided"] = s.flags.subdivided;
            j["fallback"] = s.flags.fallback;
            j["arc_length"] = s.flags.arc_length;
            j["depth_capped"] = s.flags.depth_capped;
            j["p0"] = point_json(s.curve.p0);
            j["p1"] = point_json(s.curve.p1);
            j["p2"] = point_json(s.curve.p2);
            j["p3"] = point_json(s.curve.p3);
            segs.push_back(std::move(j));
        }
        c["segments"] = std::move(segs);
        contours.push_back(std::move(c));
    }
    root["contours"] = std::move(contours);
    return root.dump(2) + "\n";
}

SplineDocument parse_spline(std::string_view text) {
    ojson root;
    try {
        root = ojson::parse(text.begin(), text.end());
    } catch (const ojson::parse_error& e) {
        throw FormatError(std::string("spline document is not valid JSON: ") + e.what(), e.byte);
    }
    if (!root.is_object()) throw FormatError("spline document: expected an object");
    if (!root.contains("format_version")) throw FormatError("format_version: missing");
    const long long version = int_field(root["format_version"], "format_version");
    if (version != kSplineFormatVersion) {
        throw FormatError("format_version: unsupported version " + std::to_string(version));
    }

    SplineDocument doc;
    doc.width = static_cast<int>(int_field(field(root, "width", "document"), "width"));
    doc.height = static_cast<int>(int_field(field(root, "height", "document"), "height"));

    const ojson& cfg = field(root, "config", "document");
    doc.corner_params.support_length = static_cast<int>(int_field(field(cfg, "support_length", "config"), "config.support_length"));
    doc.corner_params.threshold = real_field(field(cfg, "corner_threshold", "config"), "config.corner_threshold");
    doc.corner_params.suppress_range = static_cast<int>(int_field(field(cfg, "suppress_range", "config"), "config.suppress_range"));
    doc.fit_config.removal_rate = real_field(field(cfg, "removal_rate", "config"), "config.removal_rate");
    doc.fit_config.removal_iters = static_cast<int>(int_field(field(cfg, "removal_iters", "config"), "config.removal_iters"));
    doc.fit_config.spread_threshold = real_field(field(cfg, "spread_threshold", "config"), "config.spread_threshold");
    doc.fit_config.eps_t = real_field(field(cfg, "eps_t", "config"), "config.eps_t");
    doc.fit_config.min_segment_points = static_cast<int>(int_field(field(cfg, "min_segment_points", "config"), "config.min_segment_points"));
    const ojson& max_error = field(cfg, "max_error", "config");
    if (!max_error.is_null()) doc.fit_config.max_error = real_field(max_error, "config.max_error");

    const ojson& rep = field(root, "report", "document");
    doc.report.n_points = index_field(field(rep, "n_points", "report"), "report.n_points");
    doc.report.n_segments = index_field(field(rep, "n_segments", "report"), "report.n_segments");
    doc.report.max_dev = real_field(field(rep, "max_dev", "report"), "report.max_dev");
    doc.report.avg_error = real_field(field(rep, "avg_error", "report"), "report.avg_error");
    doc.report.compression_ratio = real_field(field(rep, "compression_ratio", "report"), "report.compression_ratio");

    const ojson& contours = field(root, "contours", "document");
    if (!contours.is_array()) throw FormatError("contours: expected an array");
    for (std::size_t i = 0; i < contours.size(); ++i) {
        const std::string where = "contours[" + std::to_string(i) + "]";
        const ojson& c = contours[i];
        ContourSpline cs;
        cs.contour = index_field(field(c, "contour", where), where + ".contour");
        cs.spline.n_points = index_field(field(c, "n_points", where), where + ".n_points");
        const ojson& corners = field(c, "corners", where);
        if (!corners.is_array()) throw FormatError(where + ".corners: expected an array");
        for (std::size_t k = 0; k < corners.size(); ++k) {
            cs.spline.corners.push_back(index_field(corners[k], where + ".corners[" + std::to_string(k) + "]"));
        }
        const ojson& segs = field(c, "segments", where);
        if (!segs.is_array()) throw FormatError(where + ".segments: expected an array");
        for (std::size_t k = 0; k < segs.size(); ++k) {
            const std::string sw = where + ".segments[" + std::to_string(k) + "]";
            const ojson& s = segs[k];
            SplineSegment seg;
            seg.begin = index_field(field(s, "begin", sw), sw + ".begin");
            seg.end = index_field(field(s, "end", sw), sw + ".end");
            seg.flags.subdivided = bool_field(field(s, "subdivided", sw), sw + ".subdivided");
            seg.flags.fallback = bool_field(field(s, "fallback", sw), sw + ".fallback");
            seg.flags.arc_length = bool_field(field(s, "arc_length", sw), sw + ".arc_length");
            seg.flags.depth_capped = bool_field(field(s, "depth_capped", sw), sw + ".depth_capped");
            seg.curve.p0 = point_field(field(s, "p0", sw), sw + ".p0");
            seg.curve.p1 = point_field(field(s, "p1", sw), sw + ".p1");
            seg.curve.p2 = point_field(field(s, "p2", sw), sw + ".p2");
            seg.curve.p3 = point_field(field(s, "p3", sw), sw + ".p3");
            cs.spline.segments.push_back(seg);
        }
        doc.contours.push_back(std::move(cs));
    }
    return doc;
}

void write_spline(const std::filesystem::path& path, const SplineDocument& doc) {
    write_file(path, format_spline(doc));
}

SplineDocument read_spline(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        return parse_spline(text);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace bezierfit
