#include "bezierfit/contour.hpp"

#include "bezierfit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <sstream>

namespace bezierfit {

namespace {

// Moore neighborhood in clockwise order (y down): W, NW, N, NE, E, SE, S, SW.
constexpr std::array<Pixel, 8> kRing = {{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int ring_index(const Pixel& center, const Pixel& neighbor) {
    const int dx = neighbor.x - center.x;
    const int dy = neighbor.y - center.y;
    for (int i = 0; i < 8; ++i) {
        if (kRing[i].x == dx && kRing[i].y == dy) return i;
    }
    return -1;
}

bool eight_adjacent(const Pixel& a, const Pixel& b) {
    const int dx = std::abs(a.x - b.x);
    const int dy = std::abs(a.y - b.y);
    return std::max(dx, dy) == 1;
}

// Moore-neighbor tracing. The walk ends when the first move (start to its
// successor) is about to repeat; that move determines the rest of the walk.
// Comparing only the re-entry backtrack can miss the closure on some shapes.
std::vector<Pixel> moore_trace(const RasterImage& img, Pixel start, Pixel backtrack) {
    std::vector<Pixel> seq;
    Pixel cur = start;
    Pixel back = backtrack;
    std::optional<Pixel> first;
    const std::size_t cap = 8 * static_cast<std::size_t>(img.width() + 2) * static_cast<std::size_t>(img.height() + 2);
    while (seq.size() <= cap) {
        seq.push_back(cur);
        const int bi = ring_index(cur, back);
        std::optional<Pixel> next;
        for (int k = 1; k <= 8; ++k) {
            const int idx = (bi + k) % 8;
            const Pixel q{cur.x + kRing[idx].x, cur.y + kRing[idx].y};
            if (img.at(q.x, q.y)) {
                const int prev = (idx + 7) % 8;
                back = {cur.x + kRing[prev].x, cur.y + kRing[prev].y};
                next = q;
                break;
            }
        }
        if (!next) break;  // isolated pixel
        if (cur == start) {
            if (first && *next == *first) {
                seq.pop_back();
                break;
            }
            if (!first) first = next;
        }
        cur = *next;
    }
    return seq;
}

// Cuts a traced walk at every revisited pixel so that each emitted loop is simple.
// Thin necks and spurs produce short sub-loops which are discarded below.
std::vector<std::vector<Pixel>> split_simple_loops(const std::vector<Pixel>& walk) {
    std::vector<std::vector<Pixel>> loops;
    std::vector<Pixel> stack;
    std::map<Pixel, std::size_t> where;
    for (const Pixel& p : walk) {
        if (const auto it = where.find(p); it != where.end()) {
            const std::size_t j = it->second;
            for (std::size_t k = j; k < stack.size(); ++k) where.erase(stack[k]);
            loops.emplace_back(stack.begin() + static_cast<std::ptrdiff_t>(j), stack.end());
            stack.resize(j);
        }
        where.emplace(p, stack.size());
        stack.push_back(p);
    }
    loops.push_back(std::move(stack));
    return loops;
}

Pixel top_left(const std::vector<Pixel>& loop) {
    return *std::min_element(loop.begin(), loop.end(), [](const Pixel& a, const Pixel& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
}

void orient(std::vector<Pixel>& loop, bool hole) {
    const long long a2 = signed_area2(loop);
    if ((hole && a2 > 0) || (!hole && a2 < 0)) {
        std::reverse(loop.begin() + 1, loop.end());
    }
}

}  // namespace

RasterImage::RasterImage(int width, int height) : RasterImage(width, height, {}) {}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    if (width < 0 || height < 0) {
        throw FormatError("raster dimensions must be non-negative");
    }
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bits_.empty()) bits_.assign(n, 0);
    if (bits_.size() != n) {
        throw FormatError("raster bit count " + std::to_string(bits_.size()) + " does not match " +
                          std::to_string(width) + "x" + std::to_string(height));
    }
}

void RasterImage::set(int x, int y, bool v) {
    if (!contains(x, y)) return;
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
}

long long signed_area2(const std::vector<Pixel>& loop) {
    long long acc = 0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pixel& a = loop[i];
        const Pixel& b = loop[(i + 1) % n];
        acc += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
    }
    return acc;
}

bool Contour::is_hole() const { return signed_area2(points) < 0; }

std::vector<Point2> Contour::to_points() const {
    std::vector<Point2> out;
    out.reserve(points.size());
    for (const Pixel& p : points) out.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    return out;
}

void validate_contour(const Contour& c) {
    const std::size_t n = c.points.size();
    if (n < 4) {
        throw FormatError("contour has " + std::to_string(n) + " points, at least 4 required");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!eight_adjacent(c.points[i], c.points[(i + 1) % n])) {
            throw FormatError("points " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                              " are not 8-neighbors");
        }
    }
    std::vector<Pixel> sorted = c.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw FormatError("contour repeats a point");
    }
}

std::vector<Contour> trace_boundaries(const RasterImage& img) {
    const int w = img.width();
    const int h = img.height();
    std::vector<Contour> result;
    if (img.empty()) return result;

    // Outer boundaries: one walk per 8-connected object component, started
    // at its first pixel in row-major order with the west neighbor as backtrack.
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
    std::vector<std::pair<std::vector<Pixel>, bool>> walks;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!img.at(x, y) || seen[static_cast<std::size_t>(y) * w + x]) continue;
            std::queue<Pixel> q;
            q.push({x, y});
            seen[static_cast<std::size_t>(y) * w + x] = 1;
            while (!q.empty()) {
                const Pixel p = q.front();
                q.pop();
                for (const Pixel& d : kRing) {
                    const int nx = p.x + d.x;
                    const int ny = p.y + d.y;
                    if (img.at(nx, ny) && !seen[static_cast<std::size_t>(ny) * w + nx]) {
                        seen[static_cast<std::size_t>(ny) * w + nx] = 1;
                        q.push({nx, ny});
                    }
                }
            }
            walks.emplace_back(moore_trace(img, {x, y}, {x - 1, y}), false);
        }
    }

    // Holes: 4-connected background components that do not reach the padded
    // frame around the image. Each is traced from the object pixel above its
    // first pixel, with the hole pixel as backtrack.
    const int pw = w + 2;
    const int ph = h + 2;
    std::vector<int> label(static_cast<std::size_t>(pw) * ph, -1);
    auto bg = [&](int px, int py) { return !img.at(px - 1, py - 1); };
    int next_label = 0;
    for (int py = 0; py < ph; ++py) {
        for (int px = 0; px < pw; ++px) {
            if (!bg(px, py) || label[static_cast<std::size_t>(py) * pw + px] >= 0) continue;
            const int id = next_label++;
            std::queue<Pixel> q;
            q.push({px, py});
            label[static_cast<std::size_t>(py) * pw + px] = id;
            while (!q.empty()) {
                const Pixel p = q.front();
                q.pop();
                for (int k = 0; k < 8; k += 2) {
                    const int nx = p.x + kRing[k].x;
                    const int ny = p.y + kRing[k].y;
                    if (nx < 0 || ny < 0 || nx >= pw || ny >= ph) continue;
                    if (bg(nx, ny) && label[static_cast<std::size_t>(ny) * pw + nx] < 0) {
                        label[static_cast<std::size_t>(ny) * pw + nx] = id;
                        q.push({nx, ny});
                    }
                }
            }
            if (id != 0) {
                const Pixel hole{px - 1, py - 1};
                walks.emplace_back(moore_trace(img, {hole.x, hole.y - 1}, hole), true);
            }
        }
    }

    for (auto& [walk, hole] : walks) {
        for (auto& loop : split_simple_loops(walk)) {
            if (loop.size() < 4) continue;
            orient(loop, hole);
            result.push_back(Contour{std::move(loop)});
        }
    }

    std::sort(result.begin(), result.end(), [](const Contour& a, const Contour& b) {
        const Pixel ta = top_left(a.points);
        const Pixel tb = top_left(b.points);
        if (ta.y != tb.y) return ta.y < tb.y;
        if (ta.x != tb.x) return ta.x < tb.x;
        return a.points < b.points;
    });
    return result;
}

// ---------------------------------------------------------------------------
// Portable bitmap

namespace {

class PbmReader {
public:
    explicit PbmReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    int read_positive_int(const char* what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw FormatError(std::string("truncated header: missing ") + what, pos_);
        const std::size_t begin = pos_;
        long long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > (1 << 20)) throw FormatError(std::string(what) + " too large", begin);
            ++pos_;
        }
        if (pos_ == begin) throw FormatError(std::string("expected ") + what, begin);
        if (v <= 0) throw FormatError(std::string(what) + " must be positive", begin);
        return static_cast<int>(v);
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }
    std::size_t size() const { return bytes_.size(); }
    char at(std::size_t i) const { return bytes_[i]; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

RasterImage parse_pbm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4')) {
        throw FormatError("not a portable bitmap (expected P1 or P4 magic)", 0);
    }
    const bool raw = bytes[1] == '4';
    PbmReader in(bytes);
    in.advance(2);
    const int w = in.read_positive_int("width");
    const int h = in.read_positive_int("height");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(w) * h, 0);

    if (!raw) {
        for (std::size_t i = 0; i < bits.size(); ++i) {
            in.skip_space_and_comments();
            if (in.pos() >= in.size()) throw FormatError("truncated pixel data", in.pos());
            const char c = in.at(in.pos());
            if (c != '0' && c != '1') throw FormatError(std::string("unexpected character '") + c + "' in pixel data", in.pos());
            bits[i] = c == '1';
            in.advance(1);
        }
    } else {
        if (in.pos() >= in.size() || !std::isspace(static_cast<unsigned char>(in.at(in.pos())))) {
            throw FormatError("expected single whitespace before raster", in.pos());
        }
        in.advance(1);
        const std::size_t stride = (static_cast<std::size_t>(w) + 7) / 8;
        const std::size_t need = stride * h;
        if (in.size() - in.pos() < need) throw FormatError("truncated pixel data", in.size());
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const auto byte = static_cast<unsigned char>(in.at(in.pos() + y * stride + x / 8));
                bits[static_cast<std::size_t>(y) * w + x] = (byte >> (7 - x % 8)) & 1u;
            }
        }
    }
    return RasterImage(w, h, std::move(bits));
}

RasterImage load_image(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    try {
        return parse_pbm(bytes);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string format_pbm(const RasterImage& img, PbmVariant variant) {
    std::string out = (variant == PbmVariant::plain ? "P1\n" : "P4\n") + std::to_string(img.width()) + " " +
                      std::to_string(img.height()) + "\n";
    for (int y = 0; y < img.height(); ++y) {
        if (variant == PbmVariant::plain) {
            for (int x = 0; x < img.width(); ++x) {
                out += img.at(x, y) ? '1' : '0';
                out += x + 1 < img.width() ? ' ' : '\n';
            }
        } else {
            unsigned char acc = 0;
            for (int x = 0; x < img.width(); ++x) {
                if (img.at(x, y)) acc |= static_cast<unsigned char>(0x80u >> (x % 8));
                if (x % 8 == 7 || x + 1 == img.width()) {
                    out += static_cast<char>(acc);
                    acc = 0;
                }
            }
        }
    }
    return out;
}

void save_image(const std::filesystem::path& path, const RasterImage& img, PbmVariant variant) {
    write_file(path, format_pbm(img, variant));
}

// ---------------------------------------------------------------------------
// Contour documents

std::string format_contours(const ContourSet& set) {
    std::ostringstream os;
    os << "{\n  \"width\": " << set.width << ",\n  \"height\": " << set.height << ",\n  \"contours\": [";
    for (std::size_t i = 0; i < set.contours.size(); ++i) {
        os << (i ? ",\n" : "\n") << "    {\"closed\": true, \"points\": [";
        const auto& pts = set.contours[i].points;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            os << (j ? "," : "") << '[' << pts[j].x << ',' << pts[j].y << ']';
        }
        os << "]}";
    }
    os << (set.contours.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(where + key + ": missing");
    return *it;
}

int require_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw FormatError(field + ": expected integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        throw FormatError(field + ": out of range");
    }
    return static_cast<int>(x);
}

}  // namespace

ContourSet parse_contours(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("contour document is not valid JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw FormatError("contour document: expected an object");

    ContourSet set;
    set.width = require_int(require(doc, "width", ""), "width");
    set.height = require_int(require(doc, "height", ""), "height");
    if (set.width <= 0) throw FormatError("width: must be positive");
    if (set.height <= 0) throw FormatError("height: must be positive");
    const json& arr = require(doc, "contours", "");
    if (!arr.is_array()) throw FormatError("contours: expected an array");

    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "contours[" + std::to_string(i) + "].";
        const json& c = arr[i];
        if (!c.is_object()) throw FormatError("contours[" + std::to_string(i) + "]: expected an object");
        const json& closed = require(c, "closed", where);
        if (!closed.is_boolean()) throw FormatError(where + "closed: expected boolean");
        if (!closed.get<bool>()) throw FormatError(where + "closed: only closed contours are supported");
        const json& pts = require(c, "points", where);
        if (!pts.is_array()) throw FormatError(where + "points: expected an array");
        Contour contour;
        contour.points.reserve(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const std::string field = where + "points[" + std::to_string(j) + "]";
            const json& p = pts[j];
            if (!p.is_array() || p.size() != 2) throw FormatError(field + ": expected [x, y]");
            contour.points.push_back({require_int(p[0], field), require_int(p[1], field)});
        }
        try {
            validate_contour(contour);
        } catch (const FormatError& e) {
            throw FormatError(where + "points: " + e.what());
        }
        set.contours.push_back(std::move(contour));
    }
    return set;
}

void write_contour(const std::filesystem::path& path, const ContourSet& set) {
    write_file(path, format_contours(set));
}

ContourSet read_contour(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        return parse_contours(text);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace bezierfit
