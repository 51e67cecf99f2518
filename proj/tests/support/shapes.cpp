#include "support/shapes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bezierfit::testing {

RasterImage rasterize_polygon(const std::vector<std::vector<Point2>>& rings, int width, int height) {
    RasterImage img(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            bool inside = false;
            for (const auto& ring : rings) {
                const std::size_t n = ring.size();
                for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                    const Point2& a = ring[i];
                    const Point2& b = ring[j];
                    if ((a.y > y) != (b.y > y) && x < (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x) {
                        inside = !inside;
                    }
                }
            }
            img.set(x, y, inside);
        }
    }
    return img;
}

RasterImage filled_rect(int width, int height, int x0, int y0, int rw, int rh) {
    RasterImage img(width, height);
    for (int y = y0; y < y0 + rh; ++y) {
        for (int x = x0; x < x0 + rw; ++x) img.set(x, y);
    }
    return img;
}

RasterImage digital_disk(double r, double cx, double cy, int width, int height) {
    RasterImage img(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) img.set(x, y);
        }
    }
    return img;
}

CubicBezier chord_aligned_cubic(const Point2& p0, const Point2& p3, double h1, double h2) {
    const Point2 d = p3 - p0;
    const Point2 normal = Point2{-d.y, d.x} / norm(d);
    return {p0, p0 + d / 3.0 + normal * h1, p0 + d * (2.0 / 3.0) + normal * h2, p3};
}

std::vector<Point2> sample_cubic(const CubicBezier& c, std::size_t count) {
    std::vector<Point2> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(evaluate(c, u));
    }
    out.front() = c.p0;
    out.back() = c.p3;
    return out;
}

std::vector<Point2> lens_outline(const Point2& a, const Point2& b, double h1, double h2, double h3, double h4,
                                 std::size_t per_curve) {
    const auto first = sample_cubic(chord_aligned_cubic(a, b, h1, h2), per_curve);
    const auto second = sample_cubic(chord_aligned_cubic(b, a, h3, h4), per_curve);
    std::vector<Point2> out(first.begin(), first.end() - 1);
    out.insert(out.end(), second.begin(), second.end() - 1);
    return out;
}

std::vector<Point2> regular_polygon(int sides, double side_length, const Point2& center, double rotation) {
    const double circumradius = side_length / (2.0 * std::sin(std::numbers::pi / sides));
    std::vector<Point2> out;
    for (int k = 0; k < sides; ++k) {
        const double a = rotation + 2.0 * std::numbers::pi * k / sides;
        out.push_back({center.x + circumradius * std::cos(a), center.y + circumradius * std::sin(a)});
    }
    return out;
}

std::vector<Point2> random_star_polygon(std::mt19937_64& rng, int vertices, const Point2& center, double r_min,
                                        double r_max) {
    std::uniform_real_distribution<double> radius(r_min, r_max);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    std::vector<Point2> out;
    for (int k = 0; k < vertices; ++k) {
        const double a = 2.0 * std::numbers::pi * (k + jitter(rng)) / vertices;
        const double r = radius(rng);
        out.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
    }
    return out;
}

Contour single_contour(const RasterImage& img) {
    auto loops = trace_boundaries(img);
    if (loops.size() != 1) throw std::runtime_error("expected one traced loop, got " + std::to_string(loops.size()));
    return loops.front();
}

Point2 rotate(const Point2& p, double angle, const Point2& about) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Point2 d = p - about;
    return about + Point2{c * d.x - s * d.y, s * d.x + c * d.y};
}

}  // namespace bezierfit::testing
