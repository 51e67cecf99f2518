#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace bezierfit::oracle {

namespace {

// Perpendicular distance of Pj from the line through Pi and Pk, slope form.
double eq_distance(const Point2& pj, const Point2& pi, const Point2& pk) {
    const double mx = pk.x - pi.x;
    if (mx == 0) return std::fabs(pj.x - pi.x);
    const double my = pk.y - pi.y;
    const double m = my / mx;
    return std::fabs(pj.y - m * pj.x + m * pi.x - pi.y) / std::sqrt(m * m + 1);
}

double bernstein(int k, double u) {
    const double v = 1 - u;
    switch (k) {
        case 0: return v * v * v;
        case 1: return 3 * u * v * v;
        case 2: return 3 * u * u * v;
        default: return u * u * u;
    }
}

}  // namespace

std::vector<Corner> corners(const std::vector<Point2>& loop, int L, double D, int R) {
    const long n = static_cast<long>(loop.size());

    // Steps 1-3: candidates with every distance assigned to them, keep the highest.
    std::map<long, std::vector<double>> assigned;
    for (long i = 0; i < n; ++i) {
        const long k = (i + L) % n;
        std::vector<std::pair<long, double>> between;
        for (long j = i + 1; j < i + L; ++j) {
            between.emplace_back(j % n, eq_distance(loop[j % n], loop[i], loop[k]));
        }
        double dmax = -1;
        for (const auto& [j, d] : between) dmax = std::max(dmax, d);
        if (dmax > D) {
            for (const auto& [j, d] : between) {
                if (d == dmax) assigned[j].push_back(d);
            }
        }
    }
    std::map<long, double> dj;
    for (const auto& [j, ds] : assigned) dj[j] = *std::max_element(ds.begin(), ds.end());

    // Step 4: non-maximum suppression over R points on both sides.
    std::vector<Corner> out;
    for (const auto& [j, d] : dj) {
        bool thrown = false;
        for (const auto& [q, dq] : dj) {
            if (q == j) continue;
            const long gap = std::min(std::labs(q - j), n - std::labs(q - j));
            if (gap > R) continue;
            if (dq > d || (dq == d && q < j)) thrown = true;
        }
        if (!thrown) out.push_back({static_cast<std::size_t>(j), d});
    }
    return out;
}

double brute_force_deviation(const Point2& p, const CubicBezier& c, std::size_t samples) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s <= samples; ++s) {
        const double u = static_cast<double>(s) / static_cast<double>(samples);
        Point2 q;
        q.x = c.p0.x * bernstein(0, u) + c.p1.x * bernstein(1, u) + c.p2.x * bernstein(2, u) + c.p3.x * bernstein(3, u);
        q.y = c.p0.y * bernstein(0, u) + c.p1.y * bernstein(1, u) + c.p2.y * bernstein(2, u) + c.p3.y * bernstein(3, u);
        best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
    }
    return best;
}

std::pair<Point2, Point2> cramer_controls(const Point2& p0, const Point2& p3, const Point2& at, const Point2& mirror,
                                          double t) {
    const double a11 = bernstein(1, t), a12 = bernstein(2, t);
    const double a21 = bernstein(1, 1 - t), a22 = bernstein(2, 1 - t);
    const double det = a11 * a22 - a12 * a21;
    auto rhs = [&](const Point2& c, double u) {
        return Point2{c.x - p0.x * bernstein(0, u) - p3.x * bernstein(3, u),
                      c.y - p0.y * bernstein(0, u) - p3.y * bernstein(3, u)};
    };
    const Point2 r1 = rhs(at, t);
    const Point2 r2 = rhs(mirror, 1 - t);
    const Point2 p1{(r1.x * a22 - a12 * r2.x) / det, (r1.y * a22 - a12 * r2.y) / det};
    const Point2 p2{(a11 * r2.x - r1.x * a21) / det, (a11 * r2.y - r1.y * a21) / det};
    return {p1, p2};
}

double system_residual(const Point2& p0, const Point2& p3, const Point2& at, const Point2& mirror, double t,
                       const Point2& p1, const Point2& p2) {
    const double b0 = bernstein(0, t), b1 = bernstein(1, t), b2 = bernstein(2, t), b3 = bernstein(3, t);
    const double m0 = bernstein(0, 1 - t), m3 = bernstein(3, 1 - t);
    const Point2 c1{at.x - p0.x * b0 - p3.x * b3, at.y - p0.y * b0 - p3.y * b3};
    const Point2 c2{mirror.x - p0.x * m0 - p3.x * m3, mirror.y - p0.y * m0 - p3.y * m3};
    const double e1x = p1.x * b1 + p2.x * b2 - c1.x;
    const double e1y = p1.y * b1 + p2.y * b2 - c1.y;
    const double e2x = p1.x * b2 + p2.x * b1 - c2.x;
    const double e2y = p1.y * b2 + p2.y * b1 - c2.y;
    return std::max({std::fabs(e1x), std::fabs(e1y), std::fabs(e2x), std::fabs(e2y)});
}

std::vector<std::set<Pixel>> boundary_pixel_sets(const RasterImage& img) {
    const int w = img.width() + 2;
    const int h = img.height() + 2;
    std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
    auto object = [&](int x, int y) { return img.at(x - 1, y - 1); };
    std::vector<std::set<Pixel>> out;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (object(x, y) || label[static_cast<std::size_t>(y) * w + x] >= 0) continue;
            const int id = static_cast<int>(out.size());
            std::set<Pixel> touched;
            std::queue<Pixel> q;
            q.push({x, y});
            label[static_cast<std::size_t>(y) * w + x] = id;
            while (!q.empty()) {
                const Pixel p = q.front();
                q.pop();
                const Pixel steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (const Pixel& s : steps) {
                    const int nx = p.x + s.x, ny = p.y + s.y;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    if (object(nx, ny)) {
                        touched.insert({nx - 1, ny - 1});
                    } else if (label[static_cast<std::size_t>(ny) * w + nx] < 0) {
                        label[static_cast<std::size_t>(ny) * w + nx] = id;
                        q.push({nx, ny});
                    }
                }
            }
            out.push_back(std::move(touched));
        }
    }
    std::erase_if(out, [](const auto& s) { return s.empty(); });
    return out;
}

}  // namespace bezierfit::oracle
