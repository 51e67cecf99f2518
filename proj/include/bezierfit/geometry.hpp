#pragma once

#include <array>
#include <cmath>

namespace bezierfit {

/// Continuous 2D coordinate in pixel units.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2& operator+=(const Point2& o) { x += o.x; y += o.y; return *this; }
    constexpr Point2& operator-=(const Point2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Point2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Point2 operator+(Point2 a, const Point2& b) { return a += b; }
    friend constexpr Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
    friend constexpr Point2 operator*(Point2 a, double s) { return a *= s; }
    friend constexpr Point2 operator*(double s, Point2 a) { return a *= s; }
    friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }
inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Values of the four cubic Bernstein polynomials at one parameter.
struct BlendingVector {
    double b0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

struct CubicBezier {
    Point2 p0;
    Point2 p1;
    Point2 p2;
    Point2 p3;

    std::array<Point2, 4> control_points() const { return {p0, p1, p2, p3}; }
    friend bool operator==(const CubicBezier&, const CubicBezier&) = default;
};

/// Cubic Bernstein weights ((1-u)^3, 3u(1-u)^2, 3u^2(1-u), u^3).
/// Throws DomainError when u is outside [0, 1].
BlendingVector blend(double u);

/// Point on the curve at parameter u in [0, 1]. Throws DomainError otherwise.
Point2 evaluate(const CubicBezier& c, double u);

/// Distance from `pj` to the infinite line through `pi` and `pk`, computed with
/// the slope form (vertical chords handled separately). Throws DegenerateError
/// when `pi == pk`.
double perpendicular_distance(const Point2& pj, const Point2& pi, const Point2& pk);

/// Position of the orthogonal projection of `p` on the chord a->b, as a fraction
/// of the chord length. Not clamped: points projecting before `a` give negative
/// values, past `b` values above 1. Throws DegenerateError when `a == b`.
double project_parameter(const Point2& p, const Point2& a, const Point2& b);

}  // namespace bezierfit
