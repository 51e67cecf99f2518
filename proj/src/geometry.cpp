#include "bezierfit/geometry.hpp"

#include "bezierfit/errors.hpp"

#include <string>

namespace bezierfit {

BlendingVector blend(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("blend: parameter " + std::to_string(u) + " outside [0, 1]");
    }
    const double v = 1.0 - u;
    return {v * v * v, 3.0 * u * v * v, 3.0 * u * u * v, u * u * u};
}

Point2 evaluate(const CubicBezier& c, double u) {
    const BlendingVector b = blend(u);
    return {c.p0.x * b.b0 + c.p1.x * b.b1 + c.p2.x * b.b2 + c.p3.x * b.b3,
            c.p0.y * b.b0 + c.p1.y * b.b1 + c.p2.y * b.b2 + c.p3.y * b.b3};
}

double perpendicular_distance(const Point2& pj, const Point2& pi, const Point2& pk) {
    if (pi == pk) {
        throw DegenerateError("perpendicular_distance: chord endpoints coincide");
    }
    const double mx = pk.x - pi.x;
    if (mx == 0.0) {
        return std::abs(pj.x - pi.x);
    }
    const double m = (pk.y - pi.y) / mx;
    return std::abs(pj.y - m * pj.x + m * pi.x - pi.y) / std::sqrt(m * m + 1.0);
}

double project_parameter(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 chord = b - a;
    const double len2 = dot(chord, chord);
    if (len2 == 0.0) {
        throw DegenerateError("project_parameter: chord endpoints coincide");
    }
    return dot(p - a, chord) / len2;
}

}  // namespace bezierfit
