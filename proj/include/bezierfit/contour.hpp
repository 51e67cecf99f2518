#pragma once

#include "bezierfit/geometry.hpp"

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bezierfit {

/// Integer pixel position; x grows right, y grows down.
struct Pixel {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// Binary occupancy grid, row-major, 1 = object.
class RasterImage {
public:
    RasterImage() = default;
    RasterImage(int width, int height);
    RasterImage(int width, int height, std::vector<std::uint8_t> bits);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return width_ == 0 || height_ == 0; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    /// Out-of-range positions read as background.
    bool at(int x, int y) const {
        return contains(x, y) && bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool v = true);

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Closed loop of 8-connected boundary pixels.
///
/// Loops are stored with positive shoelace area (sum of x_i*y_{i+1} - x_{i+1}*y_i)
/// for outer boundaries and negative area for holes, evaluated directly on the
/// pixel coordinates. With y pointing down this is the mathematical
/// counterclockwise orientation of the coordinate values.
struct Contour {
    std::vector<Pixel> points;

    std::size_t size() const { return points.size(); }
    bool is_hole() const;
    std::vector<Point2> to_points() const;

    friend bool operator==(const Contour&, const Contour&) = default;
};

/// Contours of one image together with the image size.
struct ContourSet {
    int width = 0;
    int height = 0;
    std::vector<Contour> contours;

    friend bool operator==(const ContourSet&, const ContourSet&) = default;
};

/// Twice the signed area enclosed by a closed pixel loop.
long long signed_area2(const std::vector<Pixel>& loop);

/// Throws FormatError describing the first violated loop invariant
/// (at least 4 points, 8-adjacent consecutive points, no repeated pixel).
void validate_contour(const Contour& c);

/// All outer and hole boundaries of the image. Loops with fewer than 4 points
/// (isolated pixels, one pixel wide strokes) are not reported. Results are
/// sorted by the topmost-leftmost pixel of each loop.
std::vector<Contour> trace_boundaries(const RasterImage& img);

/// Parses a plain (P1) or raw (P4) portable bitmap.
RasterImage parse_pbm(std::string_view bytes);
RasterImage load_image(const std::filesystem::path& path);

enum class PbmVariant { plain, raw };
std::string format_pbm(const RasterImage& img, PbmVariant variant);
void save_image(const std::filesystem::path& path, const RasterImage& img, PbmVariant variant = PbmVariant::raw);

std::string format_contours(const ContourSet& set);
ContourSet parse_contours(std::string_view text);
void write_contour(const std::filesystem::path& path, const ContourSet& set);
ContourSet read_contour(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace bezierfit
