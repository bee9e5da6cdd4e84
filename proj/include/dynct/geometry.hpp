#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "dynct/errors.hpp"

namespace dynct {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Square pixel grid over [-1,1]^2. Row index i walks x1 downward from +1,
/// column index j walks x2 upward from -1, so image storage and the
/// backprojection loop share one convention.
struct ImageGrid {
    int n_pix = 0;

    double spacing() const { return 2.0 / n_pix; }
    bool operator==(const ImageGrid&) const = default;
};

/// Center of pixel (i,j) in unit coordinates:
///   x1 = 1 - (2/n)(i + 1/2),  x2 = -1 + (2/n)(j + 1/2).
Vec2 pixel_center(const ImageGrid& grid, int i, int j);

/// Attenuation image on an ImageGrid, row-major (i major, j minor).
struct Image {
    ImageGrid grid;
    std::vector<double> values;

    static Image zeros(const ImageGrid& g) { return Image{g, std::vector<double>(static_cast<size_t>(g.n_pix) * g.n_pix, 0.0)}; }

    double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n_pix + j]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n_pix + j]; }
};

/// Rotated rectangle, all four corners required inside the unit disk.
struct RectanglePhantom {
    Vec2 center{0.0, 0.0};
    Vec2 half_extents{0.25, 0.25};
    double rotation = 0.0;
    double intensity = 1.0;
};

struct PhantomResult {
    Image image;
    std::array<Vec2, 4> corners;  // counterclockwise, smallest polar angle about the center first
};

/// Rasterize by pixel-center membership. Corners are returned
/// counterclockwise starting from the smallest polar angle (in [0,2pi))
/// about the rectangle center.
PhantomResult make_rectangle_phantom(const ImageGrid& grid, const RectanglePhantom& spec);

/// ||a-b||_2 / ||b||_2 over all pixels; ||a||_2 when b is identically zero.
double relative_l2_error(const Image& a, const Image& b);

}  // namespace dynct
