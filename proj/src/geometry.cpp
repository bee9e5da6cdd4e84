#include "dynct/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace dynct {

Vec2 pixel_center(const ImageGrid& grid, int i, int j) {
    if (i < 0 || i >= grid.n_pix || j < 0 || j >= grid.n_pix)
        throw ContractViolation("pixel_center: index out of range");
    const double sp = grid.spacing();
    return {1.0 - sp * (i + 0.5), -1.0 + sp * (j + 0.5)};
}

namespace {

std::array<Vec2, 4> rectangle_corners(const RectanglePhantom& spec) {
    const double c = std::cos(spec.rotation);
    const double s = std::sin(spec.rotation);
    Mat2 rot;
    rot << c, -s, s, c;
    const double hx = spec.half_extents[0];
    const double hy = spec.half_extents[1];
    std::array<Vec2, 4> corners = {
        spec.center + rot * Vec2(hx, hy),
        spec.center + rot * Vec2(-hx, hy),
        spec.center + rot * Vec2(-hx, -hy),
        spec.center + rot * Vec2(hx, -hy),
    };
    return corners;
}

double polar_angle(const Vec2& v) {
    double a = std::atan2(v[1], v[0]);
    if (a < 0) a += 2.0 * M_PI;
    return a;
}

}  // namespace

PhantomResult make_rectangle_phantom(const ImageGrid& grid, const RectanglePhantom& spec) {
    if (spec.half_extents[0] <= 0 || spec.half_extents[1] <= 0)
        throw InvalidPhantomError("make_rectangle_phantom: half extents must be positive");

    auto corners = rectangle_corners(spec);
    for (const auto& c : corners)
        if (c.norm() > 1.0)
            throw InvalidPhantomError("make_rectangle_phantom: corner outside the unit disk");

    // reorder counterclockwise, smallest polar angle about the center first
    std::array<std::pair<double, Vec2>, 4> order;
    for (int k = 0; k < 4; ++k) order[k] = {polar_angle(corners[k] - spec.center), corners[k]};
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int k = 0; k < 4; ++k) corners[k] = order[k].second;

    const double c = std::cos(spec.rotation);
    const double s = std::sin(spec.rotation);
    Image img = Image::zeros(grid);
    for (int i = 0; i < grid.n_pix; ++i) {
        for (int j = 0; j < grid.n_pix; ++j) {
            const Vec2 d = pixel_center(grid, i, j) - spec.center;
            // rotate back into the rectangle frame
            const double u = c * d[0] + s * d[1];
            const double v = -s * d[0] + c * d[1];
            if (std::abs(u) <= spec.half_extents[0] && std::abs(v) <= spec.half_extents[1])
                img.at(i, j) = spec.intensity;
        }
    }
    return PhantomResult{std::move(img), corners};
}

double relative_l2_error(const Image& a, const Image& b) {
    if (!(a.grid == b.grid))
        throw ContractViolation("relative_l2_error: grid mismatch");
    double diff2 = 0.0, ref2 = 0.0;
    for (size_t m = 0; m < a.values.size(); ++m) {
        const double d = a.values[m] - b.values[m];
        diff2 += d * d;
        ref2 += b.values[m] * b.values[m];
    }
    if (ref2 == 0.0) {
        double a2 = 0.0;
        for (double x : a.values) a2 += x * x;
        return std::sqrt(a2);
    }
    return std::sqrt(diff2 / ref2);
}

}  // namespace dynct
