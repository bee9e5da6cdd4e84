#pragma once

#include <array>

#include "dynct/geometry.hpp"

namespace dynct {

/// Classical corner detector for a single bright quadrilateral:
/// threshold at the midpoint of the 10th/99th percentiles, keep the largest
/// 4-connected component, take the minimum-area oriented bounding rectangle
/// of its convex hull (rotating calipers), return the corners
/// counterclockwise starting from the smallest polar angle about the
/// component centroid, in unit coordinates.
std::array<Vec2, 4> detect_rectangle_corners(const Image& image);

/// Cyclic shift of `end` (both lists counterclockwise) minimizing the sum of
/// squared distances to `start`; ties broken by the smallest shift.
std::array<Vec2, 4> match_corner_correspondence(const std::array<Vec2, 4>& start,
                                                const std::array<Vec2, 4>& end);

}  // namespace dynct
