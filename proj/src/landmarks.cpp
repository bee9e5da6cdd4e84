#include "dynct/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace dynct {

namespace {

double percentile(const std::vector<double>& sorted, double pct) {
    // linear interpolation between order statistics; `sorted` must be sorted
    const double pos = pct / 100.0 * (sorted.size() - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double t = pos - lo;
    return (1.0 - t) * sorted[lo] + t * sorted[hi];
}

std::vector<int> largest_component(const std::vector<char>& fg, int n) {
    std::vector<int> label(static_cast<size_t>(n) * n, 0);
    std::vector<int> best, current, stack;
    for (int start = 0; start < n * n; ++start) {
        if (!fg[start] || label[start]) continue;
        current.clear();
        stack.assign(1, start);
        label[start] = 1;
        while (!stack.empty()) {
            const int px = stack.back();
            stack.pop_back();
            current.push_back(px);
            const int i = px / n, j = px % n;
            const int nb[4] = {px - n, px + n, px - 1, px + 1};
            const bool ok[4] = {i > 0, i < n - 1, j > 0, j < n - 1};
            for (int d = 0; d < 4; ++d) {
                if (ok[d] && fg[nb[d]] && !label[nb[d]]) {
                    label[nb[d]] = 1;
                    stack.push_back(nb[d]);
                }
            }
        }
        if (current.size() > best.size()) best.swap(current);
    }
    return best;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    // Andrew monotone chain, counterclockwise in the (x1, x2) plane
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a[0] == b[0] && a[1] == b[1]; }),
              pts.end());
    const size_t m = pts.size();
    if (m < 3) return pts;
    auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vec2> h(2 * m);
    size_t k = 0;
    for (size_t idx = 0; idx < m; ++idx) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[idx]) <= 0) --k;
        h[k++] = pts[idx];
    }
    const size_t lower = k + 1;
    for (size_t idx = m - 1; idx-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[idx]) <= 0) --k;
        h[k++] = pts[idx];
    }
    h.resize(k - 1);
    return h;
}

struct OrientedRect {
    std::array<Vec2, 4> corners;
    double area = std::numeric_limits<double>::max();
};

OrientedRect min_area_rect(const std::vector<Vec2>& hull) {
    OrientedRect best;
    const size_t m = hull.size();
    for (size_t e = 0; e < m; ++e) {
        const Vec2 edge = hull[(e + 1) % m] - hull[e];
        const double len = edge.norm();
        if (len == 0.0) continue;
        const Vec2 u = edge / len;
        const Vec2 v(-u[1], u[0]);
        double umin = std::numeric_limits<double>::max(), umax = -umin;
        double vmin = umin, vmax = -umin;
        for (const Vec2& p : hull) {
            const double pu = p.dot(u), pv = p.dot(v);
            umin = std::min(umin, pu);
            umax = std::max(umax, pu);
            vmin = std::min(vmin, pv);
            vmax = std::max(vmax, pv);
        }
        const double area = (umax - umin) * (vmax - vmin);
        if (area < best.area) {
            best.area = area;
            best.corners = {umin * u + vmin * v, umax * u + vmin * v, umax * u + vmax * v,
                            umin * u + vmax * v};
        }
    }
    return best;
}

double polar_angle(const Vec2& d) {
    double a = std::atan2(d[1], d[0]);
    if (a < 0) a += 2.0 * M_PI;
    return a;
}

std::array<Vec2, 4> order_ccw_from_min_angle(std::array<Vec2, 4> corners, const Vec2& about) {
    // enforce counterclockwise orientation (positive signed area)
    double signed_area = 0.0;
    for (int k = 0; k < 4; ++k) {
        const Vec2& a = corners[k];
        const Vec2& b = corners[(k + 1) % 4];
        signed_area += a[0] * b[1] - b[0] * a[1];
    }
    if (signed_area < 0) std::swap(corners[1], corners[3]);

    int first = 0;
    double best = std::numeric_limits<double>::max();
    for (int k = 0; k < 4; ++k) {
        const double a = polar_angle(corners[k] - about);
        if (a < best) {
            best = a;
            first = k;
        }
    }
    std::array<Vec2, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = corners[(first + k) % 4];
    return out;
}

}  // namespace

std::array<Vec2, 4> detect_rectangle_corners(const Image& image) {
    const int n = image.grid.n_pix;

    std::vector<double> sorted = image.values;
    std::sort(sorted.begin(), sorted.end());
    const double p10 = percentile(sorted, 10.0);
    const double p99 = percentile(sorted, 99.0);
    const double thresh = 0.5 * (p10 + p99);

    std::vector<char> fg(image.values.size());
    bool any = false;
    for (size_t m = 0; m < image.values.size(); ++m) {
        fg[m] = image.values[m] > thresh;
        any = any || fg[m];
    }
    if (!any) throw NoObjectError("detect_rectangle_corners: empty foreground after thresholding");

    const std::vector<int> comp = largest_component(fg, n);
    if (comp.size() < 16)
        throw TooSmallComponentError("detect_rectangle_corners: largest component has " +
                                     std::to_string(comp.size()) + " pixels (< 16)");

    std::vector<Vec2> pts;
    pts.reserve(comp.size());
    Vec2 centroid = Vec2::Zero();
    for (int px : comp) {
        const Vec2 c = pixel_center(image.grid, px / n, px % n);
        pts.push_back(c);
        centroid += c;
    }
    centroid /= static_cast<double>(comp.size());

    const std::vector<Vec2> hull = convex_hull(std::move(pts));
    if (hull.size() < 3)
        throw TooSmallComponentError("detect_rectangle_corners: degenerate (collinear) component");

    const OrientedRect rect = min_area_rect(hull);
    return order_ccw_from_min_angle(rect.corners, centroid);
}

std::array<Vec2, 4> match_corner_correspondence(const std::array<Vec2, 4>& start,
                                                const std::array<Vec2, 4>& end) {
    int best_shift = 0;
    double best_cost = std::numeric_limits<double>::max();
    for (int shift = 0; shift < 4; ++shift) {
        double cost = 0.0;
        for (int k = 0; k < 4; ++k) cost += (start[k] - end[(k + shift) % 4]).squaredNorm();
        if (cost < best_cost) {  // strict: ties keep the smallest shift
            best_cost = cost;
            best_shift = shift;
        }
    }
    std::array<Vec2, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = end[(k + best_shift) % 4];
    return out;
}

}  // namespace dynct
