#include "dynct/radon.hpp"

#include <cmath>

namespace dynct {

namespace {

struct RayFrame {
    double theta1, theta2;  // ray normal
    double dir1, dir2;      // unit direction along the line
    int dominant;           // 0: march x1 planes (rows i), 1: march x2 planes (cols j)
    double scale;           // spacing / |dir_dominant|
};

RayFrame ray_frame(const ImageGrid& grid, double phi) {
    RayFrame f;
    f.theta1 = std::cos(phi);
    f.theta2 = std::sin(phi);
    f.dir1 = -f.theta2;
    f.dir2 = f.theta1;
    f.dominant = std::abs(f.dir1) >= std::abs(f.dir2) ? 0 : 1;
    const double d = f.dominant == 0 ? f.dir1 : f.dir2;
    f.scale = grid.spacing() / std::abs(d);
    return f;
}

}  // namespace

void build_ray_row(const ImageGrid& grid, double phi, double s, SparseRow& out) {
    out.clear();
    const int n = grid.n_pix;
    const double sp = grid.spacing();
    const RayFrame f = ray_frame(grid, phi);

    auto emit = [&](int i, int j, double w) {
        out.idx.push_back(i * n + j);
        out.w.push_back(w);
        out.norm2 += w * w;
    };

    if (f.dominant == 0) {
        // plane a carries row i = a at x1 = 1 - sp(a+1/2)
        for (int a = 0; a < n; ++a) {
            const double x1 = 1.0 - sp * (a + 0.5);
            const double tau = (x1 - s * f.theta1) / f.dir1;
            const double x2 = s * f.theta2 + tau * f.dir2;
            if (x1 * x1 + x2 * x2 > 1.0) continue;  // model space is L2 of the unit disk
            const double jf = (x2 + 1.0) / sp - 0.5;
            if (jf < 0.0 || jf > n - 1) continue;
            const int j0 = static_cast<int>(jf);
            const double t = jf - j0;
            emit(a, j0, f.scale * (1.0 - t));
            if (t > 0.0 && j0 + 1 <= n - 1) emit(a, j0 + 1, f.scale * t);
        }
    } else {
        for (int a = 0; a < n; ++a) {
            const double x2 = -1.0 + sp * (a + 0.5);
            const double tau = (x2 - s * f.theta2) / f.dir2;
            const double x1 = s * f.theta1 + tau * f.dir1;
            if (x1 * x1 + x2 * x2 > 1.0) continue;
            const double iff = (1.0 - x1) / sp - 0.5;
            if (iff < 0.0 || iff > n - 1) continue;
            const int i0 = static_cast<int>(iff);
            const double t = iff - i0;
            emit(i0, a, f.scale * (1.0 - t));
            if (t > 0.0 && i0 + 1 <= n - 1) emit(i0 + 1, a, f.scale * t);
        }
    }
}

double ray_integral(const Image& image, double phi, double s) {
    if (!std::isfinite(phi) || !std::isfinite(s) || std::abs(s) > 1.0)
        throw ContractViolation("ray_integral: require finite phi and |s| <= 1");
    thread_local SparseRow row;
    build_ray_row(image.grid, phi, s, row);
    double acc = 0.0;
    for (size_t m = 0; m < row.idx.size(); ++m) acc += row.w[m] * image.values[row.idx[m]];
    return acc;
}

Sinogram forward_static(const Image& image, const ScanGeometry& geom) {
    Sinogram sino = Sinogram::zeros(geom);
    thread_local SparseRow row;
    for (int i = 0; i < geom.p; ++i) {
        const double phi = geom.angle(i);
        for (int a = 0; a < geom.n_offsets(); ++a) {
            build_ray_row(image.grid, phi, geom.offset(a), row);
            double acc = 0.0;
            for (size_t m = 0; m < row.idx.size(); ++m) acc += row.w[m] * image.values[row.idx[m]];
            sino.at(i, a) = acc;
        }
    }
    return sino;
}

Image adjoint_row_apply(const ScanGeometry& geom, const ImageGrid& grid, double phi, double s,
                        double weight) {
    (void)geom;
    if (!std::isfinite(phi) || !std::isfinite(s) || std::abs(s) > 1.0)
        throw ContractViolation("adjoint_row_apply: require finite phi and |s| <= 1");
    Image out = Image::zeros(grid);
    thread_local SparseRow row;
    build_ray_row(grid, phi, s, row);
    for (size_t m = 0; m < row.idx.size(); ++m) out.values[row.idx[m]] += weight * row.w[m];
    return out;
}

double ray_row_norm(const ScanGeometry& geom, const ImageGrid& grid, double phi, double s) {
    (void)geom;
    thread_local SparseRow row;
    build_ray_row(grid, phi, s, row);
    return std::sqrt(row.norm2);
}

}  // namespace dynct
