#pragma once

#include <cmath>
#include <vector>

#include "dynct/geometry.hpp"

namespace dynct {

/// Parallel-beam sampling: angles phi_i = i*pi/p in [0,pi), offsets
/// s_k = k/q for k = -q..q (stored with array index a = k+q, 2q+1 values).
struct ScanGeometry {
    int p = 0;
    int q = 0;

    int n_offsets() const { return 2 * q + 1; }
    double h() const { return 1.0 / q; }
    double angle(int i) const { return i * M_PI / p; }
    double offset(int a) const { return static_cast<double>(a - q) / q; }
    bool operator==(const ScanGeometry&) const = default;
};

/// Line integrals on a ScanGeometry, row-major (angle major, offset minor).
struct Sinogram {
    ScanGeometry geom;
    std::vector<double> values;

    static Sinogram zeros(const ScanGeometry& g) {
        return Sinogram{g, std::vector<double>(static_cast<size_t>(g.p) * g.n_offsets(), 0.0)};
    }
    double& at(int i, int a) { return values[static_cast<size_t>(i) * geom.n_offsets() + a]; }
    double at(int i, int a) const { return values[static_cast<size_t>(i) * geom.n_offsets() + a]; }
};

/// One discrete forward row in sparse form (pixel index, weight).
struct SparseRow {
    std::vector<int> idx;
    std::vector<double> w;
    double norm2 = 0.0;

    void clear() {
        idx.clear();
        w.clear();
        norm2 = 0.0;
    }
};

/// Joseph-style interpolating tracer for the line {x : x.theta(phi) = s}:
/// march the pixel planes of the dominant axis, linear interpolation across
/// the transverse axis, each sample scaled by spacing/|dir_dominant|.
/// Samples whose transverse fractional index leaves the pixel-center span
/// [0, n-1] are dropped.
void build_ray_row(const ImageGrid& grid, double phi, double s, SparseRow& out);

double ray_integral(const Image& image, double phi, double s);

Sinogram forward_static(const Image& image, const ScanGeometry& geom);

/// weight * (discrete row)^T viewed as an image; exact transpose of the
/// implemented forward row under the Euclidean inner product.
Image adjoint_row_apply(const ScanGeometry& geom, const ImageGrid& grid, double phi, double s,
                        double weight);

/// Euclidean norm of the discrete row; 0 iff the ray misses the grid support.
double ray_row_norm(const ScanGeometry& geom, const ImageGrid& grid, double phi, double s);

}  // namespace dynct
