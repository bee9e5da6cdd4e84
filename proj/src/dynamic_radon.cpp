#include "dynct/dynamic_radon.hpp"

#include <cmath>
#include <random>

#include <Eigen/LU>

namespace dynct {

namespace {

// Bilinear on the pixel-center lattice; points outside the center span
// [0, n-1]^2 evaluate to 0, matching the Joseph tracer's edge convention.
double bilinear(const Image& img, double y1, double y2) {
    const int n = img.grid.n_pix;
    const double sp = img.grid.spacing();
    const double iff = (1.0 - y1) / sp - 0.5;
    const double jf = (y2 + 1.0) / sp - 0.5;
    if (iff < 0.0 || iff > n - 1 || jf < 0.0 || jf > n - 1) return 0.0;
    const int i0 = static_cast<int>(iff);
    const int j0 = static_cast<int>(jf);
    const double ti = iff - i0;
    const double tj = jf - j0;
    auto px = [&](int i, int j) -> double {
        if (i < 0 || i >= n || j < 0 || j >= n) return 0.0;
        return img.at(i, j);
    };
    return (1.0 - ti) * ((1.0 - tj) * px(i0, j0) + tj * px(i0, j0 + 1)) +
           ti * ((1.0 - tj) * px(i0 + 1, j0) + tj * px(i0 + 1, j0 + 1));
}

// largest singular value of the 2x2 inverse = 1 / sigma_min(C)
double inverse_spectral_norm(const Mat2& C) {
    const double f2 = C.squaredNorm();
    const double det = C.determinant();
    const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * det * det));
    const double smin2 = 0.5 * (f2 - disc);
    if (smin2 <= 0.0) throw SingularMotionError("dynamic ray: singular motion matrix");
    return 1.0 / std::sqrt(smin2);
}

double dynamic_ray_at(const Image& image, const Mat2& C, const Vec2& bt, double phi, double s) {
    if (C.isIdentity(0.0) && bt.isZero(0.0)) {
        // Gamma = id: the pullback integral IS the static one
        thread_local SparseRow row;
        build_ray_row(image.grid, phi, s, row);
        double acc = 0.0;
        for (size_t m = 0; m < row.idx.size(); ++m) acc += row.w[m] * image.values[row.idx[m]];
        return acc;
    }
    const int n = image.grid.n_pix;
    const double sp = image.grid.spacing();
    const double theta1 = std::cos(phi);
    const double theta2 = std::sin(phi);
    const double dir1 = -theta2;
    const double dir2 = theta1;
    const int dominant = std::abs(dir1) >= std::abs(dir2) ? 0 : 1;
    const double ddom = dominant == 0 ? dir1 : dir2;
    const double scale = sp / std::abs(ddom);

    // the deformed support Gamma^{-1}(disk) can poke out of the grid
    const double reach = inverse_spectral_norm(C) * (1.0 + bt.norm());
    const int extra = reach > 1.0 + 1e-12 ? static_cast<int>(std::ceil((reach - 1.0) / sp)) + 1 : 0;

    double acc = 0.0;
    for (int a = -extra; a < n + extra; ++a) {
        double x1, x2;
        if (dominant == 0) {
            x1 = 1.0 - sp * (a + 0.5);
            const double tau = (x1 - s * theta1) / dir1;
            x2 = s * theta2 + tau * dir2;
        } else {
            x2 = -1.0 + sp * (a + 0.5);
            const double tau = (x2 - s * theta2) / dir2;
            x1 = s * theta1 + tau * dir1;
        }
        const double y1 = C(0, 0) * x1 + C(0, 1) * x2 + bt[0];
        const double y2 = C(1, 0) * x1 + C(1, 1) * x2 + bt[1];
        acc += bilinear(image, y1, y2);
    }
    return acc * scale;
}

}  // namespace

double dynamic_ray_integral(const Image& image, const AffineMotion& m, int angle_index,
                            int offset_index, const ScanGeometry& geom) {
    auto [C, bt] = motion_at_time(m, angle_index);
    return dynamic_ray_at(image, C, bt, geom.angle(angle_index), geom.offset(offset_index));
}

Sinogram forward_dynamic(const Image& image, const AffineMotion& m, const ScanGeometry& geom) {
    if (geom.p != m.N)
        throw ConfigError("forward_dynamic: one time point per angle required (p != N)");
    Sinogram sino = Sinogram::zeros(geom);
    for (int i = 0; i < geom.p; ++i) {
        auto [C, bt] = motion_at_time(m, i);
        const double phi = geom.angle(i);
        for (int a = 0; a < geom.n_offsets(); ++a)
            sino.at(i, a) = dynamic_ray_at(image, C, bt, phi, geom.offset(a));
    }
    return sino;
}

Sinogram forward_at_time(const Image& image, const AffineMotion& m, int t, const ScanGeometry& geom) {
    auto [C, bt] = motion_at_time(m, t);
    Sinogram sino = Sinogram::zeros(geom);
    for (int i = 0; i < geom.p; ++i) {
        const double phi = geom.angle(i);
        for (int a = 0; a < geom.n_offsets(); ++a)
            sino.at(i, a) = dynamic_ray_at(image, C, bt, phi, geom.offset(a));
    }
    return sino;
}

InexactnessMap compute_inexactness(const Sinogram& dyn, const Sinogram& static_ref,
                                   double noise_bound, double rho) {
    if (!(dyn.geom == static_ref.geom))
        throw ContractViolation("compute_inexactness: geometry mismatch");
    if (noise_bound < 0 || rho <= 0)
        throw ContractViolation("compute_inexactness: require noise_bound >= 0 and rho > 0");
    InexactnessMap map;
    map.geom = dyn.geom;
    map.rho = rho;
    map.eta.resize(dyn.values.size());
    map.delta.assign(dyn.values.size(), noise_bound);
    for (size_t m = 0; m < dyn.values.size(); ++m)
        map.eta[m] = std::abs(dyn.values[m] - static_ref.values[m]);
    return map;
}

Sinogram add_uniform_noise(const Sinogram& s, double amplitude, std::uint64_t seed) {
    if (amplitude < 0) throw ContractViolation("add_uniform_noise: amplitude must be >= 0");
    if (amplitude == 0.0) return s;
    Sinogram out = s;
    std::mt19937_64 rng(seed);
    for (double& v : out.values) {
        // top 53 bits -> [0,1); keeps the stream independent of library internals
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v += amplitude * (2.0 * u - 1.0);
    }
    return out;
}

}  // namespace dynct
