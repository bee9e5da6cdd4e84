#include "dynct/dynamic_fbp.hpp"

#include <cmath>

#include <Eigen/LU>

namespace dynct {

namespace {

double dawson_series(double x) {
    // D(x) = sum_n (-2)^n x^{2n+1} / (2n+1)!!
    double term = x;
    double acc = x;
    const double x2 = x * x;
    for (int n = 1; n < 200; ++n) {
        term *= -2.0 * x2 / (2 * n + 1);
        acc += term;
        if (std::abs(term) < 1e-17 * std::abs(acc)) break;
    }
    return acc;
}

double dawson_sampling(double x) {
    // D(x) = (1/sqrt(pi)) sum_{n odd} exp(-(x - n h)^2)/n, h -> 0;
    // truncation ~ exp(-(pi/(2h))^2), window |x - n h| <= 9
    constexpr double h = 0.2;
    const int n0 = 2 * static_cast<int>(std::lround(0.5 * (x / h - 1.0))) + 1;  // odd, near x/h
    constexpr int half_width = 46;  // 46*h = 9.2
    double acc = 0.0;
    for (int n = n0 - half_width; n <= n0 + half_width; n += 2) {
        if (n == 0) continue;
        const double d = x - n * h;
        acc += std::exp(-d * d) / n;
    }
    return acc / std::sqrt(M_PI);
}

double dawson_asymptotic(double x) {
    // D(x) ~ 1/(2x) + 1/(4x^3) + 3/(8x^5) + ...; remainder <= e^{-x^2}
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0 / (2.0 * x);
    double acc = term;
    for (int m = 1; m < 60; ++m) {
        term *= (2 * m - 1) * inv2x2;
        acc += term;
        if (std::abs(term) < 1e-18) break;
    }
    return acc;
}

}  // namespace

double dawson(double x) {
    if (!std::isfinite(x)) throw ContractViolation("dawson: non-finite input");
    const double ax = std::abs(x);
    double v;
    if (ax <= 3.0)
        v = dawson_series(ax);
    else if (ax < 6.0)
        v = dawson_sampling(ax);
    else
        v = dawson_asymptotic(ax);
    return x < 0 ? -v : v;
}

namespace {

// angle-wise kernel constants (h is x-independent, so cache it per angle)
struct KernelAngle {
    double front;   // |det C| |h| / (4 pi^2 g^2 w^2)
    double shift;   // (C^{-1} b_t)^T theta
    double inv_gw;  // 1 / (g w)
};

KernelAngle kernel_angle(const AffineMotion& m, int i, const FbpConfig& cfg,
                         const ScanGeometry& geom) {
    if (cfg.gamma <= 0) throw ConfigError("kernel_value: gamma must be positive");
    auto [C, bt] = motion_at_time(m, i);
    const double det = C.determinant();
    if (std::abs(det) <= 1e-12) throw SingularMotionError("kernel_value: singular C(t)");
    Mat2 inv;
    inv << C(1, 1), -C(0, 1), -C(1, 0), C(0, 0);
    inv /= det;
    const double phi = geom.angle(i);
    const Vec2 theta(std::cos(phi), std::sin(phi));
    const Vec2 cit = inv.transpose() * theta;  // C^{-*} theta
    const double w = cit.norm();
    const double hval = h_of_theta(m, i, geom);

    KernelAngle k;
    k.front = std::abs(det) * std::abs(hval) / (4.0 * M_PI * M_PI * cfg.gamma * cfg.gamma * w * w);
    k.shift = (inv * bt).dot(theta);
    k.inv_gw = 1.0 / (cfg.gamma * w);
    return k;
}

double kernel_eval(const KernelAngle& k, double s) {
    const double z = (s + k.shift) * k.inv_gw;
    return k.front * (1.0 - M_SQRT2 * z * dawson(z / M_SQRT2));
}

}  // namespace

double kernel_value(const AffineMotion& m, int angle_index, double s, const FbpConfig& cfg,
                    const ScanGeometry& geom) {
    return kernel_eval(kernel_angle(m, angle_index, cfg, geom), s);
}

std::vector<double> filter_sinogram(const Sinogram& s, const AffineMotion& m, const FbpConfig& cfg) {
    const ScanGeometry& geom = s.geom;
    if (geom.p != m.N) throw ConfigError("filter_sinogram: geometry does not match motion (p != N)");
    const int no = geom.n_offsets();
    const double h = geom.h();
    std::vector<double> v(static_cast<size_t>(geom.p) * no, 0.0);
    std::vector<double> table(2 * no - 1);  // psi_i at all grid differences (k - j)/q
    for (int i = 0; i < geom.p; ++i) {
        const KernelAngle ka = kernel_angle(m, i, cfg, geom);
        for (int d = -(no - 1); d <= no - 1; ++d)
            table[d + no - 1] = kernel_eval(ka, static_cast<double>(d) / geom.q);
        const double* g = &s.values[static_cast<size_t>(i) * no];
        double* vi = &v[static_cast<size_t>(i) * no];
        for (int k = 0; k < no; ++k) {
            double acc = 0.0;
            const double* tk = &table[k + no - 1];
            for (int j = 0; j < no; ++j) acc += tk[-j] * g[j];
            vi[k] = h * acc;
        }
    }
    return v;
}

Image backproject_filtered(const std::vector<double>& v, const AffineMotion& m,
                           const FbpConfig& cfg, const ScanGeometry& geom) {
    if (v.size() != static_cast<size_t>(geom.p) * geom.n_offsets())
        throw ContractViolation("backproject_filtered: filtered array size mismatch");
    if (cfg.n_pix_out <= 0) throw ConfigError("backproject_filtered: n_pix_out must be positive");
    if (geom.p != m.N) throw ConfigError("backproject_filtered: geometry does not match motion");

    const int n = cfg.n_pix_out;
    const int no = geom.n_offsets();
    const int q = geom.q;
    ImageGrid grid{n};
    Image out = Image::zeros(grid);

    // per-angle inverse matrices and ray normals
    std::vector<double> it11(geom.p), it12(geom.p), it21(geom.p), it22(geom.p);
    std::vector<double> th1(geom.p), th2(geom.p);
    for (int l = 0; l < geom.p; ++l) {
        auto [C, bt] = motion_at_time(m, l);
        const double det = C.determinant();
        if (std::abs(det) <= 1e-12)
            throw SingularMotionError("backproject_filtered: singular C(t)");
        it11[l] = C(1, 1) / det;
        it12[l] = -C(0, 1) / det;
        it21[l] = -C(1, 0) / det;
        it22[l] = C(0, 0) / det;
        const double phi = geom.angle(l);
        th1[l] = std::cos(phi);
        th2[l] = std::sin(phi);
    }

    const double sp = grid.spacing();
    for (int i = 0; i < n; ++i) {
        const double x1 = 1.0 - sp * (i + 0.5);
        for (int j = 0; j < n; ++j) {
            const double x2 = -1.0 + sp * (j + 0.5);
            if (x1 * x1 + x2 * x2 > 1.0) continue;
            double sum = 0.0;
            for (int l = 0; l < geom.p; ++l) {
                const double y1 = it11[l] * x1 + it12[l] * x2;
                const double y2 = it21[l] * x1 + it22[l] * x2;
                const double s = y1 * th1[l] + y2 * th2[l];
                const double t = s * q;
                const double kf = std::floor(t);
                const int k = static_cast<int>(kf) + q;
                const double mu = t - kf;
                const double* vl = &v[static_cast<size_t>(l) * no];
                if (k >= 0 && k < no) sum += (1.0 - mu) * vl[k];
                if (k + 1 >= 0 && k + 1 < no) sum += mu * vl[k + 1];
            }
            out.at(i, j) = 2.0 * M_PI / geom.p * sum;
        }
    }
    return out;
}

Image dynamic_fbp(const Sinogram& s, const AffineMotion& m, const FbpConfig& cfg) {
    return backproject_filtered(filter_sinogram(s, m, cfg), m, cfg, s.geom);
}

}  // namespace dynct
