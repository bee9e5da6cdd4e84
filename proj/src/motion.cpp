#include "dynct/motion.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace dynct {

AffineMotion::AffineMotion(const Mat2& A_end, const Vec2& b_end, int n_steps)
    : A(A_end), b(b_end), N(n_steps) {
    if (N < 2) throw ConfigError("AffineMotion: need at least two time points");
    for (int t = 0; t < N; ++t) {
        const Mat2 C = Mat2::Identity() + (static_cast<double>(t) / (N - 1)) * (A - Mat2::Identity());
        if (std::abs(C.determinant()) <= 1e-12)
            throw SingularMotionError("AffineMotion: det C(t) vanishes at t=" + std::to_string(t));
    }
}

std::pair<Mat2, Vec2> motion_at_real_time(const AffineMotion& m, double t) {
    const double r = t / (m.N - 1);
    Mat2 C = Mat2::Identity() + r * (m.A - Mat2::Identity());
    return {C, r * m.b};
}

std::pair<Mat2, Vec2> motion_at_time(const AffineMotion& m, int t) {
    if (t < 0 || t >= m.N) throw ContractViolation("motion_at_time: t out of range");
    if (t == 0) return {Mat2::Identity(), Vec2::Zero()};
    return motion_at_real_time(m, static_cast<double>(t));
}

Vec2 motion_inverse_apply(const AffineMotion& m, int t, const Vec2& y) {
    auto [C, bt] = motion_at_time(m, t);
    const double det = C.determinant();
    if (std::abs(det) <= 1e-12) throw SingularMotionError("motion_inverse_apply: singular C(t)");
    Mat2 inv;
    inv << C(1, 1), -C(0, 1), -C(1, 0), C(0, 0);
    inv /= det;
    return inv * (y - bt);
}

double h_of_theta(const AffineMotion& m, int angle_index, const ScanGeometry& geom) {
    const double dphi = M_PI / geom.p;
    auto C_of_phi = [&](double ph) { return motion_at_real_time(m, ph / dphi).first; };
    return h_of_theta_generic(C_of_phi, geom.angle(angle_index));
}

MotionEstimate estimate_affine_motion(const std::array<Vec2, 4>& start_corners,
                                      const std::array<Vec2, 4>& end_corners) {
    // unknowns: (a11, a12, a21, a22, b1, b2)
    Eigen::Matrix<double, 8, 6> D = Eigen::Matrix<double, 8, 6>::Zero();
    Eigen::Matrix<double, 8, 1> rhs;
    for (int k = 0; k < 4; ++k) {
        const Vec2& x = start_corners[k];
        D(2 * k, 0) = x[0];
        D(2 * k, 1) = x[1];
        D(2 * k, 4) = 1.0;
        D(2 * k + 1, 2) = x[0];
        D(2 * k + 1, 3) = x[1];
        D(2 * k + 1, 5) = 1.0;
        rhs(2 * k) = end_corners[k][0];
        rhs(2 * k + 1) = end_corners[k][1];
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 8, 6>> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(5) < 1e-10)
        throw DegenerateLandmarksError("estimate_affine_motion: collinear or degenerate start corners");
    const Eigen::Matrix<double, 6, 1> x = svd.solve(rhs);
    MotionEstimate est;
    est.A << x(0), x(1), x(2), x(3);
    est.b << x(4), x(5);
    est.residual = (D * x - rhs).norm();
    return est;
}

}  // namespace dynct
