#pragma once

#include <array>
#include <utility>

#include "dynct/geometry.hpp"
#include "dynct/radon.hpp"

namespace dynct {

/// Constant-speed affine motion: C(t) = I + t/(N-1) (A - I), b(t) = t/(N-1) b,
/// one time step per scanning angle. Construction rejects N < 2 and any time
/// step with |det C(t)| <= 1e-12.
struct AffineMotion {
    Mat2 A;
    Vec2 b;
    int N;

    AffineMotion(const Mat2& A_end, const Vec2& b_end, int n_steps);

    static AffineMotion identity(int n_steps) { return AffineMotion(Mat2::Identity(), Vec2::Zero(), n_steps); }
    bool is_identity() const { return A.isIdentity(0.0) && b.isZero(0.0); }
};

/// (C(t), b(t)) at integer time t in [0, N-1].
std::pair<Mat2, Vec2> motion_at_time(const AffineMotion& m, int t);

/// Motion linearly extended to real-valued t; no range check (used by h).
std::pair<Mat2, Vec2> motion_at_real_time(const AffineMotion& m, double t);

/// C(t)^{-1} (y - b(t)).
Vec2 motion_inverse_apply(const AffineMotion& m, int t, const Vec2& y);

/// Angular Jacobian factor of the deformed ray parameterization,
///   h = (C^{-*}theta)_1 d/dphi (C^{-*}theta)_2 - (C^{-*}theta)_2 d/dphi (C^{-*}theta)_1,
/// evaluated by central differences (step 1e-6) of phi -> C(t(phi))^{-*} theta(phi)
/// with the time-angle identification t(phi) = phi / (pi/p).
double h_of_theta(const AffineMotion& m, int angle_index, const ScanGeometry& geom);

/// Same evaluation for an arbitrary phi -> C map (test seam; throws
/// DegenerateMotionError when |h| < 1e-12).
template <class CofPhi>
double h_of_theta_generic(CofPhi&& C_of_phi, double phi) {
    const double step = 1e-6;
    auto v = [&](double ph) -> Vec2 {
        const Mat2 C = C_of_phi(ph);
        const double det = C(0, 0) * C(1, 1) - C(0, 1) * C(1, 0);
        if (std::abs(det) <= 1e-12)
            throw SingularMotionError("h_of_theta: singular C near requested angle");
        Mat2 inv_t;  // (C^{-1})^T
        inv_t << C(1, 1), -C(1, 0), -C(0, 1), C(0, 0);
        inv_t /= det;
        return inv_t * Vec2(std::cos(ph), std::sin(ph));
    };
    const Vec2 v0 = v(phi);
    const Vec2 dv = (v(phi + step) - v(phi - step)) / (2.0 * step);
    const double h = v0[0] * dv[1] - v0[1] * dv[0];
    if (std::abs(h) < 1e-12)
        throw DegenerateMotionError("h_of_theta: h(theta) vanished");
    return h;
}

struct MotionEstimate {
    Mat2 A;
    Vec2 b;
    double residual;  // Euclidean norm of the 8-component least-squares residual
};

/// Least-squares solution of end_k = A start_k + b over four corner
/// correspondences (8 equations, 6 unknowns).
MotionEstimate estimate_affine_motion(const std::array<Vec2, 4>& start_corners,
                                      const std::array<Vec2, 4>& end_corners);

}  // namespace dynct
