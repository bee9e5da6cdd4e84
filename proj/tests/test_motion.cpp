#include <doctest.h>

#include <cmath>
#include <random>

#include "dynct/motion.hpp"

using namespace dynct;

namespace {

// Independent closed form for h with C(phi) = I + phi/Phi (A - I), Phi = dphi (N-1):
// write C = M/Phi, then C^{-*} theta = Phi (u1, u2)/v and h = Phi^2 (u1 u2' - u2 u1')/v^2.
double h_closed_form(const Mat2& A, int N, int p, int angle_index) {
    const double dphi = M_PI / p;
    const double Phi = dphi * (N - 1);
    const double phi = angle_index * dphi;
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    const double cphi = std::cos(phi), sphi = std::sin(phi);

    const double m11 = Phi + phi * (a - 1), m12 = phi * b;
    const double m21 = phi * c, m22 = Phi + phi * (d - 1);
    const double u1 = m22 * cphi - m21 * sphi;
    const double u2 = -m12 * cphi + m11 * sphi;
    const double v = m11 * m22 - m12 * m21;
    const double u1p = (d - 1) * cphi - m22 * sphi - c * sphi - phi * c * cphi;
    const double u2p = -b * cphi + phi * b * sphi + (a - 1) * sphi + m11 * cphi;
    return Phi * Phi * (u1 * u2p - u2 * u1p) / (v * v);
}

}  // namespace

TEST_SUITE_BEGIN("motion");

TEST_CASE("motion_at_time endpoints and interior value") {
    Mat2 A;
    A << 2, 0, 0, 1;
    const AffineMotion m(A, Vec2(0.1, -0.2), 450);

    auto [C0, b0] = motion_at_time(m, 0);
    CHECK(C0 == Mat2::Identity());
    CHECK(b0 == Vec2::Zero());

    auto [CN, bN] = motion_at_time(m, 449);
    CHECK((CN - A).norm() == 0.0);
    CHECK((bN - Vec2(0.1, -0.2)).norm() == 0.0);

    auto [C, b] = motion_at_time(m, 224);
    CHECK(C(0, 0) == doctest::Approx(1.0 + 224.0 / 449.0).epsilon(1e-15));
    CHECK(C(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(C(0, 1) == 0.0);

    CHECK_THROWS_AS(motion_at_time(m, -1), ContractViolation);
    CHECK_THROWS_AS(motion_at_time(m, 450), ContractViolation);
    CHECK_THROWS_AS(AffineMotion(A, Vec2::Zero(), 1), ConfigError);
}

TEST_CASE("construction rejects motions that become singular") {
    Mat2 A;
    A << -1, 0, 0, 1;  // det C(t) = 1 - 2t/(N-1) vanishes at t = 50 for N = 101
    CHECK_THROWS_AS(AffineMotion(A, Vec2::Zero(), 101), SingularMotionError);
}

TEST_CASE("motion_at_time is affine in t") {
    Mat2 A;
    A << 1.3, 0.2, -0.1, 0.9;
    const AffineMotion m(A, Vec2(0.05, 0.02), 37);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> t_dist(0.0, 36.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double t1 = t_dist(rng), t2 = t_dist(rng);
        auto [C1, b1] = motion_at_real_time(m, t1);
        auto [C2, b2] = motion_at_real_time(m, t2);
        auto [Cm, bm] = motion_at_real_time(m, 0.5 * (t1 + t2));
        CHECK((Cm - 0.5 * (C1 + C2)).norm() < 1e-14);
        CHECK((bm - 0.5 * (b1 + b2)).norm() < 1e-14);
    }
}

TEST_CASE("motion_inverse_apply round-trips") {
    const AffineMotion id = AffineMotion::identity(10);
    CHECK((motion_inverse_apply(id, 7, Vec2(0.3, -0.4)) - Vec2(0.3, -0.4)).norm() == 0.0);

    const AffineMotion shift(Mat2::Identity(), Vec2(0.2, -0.1), 5);
    CHECK((motion_inverse_apply(shift, 4, Vec2(0.5, 0.5)) - Vec2(0.3, 0.6)).norm() < 1e-15);

    Mat2 A;
    A << 1.4, 0.3, -0.2, 0.8;
    const AffineMotion m(A, Vec2(0.07, -0.03), 21);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<int> t_dist(0, 20);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec2 y(dist(rng), dist(rng));
        const int t = t_dist(rng);
        auto [C, bt] = motion_at_time(m, t);
        const Vec2 forward = C * y + bt;
        CHECK((motion_inverse_apply(m, t, forward) - y).norm() < 1e-12);
    }
}

TEST_CASE("h is 1 for identity and pure shifts") {
    const ScanGeometry geom{48, 32};
    const AffineMotion id = AffineMotion::identity(geom.p);
    const AffineMotion shift(Mat2::Identity(), Vec2(0.3, 0.14), geom.p);
    for (int i = 0; i < geom.p; ++i) {
        CHECK(h_of_theta(id, i, geom) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(h_of_theta(shift, i, geom) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("h of the stretch matches the analytic closed form") {
    const ScanGeometry geom{450, 150};
    Mat2 A;
    A << 2, 0, 0, 1;
    const AffineMotion m(A, Vec2::Zero(), geom.p);
    for (int i : {1, 50, 100, 170, 260, 330, 449}) {
        const double expect = h_closed_form(A, m.N, geom.p, i);
        CHECK(h_of_theta(m, i, geom) == doctest::Approx(expect).epsilon(1e-5));
    }
    // off-diagonal deformation
    Mat2 B;
    B << 1.3, 0.25, -0.15, 0.85;
    const AffineMotion mb(B, Vec2::Zero(), geom.p);
    for (int i : {10, 200, 420}) {
        const double expect = h_closed_form(B, mb.N, geom.p, i);
        CHECK(h_of_theta(mb, i, geom) == doctest::Approx(expect).epsilon(1e-5));
    }
}

TEST_CASE("constant orthogonal deformations give |h| = 1") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(0.1, 2.8);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = ang(rng);
        Mat2 rot;
        rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        Mat2 refl;
        refl << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
        for (const Mat2& C0 : {rot, refl}) {
            const double h = h_of_theta_generic([&](double) { return C0; }, ang(rng));
            CHECK(std::abs(h) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("estimate_affine_motion basics") {
    const std::array<Vec2, 4> start = {Vec2(0.25, 0.25), Vec2(-0.25, 0.25), Vec2(-0.25, -0.25),
                                       Vec2(0.25, -0.25)};
    SUBCASE("identity") {
        const MotionEstimate est = estimate_affine_motion(start, start);
        CHECK((est.A - Mat2::Identity()).norm() < 1e-12);
        CHECK(est.b.norm() < 1e-12);
        CHECK(est.residual < 1e-12);
    }
    SUBCASE("pixel-domain shift of 51 px on a 512 grid") {
        const double d = 51.0 * 2.0 / 512.0;
        std::array<Vec2, 4> end = start;
        for (auto& c : end) c += Vec2(d, d);
        const MotionEstimate est = estimate_affine_motion(start, end);
        CHECK((est.A - Mat2::Identity()).norm() < 1e-9);
        CHECK(est.b[0] == doctest::Approx(0.19921875).epsilon(1e-9));
        CHECK(est.b[1] == doctest::Approx(0.19921875).epsilon(1e-9));
    }
    SUBCASE("pure stretch") {
        Mat2 A;
        A << 2, 0, 0, 1;
        std::array<Vec2, 4> end;
        for (int k = 0; k < 4; ++k) end[k] = A * start[k];
        const MotionEstimate est = estimate_affine_motion(start, end);
        CHECK((est.A - A).norm() < 1e-9);
        CHECK(est.b.norm() < 1e-9);
    }
}

TEST_CASE("exact recovery of random affine correspondences") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    for (int trial = 0; trial < 40; ++trial) {
        Mat2 A;
        A << 1 + dist(rng), dist(rng), dist(rng), 1 + dist(rng);
        const Vec2 b(dist(rng), dist(rng));
        const std::array<Vec2, 4> start = {Vec2(0.3 + dist(rng) * 0.1, 0.2), Vec2(-0.4, 0.35),
                                           Vec2(-0.3, -0.25), Vec2(0.2, -0.4)};
        std::array<Vec2, 4> end;
        for (int k = 0; k < 4; ++k) end[k] = A * start[k] + b;
        const MotionEstimate est = estimate_affine_motion(start, end);
        CHECK(est.residual <= 1e-9);
        CHECK((est.A - A).norm() < 1e-9);
        CHECK((est.b - b).norm() < 1e-9);
    }
}

TEST_CASE("translation equivariance of the estimate") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-0.3, 0.3);
    const std::array<Vec2, 4> start = {Vec2(0.25, 0.2), Vec2(-0.3, 0.3), Vec2(-0.25, -0.3),
                                       Vec2(0.3, -0.2)};
    Mat2 A;
    A << 1.2, 0.1, -0.05, 0.9;
    const Vec2 b(0.04, -0.06);
    std::array<Vec2, 4> end;
    for (int k = 0; k < 4; ++k) end[k] = A * start[k] + b;

    for (int trial = 0; trial < 10; ++trial) {
        const Vec2 v(dist(rng), dist(rng));
        std::array<Vec2, 4> start_t = start, end_t = end;
        for (int k = 0; k < 4; ++k) {
            start_t[k] += v;
            end_t[k] += v;
        }
        const MotionEstimate est = estimate_affine_motion(start_t, end_t);
        CHECK((est.A - A).norm() < 1e-9);
        CHECK((est.b - (b + v - A * v)).norm() < 1e-9);
    }
}

TEST_CASE("collinear corners are rejected") {
    const std::array<Vec2, 4> collinear = {Vec2(0.0, 0.0), Vec2(0.1, 0.1), Vec2(0.2, 0.2),
                                           Vec2(0.3, 0.3)};
    CHECK_THROWS_AS(estimate_affine_motion(collinear, collinear), DegenerateLandmarksError);
}

TEST_SUITE_END();
