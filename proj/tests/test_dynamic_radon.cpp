#include <doctest.h>

#include <cmath>
#include <random>

#include "dynct/dynamic_radon.hpp"

using namespace dynct;

namespace {

Image disk_phantom(int n, double radius, const Vec2& center = Vec2::Zero()) {
    ImageGrid grid{n};
    Image img = Image::zeros(grid);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((pixel_center(grid, i, j) - center).norm() <= radius) img.at(i, j) = 1.0;
    return img;
}

Image shifted_rect(int n, const Vec2& center, const Vec2& half) {
    ImageGrid grid{n};
    const auto res = make_rectangle_phantom(grid, RectanglePhantom{center, half, 0.0, 1.0});
    return res.image;
}

}  // namespace

TEST_SUITE_BEGIN("dynamic_radon");

TEST_CASE("identity motion reproduces the static operator") {
    const Image disk = disk_phantom(96, 0.7);
    const ScanGeometry geom{30, 24};
    const AffineMotion id = AffineMotion::identity(geom.p);

    const Sinogram stat = forward_static(disk, geom);
    const Sinogram dyn = forward_dynamic(disk, id, geom);
    for (size_t m = 0; m < stat.values.size(); ++m)
        CHECK(std::abs(dyn.values[m] - stat.values[m]) <= 1e-10);

    CHECK(dynamic_ray_integral(disk, id, 7, 30, geom) ==
          doctest::Approx(ray_integral(disk, geom.angle(7), geom.offset(30))).epsilon(1e-10));
}

TEST_CASE("zero image stays zero under any motion") {
    Image zero = Image::zeros(ImageGrid{48});
    Mat2 A;
    A << 1.5, 0.2, 0.0, 0.8;
    const ScanGeometry geom{12, 10};
    const AffineMotion m(A, Vec2(0.1, 0.05), geom.p);
    const Sinogram dyn = forward_dynamic(zero, m, geom);
    for (double v : dyn.values) CHECK(v == 0.0);
}

TEST_CASE("geometry/motion size mismatch is rejected") {
    const Image disk = disk_phantom(32, 0.5);
    const ScanGeometry geom{12, 8};
    CHECK_THROWS_AS(forward_dynamic(disk, AffineMotion::identity(13), geom), ConfigError);
}

TEST_CASE("pure shift obeys the Radon shift identity") {
    const Image disk = disk_phantom(196, 0.5);
    const ScanGeometry geom{20, 49};
    const Vec2 b(0.18, -0.12);
    const AffineMotion m(Mat2::Identity(), b, geom.p);
    const double sp = disk.grid.spacing();

    for (int i : {5, 12, 19}) {
        auto [C, bt] = motion_at_time(m, i);
        const double phi = geom.angle(i);
        const Vec2 theta(std::cos(phi), std::sin(phi));
        for (int a : {10, 49, 70}) {
            const double s = geom.offset(a);
            const double shifted = s + bt.dot(theta);
            if (std::abs(shifted) > 1.0) continue;
            const double dyn = dynamic_ray_integral(disk, m, i, a, geom);
            const double stat = ray_integral(disk, phi, shifted);
            CHECK(std::abs(dyn - stat) <= 2 * sp);
        }
    }
}

TEST_CASE("row 0 always equals the static row") {
    const Image disk = disk_phantom(64, 0.6);
    const ScanGeometry geom{16, 12};
    Mat2 A;
    A << 1.7, 0.1, -0.2, 0.9;
    const AffineMotion m(A, Vec2(0.2, 0.1), geom.p);
    const Sinogram dyn = forward_dynamic(disk, m, geom);
    const Sinogram stat = forward_static(disk, geom);
    for (int a = 0; a < geom.n_offsets(); ++a)
        CHECK(std::abs(dyn.at(0, a) - stat.at(0, a)) <= 1e-10);
}

TEST_CASE("shift end row matches the explicitly shifted phantom") {
    // scaled version of the paper setup: the end-state object is f(x + b),
    // i.e. the rectangle moved by -b, rasterized exactly when b is a whole
    // number of pixels
    const int n = 128, p = 60, q = 40;
    const ScanGeometry geom{p, q};
    const Vec2 center(-0.1, -0.15);
    const Vec2 half(0.35, 0.25);
    const Vec2 b(8.0 * 2 / n, 8.0 * 2 / n);

    const Image start = shifted_rect(n, center, half);
    const Image end_truth = shifted_rect(n, center - b, half);
    const AffineMotion m(Mat2::Identity(), b, p);

    const Sinogram dyn = forward_dynamic(start, m, geom);
    const Sinogram stat_end = forward_static(end_truth, geom);
    const double tol = 2 * start.grid.spacing();
    for (int a = 0; a < geom.n_offsets(); ++a)
        CHECK(std::abs(dyn.at(p - 1, a) - stat_end.at(p - 1, a)) <= tol);

    // forward_at_time agrees with forward_dynamic on the end row by construction
    const Sinogram frozen = forward_at_time(start, m, p - 1, geom);
    CHECK(frozen.at(p - 1, 17) == dyn.at(p - 1, 17));
}

TEST_CASE("compute_inexactness") {
    const ScanGeometry geom{6, 4};
    Sinogram a = Sinogram::zeros(geom);
    Sinogram b = Sinogram::zeros(geom);
    for (size_t m = 0; m < a.values.size(); ++m) a.values[m] = 0.1 * static_cast<double>(m);
    b.values = a.values;

    SUBCASE("identical sinograms give eta = 0") {
        const InexactnessMap map = compute_inexactness(a, b, 0.02, 1.0);
        for (double e : map.eta) CHECK(e == 0.0);
        for (double d : map.delta) CHECK(d == 0.02);
        CHECK(map.rho == 1.0);
    }
    SUBCASE("single-entry difference") {
        b.values[13] += -0.37;
        const InexactnessMap map = compute_inexactness(a, b, 0.0, 1.0);
        for (size_t m = 0; m < map.eta.size(); ++m)
            CHECK(map.eta[m] == (m == 13 ? doctest::Approx(0.37).epsilon(1e-15) : doctest::Approx(0.0)));
    }
    SUBCASE("bounds hold by construction") {
        for (size_t m = 0; m < b.values.size(); ++m) b.values[m] += std::sin(0.7 * m);
        const InexactnessMap map = compute_inexactness(a, b, 0.01, 2.0);
        for (size_t m = 0; m < map.eta.size(); ++m)
            CHECK(std::abs(a.values[m] - b.values[m]) <= map.eta[m]);
    }
    SUBCASE("geometry mismatch rejected") {
        Sinogram other = Sinogram::zeros(ScanGeometry{6, 5});
        CHECK_THROWS_AS(compute_inexactness(a, other, 0.0, 1.0), ContractViolation);
    }
}

TEST_CASE("pure shift leaves the first row nearly exact") {
    const int n = 96;
    const Image rect = shifted_rect(n, Vec2(0.05, -0.1), Vec2(0.3, 0.2));
    const ScanGeometry geom{24, 16};
    const AffineMotion m(Mat2::Identity(), Vec2(0.15, 0.15), geom.p);
    const Sinogram dyn = forward_dynamic(rect, m, geom);
    const Sinogram stat = forward_static(rect, geom);
    const InexactnessMap map = compute_inexactness(dyn, stat, 0.0, 1.0);
    for (int a = 0; a < geom.n_offsets(); ++a) CHECK(map.eta_at(0, a) <= 2 * rect.grid.spacing());
}

TEST_CASE("add_uniform_noise determinism and statistics") {
    const ScanGeometry geom{40, 60};
    Sinogram s = Sinogram::zeros(geom);
    for (size_t m = 0; m < s.values.size(); ++m) s.values[m] = std::cos(0.01 * m);

    SUBCASE("amplitude zero returns the input unchanged") {
        const Sinogram out = add_uniform_noise(s, 0.0, 123);
        CHECK(out.values == s.values);
    }
    SUBCASE("fixed seed reproduces bit-identically") {
        const Sinogram a = add_uniform_noise(s, 0.02, 999);
        const Sinogram b = add_uniform_noise(s, 0.02, 999);
        CHECK(a.values == b.values);
        const Sinogram c = add_uniform_noise(s, 0.02, 1000);
        CHECK(a.values != c.values);
    }
    SUBCASE("perturbations are bounded and centered") {
        const double amp = 0.02;
        const Sinogram out = add_uniform_noise(s, amp, 7);
        double mean = 0.0;
        for (size_t m = 0; m < out.values.size(); ++m) {
            const double d = out.values[m] - s.values[m];
            CHECK(std::abs(d) <= amp);
            mean += d;
        }
        mean /= static_cast<double>(out.values.size());
        const double sigma_mean = amp / std::sqrt(3.0 * static_cast<double>(out.values.size()));
        CHECK(std::abs(mean) <= 3 * sigma_mean);
    }
}

TEST_SUITE_END();
