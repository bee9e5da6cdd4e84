#pragma once

#include "dynct/motion.hpp"
#include "dynct/radon.hpp"

namespace dynct {

struct FbpConfig {
    double gamma = 0.0;  // Gaussian mollifier width, unit-disk lengths, > 0
    int n_pix_out = 0;   // reconstruction grid
};

/// Dawson integral D(x) = e^{-x^2} int_0^x e^{t^2} dt, |error| <= 1e-10 for
/// |x| <= 50. Maclaurin series for small |x|, exponentially convergent
/// sampling series mid-range, asymptotic expansion beyond.
double dawson(double x);

/// Reconstruction kernel for the Gaussian mollifier at angle index i:
///   psi(s) = |det C| |h| / (4 pi^2 g^2 w^2) (1 - sqrt(2) z/(g w) D(z/(sqrt(2) g w)))
/// with w = ||C^{-*} theta||, z = s + (C^{-1} b_t)^T theta, (C, b_t) at time i.
double kernel_value(const AffineMotion& m, int angle_index, double s, const FbpConfig& cfg,
                    const ScanGeometry& geom);

/// Direct-sum filtering: v[i][k] = (1/q) sum_j psi_i(s_k - s_j) g[i][j].
std::vector<double> filter_sinogram(const Sinogram& s, const AffineMotion& m, const FbpConfig& cfg);

/// Interpolated backprojection: for each pixel x inside the unit disk,
/// s = (C(t_l)^{-1} x)^T theta_l per angle, linear interpolation of v,
/// scaled by 2 pi / p. Out-of-range offset samples contribute 0.
Image backproject_filtered(const std::vector<double>& v, const AffineMotion& m,
                           const FbpConfig& cfg, const ScanGeometry& geom);

/// filter + backproject. The static FBP is dynamic_fbp with the identity motion.
Image dynamic_fbp(const Sinogram& s, const AffineMotion& m, const FbpConfig& cfg);

}  // namespace dynct
