#pragma once

#include <cstdint>

#include "dynct/motion.hpp"
#include "dynct/radon.hpp"

namespace dynct {

/// Per-ray model-error bounds eta_{i,k}, per-ray noise bounds delta_{i,k},
/// and the solution-ball radius rho used by RESESOP.
struct InexactnessMap {
    ScanGeometry geom;
    std::vector<double> eta;    // p x (2q+1), row-major
    std::vector<double> delta;  // p x (2q+1), row-major
    double rho = 1.0;

    double eta_at(int i, int a) const { return eta[static_cast<size_t>(i) * geom.n_offsets() + a]; }
    double delta_at(int i, int a) const { return delta[static_cast<size_t>(i) * geom.n_offsets() + a]; }
};

/// Line integral of x -> image(Gamma_t x) along the static line (phi_i, s_k_at_index_a).
/// Marches the same dominant-axis pixel planes as the Joseph tracer (extended
/// beyond the grid when the deformed support requires it) and evaluates the
/// image at the deformed point with bilinear interpolation, so the identity
/// motion reproduces ray_integral to ~1e-13.
double dynamic_ray_integral(const Image& image, const AffineMotion& m, int angle_index,
                            int offset_index, const ScanGeometry& geom);

/// Dynamic sinogram: row i sees the object at time t = i. Requires geom.p == m.N.
Sinogram forward_dynamic(const Image& image, const AffineMotion& m, const ScanGeometry& geom);

/// Static sinogram of the object frozen at time t (all angles at the same time).
Sinogram forward_at_time(const Image& image, const AffineMotion& m, int t, const ScanGeometry& geom);

/// eta = |dyn - static_ref| per ray, delta = noise_bound broadcast.
InexactnessMap compute_inexactness(const Sinogram& dyn, const Sinogram& static_ref,
                                   double noise_bound, double rho);

/// Adds independent Uniform(-amplitude, amplitude) draws from a seeded
/// generator, row-major order; amplitude 0 returns the input unchanged.
Sinogram add_uniform_noise(const Sinogram& s, double amplitude, std::uint64_t seed);

}  // namespace dynct
