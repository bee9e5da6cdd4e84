#pragma once

#include "dynct/dynamic_radon.hpp"
#include "dynct/radon.hpp"

namespace dynct {

/// One RESESOP stripe {f : |<u,f> - alpha| <= xi}.
struct StripeParams {
    Image u;
    double alpha = 0.0;
    double xi = 0.0;
};

struct ResesopConfig {
    double tau = 1.00001;         // discrepancy constant, > 1
    int max_full_iterations = 30; // cap on full sweeps
    double rho = 1.0;
    bool nonnegativity = true;    // clamp negatives after each projection
};

struct ResesopReport {
    int iterations_run = 0;             // full sweeps performed
    double stopped_ray_fraction = 0.0;  // rays whose discrepancy test has passed
    double final_residual_max = 0.0;
    std::vector<double> per_sweep_residual_norms;
};

/// Metric projection of f onto the near bounding hyperplane of the stripe:
/// f - residual_abs (residual_abs - bound) / ||u||^2 * u.
Image project_stripe_single(const Image& f, const Image& u, double alpha, double xi,
                            double residual_abs, double bound);

/// Second projection step: keeps <u_new, .> and moves f_tilde onto the old
/// stripe's near bounding hyperplane; falls back to f_tilde when u_new and
/// u_old are (numerically) parallel.
Image project_two_stripes(const Image& f_tilde, const Image& u_new, const Image& u_old,
                          double alpha_old, double xi_old);

/// Row access for the generic solver core. row(r) may return a reference to
/// an internal scratch buffer that stays valid until the next call.
class RayRowSource {
  public:
    virtual ~RayRowSource() = default;
    virtual int ray_count() const = 0;
    virtual int value_count() const = 0;
    virtual const SparseRow& row(int r) const = 0;
};

struct ResesopRowsResult {
    std::vector<double> f;
    ResesopReport report;
};

/// RESESOP-Kaczmarz V1 over an arbitrary sequence of scalar subproblems
/// (one row each), two search directions, per-ray discrepancy stopping.
ResesopRowsResult resesop_kaczmarz_rows(const RayRowSource& rows, const std::vector<double>& data,
                                        const std::vector<double>& eta,
                                        const std::vector<double>& delta, const ResesopConfig& cfg);

/// The CT instantiation: rays in angle-major, offset-minor order, rows from
/// the Joseph tracer on `grid`.
std::pair<Image, ResesopReport> resesop_kaczmarz(const Sinogram& sino, const InexactnessMap& inexact,
                                                 const ScanGeometry& geom, const ImageGrid& grid,
                                                 const ResesopConfig& cfg);

}  // namespace dynct
