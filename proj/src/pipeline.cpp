#include "dynct/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "dynct/io.hpp"

namespace dynct {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const PipelineConfig& cfg) {
    if (cfg.n_offsets < 3 || cfg.n_offsets % 2 == 0)
        throw ConfigError("pipeline: n_offsets must be odd (2q+1 grid)");
    if (cfg.p < 2) throw ConfigError("pipeline: need at least two angles");
    if (cfg.synth_n <= 0 || cfg.resesop_n <= 0 || cfg.fbp_n <= 0)
        throw ConfigError("pipeline: grid sizes must be positive");
    if (cfg.synth_n == cfg.fbp_n && !cfg.allow_inverse_crime)
        throw ConfigError("pipeline: synthesis and FBP grids coincide (inverse crime); "
                          "pass allow_inverse_crime to override");
    if (cfg.noise_amplitude < 0) throw ConfigError("pipeline: negative noise amplitude");
    if (cfg.coarse_sweeps <= 0 || cfg.baseline_sweeps <= 0)
        throw ConfigError("pipeline: sweep counts must be positive");
}

}  // namespace

AffineMotion fbp_motion_for(const Mat2& A, const Vec2& b_unit, int N) {
    return AffineMotion(A, -b_unit, N);
}

ComparisonReport run_hybrid_pipeline(const PipelineConfig& cfg) {
    validate(cfg);
    ComparisonReport report;
    report.true_A = cfg.motion_A;
    report.true_b_pixels = cfg.shift_pixels;

    const ScanGeometry geom{cfg.p, (cfg.n_offsets - 1) / 2};
    const double gamma = cfg.gamma > 0 ? cfg.gamma : 1.5 * geom.h();
    const double px2unit = 2.0 / cfg.synth_n;
    const Vec2 b_unit = cfg.shift_pixels * px2unit;
    const AffineMotion truth(cfg.motion_A, b_unit, cfg.p);

    auto emit = [&](const std::string& name, const Image& img) {
        if (cfg.output_dir.empty()) return;
        std::filesystem::create_directories(cfg.output_dir);
        const std::string base = cfg.output_dir + "/" + name;
        write_image(base + ".img", img);
        export_png(img, base + ".png");
        report.emitted_paths.push_back(base + ".img");
        report.emitted_paths.push_back(base + ".png");
    };

    // --- synthesis ---------------------------------------------------------
    auto t0 = Clock::now();
    const ImageGrid synth_grid{cfg.synth_n};
    const PhantomResult phantom = make_rectangle_phantom(synth_grid, cfg.phantom);
    const Sinogram dyn = forward_dynamic(phantom.image, truth, geom);
    const Sinogram static_start = forward_static(phantom.image, geom);
    const Sinogram static_end = forward_at_time(phantom.image, truth, cfg.p - 1, geom);
    const Sinogram data = add_uniform_noise(dyn, cfg.noise_amplitude, cfg.seed);
    const InexactnessMap inexact_start = compute_inexactness(dyn, static_start, cfg.noise_amplitude, 1.0);
    const InexactnessMap inexact_end = compute_inexactness(dyn, static_end, cfg.noise_amplitude, 1.0);
    report.seconds.synthesis = seconds_since(t0);
    emit("phantom", phantom.image);

    // ground truth on the comparison grids
    const PhantomResult truth_fbp = make_rectangle_phantom(ImageGrid{cfg.fbp_n}, cfg.phantom);
    const PhantomResult truth_coarse = make_rectangle_phantom(ImageGrid{cfg.resesop_n}, cfg.phantom);

    const ImageGrid coarse_grid{cfg.resesop_n};
    ResesopConfig coarse_cfg;
    coarse_cfg.tau = cfg.tau;
    coarse_cfg.max_full_iterations = cfg.coarse_sweeps;

    // --- hybrid path -------------------------------------------------------
    auto t_hybrid = Clock::now();
    auto [recon_start, rep_start] = resesop_kaczmarz(data, inexact_start, geom, coarse_grid, coarse_cfg);
    auto [recon_end, rep_end] = resesop_kaczmarz(data, inexact_end, geom, coarse_grid, coarse_cfg);
    report.seconds.coarse_resesop = seconds_since(t_hybrid);
    emit("resesop_coarse_start", recon_start);
    emit("resesop_coarse_end", recon_end);

    std::optional<AffineMotion> fbp_motion;
    auto t_lm = Clock::now();
    try {
        const auto corners_start = detect_rectangle_corners(recon_start);
        const auto corners_end =
            match_corner_correspondence(corners_start, detect_rectangle_corners(recon_end));
        // end-state corners sit at Gamma_end^{-1}(start corners); fitting
        // end -> start therefore recovers the synthesis motion (A, b)
        const MotionEstimate est = estimate_affine_motion(corners_end, corners_start);
        report.landmarks_ok = true;
        report.estimated_A = est.A;
        report.estimated_b_pixels = est.b / px2unit;
        report.estimation_residual = est.residual;
        fbp_motion = fbp_motion_for(est.A, est.b, cfg.p);
    } catch (const std::exception& e) {
        report.landmarks_ok = false;
        report.landmark_failure = e.what();
    }
    report.seconds.landmarks = seconds_since(t_lm);

    const FbpConfig fbp_cfg{gamma, cfg.fbp_n};
    if (fbp_motion) {
        auto t_fbp = Clock::now();
        const Image hybrid = dynamic_fbp(data, *fbp_motion, fbp_cfg);
        report.seconds.dynamic_fbp = seconds_since(t_fbp);
        report.err_hybrid = relative_l2_error(hybrid, truth_fbp.image);
        emit("hybrid", hybrid);
    }
    report.seconds.hybrid_total = seconds_since(t_hybrid);

    // --- baselines ---------------------------------------------------------
    t0 = Clock::now();
    const Image static_fbp = dynamic_fbp(data, AffineMotion::identity(cfg.p), fbp_cfg);
    report.seconds.static_fbp = seconds_since(t0);
    report.err_static_fbp = relative_l2_error(static_fbp, truth_fbp.image);
    emit("static_fbp", static_fbp);

    t0 = Clock::now();
    ResesopConfig baseline_cfg = coarse_cfg;
    baseline_cfg.max_full_iterations = cfg.baseline_sweeps;
    auto [baseline, rep_base] = resesop_kaczmarz(data, inexact_start, geom, coarse_grid, baseline_cfg);
    report.seconds.resesop_baseline = seconds_since(t0);
    report.err_resesop_baseline = relative_l2_error(baseline, truth_coarse.image);
    emit("resesop_baseline", baseline);

    t0 = Clock::now();
    const Image dynfbp_true = dynamic_fbp(data, fbp_motion_for(cfg.motion_A, b_unit, cfg.p), fbp_cfg);
    report.seconds.dynamic_fbp_true = seconds_since(t0);
    report.err_dynfbp_true_motion = relative_l2_error(dynfbp_true, truth_fbp.image);
    emit("dynfbp_true_motion", dynfbp_true);

    return report;
}

}  // namespace dynct
