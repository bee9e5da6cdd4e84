#pragma once

#include <optional>
#include <string>

#include "dynct/dynamic_fbp.hpp"
#include "dynct/dynamic_radon.hpp"
#include "dynct/geometry.hpp"
#include "dynct/landmarks.hpp"
#include "dynct/motion.hpp"
#include "dynct/resesop.hpp"

namespace dynct {

/// Full experiment configuration. The motion is given by the end-state matrix
/// A and the end-state shift in synthesis pixels; the data are synthesized
/// with exactly this motion, and the hybrid path must recover it from the
/// coarse reconstructions alone.
struct PipelineConfig {
    RectanglePhantom phantom{{-0.10, -0.15}, {0.35, 0.25}, 0.0, 1.0};
    int synth_n = 512;    // phantom / data synthesis grid
    int resesop_n = 128;  // coarse RESESOP grid
    int fbp_n = 487;      // FBP output grid (inverse-crime guard vs synth_n)
    int p = 450;          // angles = time steps
    int n_offsets = 301;  // must be odd (2q+1)
    Mat2 motion_A = Mat2::Identity();
    Vec2 shift_pixels = Vec2::Zero();  // end-state shift, synthesis pixels
    double noise_amplitude = 0.02;
    double tau = 1.00001;
    int coarse_sweeps = 3;
    int baseline_sweeps = 30;
    double gamma = 0.0;  // <= 0 selects the default 1.5/q
    std::uint64_t seed = 1;
    bool allow_inverse_crime = false;
    std::string output_dir;  // empty: no files emitted
};

struct StageTimes {
    double synthesis = 0.0;
    double coarse_resesop = 0.0;
    double landmarks = 0.0;
    double dynamic_fbp = 0.0;
    double hybrid_total = 0.0;
    double static_fbp = 0.0;
    double resesop_baseline = 0.0;
    double dynamic_fbp_true = 0.0;
};

struct ComparisonReport {
    // relative L2 errors vs the start-state phantom on the method's own grid
    double err_hybrid = -1.0;
    double err_static_fbp = -1.0;
    double err_resesop_baseline = -1.0;
    double err_dynfbp_true_motion = -1.0;

    bool landmarks_ok = false;     // false: partial report, baselines only
    std::string landmark_failure;  // populated when landmarks_ok is false
    Mat2 estimated_A = Mat2::Identity();
    Vec2 estimated_b_pixels = Vec2::Zero();  // synthesis pixels
    Mat2 true_A = Mat2::Identity();
    Vec2 true_b_pixels = Vec2::Zero();
    double estimation_residual = -1.0;

    std::string baseline_state = "start";  // time state targeted by the RESESOP baseline
    StageTimes seconds;
    std::vector<std::string> emitted_paths;
};

/// Three-step hybrid method: coarse RESESOP at both time states, landmark
/// detection + affine least squares, dynamic FBP with the estimate; plus
/// static-FBP / 30-sweep-RESESOP / true-motion-FBP baselines.
ComparisonReport run_hybrid_pipeline(const PipelineConfig& cfg);

/// The (A, b) the dynamic FBP stage consumes for data synthesized by
/// forward_dynamic with motion (A, b): the matrix unchanged, the shift
/// negated. Exposed so the CLI's forward and dynfbp subcommands compose.
AffineMotion fbp_motion_for(const Mat2& A, const Vec2& b_unit, int N);

}  // namespace dynct
