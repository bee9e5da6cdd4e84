#include "dynct/resesop.hpp"

#include <cmath>
#include <numeric>

namespace dynct {

namespace {

double dense_dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double sparse_dot_dense(const SparseRow& r, const std::vector<double>& f) {
    double acc = 0.0;
    for (size_t m = 0; m < r.idx.size(); ++m) acc += r.w[m] * f[r.idx[m]];
    return acc;
}

// previous search direction u_old = coeff * row, kept sparse plus a dense
// mirror so dot products against arbitrary supports stay O(support)
struct Direction {
    std::vector<int> idx;
    std::vector<double> w;
    std::vector<double> dense;
    double norm2 = 0.0;
    double alpha = 0.0;
    double xi = 0.0;

    explicit Direction(int n_values) : dense(n_values, 0.0) {}

    bool empty() const { return norm2 <= 0.0; }

    void assign(const SparseRow& row, double coeff) {
        for (int m : idx) dense[m] = 0.0;
        idx = row.idx;
        w.resize(row.w.size());
        for (size_t m = 0; m < row.w.size(); ++m) {
            w[m] = coeff * row.w[m];
            dense[idx[m]] += w[m];
        }
        norm2 = coeff * coeff * row.norm2;
    }

    double dot_f(const std::vector<double>& f) const {
        double acc = 0.0;
        for (size_t m = 0; m < idx.size(); ++m) acc += w[m] * f[idx[m]];
        return acc;
    }

    double dot_row(const SparseRow& row, double coeff) const {
        double acc = 0.0;
        for (size_t m = 0; m < row.idx.size(); ++m) acc += row.w[m] * dense[row.idx[m]];
        return acc * coeff;
    }
};

}  // namespace

Image project_stripe_single(const Image& f, const Image& u, double alpha, double xi,
                            double residual_abs, double bound) {
    (void)alpha;
    (void)xi;
    const double norm2 = dense_dot(u.values, u.values);
    if (norm2 <= 0.0) throw ZeroDirectionError("project_stripe_single: zero search direction");
    const double step = residual_abs * (residual_abs - bound) / norm2;
    Image out = f;
    for (size_t m = 0; m < out.values.size(); ++m) out.values[m] -= step * u.values[m];
    return out;
}

Image project_two_stripes(const Image& f_tilde, const Image& u_new, const Image& u_old,
                          double alpha_old, double xi_old) {
    const double dot_old = dense_dot(u_old.values, f_tilde.values);
    if (std::abs(dot_old - alpha_old) <= xi_old) return f_tilde;  // already inside the old stripe

    const double n2_new = dense_dot(u_new.values, u_new.values);
    const double n2_old = dense_dot(u_old.values, u_old.values);
    const double cross = dense_dot(u_new.values, u_old.values);
    const double gram = n2_new * n2_old - cross * cross;
    if (gram <= 1e-14 * n2_new * n2_old) return f_tilde;  // parallel directions: documented fallback

    const double target = dot_old > alpha_old + xi_old ? alpha_old + xi_old : alpha_old - xi_old;
    const double t = (dot_old - target) / gram;
    Image out = f_tilde;
    for (size_t m = 0; m < out.values.size(); ++m)
        out.values[m] += cross * t * u_new.values[m] - n2_new * t * u_old.values[m];
    return out;
}

ResesopRowsResult resesop_kaczmarz_rows(const RayRowSource& rows, const std::vector<double>& data,
                                        const std::vector<double>& eta,
                                        const std::vector<double>& delta, const ResesopConfig& cfg) {
    const int n_rays = rows.ray_count();
    if (static_cast<int>(data.size()) != n_rays || static_cast<int>(eta.size()) != n_rays ||
        static_cast<int>(delta.size()) != n_rays)
        throw ContractViolation("resesop_kaczmarz_rows: data/eta/delta size mismatch");
    if (cfg.tau <= 1.0) throw ConfigError("resesop_kaczmarz_rows: tau must be > 1");
    if (cfg.max_full_iterations <= 0)
        throw ConfigError("resesop_kaczmarz_rows: max_full_iterations must be positive");

    std::vector<double> f(rows.value_count(), 0.0);
    std::vector<char> stopped(n_rays, 1);  // 1 until the ray first passes the discrepancy test
    Direction u_old(rows.value_count());
    ResesopReport report;

    std::vector<int> touched;
    int sweeps = 0;
    auto any_unstopped = [&] {
        for (char s : stopped)
            if (s) return true;
        return false;
    };

    while (any_unstopped() && sweeps < cfg.max_full_iterations) {
        double sweep_residual2 = 0.0;  // residuals as visited during the sweep
        for (int r = 0; r < n_rays; ++r) {
            const SparseRow& row = rows.row(r);
            const double res = sparse_dot_dense(row, f) - data[r];
            sweep_residual2 += res * res;
            const double bound = eta[r] + delta[r];
            if (std::abs(res) <= cfg.tau * bound) {
                stopped[r] = 0;
                continue;
            }
            // u_new = A^T res; a zero row leaves the iterate untouched
            const double n2_new = res * res * row.norm2;
            if (n2_new <= 0.0) continue;

            const double alpha_new = res * data[r];
            const double xi_new = std::abs(res) * bound;

            // f~ = f - |res|(|res| - bound)/||u_new||^2 u_new
            const double step = std::abs(res) * (std::abs(res) - bound) / n2_new;
            touched.clear();
            for (size_t m = 0; m < row.idx.size(); ++m) {
                f[row.idx[m]] -= step * res * row.w[m];
                touched.push_back(row.idx[m]);
            }

            // project onto the previous stripe while staying on the new hyperplane
            if (!u_old.empty()) {
                const double dot_old = u_old.dot_f(f);
                if (std::abs(dot_old - u_old.alpha) > u_old.xi) {
                    const double cross = u_old.dot_row(row, res);  // <u_new, u_old>
                    const double gram = n2_new * u_old.norm2 - cross * cross;
                    if (gram > 1e-14 * n2_new * u_old.norm2) {
                        const double target = dot_old > u_old.alpha + u_old.xi
                                                  ? u_old.alpha + u_old.xi
                                                  : u_old.alpha - u_old.xi;
                        const double t = (dot_old - target) / gram;
                        for (size_t m = 0; m < row.idx.size(); ++m)
                            f[row.idx[m]] += cross * t * res * row.w[m];
                        for (size_t m = 0; m < u_old.idx.size(); ++m) {
                            f[u_old.idx[m]] -= n2_new * t * u_old.w[m];
                            touched.push_back(u_old.idx[m]);
                        }
                    }
                }
            }

            if (cfg.nonnegativity) {
                // f was nonnegative outside the touched support, so this equals a full clamp
                for (int m : touched)
                    if (f[m] < 0.0) f[m] = 0.0;
            }

            u_old.assign(row, res);
            u_old.alpha = alpha_new;
            u_old.xi = xi_new;
        }
        report.per_sweep_residual_norms.push_back(std::sqrt(sweep_residual2));
        ++sweeps;
    }

    report.iterations_run = sweeps;
    int n_stopped = 0;
    double max_res = 0.0;
    for (int r = 0; r < n_rays; ++r) {
        if (!stopped[r]) ++n_stopped;
        const double res = sparse_dot_dense(rows.row(r), f) - data[r];
        max_res = std::max(max_res, std::abs(res));
    }
    report.stopped_ray_fraction = static_cast<double>(n_stopped) / n_rays;
    report.final_residual_max = max_res;
    return ResesopRowsResult{std::move(f), std::move(report)};
}

namespace {

class RadonRowSource final : public RayRowSource {
  public:
    RadonRowSource(const ScanGeometry& geom, const ImageGrid& grid) : geom_(geom), grid_(grid) {}

    int ray_count() const override { return geom_.p * geom_.n_offsets(); }
    int value_count() const override { return grid_.n_pix * grid_.n_pix; }
    const SparseRow& row(int r) const override {
        const int i = r / geom_.n_offsets();
        const int a = r % geom_.n_offsets();
        build_ray_row(grid_, geom_.angle(i), geom_.offset(a), scratch_);
        return scratch_;
    }

  private:
    ScanGeometry geom_;
    ImageGrid grid_;
    mutable SparseRow scratch_;
};

}  // namespace

std::pair<Image, ResesopReport> resesop_kaczmarz(const Sinogram& sino, const InexactnessMap& inexact,
                                                 const ScanGeometry& geom, const ImageGrid& grid,
                                                 const ResesopConfig& cfg) {
    if (!(sino.geom == geom) || !(inexact.geom == geom))
        throw ContractViolation("resesop_kaczmarz: sinogram/inexactness geometry mismatch");
    RadonRowSource rows(geom, grid);
    auto result = resesop_kaczmarz_rows(rows, sino.values, inexact.eta, inexact.delta, cfg);
    Image img{grid, std::move(result.f)};
    return {std::move(img), std::move(result.report)};
}

}  // namespace dynct
