#pragma once

// Maximum-likelihood fitting of the random-coefficient bivariate Gaussian
// model over levels of Z, for both the full (13-parameter) and the reduced
// (slope covariance fixed to zero) variants. The likelihood surface has
// abundant local maxima, so fits run a dispersed multi-start around a
// method-of-moments seed; parameter points whose conditional 2x2 covariance
// is not positive definite at some observed z score -infinity.

#include "ccov/dataset.hpp"
#include "ccov/linear_model.hpp"
#include "ccov/mathutil.hpp"
#include "ccov/parallel.hpp"
#include "ccov/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccov {

// ---------------------------------------------------------------------------
// Grouped sufficient statistics
// ---------------------------------------------------------------------------

struct ZGroup {
    double z = 0.0;
    std::size_t n = 0;
    double mean_x = 0.0, mean_y = 0.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;  // central scatter sums
};

inline std::vector<ZGroup> group_by_z(const Dataset& data) {
    std::vector<std::size_t> order(data.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data.rows[a].z < data.rows[b].z;
    });
    std::vector<ZGroup> groups;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const double z = data.rows[order[i]].z;
        ZGroup g;
        g.z = z;
        double sx = 0.0, sy = 0.0;
        while (j < order.size() && data.rows[order[j]].z == z) {
            sx += data.rows[order[j]].x;
            sy += data.rows[order[j]].y;
            ++j;
        }
        g.n = j - i;
        g.mean_x = sx / static_cast<double>(g.n);
        g.mean_y = sy / static_cast<double>(g.n);
        for (std::size_t k = i; k < j; ++k) {
            const double dx = data.rows[order[k]].x - g.mean_x;
            const double dy = data.rows[order[k]].y - g.mean_y;
            g.sxx += dx * dx;
            g.syy += dy * dy;
            g.sxy += dx * dy;
        }
        groups.push_back(g);
        i = j;
    }
    return groups;
}

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLog2Pi = 1.8378770664093454835606594728112353;

// Grouped log-likelihood; -infinity instead of an exception on invalid
// parameter points (negative variances or a non-PD conditional covariance).
inline double grouped_log_likelihood(const std::vector<ZGroup>& groups,
                                     const LinearModelParams& p) {
    const CovarianceParams& c = p.cov;
    if (c.var_bx < 0 || c.var_by < 0 || c.var_ex < 0 || c.var_ey < 0) return kNegInf;
    double ll = 0.0;
    for (const ZGroup& g : groups) {
        const ConditionalMoments m = conditional_moments_unchecked(p, g.z);
        const double det = m.var_x * m.var_y - m.cov_xy * m.cov_xy;
        if (!(m.var_x > 0.0) || !(det > 0.0)) return kNegInf;
        const double ixx = m.var_y / det, iyy = m.var_x / det, ixy = -m.cov_xy / det;
        const double dx = g.mean_x - m.mean_x;
        const double dy = g.mean_y - m.mean_y;
        const double n = static_cast<double>(g.n);
        const double quad = ixx * g.sxx + 2.0 * ixy * g.sxy + iyy * g.syy +
                            n * (ixx * dx * dx + 2.0 * ixy * dx * dy + iyy * dy * dy);
        ll += -n * kLog2Pi - 0.5 * n * std::log(det) - 0.5 * quad;
    }
    return std::isfinite(ll) ? ll : kNegInf;
}

}  // namespace detail

// Sum of bivariate normal log-densities with per-z moments. Throws when the
// conditional covariance is not positive definite at some observed z.
inline double log_likelihood(const Dataset& data, const LinearModelParams& p) {
    if (data.empty()) throw std::invalid_argument("log_likelihood: empty dataset");
    const double ll = detail::grouped_log_likelihood(group_by_z(data), p);
    if (ll == detail::kNegInf)
        throw std::runtime_error(
            "log_likelihood: conditional covariance not positive definite on the data");
    return ll;
}

// Row-by-row evaluation of the same quantity; kept as a cross-check for the
// grouped path.
inline double log_likelihood_per_row(const Dataset& data, const LinearModelParams& p) {
    if (data.empty()) throw std::invalid_argument("log_likelihood_per_row: empty dataset");
    double ll = 0.0;
    for (const DataRow& r : data.rows) {
        const ConditionalMoments m = conditional_moments(p, r.z);  // throws when not PD
        const double det = m.var_x * m.var_y - m.cov_xy * m.cov_xy;
        const double dx = r.x - m.mean_x;
        const double dy = r.y - m.mean_y;
        const double quad =
            (m.var_y * dx * dx - 2.0 * m.cov_xy * dx * dy + m.var_x * dy * dy) / det;
        ll += -detail::kLog2Pi - 0.5 * std::log(det) - 0.5 * quad;
    }
    return ll;
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex (maximization via negated objective)
// ---------------------------------------------------------------------------

namespace detail {

struct SimplexResult {
    std::vector<double> x;
    double value = kNegInf;  // maximized objective value
    bool converged = false;
    std::size_t evaluations = 0;
};

// Standard Nelder-Mead with adaptive coefficients. Deterministic: ties are
// broken by stable sorting, so the result depends only on f, x0 and steps.
template <typename F>
SimplexResult nelder_mead_max(F&& f, const std::vector<double>& x0,
                              const std::vector<double>& steps, double tol,
                              std::size_t max_iterations) {
    const std::size_t n = x0.size();
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / static_cast<double>(n);
    const double gamma = 0.75 - 1.0 / (2.0 * static_cast<double>(n));
    const double delta = 1.0 - 1.0 / static_cast<double>(n);

    SimplexResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return -f(x);  // minimize
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    vals[0] = eval(pts[0]);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += steps[i];
        vals[i + 1] = eval(pts[i + 1]);
        // pull an infeasible vertex toward the base point
        for (int shrink = 0; shrink < 60 && !std::isfinite(vals[i + 1]); ++shrink) {
            pts[i + 1][i] = x0[i] + (pts[i + 1][i] - x0[i]) * 0.5;
            vals[i + 1] = eval(pts[i + 1]);
        }
    }

    std::vector<std::size_t> rank(n + 1);
    std::iota(rank.begin(), rank.end(), 0);
    auto resort = [&] {
        std::stable_sort(rank.begin(), rank.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        resort();
        const std::size_t best = rank[0], worst = rank[n], second_worst = rank[n - 1];
        if (std::isfinite(vals[worst]) && vals[worst] - vals[best] <= tol) {
            res.converged = true;
            break;
        }

        for (std::size_t d = 0; d < n; ++d) {
            double s = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != worst) s += pts[i][d];
            centroid[d] = s / static_cast<double>(n);
        }
        for (std::size_t d = 0; d < n; ++d)
            xr[d] = centroid[d] + alpha * (centroid[d] - pts[worst][d]);
        const double fr = eval(xr);

        if (fr < vals[rank[0]]) {
            for (std::size_t d = 0; d < n; ++d)
                xe[d] = centroid[d] + beta * (xr[d] - centroid[d]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second_worst]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            if (outside) {
                for (std::size_t d = 0; d < n; ++d)
                    xc[d] = centroid[d] + gamma * (xr[d] - centroid[d]);
            } else {
                for (std::size_t d = 0; d < n; ++d)
                    xc[d] = centroid[d] - gamma * (xr[d] - centroid[d]);
            }
            const double fc = eval(xc);
            if (fc < (outside ? fr : vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == rank[0]) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        pts[i][d] = pts[rank[0]][d] + delta * (pts[i][d] - pts[rank[0]][d]);
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }
    resort();
    res.x = pts[rank[0]];
    res.value = -vals[rank[0]];
    return res;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

struct FitConfig {
    int n_starts = 32;
    double tolerance = 1e-9;          // convergence threshold on ll change
    std::size_t max_iterations = 40000;  // simplex iterations per start
    double start_dispersion = 0.3;
    bool reduced = false;
    std::uint64_t seed = 0;
    unsigned n_threads = 1;

    void validate() const {
        if (n_starts < 1) throw std::invalid_argument("FitConfig: n_starts must be >= 1");
        if (!(tolerance > 0)) throw std::invalid_argument("FitConfig: tolerance must be > 0");
    }
};

struct FitResult {
    LinearModelParams params;
    double log_likelihood = detail::kNegInf;
    std::vector<double> start_log_likelihoods;
    int best_start = -1;
    bool converged = false;
    std::size_t n_obs = 0;
    std::uint64_t data_hash = 0;
    bool reduced = false;
};

namespace detail {

// Free-parameter vector layout; the reduced model drops cov_bxby.
inline std::vector<std::string> free_param_names(bool reduced) {
    std::vector<std::string> names = linear_model_param_names();
    if (reduced) names.erase(names.begin() + 8);  // cov_bxby
    return names;
}

inline std::vector<double> pack(const LinearModelParams& p, bool reduced) {
    std::vector<double> v = params_as_values(p);
    if (reduced) v.erase(v.begin() + 8);
    return v;
}

inline LinearModelParams unpack(std::vector<double> v, bool reduced) {
    if (reduced) v.insert(v.begin() + 8, 0.0);
    return params_from_values(v, reduced);
}

struct MomSeed {
    std::vector<double> x;       // packed free parameters
    std::vector<double> scales;  // per-parameter dispersion scales
};

// Method-of-moments initialization: weighted linear regression of the per-z
// means for intercepts and slopes, then weighted quadratic fits of the per-z
// sample variances and covariance, matching the closed-form moment shapes.
inline MomSeed method_of_moments_seed(const std::vector<ZGroup>& groups, bool reduced) {
    std::vector<double> z, w, mx, my, vx, vy, cxy;
    for (const ZGroup& g : groups) {
        if (g.n < 2) continue;
        z.push_back(g.z);
        w.push_back(static_cast<double>(g.n));
        mx.push_back(g.mean_x);
        my.push_back(g.mean_y);
        const double denom = static_cast<double>(g.n - 1);
        vx.push_back(g.sxx / denom);
        vy.push_back(g.syy / denom);
        cxy.push_back(g.sxy / denom);
    }
    if (z.size() < 2) throw std::invalid_argument("fit: need >= 2 z levels with n >= 2");

    const auto lin_x = polyfit(z, mx, w, 1);
    const auto lin_y = polyfit(z, my, w, 1);
    const bool quad_ok = z.size() >= 3;
    auto curve_fit = [&](const std::vector<double>& v) {
        if (quad_ok) return polyfit(z, v, w, 2);  // {c, b, a}
        auto lin = polyfit(z, v, w, 1);
        return std::vector<double>{lin[0], lin[1], 0.0};
    };
    const auto qx = curve_fit(vx);
    const auto qy = curve_fit(vy);
    const auto qc = curve_fit(cxy);

    const double vx_floor = 1e-6 * std::max(1.0, mean_of(vx));
    const double vy_floor = 1e-6 * std::max(1.0, mean_of(vy));
    LinearModelParams p;
    p.mu_x = lin_x[0];
    p.b_x = lin_x[1];
    p.mu_y = lin_y[0];
    p.b_y = lin_y[1];
    p.cov.var_ex = std::max(qx[0], vx_floor);
    p.cov.cov_bxex = qx[1] / 2.0;
    p.cov.var_bx = std::max(qx[2], 1e-8 * std::max(1.0, mean_of(vx)));
    p.cov.var_ey = std::max(qy[0], vy_floor);
    p.cov.cov_byey = qy[1] / 2.0;
    p.cov.var_by = std::max(qy[2], 1e-8 * std::max(1.0, mean_of(vy)));
    p.cov.cov_exey = qc[0];
    p.cov.cov_bxey = qc[1] / 2.0;
    p.cov.cov_bxby = reduced ? 0.0 : qc[2];
    p.cov.reduced = reduced;

    MomSeed seed;
    seed.x = pack(p, reduced);

    const double sd_x = std::sqrt(std::max(mean_of(vx), vx_floor));
    const double sd_y = std::sqrt(std::max(mean_of(vy), vy_floor));
    const double z_spread = std::max(1.0, *std::max_element(z.begin(), z.end()) -
                                              *std::min_element(z.begin(), z.end()));
    std::vector<double> scales13 = {
        sd_x,                      // mu_x
        sd_y,                      // mu_y
        sd_x / z_spread,           // b_x
        sd_y / z_spread,           // b_y
        std::max(std::abs(qx[2]), mean_of(vx) / (z_spread * z_spread)),  // var_bx
        std::max(std::abs(qy[2]), mean_of(vy) / (z_spread * z_spread)),  // var_by
        std::max(std::abs(qx[0]), 0.1 * mean_of(vx)),                    // var_ex
        std::max(std::abs(qy[0]), 0.1 * mean_of(vy)),                    // var_ey
        std::max(std::abs(qc[2]), sd_x * sd_y / (z_spread * z_spread)),  // cov_bxby
        std::max(std::abs(qc[0]), 0.1 * sd_x * sd_y),                    // cov_exey
        std::max(std::abs(qx[1] / 2), sd_x * sd_x / z_spread),           // cov_bxex
        std::max(std::abs(qy[1] / 2), sd_y * sd_y / z_spread),           // cov_byey
        std::max(std::abs(qc[1] / 2), sd_x * sd_y / z_spread),           // cov_bxey
    };
    if (reduced) scales13.erase(scales13.begin() + 8);
    seed.scales = std::move(scales13);
    return seed;
}

// Variance entries of the packed vector (kept nonnegative in start points);
// the reduced packing drops index 8, so slots 4..7 hold the variances in
// both layouts.
inline constexpr std::array<std::size_t, 4> kVarianceSlots{4, 5, 6, 7};

// Covariance entries (everything after the variances in either layout).
inline std::vector<std::size_t> covariance_slots(std::size_t dim) {
    std::vector<std::size_t> slots;
    for (std::size_t s = 8; s < dim; ++s) slots.push_back(s);
    return slots;
}

// The independently fitted moment quadratics can be jointly infeasible (the
// covariance curve may overshoot the variance curves near the edge of the z
// range). Shrinking the covariance coefficients toward zero always restores
// per-z positive definiteness once the variance entries are positive.
template <typename F>
void shrink_to_feasible(std::vector<double>& x, F&& objective) {
    const auto cov = covariance_slots(x.size());
    for (int iter = 0; iter < 400 && !std::isfinite(objective(x)); ++iter)
        for (std::size_t s : cov) x[s] *= 0.7;
}

}  // namespace detail

// Multi-start maximum-likelihood fit. Start 0 is the method-of-moments seed;
// start k > 0 perturbs it with scale cfg.start_dispersion on stream
// (cfg.seed, k). Deterministic for fixed (data, cfg) and independent of
// cfg.n_threads. Extra warm-start points may be supplied (used by the
// bootstrap to seed resample fits at the original estimate).
inline FitResult fit(const Dataset& data, const FitConfig& cfg,
                     const std::vector<LinearModelParams>& warm_starts = {}) {
    cfg.validate();
    if (data.rows.size() < 20) throw std::invalid_argument("fit: need at least 20 observations");
    const std::vector<ZGroup> groups = group_by_z(data);
    {
        std::size_t distinct = groups.size();
        if (distinct < 2) throw std::invalid_argument("fit: need at least 2 distinct z levels");
    }
    const bool reduced = cfg.reduced;
    detail::MomSeed mom = detail::method_of_moments_seed(groups, reduced);
    const std::size_t dim = mom.x.size();

    auto objective = [&](const std::vector<double>& v) {
        return detail::grouped_log_likelihood(groups, detail::unpack(v, reduced));
    };
    detail::shrink_to_feasible(mom.x, objective);

    struct StartOutcome {
        std::vector<double> x;
        double ll = detail::kNegInf;
        bool converged = false;
    };
    const std::size_t n_extra = warm_starts.size();
    const std::size_t n_total = static_cast<std::size_t>(cfg.n_starts) + n_extra;
    std::vector<StartOutcome> outcomes(n_total);

    auto run_from = [&](std::vector<double> x0, double step_scale) {
        StartOutcome out;
        // make the start feasible by shrinking toward the moment seed
        for (int tries = 0; tries < 60 && !std::isfinite(objective(x0)); ++tries)
            for (std::size_t d = 0; d < dim; ++d) x0[d] = mom.x[d] + (x0[d] - mom.x[d]) * 0.5;
        if (!std::isfinite(objective(x0))) return out;

        std::vector<double> steps(dim);
        for (std::size_t d = 0; d < dim; ++d) steps[d] = step_scale * mom.scales[d];
        auto r1 = detail::nelder_mead_max(objective, x0, steps, cfg.tolerance,
                                          cfg.max_iterations);
        // restart once from the incumbent with a tighter simplex
        for (std::size_t d = 0; d < dim; ++d) steps[d] *= 0.1;
        auto r2 = detail::nelder_mead_max(objective, r1.x, steps, cfg.tolerance,
                                          cfg.max_iterations);
        const bool second_better = r2.value >= r1.value;
        out.x = second_better ? r2.x : r1.x;
        out.ll = second_better ? r2.value : r1.value;
        out.converged = (second_better ? r2.converged : r1.converged);
        return out;
    };

    parallel_for(n_total, cfg.n_threads, [&](std::size_t k) {
        if (k < static_cast<std::size_t>(cfg.n_starts)) {
            std::vector<double> x0 = mom.x;
            if (k > 0) {
                Rng rng = Rng::stream(cfg.seed, k);
                for (std::size_t d = 0; d < dim; ++d)
                    x0[d] = mom.x[d] * (1.0 + cfg.start_dispersion * rng.normal()) +
                            cfg.start_dispersion * mom.scales[d] * rng.normal();
                for (std::size_t d : detail::kVarianceSlots) x0[d] = std::abs(x0[d]);
            }
            outcomes[k] = run_from(std::move(x0), 0.1);
        } else {
            LinearModelParams warm = warm_starts[k - cfg.n_starts];
            warm.cov.reduced = reduced;
            if (reduced) warm.cov.cov_bxby = 0.0;
            outcomes[k] = run_from(detail::pack(warm, reduced), 0.02);
        }
    });

    std::size_t best = n_total;
    for (std::size_t k = 0; k < n_total; ++k) {
        if (outcomes[k].ll == detail::kNegInf) continue;
        if (best == n_total || outcomes[k].ll > outcomes[best].ll) best = k;
    }
    if (best == n_total)
        throw std::runtime_error(
            "fit: no start produced a positive-definite conditional covariance");

    FitResult res;
    res.params = detail::unpack(outcomes[best].x, reduced);
    res.log_likelihood = outcomes[best].ll;
    for (const auto& o : outcomes) res.start_log_likelihoods.push_back(o.ll);
    res.best_start = static_cast<int>(best);
    res.converged = outcomes[best].converged;
    res.n_obs = data.rows.size();
    res.data_hash = data.hash();
    res.reduced = reduced;
    return res;
}

// ---------------------------------------------------------------------------
// Likelihood-ratio test
// ---------------------------------------------------------------------------

struct LrtResult {
    double d = 0.0;       // 2 * (ll_full - ll_reduced)
    int df = 1;           // single restriction: cov_bxby = 0
    double p_value = 1.0;
    bool nesting_noise = false;  // true when d was a tiny negative, clamped
};

inline double chi_square1_upper_tail(double d) {
    if (d < 0) throw std::invalid_argument("chi_square1_upper_tail: negative statistic");
    return std::erfc(std::sqrt(d / 2.0));
}

inline LrtResult likelihood_ratio_test(const FitResult& full, const FitResult& reduced) {
    if (full.reduced || !reduced.reduced)
        throw std::invalid_argument("likelihood_ratio_test: expected (full, reduced) results");
    if (full.n_obs != reduced.n_obs || full.data_hash != reduced.data_hash)
        throw std::invalid_argument("likelihood_ratio_test: fits come from different datasets");
    LrtResult r;
    r.d = 2.0 * (full.log_likelihood - reduced.log_likelihood);
    if (r.d < -1e-6)
        throw std::runtime_error("likelihood_ratio_test: nesting violated (D=" +
                                 format_double(r.d) + "); refit with more starts");
    if (r.d < 0) {
        r.nesting_noise = true;
        r.d = 0.0;
    }
    r.df = 1;
    r.p_value = chi_square1_upper_tail(r.d);
    return r;
}

// ---------------------------------------------------------------------------
// Bootstrap
// ---------------------------------------------------------------------------

struct BootstrapSummary {
    struct ParamInterval {
        std::string name;
        double estimate = 0.0;  // point estimate from the base fit
        double lower = 0.0;
        double upper = 0.0;
    };
    std::vector<ParamInterval> intervals;
    double level = 0.95;
    int n_resamples = 0;
    int n_failed = 0;
    std::uint64_t seed = 0;
    FitResult base_fit;
};

// Percentile bootstrap over with-replacement resamples of observations.
// Resample r draws its indices from stream (seed, r) and refits with the
// base estimate as a warm start; results are identical for any thread count.
inline BootstrapSummary bootstrap(const Dataset& data, const FitConfig& cfg, int n_resamples,
                                  std::uint64_t seed) {
    if (n_resamples < 2) throw std::invalid_argument("bootstrap: need >= 2 resamples");
    {
        bool degenerate = true;
        for (const DataRow& r : data.rows)
            degenerate &= (r == data.rows.front());
        if (degenerate)
            throw std::runtime_error("bootstrap: all rows identical (degenerate covariance)");
    }

    BootstrapSummary summary;
    summary.n_resamples = n_resamples;
    summary.seed = seed;
    summary.base_fit = fit(data, cfg);

    const std::size_t n = data.rows.size();
    std::vector<std::vector<double>> estimates(static_cast<std::size_t>(n_resamples));
    std::vector<char> failed(static_cast<std::size_t>(n_resamples), 0);

    FitConfig refit_cfg = cfg;
    refit_cfg.n_threads = 1;  // parallelism is across resamples
    const std::vector<LinearModelParams> warm{summary.base_fit.params};

    parallel_for(static_cast<std::size_t>(n_resamples), cfg.n_threads, [&](std::size_t r) {
        Rng rng = Rng::stream(seed, r);
        Dataset resample;
        resample.rows.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            resample.rows[i] = data.rows[rng.uniform_below(n)];
        try {
            const FitResult fr = fit(resample, refit_cfg, warm);
            estimates[r] = params_as_values(fr.params);
        } catch (const std::exception&) {
            failed[r] = 1;
        }
    });

    for (char f : failed) summary.n_failed += f;
    if (summary.n_failed * 5 > n_resamples)
        throw std::runtime_error("bootstrap: more than 20% of resample fits failed (" +
                                 std::to_string(summary.n_failed) + "/" +
                                 std::to_string(n_resamples) + ")");

    const auto& names = linear_model_param_names();
    const auto base_values = params_as_values(summary.base_fit.params);
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::vector<double> vals;
        for (int r = 0; r < n_resamples; ++r)
            if (!failed[static_cast<std::size_t>(r)])
                vals.push_back(estimates[static_cast<std::size_t>(r)][i]);
        BootstrapSummary::ParamInterval iv;
        iv.name = names[i];
        iv.estimate = base_values[i];
        iv.lower = quantile_of(vals, 0.025);
        iv.upper = quantile_of(vals, 0.975);
        summary.intervals.push_back(std::move(iv));
    }
    return summary;
}

}  // namespace ccov
