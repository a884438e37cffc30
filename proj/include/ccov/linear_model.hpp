#pragma once

// Random-coefficient bivariate Gaussian model:
//
//   X = mu_x + (b_x + e_bx) Z + e_x
//   Y = mu_y + (b_y + e_by) Z + e_y
//   (e_bx, e_x, e_by, e_y) ~ N(0, Sigma)
//
// The conditional law of (X,Y) given Z=z is bivariate normal with means
// mu + b z and a covariance that is quadratic in z:
//
//   V(X|z)   = var_bx z^2 + 2 cov_bxex z + var_ex
//   V(Y|z)   = var_by z^2 + 2 cov_byey z + var_ey
//   C(X,Y|z) = cov_bxby z^2 + 2 cov_bxey z + cov_exey
//
// Only the sum of the two slope/noise cross-covariances enters the
// conditional covariance, so they are not separately identifiable; the model
// stores the single field cov_bxey and uses it for both.

#include "ccov/dataset.hpp"
#include "ccov/mathutil.hpp"
#include "ccov/parallel.hpp"
#include "ccov/rng.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccov {

struct CovarianceParams {
    double var_bx = 0.0, var_by = 0.0, var_ex = 1.0, var_ey = 1.0;
    double cov_bxby = 0.0;  // slope-slope covariance; forced to 0 when reduced
    double cov_exey = 0.0;
    double cov_bxex = 0.0, cov_byey = 0.0;
    double cov_bxey = 0.0;  // shared value of the two cross terms
    bool reduced = false;

    double effective_cov_bxby() const { return reduced ? 0.0 : cov_bxby; }

    void validate() const {
        if (var_bx < 0 || var_by < 0 || var_ex < 0 || var_ey < 0)
            throw std::invalid_argument("CovarianceParams: negative variance");
        if (reduced && cov_bxby != 0.0)
            throw std::invalid_argument(
                "CovarianceParams: reduced model requires cov_bxby == 0");
    }

    // Full 4x4 over (e_bx, e_x, e_by, e_y) with the equality constraint.
    std::vector<std::vector<double>> sigma4() const {
        const double bxby = effective_cov_bxby();
        return {{var_bx, cov_bxex, bxby, cov_bxey},
                {cov_bxex, var_ex, cov_bxey, cov_exey},
                {bxby, cov_bxey, var_by, cov_byey},
                {cov_bxey, cov_exey, cov_byey, var_ey}};
    }
};

struct LinearModelParams {
    double mu_x = 0.0, mu_y = 0.0;
    double b_x = 0.0, b_y = 0.0;
    CovarianceParams cov;

    void validate() const {
        for (double v : {mu_x, mu_y, b_x, b_y})
            if (!std::isfinite(v)) throw std::invalid_argument("LinearModelParams: non-finite");
        cov.validate();
    }
};

struct ConditionalMoments {
    double mean_x = 0.0, mean_y = 0.0;
    double var_x = 0.0, var_y = 0.0, cov_xy = 0.0;

    Sym2 covariance() const { return {var_x, cov_xy, var_y}; }
};

// Evaluates means and the quadratic-in-z covariance; no validity check.
inline ConditionalMoments conditional_moments_unchecked(const LinearModelParams& p, double z) {
    ConditionalMoments m;
    m.mean_x = p.mu_x + p.b_x * z;
    m.mean_y = p.mu_y + p.b_y * z;
    m.var_x = p.cov.var_bx * z * z + 2.0 * p.cov.cov_bxex * z + p.cov.var_ex;
    m.var_y = p.cov.var_by * z * z + 2.0 * p.cov.cov_byey * z + p.cov.var_ey;
    m.cov_xy = p.cov.effective_cov_bxby() * z * z + 2.0 * p.cov.cov_bxey * z + p.cov.cov_exey;
    return m;
}

inline ConditionalMoments conditional_moments(const LinearModelParams& p, double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("conditional_moments: non-finite z");
    const ConditionalMoments m = conditional_moments_unchecked(p, z);
    const Sym2 c = m.covariance();
    if (!c.positive_definite()) {
        const auto ev = c.eigenvalues();
        throw std::runtime_error("conditional covariance not positive definite at z=" +
                                 format_double(z) + " (eigenvalues " + format_double(ev[0]) +
                                 ", " + format_double(ev[1]) + ")");
    }
    return m;
}

// One (z,x,y) row per entry of z_values. Each unit draws its own coefficient
// 4-vector from N(0, Sigma) on a per-unit random stream, so the output is
// independent of how the unit range is partitioned across threads.
inline Dataset simulate(const LinearModelParams& p, const std::vector<double>& z_values,
                        std::uint64_t seed, unsigned n_threads = 1) {
    p.validate();
    const auto factor = psd_factor(p.cov.sigma4());  // throws when not PSD

    Dataset d;
    d.rows.resize(z_values.size());
    parallel_for(z_values.size(), n_threads, [&](std::size_t i) {
        Rng rng = Rng::stream(seed, i);
        double g[4], e[4];
        for (double& v : g) v = rng.normal();
        for (int r = 0; r < 4; ++r) {
            e[r] = 0.0;
            for (int c = 0; c < 4; ++c) e[r] += factor[r][c] * g[c];
        }
        const double z = z_values[i];
        d.rows[i] = {z, p.mu_x + (p.b_x + e[0]) * z + e[1], p.mu_y + (p.b_y + e[2]) * z + e[3]};
    });
    return d;
}

// ---------------------------------------------------------------------------
// Parameter files: `key = value` lines, one per field, `#` comments.
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& linear_model_param_names() {
    static const std::vector<std::string> names = {
        "mu_x", "mu_y", "b_x", "b_y", "var_bx", "var_by", "var_ex",
        "var_ey", "cov_bxby", "cov_exey", "cov_bxex", "cov_byey", "cov_bxey"};
    return names;
}

inline std::vector<double> params_as_values(const LinearModelParams& p) {
    return {p.mu_x, p.mu_y, p.b_x, p.b_y, p.cov.var_bx, p.cov.var_by, p.cov.var_ex,
            p.cov.var_ey, p.cov.cov_bxby, p.cov.cov_exey, p.cov.cov_bxex, p.cov.cov_byey,
            p.cov.cov_bxey};
}

inline LinearModelParams params_from_values(const std::vector<double>& v, bool reduced) {
    if (v.size() != 13) throw std::invalid_argument("params_from_values: expected 13 values");
    LinearModelParams p;
    p.mu_x = v[0];
    p.mu_y = v[1];
    p.b_x = v[2];
    p.b_y = v[3];
    p.cov.var_bx = v[4];
    p.cov.var_by = v[5];
    p.cov.var_ex = v[6];
    p.cov.var_ey = v[7];
    p.cov.cov_bxby = v[8];
    p.cov.cov_exey = v[9];
    p.cov.cov_bxex = v[10];
    p.cov.cov_byey = v[11];
    p.cov.cov_bxey = v[12];
    p.cov.reduced = reduced;
    return p;
}

inline void write_params(const LinearModelParams& p, std::ostream& out) {
    const auto& names = linear_model_param_names();
    const auto values = params_as_values(p);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (p.cov.reduced && names[i] == "cov_bxby") continue;
        out << names[i] << " = " << format_double(values[i]) << '\n';
    }
    out << "reduced = " << (p.cov.reduced ? "true" : "false") << '\n';
}

inline void write_params(const LinearModelParams& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_params(p, out);
}

inline LinearModelParams read_params(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        std::istringstream probe(line);
        std::string token;
        if (!(probe >> token)) continue;
        if (eq == std::string::npos)
            throw std::runtime_error("parameter file line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        std::istringstream ks(line.substr(0, eq)), vs(line.substr(eq + 1));
        std::string key, value, extra;
        if (!(ks >> key) || (ks >> extra) || !(vs >> value) || (vs >> extra))
            throw std::runtime_error("parameter file line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        if (!kv.emplace(key, value).second)
            throw std::runtime_error("parameter file line " + std::to_string(line_no) +
                                     ": duplicate key '" + key + "'");
    }

    bool reduced = false;
    if (auto it = kv.find("reduced"); it != kv.end()) {
        if (it->second == "true")
            reduced = true;
        else if (it->second != "false")
            throw std::runtime_error("parameter file: 'reduced' must be true or false");
        kv.erase(it);
    }
    std::vector<double> values(13, 0.0);
    const auto& names = linear_model_param_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto it = kv.find(names[i]);
        if (it == kv.end()) {
            if (reduced && names[i] == "cov_bxby") continue;
            throw std::runtime_error("parameter file: missing field '" + names[i] + "'");
        }
        try {
            values[i] = std::stod(it->second);
        } catch (const std::exception&) {
            throw std::runtime_error("parameter file: field '" + names[i] +
                                     "' is not a number: '" + it->second + "'");
        }
        kv.erase(it);
    }
    if (!kv.empty())
        throw std::runtime_error("parameter file: unknown field '" + kv.begin()->first + "'");
    LinearModelParams p = params_from_values(values, reduced);
    p.validate();
    return p;
}

inline LinearModelParams read_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_params(in);
}

}  // namespace ccov
