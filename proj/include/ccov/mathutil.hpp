#pragma once

// Small numerical helpers shared across modules: 2x2 symmetric matrix ops,
// Jacobi eigendecomposition for small dense symmetric matrices, sample
// moments, quantiles, polynomial least squares, and a stable 64-bit hash.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccov {

// ---------------------------------------------------------------------------
// Symmetric 2x2
// ---------------------------------------------------------------------------

struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double det() const { return xx * yy - xy * xy; }
    bool positive_definite() const { return xx > 0.0 && det() > 0.0; }

    std::array<double, 2> eigenvalues() const {
        const double tr = xx + yy;
        const double disc = std::sqrt(std::max(0.0, (xx - yy) * (xx - yy) + 4.0 * xy * xy));
        return {(tr - disc) / 2.0, (tr + disc) / 2.0};
    }
};

// ---------------------------------------------------------------------------
// Dense symmetric NxN (N small) -- cyclic Jacobi
// ---------------------------------------------------------------------------

struct SymEig {
    std::vector<double> eigenvalues;       // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};

inline SymEig jacobi_eigen(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("jacobi_eigen: matrix not square");
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    SymEig out;
    out.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a[i][i];
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return out.eigenvalues[i] < out.eigenvalues[j]; });
    SymEig sorted;
    sorted.eigenvalues.resize(n);
    sorted.vectors.assign(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        sorted.eigenvalues[k] = out.eigenvalues[order[k]];
        for (std::size_t i = 0; i < n; ++i) sorted.vectors[k][i] = v[i][order[k]];
    }
    return sorted;
}

// Factor A with A*A^T = S for a PSD matrix S, via eigendecomposition.
// Throws if the smallest eigenvalue is materially negative.
inline std::vector<std::vector<double>> psd_factor(const std::vector<std::vector<double>>& s,
                                                   double* smallest_eigenvalue = nullptr) {
    const SymEig eig = jacobi_eigen(s);
    const std::size_t n = s.size();
    const double lo = eig.eigenvalues.front();
    const double hi = eig.eigenvalues.back();
    if (smallest_eigenvalue) *smallest_eigenvalue = lo;
    if (lo < -1e-9 * std::max(1.0, std::abs(hi)))
        throw std::runtime_error("matrix is not positive semi-definite (smallest eigenvalue " +
                                 std::to_string(lo) + ")");
    std::vector<std::vector<double>> f(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
        for (std::size_t i = 0; i < n; ++i) f[i][k] = eig.vectors[k][i] * root;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Sample moments and quantiles
// ---------------------------------------------------------------------------

inline double mean_of(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean_of: empty input");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Unbiased sample variance (n-1 denominator), two-pass.
inline double variance_of(std::span<const double> v) {
    if (v.size() < 2) throw std::invalid_argument("variance_of: need at least 2 values");
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double covariance_of(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("covariance_of: need two equal-length series, n >= 2");
    const double mx = mean_of(x), my = mean_of(y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(x.size() - 1);
}

// Linear-interpolation quantile on a sorted copy (R type 7).
inline double quantile_of(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile_of: empty input");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile_of: q outside [0,1]");
    std::sort(v.begin(), v.end());
    const double h = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= v.size()) return v.back();
    const double frac = h - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

// ---------------------------------------------------------------------------
// Weighted polynomial least squares (degree <= 2 is all we need)
// ---------------------------------------------------------------------------

// Fits sum_k c_k x^k, k = 0..degree, minimizing weighted squared error.
// Normal equations with Gaussian elimination; fine at these sizes.
inline std::vector<double> polyfit(std::span<const double> x, std::span<const double> y,
                                   std::span<const double> w, int degree) {
    if (x.size() != y.size() || x.size() != w.size())
        throw std::invalid_argument("polyfit: length mismatch");
    const int m = degree + 1;
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        double xp[8] = {1.0};
        for (int k = 1; k < 2 * m - 1; ++k) xp[k] = xp[k - 1] * x[i];
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) a[r][c] += w[i] * xp[r + c];
            a[r][m] += w[i] * xp[r] * y[i];
        }
    }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        if (std::abs(a[col][col]) < 1e-300) throw std::runtime_error("polyfit: singular system");
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> coef(m);
    for (int r = 0; r < m; ++r) coef[r] = a[r][m] / a[r][r];
    return coef;
}

// ---------------------------------------------------------------------------
// Hashing and number formatting
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Shortest decimal that round-trips; used everywhere machine output must be
// byte-stable.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    double parsed = 0.0;
    for (int prec = 1; prec <= 16; ++prec) {
        char cand[40];
        std::snprintf(cand, sizeof(cand), "%.*g", prec, x);
        std::sscanf(cand, "%lf", &parsed);
        if (parsed == x) return cand;
    }
    return buf;
}

}  // namespace ccov
