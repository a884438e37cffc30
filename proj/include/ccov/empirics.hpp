#pragma once

// Empirical machinery: CSV ingestion with case-selection range filters, and
// per-z conditional moment curves with confidence bands (analytic for means,
// percentile bootstrap for variances and the covariance), plus model-
// prediction overlays.

#include "ccov/dataset.hpp"
#include "ccov/linear_model.hpp"
#include "ccov/mathutil.hpp"
#include "ccov/parallel.hpp"
#include "ccov/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccov {

struct ColumnSchema {
    std::string z = "z";
    std::string x = "x";
    std::string y = "y";
    std::string unit_id;  // optional
};

// Inclusive range filter on any input column (selected or not).
struct RangeFilter {
    std::string column;
    double min = -std::numeric_limits<double>::infinity();
    double max = std::numeric_limits<double>::infinity();
};

inline Dataset ingest(std::istream& in, const ColumnSchema& schema,
                      const std::vector<RangeFilter>& filters = {}) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("no rows: file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_line(line);
    std::map<std::string, std::size_t> col_index;
    for (std::size_t i = 0; i < header.size(); ++i) col_index[header[i]] = i;

    auto require_column = [&](const std::string& name) {
        const auto it = col_index.find(name);
        if (it == col_index.end())
            throw std::invalid_argument("unknown column '" + name + "' (header has " +
                                        std::to_string(header.size()) + " columns)");
        return it->second;
    };
    const std::size_t zc = require_column(schema.z);
    const std::size_t xc = require_column(schema.x);
    const std::size_t yc = require_column(schema.y);
    std::optional<std::size_t> uc;
    if (!schema.unit_id.empty()) uc = require_column(schema.unit_id);
    std::vector<std::pair<std::size_t, const RangeFilter*>> filter_cols;
    for (const auto& f : filters) filter_cols.emplace_back(require_column(f.column), &f);

    Dataset d;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("malformed row at line " + std::to_string(line_no) +
                                     ": expected " + std::to_string(header.size()) +
                                     " fields, got " + std::to_string(fields.size()));
        bool keep = true;
        for (const auto& [ci, f] : filter_cols) {
            const double v = parse_csv_number(fields[ci], line_no);
            if (v < f->min || v > f->max) {
                keep = false;
                break;
            }
        }
        if (!keep) {
            ++d.n_dropped_by_filters;
            continue;
        }
        DataRow row{parse_csv_number(fields[zc], line_no), parse_csv_number(fields[xc], line_no),
                    parse_csv_number(fields[yc], line_no)};
        d.rows.push_back(row);
        if (uc)
            d.unit_ids.push_back(
                static_cast<std::int64_t>(parse_csv_number(fields[*uc], line_no)));
    }
    if (d.rows.empty() && d.n_dropped_by_filters == 0) throw std::runtime_error("no rows");
    if (d.rows.empty())
        throw std::runtime_error("no rows after filtering (dropped " +
                                 std::to_string(d.n_dropped_by_filters) + ")");
    d.validate();
    return d;
}

inline Dataset ingest(const std::string& path, const ColumnSchema& schema,
                      const std::vector<RangeFilter>& filters = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return ingest(in, schema, filters);
}

// ---------------------------------------------------------------------------
// Moment curves
// ---------------------------------------------------------------------------

struct Interval {
    double lower = 0.0, upper = 0.0;
};

struct MomentBin {
    double z = 0.0;  // representative z (level, or bin midpoint)
    std::size_t n = 0;
    double mean_x = 0.0, mean_y = 0.0, var_x = 0.0, var_y = 0.0, cov_xy = 0.0;
    Interval mean_x_ci, mean_y_ci, var_x_ci, var_y_ci, cov_xy_ci;
};

struct MomentCurve {
    std::vector<MomentBin> bins;
};

enum class Binning { exact_levels, width };

// Per-bin sample moments with 95% intervals. Mean intervals are +-1.96 SE;
// variance and covariance intervals are within-bin percentile bootstrap with
// n_boot resamples on stream (seed, bin index).
inline MomentCurve moment_curve(const Dataset& data, Binning binning, double bin_width,
                                int n_boot, std::uint64_t seed, unsigned n_threads = 1) {
    if (data.empty()) throw std::invalid_argument("moment_curve: empty dataset");
    if (n_boot < 2) throw std::invalid_argument("moment_curve: n_boot must be >= 2");
    if (binning == Binning::width && !(bin_width > 0))
        throw std::invalid_argument("moment_curve: bin width must be positive");

    // assign rows to bins
    std::map<double, std::vector<std::size_t>> by_key;  // key: level or bin origin
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const double z = data.rows[i].z;
        const double key =
            binning == Binning::exact_levels ? z : std::floor(z / bin_width) * bin_width;
        by_key[key].push_back(i);
    }
    struct BinData {
        double z;
        std::vector<double> xs, ys;
    };
    std::vector<BinData> bins;
    for (const auto& [key, idx] : by_key) {
        if (idx.size() < 2) continue;  // keep bins with n >= 2
        BinData b;
        b.z = binning == Binning::exact_levels ? key : key + bin_width / 2.0;
        for (std::size_t i : idx) {
            b.xs.push_back(data.rows[i].x);
            b.ys.push_back(data.rows[i].y);
        }
        bins.push_back(std::move(b));
    }
    if (bins.size() < 2)
        throw std::runtime_error("moment_curve: need at least 2 bins with n >= 2");

    MomentCurve curve;
    curve.bins.resize(bins.size());
    parallel_for(bins.size(), n_threads, [&](std::size_t bi) {
        const BinData& b = bins[bi];
        const std::size_t n = b.xs.size();
        MomentBin out;
        out.z = b.z;
        out.n = n;
        out.mean_x = mean_of(b.xs);
        out.mean_y = mean_of(b.ys);
        out.var_x = variance_of(b.xs);
        out.var_y = variance_of(b.ys);
        out.cov_xy = covariance_of(b.xs, b.ys);
        const double se_x = std::sqrt(out.var_x / static_cast<double>(n));
        const double se_y = std::sqrt(out.var_y / static_cast<double>(n));
        out.mean_x_ci = {out.mean_x - 1.96 * se_x, out.mean_x + 1.96 * se_x};
        out.mean_y_ci = {out.mean_y - 1.96 * se_y, out.mean_y + 1.96 * se_y};

        Rng rng = Rng::stream(seed, bi);
        std::vector<double> bvx(n_boot), bvy(n_boot), bcv(n_boot);
        std::vector<double> rx(n), ry(n);
        for (int r = 0; r < n_boot; ++r) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t j = rng.uniform_below(n);
                rx[i] = b.xs[j];
                ry[i] = b.ys[j];
            }
            bvx[r] = variance_of(rx);
            bvy[r] = variance_of(ry);
            bcv[r] = covariance_of(rx, ry);
        }
        out.var_x_ci = {quantile_of(bvx, 0.025), quantile_of(bvx, 0.975)};
        out.var_y_ci = {quantile_of(bvy, 0.025), quantile_of(bvy, 0.975)};
        out.cov_xy_ci = {quantile_of(bcv, 0.025), quantile_of(bcv, 0.975)};
        curve.bins[bi] = out;
    });
    return curve;
}

// ---------------------------------------------------------------------------
// Overlay of observed moments with model predictions
// ---------------------------------------------------------------------------

enum class MomentPanel { mean_x, mean_y, var_x, var_y, cov_xy };

inline const char* panel_name(MomentPanel p) {
    switch (p) {
        case MomentPanel::mean_x: return "mean_x";
        case MomentPanel::mean_y: return "mean_y";
        case MomentPanel::var_x: return "var_x";
        case MomentPanel::var_y: return "var_y";
        case MomentPanel::cov_xy: return "cov_xy";
    }
    return "";
}

inline constexpr MomentPanel kAllPanels[] = {MomentPanel::mean_x, MomentPanel::mean_y,
                                             MomentPanel::var_x, MomentPanel::var_y,
                                             MomentPanel::cov_xy};

struct OverlayRow {
    double z = 0.0;
    std::size_t n = 0;
    double observed = 0.0;
    Interval ci;
    std::optional<double> pred_full;
    std::optional<double> pred_reduced;
};

struct OverlayTable {
    MomentPanel panel = MomentPanel::mean_x;
    std::vector<OverlayRow> rows;
};

namespace detail {

inline double moment_component(const ConditionalMoments& m, MomentPanel p) {
    switch (p) {
        case MomentPanel::mean_x: return m.mean_x;
        case MomentPanel::mean_y: return m.mean_y;
        case MomentPanel::var_x: return m.var_x;
        case MomentPanel::var_y: return m.var_y;
        case MomentPanel::cov_xy: return m.cov_xy;
    }
    return 0.0;
}

inline void observed_component(const MomentBin& b, MomentPanel p, double& value, Interval& ci) {
    switch (p) {
        case MomentPanel::mean_x: value = b.mean_x; ci = b.mean_x_ci; break;
        case MomentPanel::mean_y: value = b.mean_y; ci = b.mean_y_ci; break;
        case MomentPanel::var_x: value = b.var_x; ci = b.var_x_ci; break;
        case MomentPanel::var_y: value = b.var_y; ci = b.var_y_ci; break;
        case MomentPanel::cov_xy: value = b.cov_xy; ci = b.cov_xy_ci; break;
    }
}

}  // namespace detail

// Observed per-z moments next to full- and reduced-model predictions.
// Either parameter set may be omitted.
inline OverlayTable overlay(const LinearModelParams* p_full, const LinearModelParams* p_reduced,
                            const MomentCurve& curve, MomentPanel panel) {
    OverlayTable table;
    table.panel = panel;
    for (const MomentBin& b : curve.bins) {
        OverlayRow row;
        row.z = b.z;
        row.n = b.n;
        detail::observed_component(b, panel, row.observed, row.ci);
        if (p_full)
            row.pred_full = detail::moment_component(conditional_moments_unchecked(*p_full, b.z),
                                                     panel);
        if (p_reduced)
            row.pred_reduced = detail::moment_component(
                conditional_moments_unchecked(*p_reduced, b.z), panel);
        table.rows.push_back(row);
    }
    return table;
}

inline void write_overlay_csv(const OverlayTable& table, std::ostream& out) {
    out << "z,n,observed,lower,upper";
    const bool has_full = !table.rows.empty() && table.rows.front().pred_full.has_value();
    const bool has_reduced = !table.rows.empty() && table.rows.front().pred_reduced.has_value();
    if (has_full) out << ",pred_full";
    if (has_reduced) out << ",pred_reduced";
    out << '\n';
    for (const OverlayRow& r : table.rows) {
        out << format_double(r.z) << ',' << r.n << ',' << format_double(r.observed) << ','
            << format_double(r.ci.lower) << ',' << format_double(r.ci.upper);
        if (has_full) out << ',' << format_double(*r.pred_full);
        if (has_reduced) out << ',' << format_double(*r.pred_reduced);
        out << '\n';
    }
}

}  // namespace ccov
