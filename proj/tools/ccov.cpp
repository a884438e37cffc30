// ccov: command-line interface to the causal-effect covariability toolkit.
//
// Subcommands: demo-example (the exact binary example), graph (path /
// d-separation / backdoor queries on a text graph file), simulate (SCM or
// linear-model sampling), fit (maximum likelihood, optionally comparing full
// vs reduced models), moments (empirical conditional-moment curves with
// model overlays), lrt (likelihood-ratio arithmetic on given values).
//
// Exit codes: 0 success or boolean true, 1 boolean false, 2 usage error,
// 3 numerical or data failure.

#include "ccov/binary_example.hpp"
#include "ccov/empirics.hpp"
#include "ccov/graph.hpp"
#include "ccov/linear_model.hpp"
#include "ccov/mle.hpp"
#include "ccov/parallel.hpp"
#include "ccov/scm.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ccov;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
}

std::ostream& output_stream(const std::string& out_path, std::ofstream& file) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    return file;
}

// ---------------------------------------------------------------------------
// demo-example
// ---------------------------------------------------------------------------

std::string render_table_text(const ContingencyTable& t, int precision) {
    char buf[256];
    std::string out;
    out += "          Y=0       Y=1\n";
    for (int x = 0; x < 2; ++x) {
        std::snprintf(buf, sizeof(buf), "  X=%d  %8.*f  %8.*f\n", x, precision,
                      to_double(t.p[x][0]), precision, to_double(t.p[x][1]));
        out += buf;
    }
    return out;
}

int cmd_demo_example(const std::string& mode_name, const std::string& format,
                     const std::string& out_path) {
    const TableMode mode = mode_name == "rounded" ? TableMode::rounded : TableMode::exact;
    const MixtureExampleSpec spec = MixtureExampleSpec::defaults();
    const SummaryMeasures m = summary_measures(spec, mode);

    std::ofstream file;
    std::ostream& out = output_stream(out_path, file);

    const int or_precision = mode == TableMode::rounded ? 2 : 5;
    char buf[256];
    auto measure_line = [&](const char* label, const Rational& r) {
        std::snprintf(buf, sizeof(buf), "  %-16s %.*f  (%s)\n", label, or_precision, to_double(r),
                      format_double(to_double(r)).c_str());
        return std::string(buf);
    };

    if (format == "text") {
        out << "Binary example, mode: " << mode_name << "\n\n";
        out << "Per-unit tables P(X,Y | Z, alpha)\n";
        for (const auto& lvl : spec.alpha_levels) {
            for (int z = 0; z <= 1; ++z) {
                out << "alpha=" << format_double(to_double(lvl.value)) << ", Z=" << z << ":\n";
                out << render_table_text(unit_table(spec, lvl.value, z), 2);
            }
        }
        out << "\nPopulation tables P(X,Y | Z)\n";
        for (int z = 0; z <= 1; ++z) {
            ContingencyTable t = population_table(spec, z);
            if (mode == TableMode::rounded) t = t.rounded_2dp();
            out << "Z=" << z << ":\n" << render_table_text(t, mode == TableMode::rounded ? 2 : 4);
        }
        out << "\nSummary measures\n";
        out << measure_line("stratum OR z=0:", m.stratum_or.at(0));
        out << measure_line("stratum OR z=1:", m.stratum_or.at(1));
        out << measure_line("average OR:", m.average_or);
        out << measure_line("marginal OR:", m.marginal_or);
        out << measure_line("causal RR:", m.causal_rr);
    } else if (format == "machine") {
        out << "mode=" << mode_name << '\n';
        for (std::size_t a = 0; a < spec.alpha_levels.size(); ++a) {
            const auto& lvl = spec.alpha_levels[a];
            out << "alpha." << a << "=" << format_double(to_double(lvl.value)) << '\n';
            for (int z = 0; z <= 1; ++z) {
                const auto t = unit_table(spec, lvl.value, z);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        out << "unit_table." << a << ".z" << z << ".p" << x << y << "="
                            << format_double(to_double(t.p[x][y])) << '\n';
            }
        }
        for (int z = 0; z <= 1; ++z) {
            ContingencyTable t = population_table(spec, z);
            if (mode == TableMode::rounded) t = t.rounded_2dp();
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    out << "population_table.z" << z << ".p" << x << y << "="
                        << format_double(to_double(t.p[x][y])) << '\n';
        }
        out << "or.z0=" << format_double(to_double(m.stratum_or.at(0))) << '\n';
        out << "or.z1=" << format_double(to_double(m.stratum_or.at(1))) << '\n';
        out << "or.average=" << format_double(to_double(m.average_or)) << '\n';
        out << "or.marginal=" << format_double(to_double(m.marginal_or)) << '\n';
        out << "causal_rr=" << format_double(to_double(m.causal_rr)) << '\n';
    } else {  // csv
        out << "record,alpha,z,x,y,measure,value\n";
        for (const auto& lvl : spec.alpha_levels) {
            for (int z = 0; z <= 1; ++z) {
                const auto t = unit_table(spec, lvl.value, z);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        out << "unit_table," << format_double(to_double(lvl.value)) << ',' << z
                            << ',' << x << ',' << y << ",,"
                            << format_double(to_double(t.p[x][y])) << '\n';
            }
        }
        for (int z = 0; z <= 1; ++z) {
            ContingencyTable t = population_table(spec, z);
            if (mode == TableMode::rounded) t = t.rounded_2dp();
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    out << "population_table,," << z << ',' << x << ',' << y << ",,"
                        << format_double(to_double(t.p[x][y])) << '\n';
        }
        auto srow = [&](const char* name, const Rational& r) {
            out << "summary,,,,," << name << ',' << format_double(to_double(r)) << '\n';
        };
        srow("or_z0", m.stratum_or.at(0));
        srow("or_z1", m.stratum_or.at(1));
        srow("or_average", m.average_or);
        srow("or_marginal", m.marginal_or);
        srow("causal_rr", m.causal_rr);
    }
    return kExitTrue;
}

// ---------------------------------------------------------------------------
// graph
// ---------------------------------------------------------------------------

std::set<std::string> parse_node_set(const std::string& csv) {
    std::set<std::string> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(item);
    return out;
}

int cmd_graph(const std::string& file, const std::string& query, const std::string& arg_a,
              const std::string& arg_b, const std::string& given) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open '" + file + "'");
    const CausalDag g = parse_graph(in);
    const std::set<std::string> cond = parse_node_set(given);

    if (query == "paths") {
        const auto paths = enumerate_paths(g, arg_a, arg_b);
        std::cout << paths.size() << " path" << (paths.size() == 1 ? "" : "s") << " between "
                  << arg_a << " and " << arg_b << "\n";
        for (const auto& p : paths) std::cout << "  " << p.to_string() << "\n";
        return kExitTrue;
    }
    if (query == "backdoor") {
        const auto bd = backdoor_paths(g, arg_a, arg_b);
        const bool blocked = backdoor_blocked(g, arg_a, arg_b, cond);
        std::cout << bd.size() << " backdoor path" << (bd.size() == 1 ? "" : "s") << ":\n";
        for (const auto& p : bd) std::cout << "  " << p.to_string() << "\n";
        std::cout << "blocked by {" << given << "}: " << (blocked ? "yes" : "no") << "\n";
        return blocked ? kExitTrue : kExitFalse;
    }
    if (query == "dsep") {
        const auto a = parse_node_set(arg_a);
        const auto b = parse_node_set(arg_b);
        const bool sep = d_separated(g, a, b, cond);
        std::cout << "d-separated given {" << given << "}: " << (sep ? "yes" : "no") << "\n";
        return sep ? kExitTrue : kExitFalse;
    }
    throw std::invalid_argument("unknown graph query '" + query +
                                "' (expected paths, backdoor, or dsep)");
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

std::vector<double> parse_z_levels(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        if (hi < lo) throw std::invalid_argument("bad z level range '" + text + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

int cmd_simulate(const std::string& spec_path, std::size_t n, std::size_t obs_per_unit,
                 std::uint64_t seed, const std::string& out_path, const std::string& z_levels_text,
                 bool include_unit_params, unsigned threads) {
    const std::string content = read_file(spec_path);
    const auto first_printable = content.find_first_not_of(" \t\r\n");
    const bool is_json = first_printable != std::string::npos && content[first_printable] == '{';

    if (is_json) {
        const ScmSpec spec = scm_from_text(content);
        const SampledPopulation pop = sample_population(spec, n, obs_per_unit, seed, threads);
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        write_population_csv(pop, out, include_unit_params);
        std::cout << "kind=scm " << pop.provenance() << " rows=" << pop.n_records() << "\n";
        return kExitTrue;
    }

    std::istringstream ss(content);
    const LinearModelParams params = read_params(ss);
    std::vector<double> levels = parse_z_levels(z_levels_text);
    if (levels.empty())
        throw std::invalid_argument("linear-model simulation needs --z-levels (e.g. 64:75)");
    std::vector<double> z(n);
    Rng zrng = Rng::stream(seed, 0x5a5a5a5aULL);
    for (auto& v : z) v = levels[zrng.uniform_below(levels.size())];
    const Dataset d = simulate(params, z, seed, threads);
    write_dataset_csv(d, out_path);
    std::cout << "kind=linear params_hash=" << hash_hex(fnv1a(content)) << " seed=" << seed
              << " rows=" << d.rows.size() << "\n";
    return kExitTrue;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

std::vector<RangeFilter> parse_filters(const std::vector<std::string>& specs) {
    std::vector<RangeFilter> filters;
    for (const auto& s : specs) {
        const auto c1 = s.find(':');
        const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("bad filter '" + s + "' (expected column:min:max)");
        RangeFilter f;
        f.column = s.substr(0, c1);
        f.min = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        f.max = std::stod(s.substr(c2 + 1));
        filters.push_back(f);
    }
    return filters;
}

std::string render_fit_report(const FitResult& r, const std::optional<LrtResult>& lrt,
                              const std::string& format) {
    std::ostringstream out;
    const auto& names = linear_model_param_names();
    const auto values = params_as_values(r.params);
    if (format == "machine") {
        out << "model=" << (r.reduced ? "reduced" : "full") << '\n';
        out << "converged=" << (r.converged ? "true" : "false") << '\n';
        out << "log_likelihood=" << format_double(r.log_likelihood) << '\n';
        out << "n_obs=" << r.n_obs << '\n';
        out << "data_hash=" << hash_hex(r.data_hash) << '\n';
        out << "n_starts=" << r.start_log_likelihoods.size() << '\n';
        out << "best_start=" << r.best_start << '\n';
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (r.reduced && names[i] == "cov_bxby") continue;
            out << "param." << names[i] << "=" << format_double(values[i]) << '\n';
        }
        if (lrt) {
            out << "lrt.d=" << format_double(lrt->d) << '\n';
            out << "lrt.df=" << lrt->df << '\n';
            out << "lrt.p=" << format_double(lrt->p_value) << '\n';
        }
    } else {
        out << "fit: " << (r.reduced ? "reduced" : "full") << " model\n";
        out << "  converged:       " << (r.converged ? "yes" : "no") << "\n";
        char buf[128];
        std::snprintf(buf, sizeof(buf), "  log-likelihood:  %.6f\n", r.log_likelihood);
        out << buf;
        out << "  observations:    " << r.n_obs << "\n";
        out << "  starts:          " << r.start_log_likelihoods.size() << " (best "
            << r.best_start << ")\n";
        out << "  parameters:\n";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (r.reduced && names[i] == "cov_bxby") continue;
            std::snprintf(buf, sizeof(buf), "    %-10s %12.6g\n", names[i].c_str(), values[i]);
            out << buf;
        }
        if (lrt) {
            std::snprintf(buf, sizeof(buf),
                          "  likelihood-ratio test: D=%.6g, df=%d, p=%.6g\n", lrt->d, lrt->df,
                          lrt->p_value);
            out << buf;
        }
    }
    return out.str();
}

int cmd_fit(const std::string& data_path, const ColumnSchema& schema,
            const std::vector<std::string>& filter_specs, bool reduced, bool compare,
            FitConfig cfg, const std::string& format, const std::string& out_path,
            const std::string& out_params_path) {
    const Dataset data = ingest(data_path, schema, parse_filters(filter_specs));

    cfg.reduced = reduced;
    std::optional<LrtResult> lrt;
    FitResult primary;
    if (compare) {
        FitConfig full_cfg = cfg;
        full_cfg.reduced = false;
        FitConfig red_cfg = cfg;
        red_cfg.reduced = true;
        const FitResult reduced_fit = fit(data, red_cfg);
        // warm-start the full fit at the reduced optimum: guarantees nesting
        const FitResult full_fit = fit(data, full_cfg, {reduced_fit.params});
        lrt = likelihood_ratio_test(full_fit, reduced_fit);
        primary = reduced ? reduced_fit : full_fit;
    } else {
        primary = fit(data, cfg);
    }

    const std::string report = render_fit_report(primary, lrt, format);
    if (out_path.empty())
        std::cout << report;
    else
        write_file(out_path, report);
    if (!out_params_path.empty()) write_params(primary.params, out_params_path);
    return primary.converged ? kExitTrue : kExitNumeric;
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

int cmd_moments(const std::string& data_path, const ColumnSchema& schema,
                const std::vector<std::string>& filter_specs, int n_boot, std::uint64_t seed,
                const std::string& binning_name, double width, const std::string& full_params,
                const std::string& reduced_params, const std::string& out_prefix,
                unsigned threads) {
    const Dataset data = ingest(data_path, schema, parse_filters(filter_specs));
    const Binning binning = binning_name == "width" ? Binning::width : Binning::exact_levels;
    const MomentCurve curve = moment_curve(data, binning, width, n_boot, seed, threads);

    std::optional<LinearModelParams> full, reduced;
    if (!full_params.empty()) full = read_params(full_params);
    if (!reduced_params.empty()) reduced = read_params(reduced_params);

    for (const MomentPanel panel : kAllPanels) {
        const OverlayTable table = overlay(full ? &*full : nullptr,
                                           reduced ? &*reduced : nullptr, curve, panel);
        const std::string path = out_prefix + "_" + panel_name(panel) + ".csv";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
        write_overlay_csv(table, out);
        std::cout << "wrote " << path << "\n";
    }
    return kExitTrue;
}

// ---------------------------------------------------------------------------
// lrt (report tool: statistic from two given log-likelihoods)
// ---------------------------------------------------------------------------

int cmd_lrt(double ll_full, double ll_reduced) {
    const double d = 2.0 * (ll_full - ll_reduced);
    if (d < 0) throw std::runtime_error("lrt: full log-likelihood below reduced (D=" +
                                        format_double(d) + ")");
    const double p = chi_square1_upper_tail(d);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "D=%.6g df=1 p=%.6g\n", d, p);
    std::cout << buf;
    std::cout << "lrt.d=" << format_double(d) << "\nlrt.df=1\nlrt.p=" << format_double(p) << "\n";
    return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal-effect covariability toolkit"};
    app.require_subcommand(1);

    // demo-example
    std::string demo_mode = "exact", demo_format = "text", demo_out;
    auto* demo = app.add_subcommand("demo-example",
                                    "exact binary example: tables and association measures");
    demo->add_option("--mode", demo_mode, "exact or rounded tables")
        ->check(CLI::IsMember({"exact", "rounded"}))
        ->capture_default_str();
    demo->add_option("--format", demo_format, "text, machine, or csv")
        ->check(CLI::IsMember({"text", "machine", "csv"}))
        ->capture_default_str();
    demo->add_option("--out", demo_out, "output file (default stdout)");

    // graph
    std::string graph_file, graph_query, graph_a, graph_b, graph_given;
    auto* graph = app.add_subcommand("graph", "path, d-separation and backdoor queries");
    graph->add_option("file", graph_file, "graph file (one 'A -> B' per line)")->required();
    graph->add_option("query", graph_query, "paths, backdoor, or dsep")->required();
    graph->add_option("a", graph_a, "first node (comma-set for dsep)")->required();
    graph->add_option("b", graph_b, "second node (comma-set for dsep)")->required();
    graph->add_option("--given", graph_given, "conditioning set, comma-separated");

    // simulate
    std::string sim_spec, sim_out, sim_z_levels;
    std::size_t sim_n = 0, sim_obs = 1;
    std::uint64_t sim_seed = 0;
    bool sim_include_params = false;
    unsigned sim_threads = default_threads();
    auto* sim = app.add_subcommand("simulate", "sample from an SCM spec or linear-model params");
    sim->add_option("--spec", sim_spec, "SCM JSON file or linear-model parameter file")
        ->required();
    sim->add_option("--n", sim_n, "number of units")->required()->check(CLI::PositiveNumber);
    sim->add_option("--obs-per-unit", sim_obs, "observations per unit (SCM specs)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--seed", sim_seed, "random seed")->capture_default_str();
    sim->add_option("--out", sim_out, "output CSV path")->required();
    sim->add_option("--z-levels", sim_z_levels, "z levels for linear models: lo:hi or list");
    sim->add_flag("--include-unit-params", sim_include_params,
                  "append unit-parameter columns to the CSV");
    sim->add_option("--threads", sim_threads, "worker threads (does not affect results)")
        ->capture_default_str();

    // fit
    std::string fit_data, fit_format = "text", fit_out, fit_out_params;
    std::vector<std::string> fit_filters;
    ColumnSchema fit_schema;
    bool fit_reduced = false, fit_compare = false;
    FitConfig fit_cfg;
    fit_cfg.n_threads = default_threads();
    auto* fitc = app.add_subcommand("fit", "maximum-likelihood fit of the bivariate model");
    fitc->add_option("--data", fit_data, "input CSV")->required();
    fitc->add_option("--col-z", fit_schema.z, "z column name")->capture_default_str();
    fitc->add_option("--col-x", fit_schema.x, "x column name")->capture_default_str();
    fitc->add_option("--col-y", fit_schema.y, "y column name")->capture_default_str();
    fitc->add_option("--filter", fit_filters,
                     "inclusive range filter column:min:max (repeatable)");
    fitc->add_flag("--reduced", fit_reduced, "fit the reduced model (no slope covariance)");
    fitc->add_flag("--compare", fit_compare, "fit both models and run the likelihood-ratio test");
    fitc->add_option("--starts", fit_cfg.n_starts, "number of optimizer starts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fitc->add_option("--seed", fit_cfg.seed, "seed for start dispersion")->capture_default_str();
    fitc->add_option("--tol", fit_cfg.tolerance, "convergence tolerance on log-likelihood")
        ->capture_default_str();
    fitc->add_option("--max-iter", fit_cfg.max_iterations, "simplex iterations per start")
        ->capture_default_str();
    fitc->add_option("--dispersion", fit_cfg.start_dispersion, "start perturbation scale")
        ->capture_default_str();
    fitc->add_option("--threads", fit_cfg.n_threads, "worker threads (does not affect results)")
        ->capture_default_str();
    fitc->add_option("--format", fit_format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    fitc->add_option("--out", fit_out, "report file (default stdout)");
    fitc->add_option("--out-params", fit_out_params, "write fitted parameter file");

    // moments
    std::string mom_data, mom_binning = "exact", mom_full, mom_reduced, mom_prefix;
    std::vector<std::string> mom_filters;
    ColumnSchema mom_schema;
    int mom_boot = 200;
    double mom_width = 1.0;
    std::uint64_t mom_seed = 0;
    unsigned mom_threads = default_threads();
    auto* mom = app.add_subcommand("moments",
                                   "per-z conditional moment curves with bootstrap bands");
    mom->add_option("--data", mom_data, "input CSV")->required();
    mom->add_option("--col-z", mom_schema.z, "z column name")->capture_default_str();
    mom->add_option("--col-x", mom_schema.x, "x column name")->capture_default_str();
    mom->add_option("--col-y", mom_schema.y, "y column name")->capture_default_str();
    mom->add_option("--filter", mom_filters,
                    "inclusive range filter column:min:max (repeatable)");
    mom->add_option("--n-boot", mom_boot, "bootstrap resamples per bin")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mom->add_option("--seed", mom_seed, "bootstrap seed")->capture_default_str();
    mom->add_option("--binning", mom_binning, "exact (distinct z levels) or width")
        ->check(CLI::IsMember({"exact", "width"}))
        ->capture_default_str();
    mom->add_option("--width", mom_width, "bin width when --binning width")
        ->capture_default_str();
    mom->add_option("--params-full", mom_full, "full-model parameter file for overlay");
    mom->add_option("--params-reduced", mom_reduced, "reduced-model parameter file for overlay");
    mom->add_option("--out-prefix", mom_prefix, "output prefix for the five panel CSVs")
        ->required();
    mom->add_option("--threads", mom_threads, "worker threads (does not affect results)")
        ->capture_default_str();

    // lrt
    double lrt_full = 0.0, lrt_reduced = 0.0;
    auto* lrt = app.add_subcommand("lrt", "likelihood-ratio statistic from two log-likelihoods");
    lrt->add_option("--ll-full", lrt_full, "full-model log-likelihood")->required();
    lrt->add_option("--ll-reduced", lrt_reduced, "reduced-model log-likelihood")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (demo->parsed()) return cmd_demo_example(demo_mode, demo_format, demo_out);
        if (graph->parsed())
            return cmd_graph(graph_file, graph_query, graph_a, graph_b, graph_given);
        if (sim->parsed())
            return cmd_simulate(sim_spec, sim_n, sim_obs, sim_seed, sim_out, sim_z_levels,
                                sim_include_params, sim_threads);
        if (fitc->parsed())
            return cmd_fit(fit_data, fit_schema, fit_filters, fit_reduced, fit_compare, fit_cfg,
                           fit_format, fit_out, fit_out_params);
        if (mom->parsed())
            return cmd_moments(mom_data, mom_schema, mom_filters, mom_boot, mom_seed, mom_binning,
                               mom_width, mom_full, mom_reduced, mom_prefix, mom_threads);
        if (lrt->parsed()) return cmd_lrt(lrt_full, lrt_reduced);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
