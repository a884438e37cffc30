#pragma once

// Structural causal models for populations of units. Each unit draws one set
// of unit parameters (random coefficients such as the effect modifier alpha
// or the per-unit slopes), then generates observations by evaluating node
// assignments in topological order. Interventions replace a single
// assignment and leave the rest of the model untouched.
//
// A note on effect-modulator wiring: population models of this kind are
// sometimes written with the modulator subscripts swapped (X modulated by
// U_Y and Y by U_X). When both modulators descend from the same latent U the
// two wirings induce the same dependence structure; builders and fixtures
// here attach each variable's own modulator (X <- U_X, Y <- U_Y), matching
// the usual graph.

#include "ccov/binary_example.hpp"
#include "ccov/graph.hpp"
#include "ccov/linear_model.hpp"
#include "ccov/mathutil.hpp"
#include "ccov/parallel.hpp"
#include "ccov/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccov {

// Affine form over unit parameters: constant + sum(multiplier * param).
struct CoefExpr {
    double constant = 0.0;
    std::vector<std::pair<std::string, double>> terms;  // (param name, multiplier)

    static CoefExpr fixed(double c) { return {c, {}}; }
    static CoefExpr param(const std::string& name, double mult = 1.0, double c = 0.0) {
        return {c, {{name, mult}}};
    }

    bool operator==(const CoefExpr&) const = default;
};

struct StructuralAssignment {
    enum class Kind { linear_gaussian, bernoulli_linear_prob, exogenous };
    enum class ExoDist { normal, choice };

    Kind kind = Kind::exogenous;
    CoefExpr intercept;                                        // linear & bernoulli
    std::vector<std::pair<std::string, CoefExpr>> parent_coefs;  // parent node -> coefficient
    double noise_sd = 0.0;                                     // linear_gaussian only

    ExoDist exo_dist = ExoDist::normal;
    double exo_mean = 0.0, exo_sd = 1.0;
    std::vector<double> choice_values;
    std::vector<double> choice_weights;

    bool operator==(const StructuralAssignment&) const = default;

    static StructuralAssignment constant(double value) {
        StructuralAssignment a;
        a.kind = Kind::linear_gaussian;
        a.intercept = CoefExpr::fixed(value);
        a.noise_sd = 0.0;
        return a;
    }
};

// Distribution of the per-unit parameter vector: an ordered list of blocks,
// each either a weighted discrete choice (one parameter) or a joint Gaussian
// (several parameters). Order matters: it fixes the RNG draw sequence.
struct UnitParamSpec {
    struct Block {
        enum class Kind { choice, gaussian };
        Kind kind = Kind::choice;
        std::vector<std::string> names;
        std::vector<double> values;   // choice
        std::vector<double> weights;  // choice
        std::vector<double> mean;     // gaussian
        std::vector<std::vector<double>> cov;

        bool operator==(const Block&) const = default;
    };
    std::vector<Block> blocks;

    bool operator==(const UnitParamSpec&) const = default;

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& b : blocks) out.insert(out.end(), b.names.begin(), b.names.end());
        return out;
    }

    void validate() const {
        std::set<std::string> seen;
        for (const auto& b : blocks) {
            if (b.names.empty()) throw std::invalid_argument("UnitParamSpec: unnamed block");
            for (const auto& n : b.names)
                if (!seen.insert(n).second)
                    throw std::invalid_argument("UnitParamSpec: duplicate parameter '" + n + "'");
            if (b.kind == Block::Kind::choice) {
                if (b.names.size() != 1)
                    throw std::invalid_argument("UnitParamSpec: choice block takes one name");
                if (b.values.empty() || b.values.size() != b.weights.size())
                    throw std::invalid_argument("UnitParamSpec: bad choice block");
                double total = 0.0;
                for (double w : b.weights) {
                    if (w < 0) throw std::invalid_argument("UnitParamSpec: negative weight");
                    total += w;
                }
                if (total <= 0) throw std::invalid_argument("UnitParamSpec: zero total weight");
            } else {
                const std::size_t k = b.names.size();
                if (b.mean.size() != k || b.cov.size() != k)
                    throw std::invalid_argument("UnitParamSpec: gaussian block size mismatch");
                for (const auto& row : b.cov)
                    if (row.size() != k)
                        throw std::invalid_argument("UnitParamSpec: covariance not square");
            }
        }
    }
};

using UnitParams = std::map<std::string, double>;

class ScmSpec {
  public:
    ScmSpec(std::map<std::string, StructuralAssignment> assignments, UnitParamSpec unit_params)
        : assignments_(std::move(assignments)),
          unit_params_(std::move(unit_params)),
          dag_(build_dag(assignments_)) {
        unit_params_.validate();
        const auto params = unit_params_.names();
        const std::set<std::string> param_set(params.begin(), params.end());
        for (const auto& [node, a] : assignments_) {
            validate_assignment(node, a, param_set);
        }
    }

    const CausalDag& dag() const { return dag_; }
    const std::map<std::string, StructuralAssignment>& assignments() const { return assignments_; }
    const UnitParamSpec& unit_params() const { return unit_params_; }

    // Provenance-only annotation recorded by intervene(); not part of the
    // spec's identity (serialization and equality ignore it).
    const std::string& intervention_note() const { return intervention_note_; }
    void append_intervention_note(const std::string& note) {
        if (!intervention_note_.empty()) intervention_note_ += ",";
        intervention_note_ += note;
    }

    bool operator==(const ScmSpec& other) const {
        return assignments_ == other.assignments_ && unit_params_ == other.unit_params_;
    }

  private:
    static CausalDag build_dag(const std::map<std::string, StructuralAssignment>& assignments) {
        std::set<std::string> nodes;
        std::set<std::pair<std::string, std::string>> edges;
        for (const auto& [node, a] : assignments) {
            nodes.insert(node);
            for (const auto& [parent, coef] : a.parent_coefs) {
                if (!assignments.count(parent))
                    throw std::invalid_argument("ScmSpec: node '" + node + "' references parent '" +
                                                parent + "' which has no assignment");
                edges.emplace(parent, node);
            }
        }
        return CausalDag(std::move(nodes), std::move(edges));
    }

    static void validate_coef(const std::string& node, const CoefExpr& e,
                              const std::set<std::string>& params) {
        if (!std::isfinite(e.constant))
            throw std::invalid_argument("ScmSpec: non-finite coefficient at node '" + node + "'");
        for (const auto& [name, mult] : e.terms) {
            if (!params.count(name))
                throw std::invalid_argument("ScmSpec: node '" + node +
                                            "' references unknown unit parameter '" + name + "'");
            if (!std::isfinite(mult))
                throw std::invalid_argument("ScmSpec: non-finite multiplier at node '" + node +
                                            "'");
        }
    }

    void validate_assignment(const std::string& node, const StructuralAssignment& a,
                             const std::set<std::string>& params) const {
        using Kind = StructuralAssignment::Kind;
        if (a.kind == Kind::exogenous) {
            if (!a.parent_coefs.empty())
                throw std::invalid_argument("ScmSpec: exogenous node '" + node +
                                            "' cannot have parents");
            if (a.exo_dist == StructuralAssignment::ExoDist::choice) {
                if (a.choice_values.empty() || a.choice_values.size() != a.choice_weights.size())
                    throw std::invalid_argument("ScmSpec: bad choice distribution at node '" +
                                                node + "'");
            } else if (a.exo_sd < 0) {
                throw std::invalid_argument("ScmSpec: negative sd at node '" + node + "'");
            }
            return;
        }
        validate_coef(node, a.intercept, params);
        std::set<std::string> seen;
        for (const auto& [parent, coef] : a.parent_coefs) {
            if (!seen.insert(parent).second)
                throw std::invalid_argument("ScmSpec: duplicate parent '" + parent +
                                            "' at node '" + node + "'");
            validate_coef(node, coef, params);
        }
        if (a.kind == Kind::linear_gaussian && a.noise_sd < 0)
            throw std::invalid_argument("ScmSpec: negative noise sd at node '" + node + "'");
    }

    std::map<std::string, StructuralAssignment> assignments_;
    UnitParamSpec unit_params_;
    CausalDag dag_;
    std::string intervention_note_;
};

// ---------------------------------------------------------------------------
// JSON serialization (nested key/value sections; canonical and round-trips)
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json coef_to_json(const CoefExpr& e) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [name, mult] : e.terms) terms[name] = mult;
    return {{"const", e.constant}, {"terms", terms}};
}

inline CoefExpr coef_from_json(const nlohmann::json& j) {
    CoefExpr e;
    e.constant = j.at("const").get<double>();
    for (const auto& [name, mult] : j.at("terms").items())
        e.terms.emplace_back(name, mult.get<double>());
    return e;
}

}  // namespace detail

inline nlohmann::json scm_to_json(const ScmSpec& spec) {
    using Kind = StructuralAssignment::Kind;
    nlohmann::json nodes = nlohmann::json::object();
    for (const auto& [name, a] : spec.assignments()) {
        nlohmann::json ja;
        switch (a.kind) {
            case Kind::exogenous: {
                ja["kind"] = "exogenous";
                if (a.exo_dist == StructuralAssignment::ExoDist::choice) {
                    ja["distribution"] = "choice";
                    ja["values"] = a.choice_values;
                    ja["weights"] = a.choice_weights;
                } else {
                    ja["distribution"] = "normal";
                    ja["mean"] = a.exo_mean;
                    ja["sd"] = a.exo_sd;
                }
                break;
            }
            case Kind::linear_gaussian:
            case Kind::bernoulli_linear_prob: {
                ja["kind"] = a.kind == Kind::linear_gaussian ? "linear_gaussian"
                                                             : "bernoulli_linear_prob";
                ja["intercept"] = detail::coef_to_json(a.intercept);
                nlohmann::json parents = nlohmann::json::object();
                for (const auto& [parent, coef] : a.parent_coefs)
                    parents[parent] = detail::coef_to_json(coef);
                ja["parents"] = parents;
                if (a.kind == Kind::linear_gaussian) ja["noise_sd"] = a.noise_sd;
                break;
            }
        }
        nodes[name] = std::move(ja);
    }
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : spec.unit_params().blocks) {
        nlohmann::json jb;
        if (b.kind == UnitParamSpec::Block::Kind::choice) {
            jb["kind"] = "choice";
            jb["name"] = b.names[0];
            jb["values"] = b.values;
            jb["weights"] = b.weights;
        } else {
            jb["kind"] = "gaussian";
            jb["names"] = b.names;
            jb["mean"] = b.mean;
            jb["cov"] = b.cov;
        }
        blocks.push_back(std::move(jb));
    }
    return {{"nodes", nodes}, {"unit_params", blocks}};
}

inline ScmSpec scm_from_json(const nlohmann::json& j) {
    using Kind = StructuralAssignment::Kind;
    std::map<std::string, StructuralAssignment> assignments;
    for (const auto& [name, ja] : j.at("nodes").items()) {
        StructuralAssignment a;
        const std::string kind = ja.at("kind").get<std::string>();
        if (kind == "exogenous") {
            a.kind = Kind::exogenous;
            const std::string dist = ja.at("distribution").get<std::string>();
            if (dist == "choice") {
                a.exo_dist = StructuralAssignment::ExoDist::choice;
                a.choice_values = ja.at("values").get<std::vector<double>>();
                a.choice_weights = ja.at("weights").get<std::vector<double>>();
            } else if (dist == "normal") {
                a.exo_dist = StructuralAssignment::ExoDist::normal;
                a.exo_mean = ja.at("mean").get<double>();
                a.exo_sd = ja.at("sd").get<double>();
            } else {
                throw std::invalid_argument("scm_from_json: unknown distribution '" + dist + "'");
            }
        } else if (kind == "linear_gaussian" || kind == "bernoulli_linear_prob") {
            a.kind = kind == "linear_gaussian" ? Kind::linear_gaussian
                                               : Kind::bernoulli_linear_prob;
            a.intercept = detail::coef_from_json(ja.at("intercept"));
            for (const auto& [parent, coef] : ja.at("parents").items())
                a.parent_coefs.emplace_back(parent, detail::coef_from_json(coef));
            if (a.kind == Kind::linear_gaussian) a.noise_sd = ja.at("noise_sd").get<double>();
        } else {
            throw std::invalid_argument("scm_from_json: unknown kind '" + kind + "'");
        }
        assignments.emplace(name, std::move(a));
    }
    UnitParamSpec ups;
    for (const auto& jb : j.at("unit_params")) {
        UnitParamSpec::Block b;
        const std::string kind = jb.at("kind").get<std::string>();
        if (kind == "choice") {
            b.kind = UnitParamSpec::Block::Kind::choice;
            b.names = {jb.at("name").get<std::string>()};
            b.values = jb.at("values").get<std::vector<double>>();
            b.weights = jb.at("weights").get<std::vector<double>>();
        } else if (kind == "gaussian") {
            b.kind = UnitParamSpec::Block::Kind::gaussian;
            b.names = jb.at("names").get<std::vector<std::string>>();
            b.mean = jb.at("mean").get<std::vector<double>>();
            b.cov = jb.at("cov").get<std::vector<std::vector<double>>>();
        } else {
            throw std::invalid_argument("scm_from_json: unknown block kind '" + kind + "'");
        }
        ups.blocks.push_back(std::move(b));
    }
    return ScmSpec(std::move(assignments), std::move(ups));
}

inline std::string scm_to_text(const ScmSpec& spec) { return scm_to_json(spec).dump(2) + "\n"; }

inline ScmSpec scm_from_text(const std::string& text) {
    return scm_from_json(nlohmann::json::parse(text));
}

inline std::uint64_t scm_hash(const ScmSpec& spec) { return fnv1a(scm_to_json(spec).dump()); }

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SampledPopulation {
    std::vector<std::string> node_names;   // column order (sorted)
    std::vector<std::string> param_names;  // unit-parameter columns
    std::vector<std::int64_t> unit_ids;    // one per record
    std::vector<double> node_values;       // row-major [record][node]
    std::vector<double> param_values;      // row-major [record][param]
    std::uint64_t spec_hash = 0;
    std::uint64_t seed = 0;
    std::size_t n_units = 0;
    std::size_t obs_per_unit = 0;
    std::string intervention;  // empty when sampled from an unintervened spec

    std::size_t n_records() const { return unit_ids.size(); }

    double node_value(std::size_t record, std::size_t node_idx) const {
        return node_values[record * node_names.size() + node_idx];
    }
    double param_value(std::size_t record, std::size_t param_idx) const {
        return param_values[record * param_names.size() + param_idx];
    }

    // Index of a column by name, searching nodes first, then unit parameters.
    // Returns (is_param, index).
    std::pair<bool, std::size_t> column(const std::string& name) const {
        for (std::size_t i = 0; i < node_names.size(); ++i)
            if (node_names[i] == name) return {false, i};
        for (std::size_t i = 0; i < param_names.size(); ++i)
            if (param_names[i] == name) return {true, i};
        throw std::invalid_argument("SampledPopulation: no column '" + name + "'");
    }

    double value(std::size_t record, const std::pair<bool, std::size_t>& col) const {
        return col.first ? param_value(record, col.second) : node_value(record, col.second);
    }

    std::string provenance() const {
        std::string p = "spec_hash=" + hash_hex(spec_hash) + " seed=" + std::to_string(seed) +
                        " n_units=" + std::to_string(n_units) +
                        " obs_per_unit=" + std::to_string(obs_per_unit);
        if (!intervention.empty()) p += " intervention=" + intervention;
        return p;
    }
};

namespace detail {

// Assignment with all name lookups resolved to indices; built once per spec.
struct CompiledCoef {
    double constant;
    std::vector<std::pair<std::size_t, double>> terms;  // (param index, multiplier)

    double eval(const std::vector<double>& params) const {
        double v = constant;
        for (const auto& [idx, mult] : terms) v += mult * params[idx];
        return v;
    }
};

struct CompiledNode {
    StructuralAssignment::Kind kind;
    CompiledCoef intercept;
    std::vector<std::pair<std::size_t, CompiledCoef>> parents;  // (node index, coef)
    double noise_sd = 0.0;
    StructuralAssignment::ExoDist exo_dist = StructuralAssignment::ExoDist::normal;
    double exo_mean = 0.0, exo_sd = 1.0;
    std::vector<double> choice_values;
    std::vector<double> choice_cumweights;
    std::string name;
};

struct CompiledBlock {
    UnitParamSpec::Block::Kind kind;
    std::vector<std::size_t> param_indices;
    std::vector<double> values;
    std::vector<double> cumweights;
    std::vector<double> mean;
    std::vector<std::vector<double>> factor;  // PSD factor of cov
};

struct CompiledScm {
    std::vector<std::string> node_names;   // sorted
    std::vector<std::string> param_names;  // declaration order
    std::vector<std::size_t> eval_order;   // topological, as node indices
    std::vector<CompiledNode> nodes;       // by node index
    std::vector<CompiledBlock> blocks;

    void draw_unit_params(Rng& rng, std::vector<double>& out) const {
        for (const auto& b : blocks) {
            if (b.kind == UnitParamSpec::Block::Kind::choice) {
                out[b.param_indices[0]] = b.values[rng.choice_by_cumulative(b.cumweights)];
            } else {
                const std::size_t k = b.param_indices.size();
                double g[16];
                for (std::size_t i = 0; i < k; ++i) g[i] = rng.normal();
                for (std::size_t r = 0; r < k; ++r) {
                    double v = b.mean[r];
                    for (std::size_t c = 0; c < k; ++c) v += b.factor[r][c] * g[c];
                    out[b.param_indices[r]] = v;
                }
            }
        }
    }

    void evaluate(Rng& rng, const std::vector<double>& params,
                  std::vector<double>& node_out) const {
        using Kind = StructuralAssignment::Kind;
        for (const std::size_t ni : eval_order) {
            const CompiledNode& n = nodes[ni];
            double v = 0.0;
            switch (n.kind) {
                case Kind::exogenous:
                    if (n.exo_dist == StructuralAssignment::ExoDist::choice)
                        v = n.choice_values[rng.choice_by_cumulative(n.choice_cumweights)];
                    else
                        v = rng.normal(n.exo_mean, n.exo_sd);
                    break;
                case Kind::linear_gaussian: {
                    v = n.intercept.eval(params);
                    for (const auto& [pi, coef] : n.parents) v += coef.eval(params) * node_out[pi];
                    if (n.noise_sd > 0) v += n.noise_sd * rng.normal();
                    break;
                }
                case Kind::bernoulli_linear_prob: {
                    double p = n.intercept.eval(params);
                    for (const auto& [pi, coef] : n.parents) p += coef.eval(params) * node_out[pi];
                    if (p < 0.0 || p > 1.0)
                        throw std::runtime_error(
                            "bernoulli probability out of [0,1] at node '" + n.name +
                            "': p=" + format_double(p));
                    v = rng.uniform01() < p ? 1.0 : 0.0;
                    break;
                }
            }
            node_out[ni] = v;
        }
    }
};

inline CompiledScm compile_scm(const ScmSpec& spec) {
    CompiledScm c;
    c.node_names.assign(spec.dag().nodes().begin(), spec.dag().nodes().end());
    c.param_names = spec.unit_params().names();

    auto node_index = [&](const std::string& name) -> std::size_t {
        return static_cast<std::size_t>(spec.dag().index_of(name));
    };
    auto param_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < c.param_names.size(); ++i)
            if (c.param_names[i] == name) return i;
        throw std::invalid_argument("unknown unit parameter '" + name + "'");
    };
    auto compile_coef = [&](const CoefExpr& e) {
        CompiledCoef cc{e.constant, {}};
        for (const auto& [name, mult] : e.terms) cc.terms.emplace_back(param_index(name), mult);
        return cc;
    };

    c.nodes.resize(c.node_names.size());
    for (const auto& [name, a] : spec.assignments()) {
        CompiledNode n;
        n.kind = a.kind;
        n.name = name;
        n.intercept = compile_coef(a.intercept);
        for (const auto& [parent, coef] : a.parent_coefs)
            n.parents.emplace_back(node_index(parent), compile_coef(coef));
        n.noise_sd = a.noise_sd;
        n.exo_dist = a.exo_dist;
        n.exo_mean = a.exo_mean;
        n.exo_sd = a.exo_sd;
        n.choice_values = a.choice_values;
        double cum = 0.0;
        for (double w : a.choice_weights) n.choice_cumweights.push_back(cum += w);
        c.nodes[node_index(name)] = std::move(n);
    }
    for (int v : spec.dag().topological_order()) c.eval_order.push_back(static_cast<std::size_t>(v));

    for (const auto& b : spec.unit_params().blocks) {
        CompiledBlock cb;
        cb.kind = b.kind;
        for (const auto& name : b.names) cb.param_indices.push_back(param_index(name));
        if (b.kind == UnitParamSpec::Block::Kind::choice) {
            cb.values = b.values;
            double cum = 0.0;
            for (double w : b.weights) cb.cumweights.push_back(cum += w);
        } else {
            cb.mean = b.mean;
            cb.factor = psd_factor(b.cov);
            if (b.names.size() > 16)
                throw std::invalid_argument("gaussian unit-parameter block too large");
        }
        c.blocks.push_back(std::move(cb));
    }
    return c;
}

}  // namespace detail

// Draws unit parameters once per unit, then obs_per_unit realizations.
// Unit i uses Rng::stream(seed, i), so any partition of the unit range over
// workers produces identical output.
inline SampledPopulation sample_population(const ScmSpec& spec, std::size_t n_units,
                                           std::size_t obs_per_unit, std::uint64_t seed,
                                           unsigned n_threads = 1) {
    if (n_units == 0) throw std::invalid_argument("sample_population: n_units must be positive");
    if (obs_per_unit == 0)
        throw std::invalid_argument("sample_population: obs_per_unit must be positive");
    const detail::CompiledScm compiled = detail::compile_scm(spec);

    SampledPopulation pop;
    pop.node_names = compiled.node_names;
    pop.param_names = compiled.param_names;
    pop.spec_hash = scm_hash(spec);
    pop.seed = seed;
    pop.n_units = n_units;
    pop.obs_per_unit = obs_per_unit;
    pop.intervention = spec.intervention_note();
    const std::size_t n_records = n_units * obs_per_unit;
    const std::size_t n_nodes = pop.node_names.size();
    const std::size_t n_params = pop.param_names.size();
    pop.unit_ids.resize(n_records);
    pop.node_values.resize(n_records * n_nodes);
    pop.param_values.resize(n_records * n_params);

    parallel_for(n_units, n_threads, [&](std::size_t unit) {
        Rng rng = Rng::stream(seed, unit);
        std::vector<double> params(n_params), nodes(n_nodes);
        compiled.draw_unit_params(rng, params);
        for (std::size_t obs = 0; obs < obs_per_unit; ++obs) {
            compiled.evaluate(rng, params, nodes);
            const std::size_t rec = unit * obs_per_unit + obs;
            pop.unit_ids[rec] = static_cast<std::int64_t>(unit);
            std::copy(nodes.begin(), nodes.end(), pop.node_values.begin() + rec * n_nodes);
            std::copy(params.begin(), params.end(), pop.param_values.begin() + rec * n_params);
        }
    });
    return pop;
}

// CSV export with header `unit_id,<node>,<node>,...`; unit-parameter columns
// are appended only on request.
inline void write_population_csv(const SampledPopulation& pop, std::ostream& out,
                                 bool include_unit_params = false) {
    out << "unit_id";
    for (const auto& n : pop.node_names) out << ',' << n;
    if (include_unit_params)
        for (const auto& p : pop.param_names) out << ',' << p;
    out << '\n';
    const std::size_t n_nodes = pop.node_names.size();
    const std::size_t n_params = pop.param_names.size();
    for (std::size_t rec = 0; rec < pop.n_records(); ++rec) {
        out << pop.unit_ids[rec];
        for (std::size_t c = 0; c < n_nodes; ++c)
            out << ',' << format_double(pop.node_values[rec * n_nodes + c]);
        if (include_unit_params)
            for (std::size_t c = 0; c < n_params; ++c)
                out << ',' << format_double(pop.param_values[rec * n_params + c]);
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Interventions and estimands
// ---------------------------------------------------------------------------

// do(node = value): the node's assignment becomes the constant and its
// incoming edges disappear; every other assignment is untouched.
inline ScmSpec intervene(const ScmSpec& spec, const std::string& node, double value) {
    if (!spec.dag().has_node(node))
        throw std::invalid_argument("intervene: unknown node '" + node + "'");
    auto assignments = spec.assignments();
    assignments[node] = StructuralAssignment::constant(value);
    ScmSpec out(std::move(assignments), spec.unit_params());
    if (!spec.intervention_note().empty()) out.append_intervention_note(spec.intervention_note());
    out.append_intervention_note("do(" + node + "=" + format_double(value) + ")");
    return out;
}

struct CausalContrast {
    double risk_difference = 0.0;
    double risk_difference_se = 0.0;
    double risk_ratio = 0.0;
    double risk_ratio_se = 0.0;
    double mean_y_x1 = 0.0, mean_y_x0 = 0.0;
};

// Monte Carlo contrast of E[Y | do(X=x1)] vs E[Y | do(X=x0)].
inline CausalContrast causal_contrast(const ScmSpec& spec, const std::string& x_node,
                                      const std::string& y_node, double x1, double x0,
                                      std::size_t n_units, std::uint64_t seed,
                                      unsigned n_threads = 1) {
    // y may not be upstream of x
    {
        const CausalDag& g = spec.dag();
        std::vector<char> seen(g.node_count(), 0);
        std::vector<int> stack{g.index_of(y_node)};
        const int xi = g.index_of(x_node);
        seen[stack[0]] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            if (v == xi)
                throw std::invalid_argument("causal_contrast: '" + y_node +
                                            "' is upstream of '" + x_node + "'");
            for (int ch : g.children_of(v))
                if (!seen[ch]) {
                    seen[ch] = 1;
                    stack.push_back(ch);
                }
        }
    }

    auto mean_and_se = [&](double x, std::uint64_t sub_seed) {
        const ScmSpec intervened = intervene(spec, x_node, x);
        const SampledPopulation pop = sample_population(intervened, n_units, 1, sub_seed,
                                                        n_threads);
        const auto col = pop.column(y_node);
        double sum = 0.0;
        for (std::size_t r = 0; r < pop.n_records(); ++r) sum += pop.value(r, col);
        const double mean = sum / static_cast<double>(pop.n_records());
        double ss = 0.0;
        for (std::size_t r = 0; r < pop.n_records(); ++r) {
            const double d = pop.value(r, col) - mean;
            ss += d * d;
        }
        const double var = ss / static_cast<double>(pop.n_records() - 1);
        return std::pair<double, double>(mean, std::sqrt(var / static_cast<double>(n_units)));
    };

    const auto [m1, se1] = mean_and_se(x1, detail::mix64(seed ^ 0x8f1bbcdcbfa53e0bULL));
    const auto [m0, se0] = mean_and_se(x0, detail::mix64(seed ^ 0x2b0a4f2c1e6d99a7ULL));
    CausalContrast c;
    c.mean_y_x1 = m1;
    c.mean_y_x0 = m0;
    c.risk_difference = m1 - m0;
    c.risk_difference_se = std::sqrt(se1 * se1 + se0 * se0);
    c.risk_ratio = m1 / m0;
    c.risk_ratio_se = std::abs(c.risk_ratio) *
                      std::sqrt(se1 * se1 / (m1 * m1) + se0 * se0 / (m0 * m0));
    return c;
}

struct AdjustedEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_strata_used = 0;
    std::size_t n_strata_skipped = 0;
    double skipped_weight = 0.0;  // probability mass of strata missing a cell
};

// Stratified adjustment: sum_s [mean(Y|X=x1,s) - mean(Y|X=x0,s)] P(s) over
// strata of the listed columns (node or unit-parameter). Strata missing
// either exposure cell are excluded and reported.
inline AdjustedEstimate adjusted_estimate(const SampledPopulation& pop, const std::string& x_node,
                                          const std::string& y_node,
                                          const std::vector<std::string>& strata_columns,
                                          double x1, double x0) {
    const auto xcol = pop.column(x_node);
    const auto ycol = pop.column(y_node);
    std::vector<std::pair<bool, std::size_t>> scols;
    for (const auto& name : strata_columns) scols.push_back(pop.column(name));

    struct Cell {
        std::size_t n = 0;
        double sum = 0.0, sumsq = 0.0;
    };
    struct Stratum {
        std::size_t n = 0;
        Cell treated, control;
    };
    std::map<std::vector<double>, Stratum> strata;
    std::vector<double> key(scols.size());
    for (std::size_t r = 0; r < pop.n_records(); ++r) {
        for (std::size_t i = 0; i < scols.size(); ++i) key[i] = pop.value(r, scols[i]);
        Stratum& s = strata[key];
        ++s.n;
        const double xv = pop.value(r, xcol);
        const double yv = pop.value(r, ycol);
        Cell* cell = nullptr;
        if (xv == x1)
            cell = &s.treated;
        else if (xv == x0)
            cell = &s.control;
        if (cell) {
            ++cell->n;
            cell->sum += yv;
            cell->sumsq += yv * yv;
        }
    }

    const double total = static_cast<double>(pop.n_records());
    AdjustedEstimate est;
    double var_sum = 0.0;
    for (const auto& [k, s] : strata) {
        const double weight = static_cast<double>(s.n) / total;
        if (s.treated.n == 0 || s.control.n == 0) {
            ++est.n_strata_skipped;
            est.skipped_weight += weight;
            continue;
        }
        ++est.n_strata_used;
        const double m1 = s.treated.sum / static_cast<double>(s.treated.n);
        const double m0 = s.control.sum / static_cast<double>(s.control.n);
        est.value += weight * (m1 - m0);
        auto cell_var = [](const Cell& c, double mean) {
            if (c.n < 2) return 0.0;
            return std::max(0.0, (c.sumsq - static_cast<double>(c.n) * mean * mean) /
                                     static_cast<double>(c.n - 1));
        };
        var_sum += weight * weight *
                   (cell_var(s.treated, m1) / static_cast<double>(s.treated.n) +
                    cell_var(s.control, m0) / static_cast<double>(s.control.n));
    }
    if (est.n_strata_used == 0)
        throw std::runtime_error("adjusted_estimate: no stratum has both exposure levels");
    est.std_error = std::sqrt(var_sum);
    return est;
}

// ---------------------------------------------------------------------------
// Model builders
// ---------------------------------------------------------------------------

// SCM matching the binary mixture example: Z ~ Bernoulli(p_z1) and, per unit
// with modifier alpha, P(X=1) = base_x + alpha (1+Z), P(Y=1) = base_y +
// alpha (1+Z). Y has no X input, so do(X) leaves Y's law unchanged.
inline ScmSpec binary_example_scm(const MixtureExampleSpec& mix = MixtureExampleSpec::defaults()) {
    mix.validate();
    UnitParamSpec ups;
    UnitParamSpec::Block alpha;
    alpha.kind = UnitParamSpec::Block::Kind::choice;
    alpha.names = {"alpha"};
    for (const auto& lvl : mix.alpha_levels) {
        alpha.values.push_back(to_double(lvl.value));
        alpha.weights.push_back(to_double(lvl.weight));
    }
    ups.blocks.push_back(std::move(alpha));

    StructuralAssignment z;
    z.kind = StructuralAssignment::Kind::exogenous;
    z.exo_dist = StructuralAssignment::ExoDist::choice;
    z.choice_values = {0.0, 1.0};
    z.choice_weights = {1.0 - to_double(mix.p_z1), to_double(mix.p_z1)};

    auto bernoulli_node = [&](double base) {
        StructuralAssignment a;
        a.kind = StructuralAssignment::Kind::bernoulli_linear_prob;
        a.intercept = CoefExpr::param("alpha", 1.0, base);       // base + alpha
        a.parent_coefs = {{"Z", CoefExpr::param("alpha", 1.0)}};  // + alpha * Z
        return a;
    };

    std::map<std::string, StructuralAssignment> assignments;
    assignments.emplace("Z", std::move(z));
    assignments.emplace("X", bernoulli_node(to_double(mix.base_x)));
    assignments.emplace("Y", bernoulli_node(to_double(mix.base_y)));
    return ScmSpec(std::move(assignments), std::move(ups));
}

// SCM form of the random-coefficient linear model, with Z drawn uniformly
// from the given levels. Unit parameters are the correlated coefficient
// deviations; X and Y are then deterministic given Z and the unit.
inline ScmSpec scm_from_linear_model(const LinearModelParams& p,
                                     const std::vector<double>& z_levels) {
    p.validate();
    if (z_levels.empty())
        throw std::invalid_argument("scm_from_linear_model: need at least one z level");

    UnitParamSpec ups;
    UnitParamSpec::Block g;
    g.kind = UnitParamSpec::Block::Kind::gaussian;
    g.names = {"eps_bx", "eps_x", "eps_by", "eps_y"};
    g.mean = {0, 0, 0, 0};
    g.cov = p.cov.sigma4();
    ups.blocks.push_back(std::move(g));

    StructuralAssignment z;
    z.kind = StructuralAssignment::Kind::exogenous;
    z.exo_dist = StructuralAssignment::ExoDist::choice;
    z.choice_values = z_levels;
    z.choice_weights.assign(z_levels.size(), 1.0);

    StructuralAssignment x;
    x.kind = StructuralAssignment::Kind::linear_gaussian;
    x.intercept = CoefExpr::param("eps_x", 1.0, p.mu_x);
    x.parent_coefs = {{"Z", CoefExpr::param("eps_bx", 1.0, p.b_x)}};
    x.noise_sd = 0.0;

    StructuralAssignment y;
    y.kind = StructuralAssignment::Kind::linear_gaussian;
    y.intercept = CoefExpr::param("eps_y", 1.0, p.mu_y);
    y.parent_coefs = {{"Z", CoefExpr::param("eps_by", 1.0, p.b_y)}};
    y.noise_sd = 0.0;

    std::map<std::string, StructuralAssignment> assignments;
    assignments.emplace("Z", std::move(z));
    assignments.emplace("X", std::move(x));
    assignments.emplace("Y", std::move(y));
    return ScmSpec(std::move(assignments), std::move(ups));
}

}  // namespace ccov
