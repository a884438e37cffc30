#pragma once

// Exact reproduction of the binary exposure/disease/confounder example:
// per-unit 2x2 tables, the mixture (population) tables, odds-ratio based
// association measures, and the causal risk ratio. All arithmetic is exact
// rational so downstream modules can use these values as oracles.

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccov {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

// Parses a plain decimal literal ("0.25", "-1.5", "3") exactly.
inline Rational rational_from_decimal(const std::string& text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::int64_t num = 0, den = 1;
    bool saw_digit = false, saw_dot = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.') {
            if (saw_dot) throw std::invalid_argument("not a decimal literal: '" + text + "'");
            saw_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (saw_dot) den *= 10;
            saw_digit = true;
        } else {
            throw std::invalid_argument("not a decimal literal: '" + text + "'");
        }
    }
    if (!saw_digit) throw std::invalid_argument("not a decimal literal: '" + text + "'");
    return Rational(negative ? -num : num, den);
}

// Joint 2x2 probability table over (X,Y); p(x,y) with x,y in {0,1}.
struct ContingencyTable {
    Rational p[2][2] = {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};

    Rational cell(int x, int y) const { return p[x][y]; }

    Rational total() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }

    void validate() const {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                if (p[x][y] < Rational(0))
                    throw std::invalid_argument("ContingencyTable: negative cell");
        if (total() != Rational(1))
            throw std::invalid_argument("ContingencyTable: cells must sum to 1");
    }

    // Cells rounded to two decimals, half-to-even (the rounding that
    // reproduces the published population table from the exact one).
    ContingencyTable rounded_2dp() const {
        auto round2 = [](const Rational& r) {
            const Rational scaled = r * Rational(100);
            std::int64_t fl = scaled.numerator() / scaled.denominator();
            if (scaled < Rational(0) && scaled != Rational(fl)) --fl;  // floor
            const Rational rem = scaled - Rational(fl);
            std::int64_t rounded;
            if (rem < Rational(1, 2))
                rounded = fl;
            else if (rem > Rational(1, 2))
                rounded = fl + 1;
            else
                rounded = (fl % 2 == 0) ? fl : fl + 1;
            return Rational(rounded, 100);
        };
        ContingencyTable t;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) t.p[x][y] = round2(p[x][y]);
        return t;
    }
};

// (p11*p00)/(p10*p01). The measure the example's "relative risk" figures
// refer to: risk is taken as the odds P(Y=1|X=x)/P(Y=0|X=x), so the ratio
// of risks is the odds ratio.
inline Rational odds_ratio(const ContingencyTable& t) {
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            if (t.p[x][y] <= Rational(0))
                throw std::invalid_argument("odds_ratio: zero cell at (" + std::to_string(x) +
                                            "," + std::to_string(y) + ")");
    return (t.p[1][1] * t.p[0][0]) / (t.p[1][0] * t.p[0][1]);
}

// Mixture example: per-unit effect modifier alpha with finitely many levels,
// P(X=1) = base_x + alpha*(1+z), P(Y=1) = base_y + alpha*(1+z), z in {0,1}.
struct MixtureExampleSpec {
    struct AlphaLevel {
        Rational value;
        Rational weight;
    };
    std::vector<AlphaLevel> alpha_levels;
    Rational base_x = Rational(1, 2);
    Rational base_y = Rational(1, 10);
    Rational p_z1 = Rational(1, 2);

    static MixtureExampleSpec defaults() {
        MixtureExampleSpec s;
        s.alpha_levels = {{Rational(1, 10), Rational(1, 2)}, {Rational(2, 10), Rational(1, 2)}};
        return s;
    }

    void validate() const {
        if (alpha_levels.empty())
            throw std::invalid_argument("MixtureExampleSpec: no alpha levels");
        Rational wsum(0);
        for (const auto& lvl : alpha_levels) {
            if (lvl.weight <= Rational(0))
                throw std::invalid_argument("MixtureExampleSpec: weights must be positive");
            wsum += lvl.weight;
        }
        if (wsum != Rational(1))
            throw std::invalid_argument("MixtureExampleSpec: weights must sum to 1");
        if (p_z1 < Rational(0) || p_z1 > Rational(1))
            throw std::invalid_argument("MixtureExampleSpec: P(Z=1) outside [0,1]");
        for (const auto& lvl : alpha_levels)
            for (int z = 0; z <= 1; ++z) {
                check_probability(base_x + lvl.value * Rational(1 + z), "P(X=1)", lvl.value, z);
                check_probability(base_y + lvl.value * Rational(1 + z), "P(Y=1)", lvl.value, z);
            }
    }

    static void check_probability(const Rational& p, const char* label, const Rational& alpha,
                                  int z) {
        if (p < Rational(0) || p > Rational(1))
            throw std::invalid_argument(std::string(label) + " = " + std::to_string(to_double(p)) +
                                        " outside [0,1] at alpha=" +
                                        std::to_string(to_double(alpha)) + ", z=" +
                                        std::to_string(z));
    }
};

// P(X,Y | Z=z, alpha): X and Y are independent within a unit, so the table
// is the product of its margins.
inline ContingencyTable unit_table(const MixtureExampleSpec& spec, const Rational& alpha, int z) {
    if (z != 0 && z != 1) throw std::invalid_argument("unit_table: z must be 0 or 1");
    bool known = false;
    for (const auto& lvl : spec.alpha_levels) known |= (lvl.value == alpha);
    if (!known) throw std::invalid_argument("unit_table: alpha is not a level of the spec");

    const Rational px = spec.base_x + alpha * Rational(1 + z);
    const Rational py = spec.base_y + alpha * Rational(1 + z);
    MixtureExampleSpec::check_probability(px, "P(X=1)", alpha, z);
    MixtureExampleSpec::check_probability(py, "P(Y=1)", alpha, z);

    ContingencyTable t;
    t.p[0][0] = (Rational(1) - px) * (Rational(1) - py);
    t.p[0][1] = (Rational(1) - px) * py;
    t.p[1][0] = px * (Rational(1) - py);
    t.p[1][1] = px * py;
    return t;
}

// P(X,Y | Z=z): alpha-weighted mixture of the unit tables, exact.
inline ContingencyTable population_table(const MixtureExampleSpec& spec, int z) {
    spec.validate();
    ContingencyTable t;
    for (const auto& lvl : spec.alpha_levels) {
        const ContingencyTable u = unit_table(spec, lvl.value, z);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) t.p[x][y] += lvl.weight * u.p[x][y];
    }
    return t;
}

enum class TableMode { exact, rounded };

struct SummaryMeasures {
    std::map<int, Rational> stratum_or;  // per z level
    Rational average_or{0};
    Rational marginal_or{0};
    Rational causal_rr{1};
};

// Stratified, averaged and marginal odds ratios plus the causal risk ratio.
// In rounded mode the per-z tables are first rounded to two decimals and all
// measures (including the marginal table) are derived from the rounded cells.
inline SummaryMeasures summary_measures(const MixtureExampleSpec& spec,
                                        TableMode mode = TableMode::exact) {
    spec.validate();
    ContingencyTable by_z[2];
    for (int z = 0; z <= 1; ++z) {
        by_z[z] = population_table(spec, z);
        if (mode == TableMode::rounded) by_z[z] = by_z[z].rounded_2dp();
    }
    SummaryMeasures m;
    for (int z = 0; z <= 1; ++z) m.stratum_or[z] = odds_ratio(by_z[z]);
    m.average_or = (m.stratum_or[0] + m.stratum_or[1]) / Rational(2);

    ContingencyTable marginal;
    const Rational pz1 = spec.p_z1;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            marginal.p[x][y] = (Rational(1) - pz1) * by_z[0].p[x][y] + pz1 * by_z[1].p[x][y];
    m.marginal_or = odds_ratio(marginal);

    // Y's assignment has no X input, so intervening on X leaves Y's law
    // unchanged and the causal risk ratio is exactly 1.
    m.causal_rr = Rational(1);
    return m;
}

}  // namespace ccov
