#ifndef UMBRAL_ORACLE_HPP
#define UMBRAL_ORACLE_HPP

// Brute-force expectation of power-sum polynomials. Deliberately shares no
// code with the partition expansions in umbral_engine.hpp: it multiplies out
// s_I = Σ_j x_j^I over concrete sample units and applies E unit by unit.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "coefficient_field.hpp"
#include "errors.hpp"
#include "sympoly.hpp"

namespace umbral::oracle {

struct Limits {
    int max_weight = 6;
    int max_n = 8;
};

/// A polynomial in the sample variables x_{j,c} (unit j = 0..n-1, column c = 0..v-1).
/// Each key is the n×v exponent table, row-major.
struct ExpandedPolynomial {
    int n = 0;
    int variables = 1;
    std::map<std::vector<int>, Rational> terms;
};

namespace detail {

inline void check_limits(const SymPoly& p, int n, const Limits& limits) {
    if (n < 1)
        throw DomainError("oracle: sample size must be at least 1");
    if (n > limits.max_n)
        throw ResourceError("oracle: n = " + std::to_string(n) + " exceeds cap " +
                            std::to_string(limits.max_n));
    for (const auto& [key, c] : p.terms())
        if (key_weight(key) > limits.max_weight)
            throw ResourceError("oracle: term weight " + std::to_string(key_weight(key)) +
                                " exceeds cap " + std::to_string(limits.max_weight));
}

// Sort unit rows so exchangeable units share one table.
inline void canonicalize_units(std::vector<int>& table, int n, int v) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        rows[static_cast<std::size_t>(j)].assign(table.begin() + j * v, table.begin() + (j + 1) * v);
    std::sort(rows.begin(), rows.end());
    for (int j = 0; j < n; ++j)
        std::copy(rows[static_cast<std::size_t>(j)].begin(), rows[static_cast<std::size_t>(j)].end(),
                  table.begin() + j * v);
}

inline long pole_free_minimum(const SymPoly& p) {
    long minimum = 1;
    for (const auto& [key, c] : p.terms())
        minimum = std::max(minimum, c.minimum_sample_size());
    return minimum;
}

} // namespace detail

/// Multiplies out every power-sum product at the concrete sample size n.
/// With merge_exchangeable the unit rows of each table are sorted after every
/// factor, which is valid because E is symmetric in the units.
inline ExpandedPolynomial expand(const SymPoly& p, int n, const Limits& limits = {},
                                 bool merge_exchangeable = true) {
    detail::check_limits(p, n, limits);
    const int v = p.variables();
    ExpandedPolynomial out{n, v, {}};
    for (const auto& [key, coef] : p.terms()) {
        Rational value;
        try {
            value = coef.substitute(Rational(n));
        } catch (const PoleError&) {
            throw PoleError("oracle: polynomial has a pole at n = " + std::to_string(n),
                            detail::pole_free_minimum(p));
        }
        std::map<std::vector<int>, Rational> current;
        current.emplace(std::vector<int>(static_cast<std::size_t>(n * v), 0), value);
        for (const auto& factor : key) {
            std::map<std::vector<int>, Rational> next;
            for (const auto& [table, c] : current) {
                for (int j = 0; j < n; ++j) {
                    std::vector<int> t = table;
                    for (int col = 0; col < v; ++col)
                        t[static_cast<std::size_t>(j * v + col)] += factor[static_cast<std::size_t>(col)];
                    if (merge_exchangeable)
                        detail::canonicalize_units(t, n, v);
                    next[std::move(t)] += c;
                }
            }
            current = std::move(next);
        }
        for (auto& [table, c] : current)
            out.terms[table] += c;
    }
    std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
    return out;
}

/// Renames unit j to unit perm[j].
inline ExpandedPolynomial relabel_units(const ExpandedPolynomial& e, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != e.n)
        throw ShapeError("relabel_units: permutation size mismatch");
    ExpandedPolynomial out{e.n, e.variables, {}};
    const int v = e.variables;
    for (const auto& [table, c] : e.terms) {
        std::vector<int> t(table.size(), 0);
        for (int j = 0; j < e.n; ++j)
            for (int col = 0; col < v; ++col)
                t[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)] * v + col)] =
                    table[static_cast<std::size_t>(j * v + col)];
        out.terms[std::move(t)] += c;
    }
    return out;
}

/// E over i.i.d. units: ∏_j x_j^{e_j} ↦ ∏_j a_{e_j}.
inline MomentPoly apply_expectation(const ExpandedPolynomial& e) {
    MomentPoly out(e.variables);
    const int v = e.variables;
    for (const auto& [table, c] : e.terms) {
        std::vector<MultiIndex> factors;
        for (int j = 0; j < e.n; ++j) {
            std::vector<int> row(table.begin() + j * v, table.begin() + (j + 1) * v);
            if (std::any_of(row.begin(), row.end(), [](int x) { return x != 0; }))
                factors.emplace_back(std::move(row));
        }
        out.add_term(std::move(factors), CoefRat(c));
    }
    return out;
}

/// Exact E[p] at a concrete sample size n, as a polynomial in the moments a_I.
inline MomentPoly expectation(const SymPoly& p, int n, const Limits& limits = {}) {
    return apply_expectation(expand(p, n, limits));
}

using MomentAssignment = std::map<MultiIndex, Rational>;

// Value of a moment polynomial with constant coefficients under a concrete moment law.
inline Rational evaluate_moments(const MomentPoly& m, const MomentAssignment& law) {
    Rational total = 0;
    for (const auto& [key, c] : m.terms()) {
        auto value = c.constant_value();
        if (!value)
            throw DomainError("evaluate_moments: coefficient depends on n");
        Rational term = *value;
        for (const auto& idx : key) {
            auto it = law.find(idx);
            if (it == law.end())
                throw DomainError("evaluate_moments: no value for moment a_" + idx.to_string());
            term *= it->second;
        }
        total += term;
    }
    total.canonicalize();
    return total;
}

inline Rational numeric_check(const SymPoly& p, const MomentAssignment& law, int n,
                              const Limits& limits = {}) {
    return evaluate_moments(expectation(p, n, limits), law);
}

/// Number of consecutive sample sizes that pins down E[p](n) - target(n) as a
/// rational function of n: one more than a bound on the degree of its numerator
/// over the common denominator.
inline int certification_points(const SymPoly& p, const MomentPoly& target) {
    NPoly common = 1;
    auto absorb = [&common](const NPoly& den) {
        const NPoly g = gcd(common, den);
        common = (common * den).divexact(g);
    };
    for (const auto& [key, c] : p.terms())
        absorb(c.denominator());
    for (const auto& [key, c] : target.terms())
        absorb(c.denominator());
    int excess = 0;
    for (const auto& [key, c] : p.terms())
        // Counting unit assignments for a product of |key| power sums is a polynomial of degree <= |key| in n.
        excess = std::max(excess, c.numerator().degree() - c.denominator().degree() +
                                      static_cast<int>(key.size()));
    for (const auto& [key, c] : target.terms())
        excess = std::max(excess, c.numerator().degree() - c.denominator().degree());
    return common.degree() + excess + 1;
}

struct Certificate {
    bool holds = false;
    std::vector<int> checked_n;
    int failing_n = 0;
};

/// Checks E[p](n) = target at enough consecutive n >= first_n to conclude equality for every n.
inline Certificate certify_unbiased(const SymPoly& p, const MomentPoly& target, int first_n,
                                    const Limits& limits = {}) {
    Certificate cert;
    const int points = certification_points(p, target);
    for (int n = first_n; n < first_n + points; ++n) {
        cert.checked_n.push_back(n);
        if (!(expectation(p, n, limits) == target)) {
            cert.failing_n = n;
            return cert;
        }
    }
    cert.holds = true;
    return cert;
}

} // namespace umbral::oracle

#endif
