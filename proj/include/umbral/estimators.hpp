#ifndef UMBRAL_ESTIMATORS_HPP
#define UMBRAL_ESTIMATORS_HPP

#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "coefficient_field.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "memo.hpp"
#include "sympoly.hpp"
#include "umbral_engine.hpp"

namespace umbral {

// Orders past these still generate, but callers are expected to warn about cost.
inline constexpr int kUnivariateOrderCap = 10;
inline constexpr int kMultivariateDegreeCap = 6;

enum class EstimatorKind { k_statistic, h_statistic, multivariate_k, u_statistic, joint_cumulant };

inline std::string to_string(EstimatorKind kind) {
    switch (kind) {
    case EstimatorKind::k_statistic: return "k_statistic";
    case EstimatorKind::h_statistic: return "h_statistic";
    case EstimatorKind::multivariate_k: return "multivariate_k";
    case EstimatorKind::u_statistic: return "u_statistic";
    case EstimatorKind::joint_cumulant: return "joint_cumulant";
    }
    return "unknown";
}

/// What to generate. `order` holds one multi-index for every kind except
/// u_statistic, where it is the multiset of moments whose product is estimated.
struct EstimatorSpec {
    EstimatorKind kind;
    std::vector<MultiIndex> order;

    EstimatorSpec(EstimatorKind k, std::vector<MultiIndex> o) : kind(k), order(std::move(o)) {
        validate();
    }

    int variables() const { return order.front().variables(); }

    int total_degree() const {
        int d = 0;
        for (const auto& idx : order)
            d += idx.total_degree();
        return d;
    }

    bool univariate() const { return variables() == 1; }

    // Empty when within the default generation caps.
    std::optional<std::string> cost_warning() const {
        const int cap = univariate() ? kUnivariateOrderCap : kMultivariateDegreeCap;
        if (total_degree() <= cap)
            return std::nullopt;
        return "order " + std::to_string(total_degree()) + " exceeds the default cap of " +
               std::to_string(cap) + "; generation cost grows like the Bell numbers";
    }

private:
    void validate() const {
        if (order.empty())
            throw DomainError("estimator spec: empty order");
        const int v = order.front().variables();
        for (const auto& idx : order)
            if (idx.variables() != v)
                throw ShapeError("estimator spec: mixed variable counts in order");
        if (kind != EstimatorKind::u_statistic && order.size() != 1)
            throw DomainError("estimator spec: " + to_string(kind) + " takes a single order");
        if ((kind == EstimatorKind::k_statistic || kind == EstimatorKind::h_statistic) && v != 1)
            throw DomainError("estimator spec: " + to_string(kind) + " is univariate");
    }
};

namespace detail {

inline void check_order(int r, const char* what) {
    if (r < 1)
        throw DomainError(std::string(what) + ": order must be at least 1");
}

inline Integer factorial(int k) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

// Number of set partitions of {1..|λ|} whose block sizes are λ: |λ|! / (∏ λ_j! ∏ r_j!).
inline Integer partitions_with_block_sizes(const IntPartition& lambda) {
    Integer denom = 1;
    for (int part : lambda.parts())
        denom *= factorial(part);
    for (const auto& [part, r] : lambda.multiplicities())
        denom *= factorial(r);
    return factorial(lambda.weight()) / denom;
}

inline std::vector<UmbralMonomial> monomials_for_partition(const IntPartition& lambda) {
    std::vector<UmbralMonomial> ms;
    for (int part : lambda.parts())
        ms.emplace_back(MultiIndex::univariate(part));
    return ms;
}

using EstimatorKey = std::tuple<int, std::vector<std::vector<int>>>;

inline EstimatorKey estimator_key(EstimatorKind kind, std::span<const MultiIndex> order) {
    std::vector<std::vector<int>> raw;
    for (const auto& idx : order)
        raw.push_back(idx.exponents());
    std::sort(raw.begin(), raw.end());
    return {static_cast<int>(kind), std::move(raw)};
}

inline ConcurrentMemo<EstimatorKey, SymPoly>& estimator_cache() {
    static ConcurrentMemo<EstimatorKey, SymPoly> cache;
    return cache;
}

/// Complete Bell polynomial Y_k(x₁..x_k) with x_j = weight(j)·s_j, divided by k!.
template <class Weight>
SymPoly scaled_complete_bell(int k, Weight&& weight) {
    SymPoly out(1);
    for (const auto& lambda : integer_partitions(k)) {
        Rational c(partitions_with_block_sizes(lambda));
        std::vector<MultiIndex> factors;
        for (int part : lambda.parts()) {
            c *= weight(part);
            factors.push_back(MultiIndex::univariate(part));
        }
        c /= Rational(factorial(k));
        c.canonicalize();
        out.add_term(std::move(factors), CoefRat(c));
    }
    return out;
}

} // namespace detail

/// Expands an augmented monomial symmetric polynomial m̃ (given by its index
/// multiset) into uncorrelated power sums.
inline SymPoly augmented_to_power_sums(const TermKey& augmented, int cap = kDefaultGroundSizeCap) {
    if (augmented.empty())
        throw DomainError("augmented_to_power_sums: empty partition");
    std::vector<UmbralMonomial> ms;
    for (const auto& idx : augmented)
        ms.emplace_back(idx);
    return expand_chi_dot_product(ms, cap);
}

inline SymPoly augmented_to_power_sums(const IntPartition& lambda, int cap = kDefaultGroundSizeCap) {
    if (lambda.length() == 0)
        throw DomainError("augmented_to_power_sums: empty partition");
    return expand_chi_dot_product(detail::monomials_for_partition(lambda), cap);
}

// Substitutes every augmented symbol by its power-sum expansion.
inline SymPoly augmented_to_power_sums(const AugmentedPoly& p, int cap = kDefaultGroundSizeCap) {
    SymPoly out(p.variables());
    for (const auto& [key, c] : p.terms())
        out += augmented_to_power_sums(key, cap).scale(c);
    return out;
}

/// k_r as a polynomial in s₁..s_r. Sums over set partitions of [r] grouped by
/// block sizes λ: (χ)_{ℓ(λ)}/(n)_{ℓ(λ)} · #{π with sizes λ} · m̃_λ in power sums.
inline SymPoly k_statistic(int r, int cap = kDefaultGroundSizeCap) {
    detail::check_order(r, "k_statistic");
    const MultiIndex order = MultiIndex::univariate(r);
    return detail::estimator_cache().get_or_compute(
        detail::estimator_key(EstimatorKind::k_statistic, std::span(&order, 1)), [&] {
            if (r > cap)
                throw ResourceError("k_statistic: order " + std::to_string(r) + " exceeds cap " +
                                    std::to_string(cap));
            SymPoly out(1);
            for (const auto& lambda : integer_partitions(r)) {
                const int k = static_cast<int>(lambda.length());
                const CoefRat weight(NPoly::constant(chi_falling_moment(k) *
                                                     detail::partitions_with_block_sizes(lambda)),
                                     falling_factorial(k));
                out += augmented_to_power_sums(lambda, cap).scale(weight);
            }
            return out;
        });
}

/// Multivariate k-statistic k_{p,q,...}: the U-statistic of the joint cumulant of
/// p copies of α₁, q of α₂, .... Enumerates set partitions of the monomial positions.
inline SymPoly multivariate_k_statistic(const MultiIndex& index, int cap = kDefaultGroundSizeCap) {
    return detail::estimator_cache().get_or_compute(
        detail::estimator_key(EstimatorKind::multivariate_k, std::span(&index, 1)), [&] {
            const auto ms = monomials_for_order(index);
            const auto merged_counts = detail::partition_sum(
                ms, [](const std::vector<int>&) { return Integer(1); }, cap);
            SymPoly out(index.variables());
            for (const auto& [key, count] : merged_counts) {
                const int k = static_cast<int>(key.size());
                const CoefRat weight(NPoly::constant(chi_falling_moment(k) * count),
                                     falling_factorial(k));
                out += augmented_to_power_sums(key, cap).scale(weight);
            }
            return out;
        });
}

/// Unbiased estimator of the r-th central moment E[(α - a₁)^r], from the binomial
/// expansion Σ_j C(r,j)(-1)^j a₁^j a_{r-j} with each moment product replaced by its U-statistic.
inline SymPoly h_statistic(int r, int cap = kDefaultGroundSizeCap) {
    detail::check_order(r, "h_statistic");
    const MultiIndex order = MultiIndex::univariate(r);
    return detail::estimator_cache().get_or_compute(
        detail::estimator_key(EstimatorKind::h_statistic, std::span(&order, 1)), [&] {
            SymPoly out(1);
            Integer binom = 1;
            for (int j = 0; j <= r; ++j) {
                if (j > 0)
                    binom = binom * (r - j + 1) / j;
                std::vector<MultiIndex> product(static_cast<std::size_t>(j), MultiIndex::univariate(1));
                if (r - j > 0)
                    product.push_back(MultiIndex::univariate(r - j));
                const Integer c = (j % 2 == 0) ? binom : Integer(-binom);
                out += u_statistic(product, cap).scale(CoefRat(c));
            }
            return out;
        });
}

/// Cumulant κ_r in raw moments: Σ_k (-1)^{k-1}(k-1)! B_{r,k}(a₁, a₂, ...).
inline MomentPoly cumulant_in_moments(int r, int cap = kDefaultGroundSizeCap) {
    detail::check_order(r, "cumulant_in_moments");
    return joint_cumulant_in_moments(repeated_alpha(r), cap);
}

/// Joint cumulant for a multivariate order (p, q, ...) in joint moments a_{i,j,...}.
inline MomentPoly cumulant_in_moments(const MultiIndex& order, int cap = kDefaultGroundSizeCap) {
    return joint_cumulant_in_moments(monomials_for_order(order), cap);
}

/// Central moment μ_r = Σ_j C(r,j)(-1)^j a₁^j a_{r-j} (with a₀ = 1).
inline MomentPoly central_moment_in_moments(int r) {
    detail::check_order(r, "central_moment_in_moments");
    MomentPoly out(1);
    Integer binom = 1;
    for (int j = 0; j <= r; ++j) {
        if (j > 0)
            binom = binom * (r - j + 1) / j;
        std::vector<MultiIndex> product(static_cast<std::size_t>(j), MultiIndex::univariate(1));
        if (r - j > 0)
            product.push_back(MultiIndex::univariate(r - j));
        out.add_term(std::move(product), CoefRat((j % 2 == 0) ? binom : Integer(-binom)));
    }
    return out;
}

// ∏ a_I for a multiset of moment indices.
inline MomentPoly moment_product(std::span<const MultiIndex> product) {
    if (product.empty())
        throw DomainError("moment_product: empty product");
    MomentPoly out(product.front().variables());
    out.add_term(std::vector<MultiIndex>(product.begin(), product.end()), CoefRat(1));
    return out;
}

/// Incomplete exponential Bell polynomial B_{i,k}(a₁, ..., a_{i-k+1}).
inline MomentPoly bell_polynomial(int i, int k, int cap = kDefaultGroundSizeCap) {
    return detail::bell_polynomial_impl(i, k, cap);
}

/// Elementary symmetric polynomial e_k in power sums: k! e_k is the complete
/// Bell polynomial in (-1)^{r-1}(r-1)! s_r.
inline SymPoly elementary_in_power_sums(int k) {
    detail::check_order(k, "elementary_in_power_sums");
    return detail::scaled_complete_bell(k, [](int r) {
        const Rational f(detail::factorial(r - 1));
        return (r % 2 == 1) ? f : Rational(-f);
    });
}

/// Complete homogeneous symmetric polynomial h_m in power sums: m! h_m is the
/// complete Bell polynomial in (r-1)! s_r.
inline SymPoly complete_in_power_sums(int m) {
    detail::check_order(m, "complete_in_power_sums");
    return detail::scaled_complete_bell(m, [](int r) { return Rational(detail::factorial(r - 1)); });
}

/// The monomial symmetric polynomial m_λ = m̃_λ / (r₁! r₂! ⋯).
struct ScaledAugmented {
    IntPartition partition;
    Rational scale;

    AugmentedPoly as_augmented() const {
        std::vector<MultiIndex> key;
        for (int part : partition.parts())
            key.push_back(MultiIndex::univariate(part));
        AugmentedPoly out(1);
        out.add_term(std::move(key), CoefRat(scale));
        return out;
    }

    SymPoly to_power_sums(int cap = kDefaultGroundSizeCap) const {
        return augmented_to_power_sums(partition, cap).scale(CoefRat(scale));
    }
};

inline ScaledAugmented monomial_in_augmented(const IntPartition& lambda) {
    if (lambda.length() == 0)
        throw DomainError("monomial_in_augmented: empty partition");
    Integer denom = 1;
    for (const auto& [part, r] : lambda.multiplicities())
        denom *= detail::factorial(r);
    Rational scale(1, denom);
    scale.canonicalize();
    return {lambda, scale};
}

/// Generates the power-sum estimator described by `spec`. joint_cumulant has no
/// power-sum form of its own; it yields the multivariate k-statistic of the same order.
inline SymPoly generate(const EstimatorSpec& spec, int cap = kDefaultGroundSizeCap) {
    const MultiIndex& first = spec.order.front();
    switch (spec.kind) {
    case EstimatorKind::k_statistic: return k_statistic(first[0], cap);
    case EstimatorKind::h_statistic: return h_statistic(first[0], cap);
    case EstimatorKind::multivariate_k:
    case EstimatorKind::joint_cumulant: return multivariate_k_statistic(first, cap);
    case EstimatorKind::u_statistic: return u_statistic(spec.order, cap);
    }
    throw DomainError("generate: unknown estimator kind");
}

/// The population quantity `generate(spec)` is unbiased for, in moments.
inline MomentPoly estimand(const EstimatorSpec& spec, int cap = kDefaultGroundSizeCap) {
    const MultiIndex& first = spec.order.front();
    switch (spec.kind) {
    case EstimatorKind::k_statistic: return cumulant_in_moments(first[0], cap);
    case EstimatorKind::h_statistic: return central_moment_in_moments(first[0]);
    case EstimatorKind::multivariate_k:
    case EstimatorKind::joint_cumulant: return cumulant_in_moments(first, cap);
    case EstimatorKind::u_statistic: return moment_product(spec.order);
    }
    throw DomainError("estimand: unknown estimator kind");
}

} // namespace umbral

#endif
