#ifndef UMBRAL_UMBRAL_ENGINE_HPP
#define UMBRAL_UMBRAL_ENGINE_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "coefficient_field.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "memo.hpp"
#include "sympoly.hpp"

namespace umbral {

/// The umbral polynomial α₁^{p}α₂^{q}⋯ named by a non-zero multi-index.
class UmbralMonomial {
public:
    explicit UmbralMonomial(MultiIndex index) : index_(std::move(index)) {}
    UmbralMonomial(std::initializer_list<int> exponents) : index_(exponents) {}

    const MultiIndex& index() const noexcept { return index_; }
    int variables() const noexcept { return index_.variables(); }

    bool operator==(const UmbralMonomial&) const = default;

private:
    MultiIndex index_;
};

// i copies of α in one variable: the monomial list behind cumulants and k-statistics of order i.
inline std::vector<UmbralMonomial> repeated_alpha(int i) {
    return std::vector<UmbralMonomial>(static_cast<std::size_t>(i), UmbralMonomial{1});
}

/// Monomial list for a multivariate order (p, q, ...): p copies of α₁, q of α₂, ...
inline std::vector<UmbralMonomial> monomials_for_order(const MultiIndex& order) {
    std::vector<UmbralMonomial> out;
    for (int j = 0; j < order.variables(); ++j)
        for (int c = 0; c < order[static_cast<std::size_t>(j)]; ++c)
            out.emplace_back(MultiIndex::unit(order.variables(), j));
    return out;
}

namespace detail {

inline int check_monomials(std::span<const UmbralMonomial> ms, const char* what) {
    if (ms.empty())
        throw DomainError(std::string(what) + ": empty monomial list");
    const int v = ms.front().variables();
    for (const auto& m : ms)
        if (m.variables() != v)
            throw ShapeError(std::string(what) + ": monomials have different variable counts");
    return v;
}

/// Sums, over every set partition of the positions of `ms`, weight(block sizes)
/// times the key formed by the merged block indices. Returns key -> integer coefficient.
template <class BlockWeight>
std::map<TermKey, Integer, TermKeyLess> partition_sum(std::span<const UmbralMonomial> ms,
                                                      BlockWeight&& weight, int cap) {
    const int i = static_cast<int>(ms.size());
    std::map<TermKey, Integer, TermKeyLess> acc;
    std::vector<MultiIndex> merged;
    std::vector<int> sizes;
    for_each_rgs(
        i,
        [&](std::span<const int> labels, int k) {
            merged.assign(static_cast<std::size_t>(k), MultiIndex());
            sizes.assign(static_cast<std::size_t>(k), 0);
            for (std::size_t t = 0; t < labels.size(); ++t) {
                const auto b = static_cast<std::size_t>(labels[t]);
                if (sizes[b]++ == 0)
                    merged[b] = ms[t].index();
                else
                    merged[b] += ms[t].index();
            }
            const Integer w = weight(sizes);
            if (w == 0)
                return;
            auto key = make_key(merged);
            auto [it, inserted] = acc.try_emplace(std::move(key), w);
            if (!inserted)
                it->second += w;
        },
        cap);
    for (auto it = acc.begin(); it != acc.end();)
        it = (it->second == 0) ? acc.erase(it) : std::next(it);
    return acc;
}

// The coefficient of a block depends only on its size; signatures repeat a lot.
inline Integer chi_block_product(const std::vector<int>& sizes) {
    static ConcurrentMemo<std::vector<int>, Integer> memo;
    std::vector<int> signature = sizes;
    std::sort(signature.begin(), signature.end(), std::greater<>());
    return memo.get_or_compute(signature, [&] {
        Integer product = 1;
        for (int s : signature)
            product *= chi_falling_moment(s);
        return product;
    });
}

inline TermKey monomial_multiset(std::span<const UmbralMonomial> ms) {
    std::vector<MultiIndex> indices;
    for (const auto& m : ms)
        indices.push_back(m.index());
    return make_key(std::move(indices));
}

template <class Family>
Poly<Family> from_integer_terms(const std::map<TermKey, Integer, TermKeyLess>& terms, int v) {
    Poly<Family> out(v);
    for (const auto& [key, c] : terms)
        out.add_term(key, CoefRat(c));
    return out;
}

} // namespace detail

/// Expands [n.(χp₁)]⋯[n.(χp_i)] into uncorrelated power sums: the sum over set
/// partitions π of the positions of ∏_{B∈π} (-1)^{|B|-1}(|B|-1)! s_{P_B}, where
/// P_B adds the indices of the monomials in block B. Integer coefficients.
inline SymPoly expand_chi_dot_product(std::span<const UmbralMonomial> ms,
                                      int cap = kDefaultGroundSizeCap) {
    const int v = detail::check_monomials(ms, "expand_chi_dot_product");
    static detail::ConcurrentMemo<TermKey, SymPoly, TermKeyLess> memo;
    // The product is symmetric in its factors, so the sorted multiset is the cache key.
    const TermKey cache_key = detail::monomial_multiset(ms);
    return memo.get_or_compute(cache_key, [&] {
        return detail::from_integer_terms<PowerSumFamily>(
            detail::partition_sum(ms, detail::chi_block_product, cap), v);
    });
}

/// Product of power sums (n.p₁)⋯(n.p_i) written in augmented monomial symmetric
/// polynomials: Σ_π m̃ keyed by the merged block indices of π (coefficient one per partition).
inline AugmentedPoly power_product_to_augmented(std::span<const UmbralMonomial> ms,
                                                int cap = kDefaultGroundSizeCap) {
    const int v = detail::check_monomials(ms, "power_product_to_augmented");
    return detail::from_integer_terms<AugmentedFamily>(
        detail::partition_sum(
            ms, [](const std::vector<int>&) { return Integer(1); }, cap),
        v);
}

/// U-statistic of a moment product ∏ a_I: the expansion of [n.(χα^{I₁})]⋯ divided by (n)_k.
inline SymPoly u_statistic(std::span<const MultiIndex> moment_product,
                           int cap = kDefaultGroundSizeCap) {
    if (moment_product.empty())
        throw DomainError("u_statistic: empty moment product");
    std::vector<UmbralMonomial> ms;
    for (const auto& idx : moment_product)
        ms.emplace_back(idx);
    const int k = static_cast<int>(ms.size());
    return expand_chi_dot_product(ms, cap).scale(CoefRat(NPoly(1), falling_factorial(k)));
}

/// Joint cumulant of p₁..p_i in joint moments: Σ_π (χ)_{|π|} ∏_B a_{P_B}.
inline MomentPoly joint_cumulant_in_moments(std::span<const UmbralMonomial> ms,
                                            int cap = kDefaultGroundSizeCap) {
    const int v = detail::check_monomials(ms, "joint_cumulant_in_moments");
    return detail::from_integer_terms<MomentFamily>(
        detail::partition_sum(
            ms,
            [](const std::vector<int>& sizes) {
                return chi_falling_moment(static_cast<int>(sizes.size()));
            },
            cap),
        v);
}

namespace detail {

// Incomplete exponential Bell polynomial B_{i,k} in the univariate moments a_1, a_2, ...
inline MomentPoly bell_polynomial_impl(int i, int k, int cap) {
    if (i < 1 || k < 1 || k > i)
        throw DomainError("bell_polynomial: need 1 <= k <= i");
    std::map<TermKey, Integer, TermKeyLess> acc;
    for_each_rgs(
        i, k,
        [&](std::span<const int> labels, int blocks) {
            std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
            for (int label : labels)
                ++sizes[static_cast<std::size_t>(label)];
            std::vector<MultiIndex> factors;
            for (int s : sizes)
                factors.push_back(MultiIndex::univariate(s));
            acc[make_key(std::move(factors))] += 1;
        },
        cap);
    return from_integer_terms<MomentFamily>(acc, 1);
}

} // namespace detail

/// E[(γ.α)^i] = Σ_k g_(k) B_{i,k}(a₁, a₂, ...) with symbolic moments a_j.
/// factorial_moments[k-1] holds g_(k); at least i values are required.
inline MomentPoly subordinated_moment(std::span<const CoefRat> factorial_moments, int i,
                                      int cap = kDefaultGroundSizeCap) {
    if (i < 1)
        throw DomainError("subordinated_moment: order must be at least 1");
    if (factorial_moments.size() < static_cast<std::size_t>(i))
        throw DomainError("subordinated_moment: need " + std::to_string(i) +
                          " factorial moments, got " + std::to_string(factorial_moments.size()));
    MomentPoly out(1);
    for (int k = 1; k <= i; ++k)
        out += detail::bell_polynomial_impl(i, k, cap).scale(factorial_moments[static_cast<std::size_t>(k - 1)]);
    return out;
}

/// Numeric form: moments[j-1] holds a_j; at least i moments are required.
inline CoefRat subordinated_moment(std::span<const CoefRat> factorial_moments,
                                   std::span<const Rational> moments, int i,
                                   int cap = kDefaultGroundSizeCap) {
    if (moments.size() < static_cast<std::size_t>(i))
        throw DomainError("subordinated_moment: need " + std::to_string(i) + " moments, got " +
                          std::to_string(moments.size()));
    const MomentPoly symbolic = subordinated_moment(factorial_moments, i, cap);
    CoefRat out;
    for (const auto& [key, c] : symbolic.terms()) {
        Rational product = 1;
        for (const auto& idx : key)
            product *= moments[static_cast<std::size_t>(idx[0] - 1)];
        out += c * CoefRat(product);
    }
    return out;
}

} // namespace umbral

#endif
