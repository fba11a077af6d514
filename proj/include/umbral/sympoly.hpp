#ifndef UMBRAL_SYMPOLY_HPP
#define UMBRAL_SYMPOLY_HPP

#include <algorithm>
#include <initializer_list>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "coefficient_field.hpp"
#include "errors.hpp"

namespace umbral {

/// Exponent vector of a monomial in the base umbrae α₁..α_v. Indexes both
/// power sums s_I and moments a_I. Never all zero.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
        if (exponents_.empty())
            throw DomainError("multi-index: needs at least one variable");
        for (int e : exponents_)
            if (e < 0)
                throw DomainError("multi-index: negative exponent");
        if (total_degree() == 0)
            throw DomainError("multi-index: all exponents are zero");
    }

    MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

    static MultiIndex univariate(int r) { return MultiIndex(std::vector<int>{r}); }

    // The unit vector e_j of length v (the umbra α_{j+1}).
    static MultiIndex unit(int v, int j) {
        std::vector<int> e(static_cast<std::size_t>(v), 0);
        e.at(static_cast<std::size_t>(j)) = 1;
        return MultiIndex(std::move(e));
    }

    const std::vector<int>& exponents() const noexcept { return exponents_; }
    int variables() const noexcept { return static_cast<int>(exponents_.size()); }
    int operator[](std::size_t j) const { return exponents_[j]; }

    int total_degree() const noexcept {
        return std::accumulate(exponents_.begin(), exponents_.end(), 0);
    }

    MultiIndex& operator+=(const MultiIndex& other) {
        if (other.variables() != variables())
            throw ShapeError("multi-index: variable count mismatch");
        for (std::size_t j = 0; j < exponents_.size(); ++j)
            exponents_[j] += other.exponents_[j];
        return *this;
    }

    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }

    bool operator==(const MultiIndex&) const = default;

    // Factor order inside a product: lower total degree first, then
    // lexicographically larger first, so s_{1,0} precedes s_{0,1}.
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        const int da = a.total_degree();
        const int db = b.total_degree();
        if (da != db)
            return da < db;
        return a.exponents_ > b.exponents_;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t j = 0; j < exponents_.size(); ++j) {
            if (j)
                out += ',';
            out += std::to_string(exponents_[j]);
        }
        return out;
    }

private:
    std::vector<int> exponents_;
};

/// Sorted multiset of multi-indices: a product of symbols (or, for the
/// augmented family, the index list of one augmented monomial).
using TermKey = std::vector<MultiIndex>;

inline int key_weight(const TermKey& key) {
    int w = 0;
    for (const auto& idx : key)
        w += idx.total_degree();
    return w;
}

/// Graded order on term keys: lower weight first; within a weight, more
/// factors first, then factor-wise comparison.
struct TermKeyLess {
    bool operator()(const TermKey& a, const TermKey& b) const {
        const int wa = key_weight(a);
        const int wb = key_weight(b);
        if (wa != wb)
            return wa < wb;
        if (a.size() != b.size())
            return a.size() > b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

inline TermKey make_key(std::vector<MultiIndex> factors) {
    std::sort(factors.begin(), factors.end());
    return factors;
}

inline TermKey merge_keys(const TermKey& a, const TermKey& b) {
    TermKey out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct PowerSumFamily {
    static constexpr const char* symbol = "s";
    static constexpr bool multiplicative = true;
};

struct MomentFamily {
    static constexpr const char* symbol = "a";
    static constexpr bool multiplicative = true;
};

// m̃_λ: one symbol per key, so products are not defined.
struct AugmentedFamily {
    static constexpr const char* symbol = "m~";
    static constexpr bool multiplicative = false;
};

/// Sparse polynomial over CoefRat in the symbols of one family, with
/// `variables` base umbrae. Zero coefficients are never stored and keys are
/// sorted multisets, so structural equality is polynomial equality.
template <class Family>
class Poly {
public:
    using Terms = std::map<TermKey, CoefRat, TermKeyLess>;

    explicit Poly(int variables = 1) : variables_(variables) {
        if (variables < 1)
            throw DomainError("polynomial: variable count must be at least 1");
    }

    static Poly symbol(const MultiIndex& index) {
        Poly p(index.variables());
        p.add_term({index}, CoefRat(1));
        return p;
    }

    static Poly constant(const CoefRat& c, int variables = 1) {
        Poly p(variables);
        p.add_term({}, c);
        return p;
    }

    int variables() const noexcept { return variables_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    CoefRat coefficient(const TermKey& key) const {
        auto it = terms_.find(make_key(key));
        return it == terms_.end() ? CoefRat() : it->second;
    }

    // Adds c times the product of the given factors (in any order).
    void add_term(std::vector<MultiIndex> factors, const CoefRat& c) {
        for (const auto& f : factors)
            if (f.variables() != variables_)
                throw ShapeError("polynomial: factor has " + std::to_string(f.variables()) +
                                 " variables, expected " + std::to_string(variables_));
        accumulate(make_key(std::move(factors)), c);
    }

    bool operator==(const Poly& other) const {
        return variables_ == other.variables_ && terms_ == other.terms_;
    }

    Poly& operator+=(const Poly& other) {
        check_shape(other);
        for (const auto& [key, c] : other.terms_)
            accumulate(key, c);
        return *this;
    }

    Poly& operator-=(const Poly& other) {
        check_shape(other);
        for (const auto& [key, c] : other.terms_)
            accumulate(key, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly operator-() const { return scale(CoefRat(-1)); }

    friend Poly operator*(const Poly& a, const Poly& b)
        requires Family::multiplicative
    {
        a.check_shape(b);
        Poly out(a.variables_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                out.accumulate(merge_keys(ka, kb), ca * cb);
        return out;
    }

    Poly& operator*=(const Poly& other)
        requires Family::multiplicative
    {
        return *this = *this * other;
    }

    Poly scale(const CoefRat& c) const {
        Poly out(variables_);
        if (c.is_zero())
            return out;
        for (const auto& [key, coef] : terms_)
            out.terms_.emplace_hint(out.terms_.end(), key, coef * c);
        return out;
    }

    /// Splits the terms by weight (sum of the total degrees of a key's factors).
    std::map<int, Poly> weight_classes() const {
        std::map<int, Poly> out;
        for (const auto& [key, c] : terms_) {
            auto [it, inserted] = out.try_emplace(key_weight(key), variables_);
            it->second.terms_.emplace(key, c);
        }
        return out;
    }

    // Largest degree in n over all numerators and denominators.
    int max_n_degree() const {
        int d = 0;
        for (const auto& [key, c] : terms_)
            d = std::max({d, c.numerator().degree(), c.denominator().degree()});
        return d;
    }

    // Plain debugging form; see render.hpp for user-facing output.
    friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
        if (p.is_zero())
            return os << "0";
        bool first = true;
        for (const auto& [key, c] : p.terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c << ")";
            for (const auto& idx : key)
                os << "*" << Family::symbol << "[" << idx.to_string() << "]";
        }
        return os;
    }

private:
    void check_shape(const Poly& other) const {
        if (other.variables_ != variables_)
            throw ShapeError("polynomial: variable count mismatch (" + std::to_string(variables_) +
                             " vs " + std::to_string(other.variables_) + ")");
    }

    void accumulate(const TermKey& key, const CoefRat& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Terms terms_;
    int variables_;
};

using SymPoly = Poly<PowerSumFamily>;
using MomentPoly = Poly<MomentFamily>;
using AugmentedPoly = Poly<AugmentedFamily>;

template <class Family>
Poly<Family> scale(const Poly<Family>& p, const CoefRat& c) {
    return p.scale(c);
}

template <class Family>
std::map<int, Poly<Family>> weighted_degree_check(const Poly<Family>& p) {
    return p.weight_classes();
}

} // namespace umbral

#endif
