#ifndef UMBRAL_COEFFICIENT_FIELD_HPP
#define UMBRAL_COEFFICIENT_FIELD_HPP

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace umbral {

using Integer = mpz_class;
using Rational = mpq_class;

/// Polynomial in the sample size n with arbitrary-precision integer coefficients.
/// coefficients()[j] multiplies n^j; the zero polynomial has no coefficients.
class NPoly {
public:
    NPoly() = default;

    explicit NPoly(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

    NPoly(long constant) { // NOLINT: implicit from integer literals is convenient
        if (constant != 0)
            coeffs_.emplace_back(constant);
    }

    static NPoly constant(const Integer& c) { return NPoly(std::vector<Integer>{c}); }

    // The polynomial n.
    static NPoly variable() { return NPoly(std::vector<Integer>{0, 1}); }

    const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Integer& leading() const { return coeffs_.back(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    Integer coefficient(int power) const {
        if (power < 0 || power > degree())
            return 0;
        return coeffs_[static_cast<std::size_t>(power)];
    }

    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    bool operator==(const NPoly& other) const { return coeffs_ == other.coeffs_; }

    NPoly operator-() const {
        NPoly out = *this;
        for (auto& c : out.coeffs_)
            c = -c;
        return out;
    }

    NPoly& operator+=(const NPoly& other) {
        if (other.coeffs_.size() > coeffs_.size())
            coeffs_.resize(other.coeffs_.size());
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            coeffs_[j] += other.coeffs_[j];
        trim();
        return *this;
    }

    NPoly& operator-=(const NPoly& other) { return *this += -other; }

    friend NPoly operator+(NPoly a, const NPoly& b) { return a += b; }
    friend NPoly operator-(NPoly a, const NPoly& b) { return a -= b; }

    friend NPoly operator*(const NPoly& a, const NPoly& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return NPoly(std::move(out));
    }

    NPoly& operator*=(const NPoly& other) { return *this = *this * other; }

    NPoly scaled(const Integer& c) const {
        NPoly out = *this;
        for (auto& x : out.coeffs_)
            x *= c;
        out.trim();
        return out;
    }

    // Non-negative gcd of the coefficients; 0 for the zero polynomial.
    Integer content() const {
        Integer g = 0;
        for (const auto& c : coeffs_)
            g = gcd(g, c);
        return g;
    }

    NPoly primitive_part() const {
        if (is_zero())
            return {};
        Integer g = content();
        if (leading() < 0)
            g = -g;
        NPoly out = *this;
        for (auto& c : out.coeffs_)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        return out;
    }

    Rational evaluate(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + Rational(*it);
        return acc;
    }

    // Exact quotient by a divisor known to divide *this in Z[n].
    NPoly divexact(const NPoly& divisor) const {
        if (divisor.is_zero())
            throw ArithmeticError("polynomial division by zero");
        if (is_zero())
            return {};
        std::vector<Integer> rem = coeffs_;
        const int dq = degree() - divisor.degree();
        if (dq < 0)
            throw ArithmeticError("polynomial divexact: divisor has larger degree");
        std::vector<Integer> quot(static_cast<std::size_t>(dq) + 1);
        const auto dd = static_cast<std::size_t>(divisor.degree());
        for (int j = dq; j >= 0; --j) {
            Integer& top = rem[static_cast<std::size_t>(j) + dd];
            if (top == 0)
                continue;
            if (!mpz_divisible_p(top.get_mpz_t(), divisor.leading().get_mpz_t()))
                throw ArithmeticError("polynomial divexact: inexact division");
            Integer q;
            mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), divisor.leading().get_mpz_t());
            for (std::size_t t = 0; t <= dd; ++t)
                rem[static_cast<std::size_t>(j) + t] -= q * divisor.coeffs_[t];
            quot[static_cast<std::size_t>(j)] = std::move(q);
        }
        if (std::any_of(rem.begin(), rem.end(), [](const Integer& c) { return c != 0; }))
            throw ArithmeticError("polynomial divexact: non-zero remainder");
        return NPoly(std::move(quot));
    }

    // Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
    static NPoly pseudo_remainder(NPoly a, const NPoly& b) {
        const auto db = b.degree();
        while (!a.is_zero() && a.degree() >= db) {
            const int shift = a.degree() - db;
            const Integer lead_a = a.leading();
            a = a.scaled(b.leading());
            std::vector<Integer> sub(static_cast<std::size_t>(shift), 0);
            for (const auto& c : b.coeffs_)
                sub.push_back(c * lead_a);
            a -= NPoly(std::move(sub));
        }
        return a;
    }

    /// Greatest common divisor in Z[n] with positive leading coefficient.
    friend NPoly gcd(const NPoly& a, const NPoly& b) {
        if (a.is_zero())
            return b.is_zero() ? NPoly{} : b.primitive_part().scaled(b.content());
        if (b.is_zero())
            return a.primitive_part().scaled(a.content());
        const Integer content_gcd = gcd(a.content(), b.content());
        NPoly x = a.primitive_part();
        NPoly y = b.primitive_part();
        if (x.degree() < y.degree())
            std::swap(x, y);
        while (!y.is_zero()) {
            NPoly r = pseudo_remainder(x, y);
            x = std::move(y);
            y = r.primitive_part();
        }
        return x.primitive_part().scaled(content_gcd);
    }

    std::string to_string(const std::string& var = "n") const {
        if (is_zero())
            return "0";
        std::string out;
        for (int j = degree(); j >= 0; --j) {
            const Integer& c = coeffs_[static_cast<std::size_t>(j)];
            if (c == 0)
                continue;
            const bool negative = c < 0;
            const Integer mag = abs(c);
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            if (j == 0) {
                out += mag.get_str();
                continue;
            }
            if (mag != 1)
                out += mag.get_str() + "*";
            out += var;
            if (j > 1)
                out += "^" + std::to_string(j);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

/// The falling factorial (n)_k = n(n-1)...(n-k+1); (n)_0 = 1.
inline NPoly falling_factorial(int k) {
    if (k < 0)
        throw DomainError("falling factorial: k must be non-negative");
    NPoly out = 1;
    for (int j = 0; j < k; ++j)
        out *= NPoly(std::vector<Integer>{-j, 1});
    return out;
}

/// Moments of the compositional inverse of the unity umbra, (-1)^(k-1) (k-1)!.
/// These are the falling-factorial moments (χ)_k of the singleton umbra.
inline Integer chi_falling_moment(int k) {
    if (k < 1)
        throw DomainError("chi falling moment: k must be at least 1");
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k - 1));
    return (k % 2 == 1) ? out : Integer(-out);
}

/// Rational function in n, stored as a reduced fraction of integer polynomials
/// whose denominator has a positive leading coefficient. Canonical, so == is
/// mathematical equality.
class CoefRat {
public:
    CoefRat() : den_(1) {}

    CoefRat(long c) : num_(c), den_(1) {} // NOLINT

    CoefRat(const Integer& c) : num_(NPoly::constant(c)), den_(1) {} // NOLINT

    CoefRat(const Rational& q) // NOLINT
        : num_(NPoly::constant(q.get_num())), den_(NPoly::constant(q.get_den())) {}

    CoefRat(NPoly num) : num_(std::move(num)), den_(1) {} // NOLINT

    CoefRat(NPoly num, NPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw ArithmeticError("coefficient with zero denominator");
        normalize();
    }

    static CoefRat n() { return CoefRat(NPoly::variable()); }

    const NPoly& numerator() const noexcept { return num_; }
    const NPoly& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

    // Value of a constant coefficient.
    std::optional<Rational> constant_value() const {
        if (!is_constant())
            return std::nullopt;
        Rational q(num_.coefficient(0), den_.coefficient(0));
        q.canonicalize();
        return q;
    }

    bool operator==(const CoefRat& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }

    CoefRat operator-() const {
        CoefRat out = *this;
        out.num_ = -out.num_;
        return out;
    }

    friend CoefRat operator+(const CoefRat& a, const CoefRat& b) {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.den_ == b.den_)
            return CoefRat(a.num_ + b.num_, a.den_);
        return CoefRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend CoefRat operator-(const CoefRat& a, const CoefRat& b) { return a + (-b); }

    friend CoefRat operator*(const CoefRat& a, const CoefRat& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        return CoefRat(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend CoefRat operator/(const CoefRat& a, const CoefRat& b) {
        if (b.is_zero())
            throw ArithmeticError("coefficient division by zero");
        return CoefRat(a.num_ * b.den_, a.den_ * b.num_);
    }

    CoefRat& operator+=(const CoefRat& o) { return *this = *this + o; }
    CoefRat& operator-=(const CoefRat& o) { return *this = *this - o; }
    CoefRat& operator*=(const CoefRat& o) { return *this = *this * o; }
    CoefRat& operator/=(const CoefRat& o) { return *this = *this / o; }

    CoefRat inverse() const { return CoefRat(1) / *this; }

    /// Smallest positive integer N such that the denominator has no integer
    /// root >= N; i.e. the coefficient is finite for every sample size n >= N.
    long minimum_sample_size() const { return minimum_nonvanishing(den_); }

    // Exact value at n = n_value; throws PoleError where the denominator vanishes.
    Rational substitute(const Rational& n_value) const {
        const Rational d = den_.evaluate(n_value);
        if (d == 0)
            throw PoleError("coefficient " + to_string() + " has a pole at n = " + n_value.get_str(),
                            minimum_sample_size());
        Rational out = num_.evaluate(n_value) / d;
        out.canonicalize();
        return out;
    }

    std::string to_string() const {
        if (den_.is_one())
            return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const CoefRat& c) { return os << c.to_string(); }

    static long minimum_nonvanishing(const NPoly& p) {
        if (p.is_constant())
            return 1;
        // Integer roots are bounded by the Cauchy bound 1 + max |a_j / a_lead|.
        Rational bound = 0;
        for (int j = 0; j < p.degree(); ++j) {
            Rational ratio(abs(p.coefficient(j)), abs(p.leading()));
            ratio.canonicalize();
            if (ratio > bound)
                bound = ratio;
        }
        Integer limit = Integer(bound.get_num() / bound.get_den()) + 1;
        for (Integer x = limit; x >= 1; --x)
            if (p.evaluate(Rational(x)) == 0)
                return x.get_si() + 1;
        return 1;
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = NPoly(1);
            return;
        }
        if (!den_.is_one()) {
            const NPoly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = num_.divexact(g);
                den_ = den_.divexact(g);
            }
        }
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    NPoly num_;
    NPoly den_;
};

} // namespace umbral

#endif
