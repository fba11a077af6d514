#ifndef UMBRAL_RENDER_HPP
#define UMBRAL_RENDER_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "coefficient_field.hpp"
#include "errors.hpp"
#include "sympoly.hpp"

namespace umbral {

enum class Format { text, latex, json };

namespace detail {

inline NPoly poly_lcm(const NPoly& a, const NPoly& b) {
    NPoly l = (a * b).divexact(gcd(a, b));
    return l.leading() < 0 ? -l : l;
}

// Index text for one symbol: "2" for univariate s2, "(2,1)" otherwise.
inline std::string index_text(const MultiIndex& idx) {
    if (idx.variables() == 1)
        return std::to_string(idx[0]);
    return "(" + idx.to_string() + ")";
}

// Groups a sorted key into (factor, power) runs.
inline std::vector<std::pair<MultiIndex, int>> factor_runs(const TermKey& key) {
    std::vector<std::pair<MultiIndex, int>> runs;
    for (const auto& idx : key) {
        if (!runs.empty() && runs.back().first == idx)
            ++runs.back().second;
        else
            runs.emplace_back(idx, 1);
    }
    return runs;
}

template <class Family>
std::vector<std::string> symbol_factors_text(const TermKey& key) {
    std::vector<std::string> out;
    if constexpr (Family::multiplicative) {
        for (const auto& [idx, power] : factor_runs(key)) {
            std::string f = std::string(Family::symbol) + index_text(idx);
            if (power > 1)
                f += "^" + std::to_string(power);
            out.push_back(std::move(f));
        }
    } else if (!key.empty()) {
        // parts read largest first, as in a partition
        std::string f = std::string(Family::symbol) + "(";
        for (auto it = key.rbegin(); it != key.rend(); ++it) {
            if (it != key.rbegin())
                f += ",";
            f += it->variables() == 1 ? std::to_string((*it)[0]) : "(" + it->to_string() + ")";
        }
        out.push_back(f + ")");
    }
    return out;
}

inline std::string latex_symbol(const char* symbol) {
    const std::string s(symbol);
    return s == "m~" ? std::string("\\tilde{m}") : s;
}

template <class Family>
std::vector<std::string> symbol_factors_latex(const TermKey& key) {
    std::vector<std::string> out;
    if constexpr (Family::multiplicative) {
        for (const auto& [idx, power] : factor_runs(key)) {
            std::string f = latex_symbol(Family::symbol) + "_{" + idx.to_string() + "}";
            if (power > 1)
                f += "^{" + std::to_string(power) + "}";
            out.push_back(std::move(f));
        }
    } else if (!key.empty()) {
        std::string f = latex_symbol(Family::symbol) + "_{";
        if (key.front().variables() == 1) {
            f += "(";
            for (auto it = key.rbegin(); it != key.rend(); ++it)
                f += (it != key.rbegin() ? "," : "") + std::to_string((*it)[0]);
            f += ")";
        } else {
            for (auto it = key.rbegin(); it != key.rend(); ++it)
                f += "(" + it->to_string() + ")";
        }
        out.push_back(f + "}");
    }
    return out;
}

inline std::string npoly_latex(const NPoly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    for (int j = p.degree(); j >= 0; --j) {
        const Integer& c = p.coefficients()[static_cast<std::size_t>(j)];
        if (c == 0)
            continue;
        const Integer mag = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (j == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1)
            out += mag.get_str() + " ";
        out += "n";
        if (j > 1)
            out += "^{" + std::to_string(j) + "}";
    }
    return out;
}

/// A polynomial put over one common denominator in n; the numerator's terms in
/// display order (higher n-degree first, then key order).
template <class Family>
struct CommonForm {
    NPoly denominator;
    std::vector<std::pair<TermKey, NPoly>> numerator;
};

template <class Family>
CommonForm<Family> common_form(const Poly<Family>& p) {
    CommonForm<Family> form{NPoly(1), {}};
    for (const auto& [key, c] : p.terms())
        form.denominator = poly_lcm(form.denominator, c.denominator());
    for (const auto& [key, c] : p.terms())
        form.numerator.emplace_back(key, c.numerator() * form.denominator.divexact(c.denominator()));
    std::stable_sort(form.numerator.begin(), form.numerator.end(),
                     [](const auto& a, const auto& b) { return a.second.degree() > b.second.degree(); });
    return form;
}

// c·(n)_k when the denominator has that shape, with c its leading coefficient.
inline std::optional<std::pair<Integer, int>> as_falling_factorial(const NPoly& d) {
    if (d.degree() < 1)
        return std::nullopt;
    const int k = d.degree();
    if (falling_factorial(k).scaled(d.leading()) == d)
        return std::make_pair(d.leading(), k);
    return std::nullopt;
}

inline bool is_monomial(const NPoly& p) {
    return std::count_if(p.coefficients().begin(), p.coefficients().end(),
                         [](const Integer& c) { return c != 0; }) == 1;
}

} // namespace detail

template <class Family>
std::string render_text(const Poly<Family>& p) {
    if (p.is_zero())
        return "0";
    const auto form = detail::common_form(p);
    std::string num;
    for (const auto& [key, coef] : form.numerator) {
        const auto symbols = detail::symbol_factors_text<Family>(key);
        std::vector<std::string> parts;
        bool negative = false;
        if (detail::is_monomial(coef)) {
            const int d = coef.degree();
            const Integer c = coef.leading();
            negative = c < 0;
            const Integer mag = abs(c);
            if (mag != 1 || (d == 0 && symbols.empty()))
                parts.push_back(mag.get_str());
            if (d == 1)
                parts.emplace_back("n");
            else if (d > 1)
                parts.push_back("n^" + std::to_string(d));
        } else {
            parts.push_back("(" + coef.to_string() + ")");
        }
        parts.insert(parts.end(), symbols.begin(), symbols.end());
        std::string term;
        for (std::size_t j = 0; j < parts.size(); ++j)
            term += (j ? "*" : "") + parts[j];
        if (num.empty())
            num = (negative ? "-" : "") + term;
        else
            num += (negative ? " - " : " + ") + term;
    }
    const NPoly& den = form.denominator;
    if (den.is_one())
        return num;
    const bool wrap_num = form.numerator.size() > 1;
    const std::string num_part = wrap_num ? "(" + num + ")" : num;
    if (den.is_constant())
        return num_part + "/" + den.leading().get_str();
    std::string den_text;
    if (auto ff = detail::as_falling_factorial(den)) {
        std::vector<std::string> factors;
        if (ff->first != 1)
            factors.push_back(ff->first.get_str());
        factors.emplace_back("n");
        for (int j = 1; j < ff->second; ++j)
            factors.push_back("(n - " + std::to_string(j) + ")");
        for (std::size_t j = 0; j < factors.size(); ++j)
            den_text += (j ? "*" : "") + factors[j];
        if (factors.size() > 1)
            den_text = "(" + den_text + ")";
    } else {
        den_text = detail::is_monomial(den) && den.leading() == 1 ? den.to_string()
                                                                   : "(" + den.to_string() + ")";
    }
    return num_part + " / " + den_text;
}

/// LaTeX form; denominators of the shape c·(n)_k print as c\,(n)_{k}.
template <class Family>
std::string render_latex(const Poly<Family>& p) {
    if (p.is_zero())
        return "0";
    const auto form = detail::common_form(p);
    std::string num;
    for (const auto& [key, coef] : form.numerator) {
        const auto symbols = detail::symbol_factors_latex<Family>(key);
        std::string term;
        bool negative = false;
        if (detail::is_monomial(coef)) {
            const int d = coef.degree();
            negative = coef.leading() < 0;
            const Integer mag = abs(coef.leading());
            if (mag != 1 || (d == 0 && symbols.empty()))
                term = mag.get_str();
            if (d >= 1) {
                term += (term.empty() ? "" : " ") + std::string("n");
                if (d > 1)
                    term += "^{" + std::to_string(d) + "}";
            }
        } else {
            term = "\\left(" + detail::npoly_latex(coef) + "\\right)";
        }
        for (const auto& s : symbols)
            term += (term.empty() ? "" : " ") + s;
        if (num.empty())
            num = (negative ? "-" : "") + term;
        else
            num += (negative ? " - " : " + ") + term;
    }
    const NPoly& den = form.denominator;
    if (den.is_one())
        return num;
    std::string den_text;
    if (auto ff = detail::as_falling_factorial(den)) {
        den_text = ff->first == 1 ? "" : ff->first.get_str() + " \\, ";
        den_text += ff->second == 1 ? "n" : "(n)_{" + std::to_string(ff->second) + "}";
    } else {
        den_text = detail::npoly_latex(den);
    }
    return "\\frac{" + num + "}{" + den_text + "}";
}

namespace detail {

inline nlohmann::json npoly_to_json(const NPoly& p) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p.coefficients())
        arr.push_back(c.get_str());
    return arr;
}

inline NPoly npoly_from_json(const nlohmann::json& arr) {
    if (!arr.is_array())
        throw InputError("json: coefficient must be an array");
    std::vector<Integer> coeffs;
    for (const auto& c : arr) {
        Integer value;
        if (c.is_string()) {
            if (value.set_str(c.get<std::string>(), 10) != 0)
                throw InputError("json: bad integer '" + c.get<std::string>() + "'");
        } else if (c.is_number_integer()) {
            value = Integer(c.get<long>());
        } else {
            throw InputError("json: coefficient entries must be decimal strings");
        }
        coeffs.push_back(value);
    }
    return NPoly(std::move(coeffs));
}

} // namespace detail

/// {"variables": v, "terms": [{"coeff": {"num": [...], "den": [...]},
///   "monomial": [{"index": [...], "power": p}]}]}
/// Coefficient arrays are little-endian in powers of n, entries decimal strings.
template <class Family>
nlohmann::json to_json(const Poly<Family>& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, c] : p.terms()) {
        nlohmann::json monomial = nlohmann::json::array();
        for (const auto& [idx, power] : detail::factor_runs(key))
            monomial.push_back({{"index", idx.exponents()}, {"power", power}});
        terms.push_back({{"coeff",
                          {{"num", detail::npoly_to_json(c.numerator())},
                           {"den", detail::npoly_to_json(c.denominator())}}},
                         {"monomial", std::move(monomial)}});
    }
    return {{"variables", p.variables()}, {"terms", std::move(terms)}};
}

template <class Family>
Poly<Family> from_json(const nlohmann::json& j) {
    try {
        Poly<Family> out(j.at("variables").get<int>());
        for (const auto& term : j.at("terms")) {
            const auto& coeff = term.at("coeff");
            const NPoly den = detail::npoly_from_json(coeff.at("den"));
            if (den.is_zero())
                throw InputError("json: zero denominator");
            CoefRat c(detail::npoly_from_json(coeff.at("num")), den);
            std::vector<MultiIndex> factors;
            for (const auto& factor : term.at("monomial")) {
                const MultiIndex idx(factor.at("index").get<std::vector<int>>());
                const int power = factor.at("power").get<int>();
                if (power < 1)
                    throw InputError("json: powers must be positive");
                factors.insert(factors.end(), static_cast<std::size_t>(power), idx);
            }
            out.add_term(std::move(factors), c);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("json: ") + e.what());
    } catch (const DomainError& e) {
        throw InputError(std::string("json: ") + e.what());
    } catch (const ShapeError& e) {
        throw InputError(std::string("json: ") + e.what());
    }
}

template <class Family>
std::string render(const Poly<Family>& p, Format format) {
    switch (format) {
    case Format::text: return render_text(p);
    case Format::latex: return render_latex(p);
    case Format::json: return to_json(p).dump();
    }
    return {};
}

} // namespace umbral

#endif
