#ifndef UMBRAL_EVALUATOR_HPP
#define UMBRAL_EVALUATOR_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "coefficient_field.hpp"
#include "errors.hpp"
#include "sympoly.hpp"

namespace umbral {

/// n observations of v variables, row-major. Scalar is Rational when every
/// datum was exact, double otherwise.
template <class Scalar>
class Sample {
public:
    Sample(std::vector<Scalar> values, int columns) : values_(std::move(values)), columns_(columns) {
        if (columns_ < 1)
            throw DomainError("sample: needs at least one column");
        if (values_.empty())
            throw DomainError("sample: empty sample");
        if (values_.size() % static_cast<std::size_t>(columns_) != 0)
            throw ShapeError("sample: values do not fill whole rows");
    }

    // Univariate sample.
    explicit Sample(std::vector<Scalar> values) : Sample(std::move(values), 1) {}

    static Sample from_rows(const std::vector<std::vector<Scalar>>& rows) {
        if (rows.empty())
            throw DomainError("sample: empty sample");
        std::vector<Scalar> flat;
        const std::size_t v = rows.front().size();
        for (const auto& row : rows) {
            if (row.size() != v)
                throw ShapeError("sample: rows have different lengths");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return Sample(std::move(flat), static_cast<int>(v));
    }

    int rows() const noexcept { return static_cast<int>(values_.size()) / columns_; }
    int columns() const noexcept { return columns_; }
    const Scalar& at(int row, int col) const {
        return values_[static_cast<std::size_t>(row * columns_ + col)];
    }
    const std::vector<Scalar>& values() const noexcept { return values_; }

private:
    std::vector<Scalar> values_;
    int columns_;
};

using SampleData = std::variant<Sample<Rational>, Sample<double>>;

namespace detail {

template <class Scalar>
Scalar ipow(const Scalar& x, int e) {
    Scalar out = 1;
    for (int j = 0; j < e; ++j)
        out *= x;
    return out;
}

// Σ_rows ∏_cols x^{I_c}; rows are accumulated in order.
template <class Scalar>
Scalar power_sum(const Sample<Scalar>& s, const MultiIndex& index) {
    if (index.variables() != s.columns())
        throw ShapeError("power sum: index has " + std::to_string(index.variables()) +
                         " variables but the sample has " + std::to_string(s.columns()) + " columns");
    Scalar total = 0;
    for (int r = 0; r < s.rows(); ++r) {
        Scalar term = 1;
        for (int c = 0; c < s.columns(); ++c)
            term *= ipow(s.at(r, c), index[static_cast<std::size_t>(c)]);
        total += term;
    }
    return total;
}

inline void compositions(int v, int weight, std::vector<int>& current, std::vector<MultiIndex>& out) {
    if (static_cast<int>(current.size()) == v - 1) {
        current.push_back(weight);
        out.emplace_back(current);
        current.pop_back();
        return;
    }
    for (int e = weight; e >= 0; --e) {
        current.push_back(e);
        compositions(v, weight - e, current, out);
        current.pop_back();
    }
}

template <class Scalar>
Scalar from_rational(const Rational& q) {
    if constexpr (std::is_same_v<Scalar, double>)
        return q.get_d();
    else
        return q;
}

} // namespace detail

/// s_I for every multi-index with 1 <= |I| <= max_weight.
template <class Scalar>
std::map<MultiIndex, Scalar> power_sums(const Sample<Scalar>& s, int max_weight) {
    if (max_weight < 1)
        throw DomainError("power_sums: max_weight must be at least 1");
    std::map<MultiIndex, Scalar> out;
    for (int w = 1; w <= max_weight; ++w) {
        std::vector<MultiIndex> indices;
        std::vector<int> current;
        detail::compositions(s.columns(), w, current, indices);
        for (const auto& idx : indices)
            out.emplace(idx, detail::power_sum(s, idx));
    }
    return out;
}

/// Smallest sample size at which no coefficient of `formula` has a pole.
inline long minimum_sample_size(const SymPoly& formula) {
    long minimum = 1;
    for (const auto& [key, c] : formula.terms())
        minimum = std::max(minimum, c.minimum_sample_size());
    return minimum;
}

/// Value of a generated estimator on a sample: n is the row count, s_I the sample power sums.
template <class Scalar>
Scalar evaluate(const SymPoly& formula, const Sample<Scalar>& s) {
    if (formula.variables() != s.columns())
        throw ShapeError("evaluate: formula has " + std::to_string(formula.variables()) +
                         " variables but the sample has " + std::to_string(s.columns()) + " columns");
    const Rational n(s.rows());
    std::map<MultiIndex, Scalar> sums;
    Scalar total = 0;
    for (const auto& [key, c] : formula.terms()) {
        Rational coefficient;
        try {
            coefficient = c.substitute(n);
        } catch (const PoleError&) {
            const long minimum = minimum_sample_size(formula);
            throw PoleError("sample of size " + std::to_string(s.rows()) +
                                " is too small for this estimator; it needs n >= " +
                                std::to_string(minimum),
                            minimum);
        }
        Scalar term = detail::from_rational<Scalar>(coefficient);
        for (const auto& idx : key) {
            auto it = sums.find(idx);
            if (it == sums.end())
                it = sums.emplace(idx, detail::power_sum(s, idx)).first;
            term *= it->second;
        }
        total += term;
    }
    if constexpr (std::is_same_v<Scalar, Rational>)
        total.canonicalize();
    return total;
}

inline std::string format_value(const Rational& q) { return q.get_str(); }

inline std::string format_value(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
    auto begin = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    auto end = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return begin < end ? std::string(begin, end) : std::string();
}

inline bool is_integer_text(const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    return start < s.size() &&
           std::all_of(s.begin() + static_cast<long>(start), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

struct Cell {
    std::optional<Rational> exact;
    std::optional<double> approx;
    bool numeric() const { return exact || approx; }
};

// Integers and p/q stay exact; anything else strtod accepts becomes a double.
inline Cell parse_cell(const std::string& raw) {
    const std::string text = trim(raw);
    Cell cell;
    if (text.empty())
        return cell;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (is_integer_text(text)) {
            cell.exact = Rational(Integer(text[0] == '+' ? text.substr(1) : text));
            return cell;
        }
    } else {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (is_integer_text(num) && is_integer_text(den)) {
            Integer d(den[0] == '+' ? den.substr(1) : den);
            if (d == 0)
                return cell;
            Rational q(Integer(num[0] == '+' ? num.substr(1) : num), d);
            q.canonicalize();
            cell.exact = q;
        }
        return cell;
    }
    char* end = nullptr;
    const double x = std::strtod(text.c_str(), &end);
    if (end == text.c_str() + text.size())
        cell.approx = x;
    return cell;
}

inline std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace detail

/// Parses comma-separated data, one column per variable. A first row with any
/// non-numeric cell is taken as a header.
inline SampleData parse_csv(std::istream& in) {
    std::vector<std::vector<detail::Cell>> rows;
    std::string line;
    int line_no = 0;
    bool first_content = true;
    bool any_approx = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (detail::trim(line).empty())
            continue;
        std::vector<detail::Cell> cells;
        bool all_numeric = true;
        for (const auto& field : detail::split_commas(line)) {
            cells.push_back(detail::parse_cell(field));
            all_numeric = all_numeric && cells.back().numeric();
            any_approx = any_approx || cells.back().approx.has_value();
        }
        const bool header_candidate = first_content;
        first_content = false;
        if (!all_numeric) {
            if (header_candidate) {
                any_approx = false;
                continue; // header
            }
            throw InputError("csv line " + std::to_string(line_no) + ": non-numeric value");
        }
        if (!rows.empty() && cells.size() != rows.front().size())
            throw InputError("csv line " + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " columns, found " +
                             std::to_string(cells.size()));
        rows.push_back(std::move(cells));
    }
    if (rows.empty())
        throw InputError("csv: no data rows");
    const int v = static_cast<int>(rows.front().size());
    if (any_approx) {
        std::vector<double> flat;
        for (const auto& row : rows)
            for (const auto& cell : row)
                flat.push_back(cell.approx ? *cell.approx : cell.exact->get_d());
        return Sample<double>(std::move(flat), v);
    }
    std::vector<Rational> flat;
    for (const auto& row : rows)
        for (const auto& cell : row)
            flat.push_back(*cell.exact);
    return Sample<Rational>(std::move(flat), v);
}

inline SampleData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return parse_csv(in);
}

} // namespace umbral

#endif
