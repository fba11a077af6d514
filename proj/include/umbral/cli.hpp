#ifndef UMBRAL_CLI_HPP
#define UMBRAL_CLI_HPP

#include <CLI11.hpp>

#include <climits>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "coefficient_field.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "evaluator.hpp"
#include "oracle.hpp"
#include "render.hpp"
#include "sympoly.hpp"
#include "umbral_engine.hpp"

namespace umbral::cli {

enum ExitCode : int {
    kOk = 0,
    kBadSpec = 2,
    kOverCap = 3,
    kPole = 4,
    kInputOutput = 5,
    kVerifyFailed = 1,
};

// Ground-set cap used once --force lifts the defaults.
inline constexpr int kForcedGroundSizeCap = 64;

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text, char sep = ',') {
    std::vector<int> out;
    std::string field;
    std::istringstream is(text);
    while (std::getline(is, field, sep)) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(field, &used);
        } catch (const std::exception&) {
            throw DomainError("malformed order '" + text + "'");
        }
        if (used != field.size())
            throw DomainError("malformed order '" + text + "'");
        out.push_back(value);
    }
    if (out.empty())
        throw DomainError("empty order");
    return out;
}

// "3" is univariate, "2,1" a bivariate multi-index.
inline MultiIndex parse_multi_index(const std::string& text) {
    return MultiIndex(parse_int_list(text));
}

// "1,2" is the univariate list a1, a2; "1,0;0,1" a list of multi-indices.
inline std::vector<MultiIndex> parse_index_list(const std::string& text) {
    std::vector<MultiIndex> out;
    if (text.find(';') == std::string::npos) {
        for (int r : parse_int_list(text))
            out.push_back(MultiIndex::univariate(r));
        return out;
    }
    std::string group;
    std::istringstream is(text);
    while (std::getline(is, group, ';'))
        out.push_back(parse_multi_index(group));
    return out;
}

inline EstimatorSpec parse_spec(const std::string& kind, const std::string& order) {
    if (kind == "kstat") {
        const MultiIndex idx = parse_multi_index(order);
        return {idx.variables() == 1 ? EstimatorKind::k_statistic : EstimatorKind::multivariate_k, {idx}};
    }
    if (kind == "hstat")
        return {EstimatorKind::h_statistic, {parse_multi_index(order)}};
    if (kind == "ustat")
        return {EstimatorKind::u_statistic, parse_index_list(order)};
    if (kind == "cumulant")
        return {EstimatorKind::joint_cumulant, {parse_multi_index(order)}};
    throw DomainError("unknown estimator kind '" + kind + "' (expected kstat, hstat or ustat)");
}

inline Format parse_format(const std::string& f) {
    if (f == "text")
        return Format::text;
    if (f == "latex")
        return Format::latex;
    if (f == "json")
        return Format::json;
    throw DomainError("unknown format '" + f + "'");
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool force = false;

    int ground_cap() const { return force ? kForcedGroundSizeCap : kDefaultGroundSizeCap; }

    // Refuses over-cap orders unless forced; forced runs get a warning on stderr.
    void check_cost(const std::optional<std::string>& warning) const {
        if (!warning)
            return;
        if (!force)
            throw ResourceError(*warning + " (pass --force to generate anyway)");
        err << "warning: " << *warning << "\n";
    }
};

inline void check_univariate_cost(const Context& ctx, int order) {
    if (order > kUnivariateOrderCap)
        ctx.check_cost("order " + std::to_string(order) + " exceeds the default cap of " +
                       std::to_string(kUnivariateOrderCap));
}

inline void cmd_generate(const Context& ctx, const std::string& kind, const std::string& order,
                         Format format) {
    const EstimatorSpec spec = parse_spec(kind, order);
    ctx.check_cost(spec.cost_warning());
    if (spec.kind == EstimatorKind::joint_cumulant) {
        ctx.out << render(cumulant_in_moments(spec.order.front(), ctx.ground_cap()), format) << "\n";
        return;
    }
    ctx.out << render(generate(spec, ctx.ground_cap()), format) << "\n";
}

inline void cmd_convert(const Context& ctx, const std::string& direction, const std::string& order,
                        Format format) {
    if (direction == "e2ps" || direction == "h2ps") {
        const auto values = parse_int_list(order);
        if (values.size() != 1)
            throw DomainError(direction + " takes a single order");
        check_univariate_cost(ctx, values[0]);
        const SymPoly p = direction == "e2ps" ? elementary_in_power_sums(values[0])
                                              : complete_in_power_sums(values[0]);
        ctx.out << render(p, format) << "\n";
        return;
    }
    const auto indices = parse_index_list(order);
    int weight = 0;
    for (const auto& idx : indices)
        weight += idx.total_degree();
    check_univariate_cost(ctx, weight);
    if (direction == "aug2ps") {
        ctx.out << render(augmented_to_power_sums(make_key(indices), ctx.ground_cap()), format) << "\n";
    } else if (direction == "m2ps") {
        std::vector<int> parts;
        for (const auto& idx : indices) {
            if (idx.variables() != 1)
                throw DomainError("m2ps takes an integer partition");
            parts.push_back(idx[0]);
        }
        ctx.out << render(monomial_in_augmented(IntPartition(parts)).to_power_sums(ctx.ground_cap()), format)
                << "\n";
    } else if (direction == "ps2aug") {
        std::vector<UmbralMonomial> ms;
        for (const auto& idx : indices)
            ms.emplace_back(idx);
        ctx.out << render(power_product_to_augmented(ms, ctx.ground_cap()), format) << "\n";
    } else {
        throw DomainError("unknown conversion '" + direction + "' (expected aug2ps, ps2aug, e2ps, h2ps, m2ps)");
    }
}

inline void cmd_eval(const Context& ctx, const std::string& kind, const std::string& order,
                     const std::string& data_path) {
    const EstimatorSpec spec = parse_spec(kind, order);
    ctx.check_cost(spec.cost_warning());
    const SymPoly formula = generate(spec, ctx.ground_cap());
    const SampleData data = read_csv(data_path);
    std::visit([&](const auto& sample) { ctx.out << format_value(evaluate(formula, sample)) << "\n"; },
               data);
}

inline int cmd_verify(const Context& ctx, const std::string& kind, const std::string& order,
                      const std::string& n_list) {
    const EstimatorSpec spec = parse_spec(kind, order);
    ctx.check_cost(spec.cost_warning());
    const SymPoly formula = generate(spec, ctx.ground_cap());
    const MomentPoly target = estimand(spec, ctx.ground_cap());
    oracle::Limits limits;
    if (ctx.force)
        limits = {INT_MAX, INT_MAX};
    bool all_pass = true;
    for (int n : parse_int_list(n_list)) {
        const MomentPoly expected = oracle::expectation(formula, n, limits);
        if (expected == target) {
            ctx.out << "n=" << n << " PASS\n";
        } else {
            all_pass = false;
            ctx.out << "n=" << n << " FAIL\n"
                    << "  E[estimator] = " << render_text(expected) << "\n"
                    << "  target       = " << render_text(target) << "\n";
        }
    }
    return all_pass ? kOk : kVerifyFailed;
}

} // namespace detail

/// Runs one command line (args exclude the program name). Exit codes: 0 ok,
/// 1 verification failed, 2 bad spec, 3 over cap, 4 pole, 5 I/O.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Unbiased estimators of cumulants and moment products in power sums", "umbral"};
    app.require_subcommand(1);

    std::string format_name = "text";
    bool force = false;
    std::string kind, order, direction, data_path, n_list;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "text, latex or json")
            ->check(CLI::IsMember({"text", "latex", "json"}));
        sub->add_flag("--force", force, "allow orders beyond the default caps");
    };

    std::vector<std::pair<std::string, CLI::App*>> generators;
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"kstat", "k-statistic; ORDER is r or a multi-index p,q,..."},
             {"hstat", "h-statistic of order r"},
             {"ustat", "U-statistic of a moment product; ORDER is 1,1 or 1,0;0,1"},
             {"cumulant", "cumulant (or joint cumulant) in moments"}}) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("order", order, "order")->required();
        add_common(sub);
        generators.emplace_back(name, sub);
    }

    auto* convert = app.add_subcommand("convert", "symmetric-function basis conversion");
    convert->add_option("direction", direction, "aug2ps, ps2aug, e2ps, h2ps or m2ps")->required();
    convert->add_option("order", order, "partition or order")->required();
    add_common(convert);

    auto* eval = app.add_subcommand("eval", "evaluate an estimator on CSV data");
    eval->add_option("kind", kind, "kstat, hstat or ustat")->required();
    eval->add_option("order", order, "order")->required();
    eval->add_option("--data", data_path, "CSV file, one column per variable")->required();
    add_common(eval);

    auto* verify = app.add_subcommand("verify", "check unbiasedness with the brute-force oracle");
    verify->add_option("kind", kind, "kstat, hstat or ustat")->required();
    verify->add_option("order", order, "order")->required();
    verify->add_option("--n", n_list, "comma-separated sample sizes")->required();
    add_common(verify);

    std::vector<const char*> argv{"umbral"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadSpec;
    }

    detail::Context ctx{out, err, force};
    try {
        const Format format = detail::parse_format(format_name);
        for (const auto& [name, sub] : generators)
            if (sub->parsed()) {
                detail::cmd_generate(ctx, name, order, format);
                return kOk;
            }
        if (convert->parsed()) {
            detail::cmd_convert(ctx, direction, order, format);
            return kOk;
        }
        if (eval->parsed()) {
            detail::cmd_eval(ctx, kind, order, data_path);
            return kOk;
        }
        if (verify->parsed())
            return detail::cmd_verify(ctx, kind, order, n_list);
    } catch (const PoleError& e) {
        err << "error: " << e.what();
        if (e.minimum_n() > 0)
            err << " (minimum n = " << e.minimum_n() << ")";
        err << "\n";
        return kPole;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return kOverCap;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputOutput;
    } catch (const std::logic_error& e) { // DomainError, ShapeError
        err << "error: " << e.what() << "\n";
        return kBadSpec;
    } catch (const ArithmeticError& e) {
        err << "error: " << e.what() << "\n";
        return kBadSpec;
    }
    return kBadSpec;
}

} // namespace umbral::cli

#endif
