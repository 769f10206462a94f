#include "rsj/scheme.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <vector>

#include "rsj/format.hpp"

namespace rsj {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

double parse_number(std::string_view token, std::string_view value)
{
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw SchemeParseError(std::string(token), "not a number");
    }
    return out;
}

/// key=value arguments following the scheme name.
class Arguments {
  public:
    Arguments(std::string_view scheme_name, const std::vector<std::string_view>& tokens)
        : m_scheme_name(scheme_name)
    {
        for (auto token : tokens) {
            auto eq = token.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw SchemeParseError(std::string(token), "expected key=value");
            }
            auto key = token.substr(0, eq);
            if (m_values.contains(key)) {
                throw SchemeParseError(std::string(token), "duplicate parameter");
            }
            m_values.emplace(key, Entry{token, parse_number(token, token.substr(eq + 1))});
        }
    }

    std::optional<double> take(std::string_view key)
    {
        auto it = m_values.find(key);
        if (it == m_values.end()) {
            return std::nullopt;
        }
        m_last_token = it->second.token;
        double v = it->second.value;
        m_values.erase(it);
        return v;
    }

    double require(std::string_view key)
    {
        auto v = take(key);
        if (!v) {
            throw SchemeParseError(std::string(m_scheme_name),
                                   "missing parameter '" + std::string(key) + "'");
        }
        return *v;
    }

    /// Token of the most recently taken parameter, for error messages.
    [[nodiscard]] std::string last_token() const { return std::string(m_last_token); }

    void finish() const
    {
        if (!m_values.empty()) {
            throw SchemeParseError(std::string(m_values.begin()->second.token),
                                   "unknown parameter for '" + std::string(m_scheme_name) + "'");
        }
    }

  private:
    struct Entry {
        std::string_view token;
        double value;
    };
    std::string_view m_scheme_name;
    std::string_view m_last_token;
    std::map<std::string_view, Entry, std::less<>> m_values;
};

template <class F>
auto checked(const std::string& token, F&& make)
{
    try {
        return make();
    } catch (const InvalidParameter& e) {
        throw SchemeParseError(token, e.what());
    }
}

EstimatorParams params_with_pi(Arguments& args, LogBase base)
{
    auto pi = args.take("pi");
    if (!pi) {
        return EstimatorParams(0.5, 1.0, base);
    }
    return checked(args.last_token(), [&] { return EstimatorParams(*pi, 1.0, base); });
}

LiftFunction parse_lift_function(std::string_view kind, Arguments& args)
{
    if (kind == "const") {
        double lift = args.require("L");
        return checked(args.last_token(), [&] { return LiftFunction::constant(lift); });
    }
    if (kind == "prop") {
        double c = args.require("c");
        return checked(args.last_token(), [&] { return LiftFunction::proportional(c); });
    }
    if (kind == "power") {
        double c = args.require("c");
        std::string c_token = args.last_token();
        double beta = args.require("beta");
        if (!(c > 0.0)) {
            throw SchemeParseError(c_token, "c must be positive");
        }
        return checked(args.last_token(), [&] { return LiftFunction::power(c, beta); });
    }
    if (kind == "scaled") {
        double alpha = args.require("alpha");
        return checked(args.last_token(), [&] { return LiftFunction::scaled_corpus(alpha); });
    }
    throw SchemeParseError(std::string(kind), "unknown lift function kind (expected const, prop, power or scaled)");
}

std::string lift_function_label(const LiftFunction& fn)
{
    switch (fn.kind()) {
    case LiftFunction::Kind::constant:
        return "const,L=" + format_shortest(fn.scale());
    case LiftFunction::Kind::proportional:
        return "prop,c=" + format_shortest(fn.scale());
    case LiftFunction::Kind::power:
        return "power,c=" + format_shortest(fn.scale()) + ",beta=" + format_shortest(fn.exponent());
    case LiftFunction::Kind::scaled_corpus:
        return "scaled,alpha=" + format_shortest(fn.scale());
    }
    return {};
}

}  // namespace

WeightingScheme default_scheme()
{
    return UsualIdf{EstimatorParams()};
}

const EstimatorParams& scheme_params(const WeightingScheme& scheme) noexcept
{
    return std::visit([](const auto& s) -> const EstimatorParams& { return s.params; }, scheme);
}

double scheme_weight(const WeightingScheme& scheme, const TermStats& stats)
{
    return std::visit(
        overloaded{
            [&](const CroftHarper& s) { return weight_ch(stats, s.params); },
            [&](const RobertsonWalker& s) { return weight_rw(stats, s.params); },
            [&](const Lift& s) { return weight_lift(stats, s.params.lift(), s.params.log_base()); },
            [&](const LiftFn& s) { return weight_lift_fn(stats, s.fn, s.params.log_base()); },
            [&](const UsualIdf& s) {
                return weight_lift(stats, static_cast<double>(stats.corpus_size()), s.params.log_base());
            },
        },
        scheme);
}

Probability scheme_estimate(const WeightingScheme& scheme, const TermStats& stats)
{
    return std::visit(
        overloaded{
            [&](const CroftHarper& s) { return estimate_p_ch2(s.params); },
            [&](const RobertsonWalker& s) { return estimate_p_rw(stats, s.params); },
            [&](const Lift& s) { return estimate_p_lift(stats, s.params.lift()); },
            [&](const LiftFn& s) {
                // L(0) may be 0 for the proportional and power kinds; p then collapses to n/N.
                const auto n = static_cast<double>(stats.df());
                const auto total = static_cast<double>(stats.corpus_size());
                return Probability::from_odds(n + s.fn(stats), total - n);
            },
            [&](const UsualIdf&) { return estimate_p_lift(stats, static_cast<double>(stats.corpus_size())); },
        },
        scheme);
}

std::string scheme_label(const WeightingScheme& scheme)
{
    return std::visit(
        overloaded{
            [](const CroftHarper& s) { return "ch(pi=" + format_shortest(s.params.pi()) + ")"; },
            [](const RobertsonWalker& s) { return "rw(pi=" + format_shortest(s.params.pi()) + ")"; },
            [](const Lift& s) { return "lift(L=" + format_shortest(s.params.lift()) + ")"; },
            [](const LiftFn& s) { return "liftfn(" + lift_function_label(s.fn) + ")"; },
            [](const UsualIdf&) { return std::string("usualidf"); },
        },
        scheme);
}

WeightingScheme parse_scheme(std::string_view spec, LogBase base)
{
    std::string normalized(spec);
    // Labels such as "ch(pi=0.5)" are accepted alongside "ch:pi=0.5".
    if (auto open = normalized.find('('); open != std::string::npos && normalized.ends_with(')')) {
        normalized[open] = ':';
        normalized.pop_back();
    }
    std::string_view text = normalized;
    if (text.empty()) {
        throw SchemeParseError(std::string(spec), "empty scheme");
    }

    auto colon = text.find(':');
    std::string_view name = text.substr(0, colon);
    std::vector<std::string_view> tokens;
    if (colon != std::string_view::npos) {
        tokens = split(text.substr(colon + 1), ',');
    }

    if (name == "usualidf") {
        Arguments args(name, tokens);
        args.finish();
        return UsualIdf{EstimatorParams(0.5, 1.0, base)};
    }
    if (name == "ch" || name == "rw") {
        Arguments args(name, tokens);
        auto params = params_with_pi(args, base);
        args.finish();
        if (name == "ch") {
            return CroftHarper{params};
        }
        return RobertsonWalker{params};
    }
    if (name == "lift") {
        Arguments args(name, tokens);
        double lift = args.require("L");
        auto params = checked(args.last_token(), [&] { return EstimatorParams(0.5, lift, base); });
        args.finish();
        return Lift{params};
    }
    if (name == "liftfn") {
        if (tokens.empty() || tokens.front().empty()) {
            throw SchemeParseError(std::string(spec), "liftfn needs a kind (const, prop, power or scaled)");
        }
        std::string_view kind = tokens.front();
        Arguments args(name, {tokens.begin() + 1, tokens.end()});
        auto fn = parse_lift_function(kind, args);
        args.finish();
        return LiftFn{fn, EstimatorParams(0.5, 1.0, base)};
    }
    throw SchemeParseError(std::string(name), "unknown scheme (expected ch, rw, lift, liftfn or usualidf)");
}

LogBase parse_log_base(std::string_view text)
{
    if (text == "e") {
        return LogBase::natural;
    }
    if (text == "2") {
        return LogBase::two;
    }
    if (text == "10") {
        return LogBase::ten;
    }
    throw SchemeParseError(std::string(text), "log base must be one of e, 2, 10");
}

}  // namespace rsj
