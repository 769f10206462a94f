#include "rsj/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rsj/format.hpp"

namespace rsj {

namespace {

std::optional<double> cell(const WeightingScheme& scheme, const TermStats& stats)
{
    if (stats.df() == 0) {
        return std::nullopt;
    }
    try {
        return scheme_weight(scheme, stats);
    } catch (const DegenerateDocFreq&) {
        return std::nullopt;
    }
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

WeightTable weight_table(const InvertedIndex& index, std::span<const WeightingScheme> schemes,
                         std::optional<std::span<const std::string>> terms)
{
    WeightTable table;
    for (const auto& scheme : schemes) {
        table.scheme_labels.push_back(scheme_label(scheme));
    }

    auto add_row = [&](const std::string& term) {
        auto stats = index.term_stats(term);
        WeightRow row{term, stats.df(), stats.corpus_size(), {}};
        row.weights.reserve(schemes.size());
        for (const auto& scheme : schemes) {
            row.weights.push_back(cell(scheme, stats));
        }
        table.rows.push_back(std::move(row));
    };

    if (terms) {
        std::vector<std::string> unique(terms->begin(), terms->end());
        std::sort(unique.begin(), unique.end());
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        for (const auto& term : unique) {
            add_row(term);
        }
    } else {
        for (const auto& [term, list] : index.terms()) {
            add_row(term);
        }
    }

    std::stable_sort(table.rows.begin(), table.rows.end(), [](const WeightRow& a, const WeightRow& b) {
        if (a.df != b.df) {
            return a.df > b.df;
        }
        return a.term < b.term;
    });
    return table;
}

void write_weight_csv(const WeightTable& table, std::ostream& out)
{
    out << "term,df,N";
    for (const auto& label : table.scheme_labels) {
        out << ',' << csv_field(label);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        out << csv_field(row.term) << ',' << row.df << ',' << row.corpus_size;
        for (const auto& w : row.weights) {
            out << ',';
            if (w) {
                out << format_fixed6(*w);
            }
        }
        out << '\n';
    }
}

std::vector<CurvePoint> estimator_curve(std::uint64_t corpus_size, const WeightingScheme& scheme,
                                        std::span<const std::uint64_t> dfs)
{
    std::vector<CurvePoint> curve;
    curve.reserve(dfs.size());
    for (auto df : dfs) {
        TermStats stats(df, corpus_size);
        curve.push_back({df, scheme_estimate(scheme, stats).value()});
    }
    return curve;
}

std::vector<std::uint64_t> curve_range(std::uint64_t corpus_size, std::size_t points)
{
    std::vector<std::uint64_t> dfs;
    if (points < 2 || corpus_size + 1 <= points) {
        dfs.resize(corpus_size + 1);
        for (std::uint64_t n = 0; n <= corpus_size; ++n) {
            dfs[n] = n;
        }
        return dfs;
    }
    const auto steps = static_cast<long double>(points - 1);
    for (std::size_t j = 0; j < points; ++j) {
        auto n = static_cast<std::uint64_t>(std::llround(static_cast<long double>(corpus_size) * j / steps));
        if (dfs.empty() || dfs.back() != n) {
            dfs.push_back(n);
        }
    }
    return dfs;
}

void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out)
{
    out << "n,p_hat\n";
    for (const auto& point : curve) {
        out << point.df << ',' << format_fixed6(point.p_hat) << '\n';
    }
}

}  // namespace rsj
