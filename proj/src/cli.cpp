#include "rsj/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <vector>

#include "CLI11.hpp"
#include "rsj/analysis.hpp"
#include "rsj/retrieval.hpp"
#include "rsj/verify.hpp"

namespace rsj::cli {

namespace {

/// Writes through `write` to `path`, or to `out` when path is "-".
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write)
{
    if (path == "-") {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoFailure("cannot open '" + path + "' for writing");
    }
    write(file);
    file.flush();
    if (!file) {
        throw IoFailure("failed writing '" + path + "'");
    }
}

struct CommonOptions {
    std::string log_base = "e";

    [[nodiscard]] LogBase base() const { return parse_log_base(log_base); }
};

void add_log_base(CLI::App* cmd, CommonOptions& common)
{
    cmd->add_option("--log-base", common.log_base, "Logarithm base: e, 2 or 10")->envname("RSJ_LOG_BASE");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Binary-independence term weighting and ranked retrieval", "rsj"};
    app.require_subcommand(1);

    CommonOptions common;

    std::string corpus_path;
    std::string index_path;
    std::string output_path;
    std::string queries_path;
    std::string scheme_text = "usualidf";
    std::vector<std::string> scheme_texts;
    std::vector<std::string> filter_terms;
    std::optional<std::string> run_tag;
    std::size_t k = 10;
    std::uint64_t curve_n = 0;
    std::size_t curve_points = 101;
    VerifyGrid grid;
    std::string mutation;

    auto* index_cmd = app.add_subcommand("index", "Build an index from a .tsv or .jsonl corpus");
    index_cmd->add_option("input", corpus_path, "Corpus file")->required();
    index_cmd->add_option("output", output_path, "Index file to write ('-' for stdout)")->required();

    auto* query_cmd = app.add_subcommand("query", "Rank documents for each query and write a TREC run file");
    query_cmd->add_option("index", index_path, "Index file")->required();
    query_cmd->add_option("queries", queries_path, "Queries, one '<id>\\t<text>' per line")->required();
    query_cmd->add_option("output", output_path, "Run file to write ('-' for stdout)")->required();
    query_cmd->add_option("--scheme", scheme_text, "Weighting scheme, e.g. usualidf, lift:L=100, ch:pi=0.5")
        ->capture_default_str();
    query_cmd->add_option("-k", k, "Documents per query")->capture_default_str()->check(CLI::PositiveNumber);
    query_cmd->add_option("--run-tag", run_tag, "Run tag (default: scheme label)");
    add_log_base(query_cmd, common);

    auto* weights_cmd = app.add_subcommand("weights", "Write a CSV of term weights under several schemes");
    weights_cmd->add_option("index", index_path, "Index file")->required();
    weights_cmd->add_option("output", output_path, "CSV file to write ('-' for stdout)")->required();
    weights_cmd->add_option("--scheme", scheme_texts, "Weighting scheme (repeatable; default usualidf)");
    weights_cmd->add_option("--terms", filter_terms, "Only these terms");
    add_log_base(weights_cmd, common);

    auto* curve_cmd = app.add_subcommand("curve", "Write the estimated p over document frequency as CSV");
    curve_cmd->add_option("N", curve_n, "Corpus size")->required()->check(CLI::PositiveNumber);
    curve_cmd->add_option("output", output_path, "CSV file to write ('-' for stdout)")->required();
    curve_cmd->add_option("--scheme", scheme_text, "Weighting scheme")->capture_default_str();
    curve_cmd->add_option("--points", curve_points, "Number of sample points")->capture_default_str();
    add_log_base(curve_cmd, common);

    auto* verify_cmd = app.add_subcommand("verify", "Run the property verification suite");
    verify_cmd->add_option("--max-n", grid.max_exhaustive_n, "Largest N of the exhaustive grid")
        ->capture_default_str()
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000}));
    verify_cmd->add_option("--tuples", grid.random_tuples, "Random identity tuples")->capture_default_str();
    verify_cmd->add_option("--max-random-n", grid.max_random_n, "Largest N of the random tuples")
        ->capture_default_str()
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    verify_cmd->add_option("--corpora", grid.random_corpora, "Random corpora for the retrieval oracle")
        ->capture_default_str();
    verify_cmd->add_option("--seed", grid.seed, "Random seed")->capture_default_str();
    verify_cmd->add_option("--mutation", mutation, "Break one closed form on purpose (lift-log-ratio, ch-flip, rw-drop-pi)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kFailure;
    }

    try {
        if (index_cmd->parsed()) {
            auto index = InvertedIndex::build(read_corpus(corpus_path));
            emit(output_path, out, [&](std::ostream& o) { index.save(o); });
            auto& summary = output_path == "-" ? err : out;
            summary << "indexed N=" << index.corpus_size() << " terms=" << index.vocabulary_size() << '\n';
            return kSuccess;
        }

        if (query_cmd->parsed()) {
            auto scheme = parse_scheme(scheme_text, common.base());
            auto index = load_index(index_path);
            auto queries = read_queries(std::filesystem::path(queries_path));
            std::vector<RankedList> ranked;
            ranked.reserve(queries.size());
            try {
                for (const auto& query : queries) {
                    ranked.push_back(rank(index, query, scheme, k));
                }
            } catch (const DegenerateDocFreq& e) {
                err << "rsj: scheme " << scheme_label(scheme) << " has no finite weight for term '" << e.term()
                    << "' (df=" << e.df() << ", N=" << e.corpus_size() << ")\n";
                return kSchemeDegeneracy;
            }
            const std::string tag = run_tag.value_or(scheme_label(scheme));
            emit(output_path, out, [&](std::ostream& o) { write_run(ranked, tag, o); });
            return kSuccess;
        }

        if (weights_cmd->parsed()) {
            std::vector<WeightingScheme> schemes;
            if (scheme_texts.empty()) {
                scheme_texts.push_back("usualidf");
            }
            for (const auto& text : scheme_texts) {
                schemes.push_back(parse_scheme(text, common.base()));
            }
            auto index = load_index(index_path);
            std::optional<std::span<const std::string>> filter;
            if (!filter_terms.empty()) {
                filter = filter_terms;
            }
            auto table = weight_table(index, schemes, filter);
            emit(output_path, out, [&](std::ostream& o) { write_weight_csv(table, o); });
            return kSuccess;
        }

        if (curve_cmd->parsed()) {
            auto scheme = parse_scheme(scheme_text, common.base());
            auto curve = estimator_curve(curve_n, scheme, curve_range(curve_n, curve_points));
            emit(output_path, out, [&](std::ostream& o) { write_curve_csv(curve, o); });
            return kSuccess;
        }

        if (verify_cmd->parsed()) {
            auto forms = mutation.empty() ? ClosedForms{} : mutated_closed_forms(mutation);
            auto report = verify(grid, forms);
            write_report(report, out);
            return report.passed() ? kSuccess : kFailure;
        }
    } catch (const Error& e) {
        err << "rsj: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        err << "rsj: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

}  // namespace rsj::cli
