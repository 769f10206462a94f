#include "rsj/retrieval.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "rsj/format.hpp"

namespace rsj {

namespace {

struct WeightedTerm {
    std::span<const DocOrdinal> postings;
    double weight;
};

double term_weight(const InvertedIndex& index, const std::string& term, const WeightingScheme& scheme)
{
    try {
        return scheme_weight(scheme, index.term_stats(term));
    } catch (const DegenerateDocFreq& e) {
        throw e.with_term(term);
    }
}

/// Weights of the query terms that occur in the corpus, in query-term order.
std::vector<WeightedTerm> weigh_query(const InvertedIndex& index, const Query& query, const WeightingScheme& scheme)
{
    std::vector<WeightedTerm> weighted;
    for (const auto& term : query.terms) {
        auto list = index.postings(term);
        if (!list.empty()) {
            weighted.push_back({list, term_weight(index, term, scheme)});
        }
    }
    return weighted;
}

bool ranks_before(const RankedEntry& a, const RankedEntry& b)
{
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return a.doc_id < b.doc_id;
}

}  // namespace

Query Query::parse(std::string id, std::string raw_text)
{
    auto terms = tokenize(raw_text);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return Query{std::move(id), std::move(raw_text), std::move(terms)};
}

double score_document(const InvertedIndex& index, DocOrdinal ordinal, const Query& query,
                      const WeightingScheme& scheme)
{
    double score = 0.0;
    for (const auto& term : query.terms) {
        if (index.contains(ordinal, term)) {
            score += term_weight(index, term, scheme);
        }
    }
    return score;
}

RankedList rank(const InvertedIndex& index, const Query& query, const WeightingScheme& scheme, std::size_t k)
{
    if (k == 0) {
        throw InvalidParameter("k must be at least 1");
    }
    RankedList result{query.id, {}};
    auto weighted = weigh_query(index, query, scheme);
    if (weighted.empty()) {
        return result;
    }

    // Terms are added in the same order score_document uses, so sums agree bit for bit.
    std::vector<std::optional<double>> accumulators(index.corpus_size());
    std::vector<DocOrdinal> touched;
    for (const auto& [list, weight] : weighted) {
        for (auto ordinal : list) {
            auto& acc = accumulators[ordinal];
            if (!acc) {
                acc = 0.0;
                touched.push_back(ordinal);
            }
            *acc += weight;
        }
    }

    std::vector<RankedEntry> candidates;
    candidates.reserve(touched.size());
    for (auto ordinal : touched) {
        if (*accumulators[ordinal] > 0.0) {
            candidates.push_back({index.doc_id(ordinal), *accumulators[ordinal], 0});
        }
    }
    auto keep = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                      ranks_before);
    candidates.resize(keep);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        candidates[i].rank = i + 1;
    }
    result.entries = std::move(candidates);
    return result;
}

std::vector<Query> read_queries(std::istream& in, const std::string& source_name)
{
    std::vector<Query> queries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw MalformedInput(source_name, line_no, "expected '<query_id>\\t<query text>'");
        }
        auto id = line.substr(0, tab);
        if (id.find(' ') != std::string::npos) {
            throw MalformedInput(source_name, line_no, "query id contains a space");
        }
        queries.push_back(Query::parse(std::move(id), line.substr(tab + 1)));
    }
    return queries;
}

std::vector<Query> read_queries(const std::filesystem::path& source)
{
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open '" + source.string() + "'");
    }
    return read_queries(in, source.string());
}

void write_run(std::span<const RankedList> ranked, const std::string& run_tag, std::ostream& out)
{
    for (const auto& list : ranked) {
        for (const auto& entry : list.entries) {
            out << list.query_id << " Q0 " << entry.doc_id << ' ' << entry.rank << ' ' << format_fixed6(entry.score)
                << ' ' << run_tag << '\n';
        }
    }
    if (!out) {
        throw IoFailure("failed writing run file");
    }
}

void write_run(std::span<const RankedList> ranked, const std::string& run_tag,
               const std::filesystem::path& destination)
{
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot open '" + destination.string() + "' for writing");
    }
    write_run(ranked, run_tag, out);
    out.flush();
    if (!out) {
        throw IoFailure("failed writing '" + destination.string() + "'");
    }
}

}  // namespace rsj
