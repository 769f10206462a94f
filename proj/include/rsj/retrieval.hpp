#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rsj/index.hpp"
#include "rsj/scheme.hpp"

namespace rsj {

/// A query reduced to its set of distinct normalized terms, kept sorted.
struct Query {
    std::string id;
    std::string raw_text;
    std::vector<std::string> terms;

    [[nodiscard]] static Query parse(std::string id, std::string raw_text);
};

struct RankedEntry {
    std::string doc_id;
    double score;
    std::size_t rank;  // 1-based

    friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

struct RankedList {
    std::string query_id;
    std::vector<RankedEntry> entries;

    friend bool operator==(const RankedList&, const RankedList&) = default;
};

/// Sum of scheme weights over the query terms the document contains. A term
/// with df = 0 matches nothing and is never weighted. Throws DegenerateDocFreq
/// (naming the term) if a matched term has no finite weight under the scheme.
[[nodiscard]] double score_document(const InvertedIndex& index, DocOrdinal ordinal, const Query& query,
                                    const WeightingScheme& scheme);

/// Top-k documents with positive score, ordered by score descending then doc id
/// ascending. Scores are accumulated term-at-a-time over the postings.
[[nodiscard]] RankedList rank(const InvertedIndex& index, const Query& query, const WeightingScheme& scheme,
                              std::size_t k);

/// One `<query_id>\t<text>` per line; blank lines skipped. Throws MalformedInput, IoFailure.
[[nodiscard]] std::vector<Query> read_queries(std::istream& in, const std::string& source_name = "<queries>");
[[nodiscard]] std::vector<Query> read_queries(const std::filesystem::path& source);

/// `<query_id> Q0 <doc_id> <rank> <score> <run_tag>` lines, scores with six decimals.
void write_run(std::span<const RankedList> ranked, const std::string& run_tag, std::ostream& out);
void write_run(std::span<const RankedList> ranked, const std::string& run_tag,
               const std::filesystem::path& destination);

}  // namespace rsj
