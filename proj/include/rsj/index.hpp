#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsj/weighting.hpp"

namespace rsj {

struct Document {
    std::string id;
    std::string text;
};

/// Lowercases ASCII letters and splits on every ASCII character that is not a
/// letter or digit. Bytes of multi-byte UTF-8 sequences are kept as token
/// characters. Order and multiplicity are preserved.
[[nodiscard]] std::vector<std::string> tokenize(std::string_view text);

using DocOrdinal = std::uint32_t;

/// Term -> sorted document ordinals, with the ordinal -> external id table.
/// Immutable once built; safe to share between reader threads.
class InvertedIndex {
  public:
    using PostingMap = std::map<std::string, std::vector<DocOrdinal>, std::less<>>;

    /// Ordinals follow input order. Throws DuplicateDocId, InvalidDocId, EmptyCorpus.
    static InvertedIndex build(std::span<const Document> docs);

    [[nodiscard]] std::uint64_t corpus_size() const noexcept { return m_doc_ids.size(); }
    [[nodiscard]] std::size_t vocabulary_size() const noexcept { return m_postings.size(); }

    [[nodiscard]] const std::string& doc_id(DocOrdinal ordinal) const { return m_doc_ids.at(ordinal); }
    [[nodiscard]] const std::vector<std::string>& doc_ids() const noexcept { return m_doc_ids; }
    [[nodiscard]] std::optional<DocOrdinal> find_doc(std::string_view doc_id) const;

    /// Empty for unseen terms.
    [[nodiscard]] std::span<const DocOrdinal> postings(std::string_view term) const;
    [[nodiscard]] bool contains(DocOrdinal ordinal, std::string_view term) const;

    /// (df, N); df = 0 for unseen terms.
    [[nodiscard]] TermStats term_stats(std::string_view term) const;

    /// Terms in lexicographic order.
    [[nodiscard]] const PostingMap& terms() const noexcept { return m_postings; }

    friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

    void save(std::ostream& out) const;
    /// Throws MalformedIndexFile (with line number) or VersionMismatch.
    static InvertedIndex load(std::istream& in);

  private:
    std::vector<std::string> m_doc_ids;
    std::map<std::string, DocOrdinal, std::less<>> m_ordinal_by_id;
    PostingMap m_postings;
};

void save_index(const InvertedIndex& index, const std::filesystem::path& destination);
[[nodiscard]] InvertedIndex load_index(const std::filesystem::path& source);

/// Reads `<doc_id>\t<text>` lines (.tsv) or {"id":..,"text":..} objects (.jsonl).
/// Blank lines are skipped. Throws MalformedInput or IoFailure.
[[nodiscard]] std::vector<Document> read_corpus(const std::filesystem::path& source);
[[nodiscard]] std::vector<Document> read_corpus_tsv(std::istream& in, const std::string& source_name = "<tsv>");
[[nodiscard]] std::vector<Document> read_corpus_jsonl(std::istream& in, const std::string& source_name = "<jsonl>");

}  // namespace rsj
