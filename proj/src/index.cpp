#include "rsj/index.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace rsj {

namespace {

constexpr std::string_view kMagic = "RSJIDX";
constexpr std::string_view kVersion = "1";

bool has_whitespace(std::string_view s)
{
    return std::any_of(s.begin(), s.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    });
}

void check_doc_id(std::string_view id)
{
    if (id.empty()) {
        throw InvalidDocId("document id must not be empty");
    }
    if (has_whitespace(id)) {
        throw InvalidDocId("document id '" + std::string(id) + "' contains whitespace");
    }
}

template <class T>
std::optional<T> parse_uint(std::string_view text)
{
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

/// Splits on single spaces into at most `max_fields` fields; the last one keeps the remainder.
std::vector<std::string_view> fields(std::string_view line, std::size_t max_fields)
{
    std::vector<std::string_view> out;
    while (out.size() + 1 < max_fields) {
        auto pos = line.find(' ');
        if (pos == std::string_view::npos) {
            break;
        }
        out.push_back(line.substr(0, pos));
        line.remove_prefix(pos + 1);
    }
    out.push_back(line);
    return out;
}

/// Line reader that rejects an unterminated final line.
class LineReader {
  public:
    explicit LineReader(std::istream& in) : m_in(in) {}

    bool next(std::string& line)
    {
        if (!std::getline(m_in, line)) {
            return false;
        }
        ++m_line_no;
        if (m_in.eof()) {
            throw MalformedIndexFile(m_line_no, "truncated line (missing newline)");
        }
        return true;
    }

    [[nodiscard]] std::size_t line_no() const noexcept { return m_line_no; }

  private:
    std::istream& m_in;
    std::size_t m_line_no = 0;
};

}  // namespace

InvertedIndex InvertedIndex::build(std::span<const Document> docs)
{
    if (docs.empty()) {
        throw EmptyCorpus();
    }
    InvertedIndex index;
    index.m_doc_ids.reserve(docs.size());
    for (const auto& doc : docs) {
        check_doc_id(doc.id);
        auto ordinal = static_cast<DocOrdinal>(index.m_doc_ids.size());
        if (!index.m_ordinal_by_id.emplace(doc.id, ordinal).second) {
            throw DuplicateDocId(doc.id);
        }
        index.m_doc_ids.push_back(doc.id);
        for (auto& token : tokenize(doc.text)) {
            auto& list = index.m_postings[std::move(token)];
            // Ordinals arrive in increasing order, so a repeat within one document is always at the back.
            if (list.empty() || list.back() != ordinal) {
                list.push_back(ordinal);
            }
        }
    }
    return index;
}

std::optional<DocOrdinal> InvertedIndex::find_doc(std::string_view doc_id) const
{
    auto it = m_ordinal_by_id.find(doc_id);
    if (it == m_ordinal_by_id.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::span<const DocOrdinal> InvertedIndex::postings(std::string_view term) const
{
    auto it = m_postings.find(term);
    if (it == m_postings.end()) {
        return {};
    }
    return it->second;
}

bool InvertedIndex::contains(DocOrdinal ordinal, std::string_view term) const
{
    auto list = postings(term);
    return std::binary_search(list.begin(), list.end(), ordinal);
}

TermStats InvertedIndex::term_stats(std::string_view term) const
{
    return TermStats(postings(term).size(), corpus_size());
}

void InvertedIndex::save(std::ostream& out) const
{
    out << kMagic << ' ' << kVersion << '\n';
    out << "N " << corpus_size() << '\n';
    for (std::size_t i = 0; i < m_doc_ids.size(); ++i) {
        out << "D " << i << ' ' << m_doc_ids[i] << '\n';
    }
    for (const auto& [term, list] : m_postings) {
        out << "T " << term << ' ' << list.size() << ' ';
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << list[i];
        }
        out << '\n';
    }
}

InvertedIndex InvertedIndex::load(std::istream& in)
{
    LineReader reader(in);
    std::string line;

    if (!reader.next(line)) {
        throw MalformedIndexFile(1, "empty file");
    }
    auto header = fields(line, 2);
    if (header.size() != 2 || header[0] != kMagic) {
        throw MalformedIndexFile(reader.line_no(), "expected '" + std::string(kMagic) + " <version>'");
    }
    if (header[1] != kVersion) {
        throw VersionMismatch(std::string(header[1]));
    }

    if (!reader.next(line)) {
        throw MalformedIndexFile(reader.line_no() + 1, "missing corpus size line");
    }
    auto size_fields = fields(line, 2);
    std::optional<std::uint64_t> corpus_size;
    if (size_fields.size() == 2 && size_fields[0] == "N") {
        corpus_size = parse_uint<std::uint64_t>(size_fields[1]);
    }
    if (!corpus_size || *corpus_size == 0 || *corpus_size > std::numeric_limits<DocOrdinal>::max()) {
        throw MalformedIndexFile(reader.line_no(), "expected 'N <corpus size>' with a positive size");
    }

    InvertedIndex index;
    index.m_doc_ids.reserve(*corpus_size);
    for (std::uint64_t expected = 0; expected < *corpus_size; ++expected) {
        if (!reader.next(line)) {
            throw MalformedIndexFile(reader.line_no() + 1, "expected document line " + std::to_string(expected));
        }
        auto doc = fields(line, 3);
        if (doc.size() != 3 || doc[0] != "D" || parse_uint<std::uint64_t>(doc[1]) != expected) {
            throw MalformedIndexFile(reader.line_no(), "expected 'D " + std::to_string(expected) + " <doc_id>'");
        }
        std::string id(doc[2]);
        if (id.empty() || has_whitespace(id)) {
            throw MalformedIndexFile(reader.line_no(), "invalid document id");
        }
        if (!index.m_ordinal_by_id.emplace(id, static_cast<DocOrdinal>(expected)).second) {
            throw MalformedIndexFile(reader.line_no(), "duplicate document id '" + id + "'");
        }
        index.m_doc_ids.push_back(std::move(id));
    }

    while (reader.next(line)) {
        auto term_fields = fields(line, 4);
        if (term_fields.size() != 4 || term_fields[0] != "T" || term_fields[1].empty()) {
            throw MalformedIndexFile(reader.line_no(), "expected 'T <term> <df> <ordinals>'");
        }
        std::string term(term_fields[1]);
        if (!index.m_postings.empty() && index.m_postings.rbegin()->first >= term) {
            throw MalformedIndexFile(reader.line_no(), "terms out of lexicographic order at '" + term + "'");
        }
        auto df = parse_uint<std::uint64_t>(term_fields[2]);
        if (!df || *df == 0 || *df > *corpus_size) {
            throw MalformedIndexFile(reader.line_no(), "invalid document frequency for '" + term + "'");
        }
        std::vector<DocOrdinal> list;
        list.reserve(*df);
        std::string_view rest = term_fields[3];
        while (true) {
            auto comma = rest.find(',');
            auto ordinal = parse_uint<DocOrdinal>(rest.substr(0, comma));
            if (!ordinal || *ordinal >= *corpus_size || (!list.empty() && *ordinal <= list.back())) {
                throw MalformedIndexFile(reader.line_no(), "invalid posting list for '" + term + "'");
            }
            list.push_back(*ordinal);
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (list.size() != *df) {
            throw MalformedIndexFile(reader.line_no(), "posting count does not match df for '" + term + "'");
        }
        index.m_postings.emplace_hint(index.m_postings.end(), std::move(term), std::move(list));
    }
    if (in.bad()) {
        throw IoFailure("read error while loading index");
    }
    return index;
}

void save_index(const InvertedIndex& index, const std::filesystem::path& destination)
{
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot open '" + destination.string() + "' for writing");
    }
    index.save(out);
    out.flush();
    if (!out) {
        throw IoFailure("failed writing '" + destination.string() + "'");
    }
}

InvertedIndex load_index(const std::filesystem::path& source)
{
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open '" + source.string() + "'");
    }
    return InvertedIndex::load(in);
}

}  // namespace rsj
