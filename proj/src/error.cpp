#include "rsj/error.hpp"

namespace rsj {

namespace {

std::string degenerate_message(std::uint64_t df, std::uint64_t n, const std::string& term)
{
    std::string msg = "weight undefined at df=" + std::to_string(df) + ", N=" + std::to_string(n);
    if (!term.empty()) {
        msg += " for term '" + term + "'";
    }
    return msg;
}

}  // namespace

DegenerateDocFreq::DegenerateDocFreq(std::uint64_t df, std::uint64_t corpus_size, std::string term)
    : Error(degenerate_message(df, corpus_size, term)),
      m_df(df),
      m_corpus_size(corpus_size),
      m_term(std::move(term))
{}

DegenerateDocFreq DegenerateDocFreq::with_term(std::string term) const
{
    return DegenerateDocFreq(m_df, m_corpus_size, std::move(term));
}

DuplicateDocId::DuplicateDocId(const std::string& doc_id)
    : Error("duplicate document id '" + doc_id + "'")
{}

EmptyCorpus::EmptyCorpus() : Error("corpus contains no documents") {}

MalformedIndexFile::MalformedIndexFile(std::size_t line, const std::string& what)
    : Error("malformed index file at line " + std::to_string(line) + ": " + what), m_line(line)
{}

VersionMismatch::VersionMismatch(const std::string& found)
    : Error("unsupported index format version '" + found + "'")
{}

MalformedInput::MalformedInput(const std::string& source, std::size_t line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what)
{}

SchemeParseError::SchemeParseError(const std::string& token, const std::string& why)
    : Error("invalid scheme token '" + token + "': " + why), m_token(token)
{}

}  // namespace rsj
