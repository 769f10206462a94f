#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsj {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
  public:
    using Error::Error;
};

/// A probability at 0 or 1 where the log-odds are infinite.
class DegenerateProbability : public Error {
  public:
    using Error::Error;
};

/// A closed-form weight requested at a document frequency where it diverges.
class DegenerateDocFreq : public Error {
  public:
    DegenerateDocFreq(std::uint64_t df, std::uint64_t corpus_size, std::string term = {});

    [[nodiscard]] std::uint64_t df() const noexcept { return m_df; }
    [[nodiscard]] std::uint64_t corpus_size() const noexcept { return m_corpus_size; }
    /// Empty unless raised from the retrieval layer.
    [[nodiscard]] const std::string& term() const noexcept { return m_term; }

    [[nodiscard]] DegenerateDocFreq with_term(std::string term) const;

  private:
    std::uint64_t m_df;
    std::uint64_t m_corpus_size;
    std::string m_term;
};

class NonpositiveLift : public Error {
  public:
    using Error::Error;
};

class DuplicateDocId : public Error {
  public:
    explicit DuplicateDocId(const std::string& doc_id);
};

class InvalidDocId : public Error {
  public:
    using Error::Error;
};

class EmptyCorpus : public Error {
  public:
    EmptyCorpus();
};

class MalformedIndexFile : public Error {
  public:
    MalformedIndexFile(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return m_line; }

  private:
    std::size_t m_line;
};

class VersionMismatch : public Error {
  public:
    explicit VersionMismatch(const std::string& found);
};

/// Bad corpus or query input file.
class MalformedInput : public Error {
  public:
    MalformedInput(const std::string& source, std::size_t line, const std::string& what);
};

class IoFailure : public Error {
  public:
    using Error::Error;
};

class SchemeParseError : public Error {
  public:
    SchemeParseError(const std::string& token, const std::string& why);
    [[nodiscard]] const std::string& token() const noexcept { return m_token; }

  private:
    std::string m_token;
};

}  // namespace rsj
