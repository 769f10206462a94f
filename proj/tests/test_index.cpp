#include <algorithm>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rsj/index.hpp"

using namespace rsj;

namespace {

using Tokens = std::vector<std::string>;

std::vector<Document> random_corpus(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_vocab)
{
    auto docs_n = std::uniform_int_distribution<std::size_t>(1, max_docs)(rng);
    auto vocab = std::uniform_int_distribution<std::size_t>(1, max_vocab)(rng);
    std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
    std::uniform_int_distribution<std::size_t> len(0, 10);
    std::vector<Document> docs;
    for (std::size_t d = 0; d < docs_n; ++d) {
        std::string text;
        for (std::size_t i = len(rng); i > 0; --i) {
            text += "w" + std::to_string(word(rng)) + (i % 3 == 0 ? ", " : " ");
        }
        docs.push_back({"doc" + std::to_string(d), text});
    }
    return docs;
}

std::string saved(const InvertedIndex& index)
{
    std::ostringstream out;
    index.save(out);
    return out.str();
}

InvertedIndex loaded(const std::string& text)
{
    std::istringstream in(text);
    return InvertedIndex::load(in);
}

}  // namespace

TEST_CASE("tokenize")
{
    CHECK(tokenize("The IDF, revisited!") == Tokens{"the", "idf", "revisited"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("a-b a") == Tokens{"a", "b", "a"});
    CHECK(tokenize("  x1__Y2\tz  ") == Tokens{"x1", "y2", "z"});
    CHECK(tokenize("caf\xc3\xa9 na\xc3\xafve") == Tokens{"caf\xc3\xa9", "na\xc3\xafve"});

    SUBCASE("idempotent on its own output")
    {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> ch(0, 127);
        for (int i = 0; i < 200; ++i) {
            std::string text;
            for (int j = 0; j < 60; ++j) {
                text += static_cast<char>(ch(rng));
            }
            auto tokens = tokenize(text);
            std::string joined;
            for (const auto& t : tokens) {
                joined += t + " ";
            }
            CHECK(tokenize(joined) == tokens);
        }
    }
}

TEST_CASE("build_index")
{
    std::vector<Document> docs = {{"d1", "a b"}, {"d2", "b c"}};
    auto index = InvertedIndex::build(docs);
    CHECK(index.corpus_size() == 2);
    CHECK(index.vocabulary_size() == 3);
    CHECK(index.term_stats("a") == TermStats(1, 2));
    CHECK(index.term_stats("b") == TermStats(2, 2));
    CHECK(index.term_stats("c") == TermStats(1, 2));
    CHECK(index.term_stats("zzz") == TermStats(0, 2));
    CHECK(index.doc_id(1) == "d2");
    CHECK(index.find_doc("d2") == DocOrdinal{1});
    CHECK_FALSE(index.find_doc("d9").has_value());
    CHECK(index.contains(0, "a"));
    CHECK_FALSE(index.contains(1, "a"));

    SUBCASE("repeats within a document count once")
    {
        std::vector<Document> one = {{"d1", "a a a"}};
        auto idx = InvertedIndex::build(one);
        CHECK(idx.term_stats("a") == TermStats(1, 1));
        CHECK(idx.postings("a").size() == 1);
    }

    SUBCASE("term in every document")
    {
        std::vector<Document> many;
        for (int i = 0; i < 100; ++i) {
            many.push_back({"d" + std::to_string(i), "t"});
        }
        auto idx = InvertedIndex::build(many);
        CHECK(idx.term_stats("t") == TermStats(100, 100));
        CHECK(estimate_q_ch1(idx.term_stats("t")).value() == 1.0);
    }

    SUBCASE("errors")
    {
        std::vector<Document> dup = {{"d1", "a"}, {"d1", "b"}};
        CHECK_THROWS_AS(InvertedIndex::build(dup), DuplicateDocId);
        std::vector<Document> spaced = {{"d 1", "a"}};
        CHECK_THROWS_AS(InvertedIndex::build(spaced), InvalidDocId);
        std::vector<Document> unnamed = {{"", "a"}};
        CHECK_THROWS_AS(InvertedIndex::build(unnamed), InvalidDocId);
        CHECK_THROWS_AS(InvertedIndex::build({}), EmptyCorpus);
    }
}

TEST_CASE("index properties on random corpora")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto docs = random_corpus(rng, 40, 15);
        auto index = InvertedIndex::build(docs);

        // df against a brute-force count of distinct documents.
        for (const auto& [term, list] : index.terms()) {
            std::size_t count = 0;
            for (const auto& doc : docs) {
                auto tokens = tokenize(doc.text);
                count += std::find(tokens.begin(), tokens.end(), term) != tokens.end() ? 1 : 0;
            }
            CHECK(list.size() == count);
            CHECK(std::is_sorted(list.begin(), list.end()));
            CHECK(std::adjacent_find(list.begin(), list.end()) == list.end());
            CHECK(list.size() <= index.corpus_size());
            CHECK(list.back() < index.corpus_size());
        }

        auto shuffled = docs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto permuted = InvertedIndex::build(shuffled);
        CHECK(permuted.vocabulary_size() == index.vocabulary_size());
        for (const auto& [term, list] : index.terms()) {
            CHECK(permuted.term_stats(term) == index.term_stats(term));
        }

        CHECK(loaded(saved(index)) == index);
    }
}

TEST_CASE("index file format")
{
    std::vector<Document> docs = {{"d1", "b a"}, {"d2", "b c"}};
    auto index = InvertedIndex::build(docs);
    CHECK(saved(index)
          == "RSJIDX 1\n"
             "N 2\n"
             "D 0 d1\n"
             "D 1 d2\n"
             "T a 1 0\n"
             "T b 2 0,1\n"
             "T c 1 1\n");

    SUBCASE("round trip through a file")
    {
        auto path = std::filesystem::temp_directory_path() / "rsj_test_index.idx";
        save_index(index, path);
        CHECK(load_index(path) == index);
        std::filesystem::remove(path);
        CHECK_THROWS_AS((void)load_index(path), IoFailure);
    }

    SUBCASE("truncation is detected")
    {
        auto text = saved(index);
        for (std::size_t cut = 0; cut < text.size(); ++cut) {
            bool whole_term_lines = cut >= text.find("T a") && text[cut - 1] == '\n';
            if (whole_term_lines) {
                continue;  // a prefix ending on a term-line boundary is itself a valid index
            }
            CHECK_THROWS_AS(loaded(text.substr(0, cut)), MalformedIndexFile);
        }
    }

    SUBCASE("malformed content reports the line")
    {
        auto line_of = [](const std::string& text) -> std::size_t {
            try {
                (void)loaded(text);
            } catch (const MalformedIndexFile& e) {
                return e.line();
            }
            return 0;
        };
        CHECK(line_of("RSJ 1\n") == 1);
        CHECK(line_of("RSJIDX 1\nN x\n") == 2);
        CHECK(line_of("RSJIDX 1\nN 0\n") == 2);
        CHECK(line_of("RSJIDX 1\nN 1\nD 1 d1\n") == 3);
        CHECK(line_of("RSJIDX 1\nN 1\nD 0 d1\nT a 2 0\n") == 4);
        CHECK(line_of("RSJIDX 1\nN 2\nD 0 d1\nD 1 d2\nT a 2 1,0\n") == 5);
        CHECK(line_of("RSJIDX 1\nN 2\nD 0 d1\nD 1 d2\nT a 1 2\n") == 5);
        CHECK(line_of("RSJIDX 1\nN 2\nD 0 d1\nD 1 d2\nT b 1 0\nT a 1 1\n") == 6);
        CHECK(line_of("RSJIDX 1\nN 2\nD 0 d1\nD 1 d1\n") == 4);
        CHECK(line_of("RSJIDX 1\nN 1\nD 0 d1\nT a 1 0,0\n") == 4);
    }

    SUBCASE("unknown version")
    {
        CHECK_THROWS_AS(loaded("RSJIDX v99\nN 1\nD 0 d1\n"), VersionMismatch);
        CHECK_THROWS_AS(loaded("RSJIDX 2\n"), VersionMismatch);
    }
}

TEST_CASE("corpus readers")
{
    std::istringstream tsv("d1\ta b\n\nd2\tb c\r\nd3\t\n");
    auto docs = read_corpus_tsv(tsv);
    REQUIRE(docs.size() == 3);
    CHECK(docs[1].id == "d2");
    CHECK(docs[1].text == "b c");
    CHECK(docs[2].text.empty());

    std::istringstream jsonl(R"({"id": "d1", "text": "a b"})" "\n" R"({"text": "b c", "id": "d2", "extra": 1})" "\n");
    auto json_docs = read_corpus_jsonl(jsonl);
    REQUIRE(json_docs.size() == 2);
    CHECK(json_docs[1].id == "d2");
    CHECK(json_docs[1].text == "b c");

    std::istringstream no_tab("d1 a b\n");
    CHECK_THROWS_AS((void)read_corpus_tsv(no_tab), MalformedInput);
    std::istringstream bad_json("{\"id\": 3, \"text\": \"x\"}\n");
    CHECK_THROWS_AS((void)read_corpus_jsonl(bad_json), MalformedInput);
    std::istringstream not_json("nope\n");
    CHECK_THROWS_AS((void)read_corpus_jsonl(not_json), MalformedInput);

    const std::filesystem::path fixtures = RSJ_FIXTURE_DIR;
    auto from_tsv = InvertedIndex::build(read_corpus(fixtures / "three_docs.tsv"));
    auto from_jsonl = InvertedIndex::build(read_corpus(fixtures / "three_docs.jsonl"));
    CHECK(from_tsv == from_jsonl);
    CHECK_THROWS_AS((void)read_corpus(fixtures / "missing.tsv"), IoFailure);
    CHECK_THROWS_AS((void)read_corpus(fixtures / "three_docs.csv"), MalformedInput);
}
