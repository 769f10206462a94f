#include <fstream>

#include "json.hpp"
#include "rsj/index.hpp"

namespace rsj {

namespace {

void strip_cr(std::string& line)
{
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

bool is_blank(std::string_view line)
{
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::vector<Document> read_corpus_tsv(std::istream& in, const std::string& source_name)
{
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (is_blank(line)) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw MalformedInput(source_name, line_no, "expected '<doc_id>\\t<text>'");
        }
        if (tab == 0) {
            throw MalformedInput(source_name, line_no, "empty document id");
        }
        docs.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return docs;
}

std::vector<Document> read_corpus_jsonl(std::istream& in, const std::string& source_name)
{
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (is_blank(line)) {
            continue;
        }
        auto obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw MalformedInput(source_name, line_no, "not a JSON object");
        }
        auto id = obj.find("id");
        auto text = obj.find("text");
        if (id == obj.end() || !id->is_string() || text == obj.end() || !text->is_string()) {
            throw MalformedInput(source_name, line_no, "expected string fields \"id\" and \"text\"");
        }
        docs.push_back({id->get<std::string>(), text->get<std::string>()});
    }
    return docs;
}

std::vector<Document> read_corpus(const std::filesystem::path& source)
{
    auto ext = source.extension().string();
    if (ext != ".tsv" && ext != ".jsonl") {
        throw MalformedInput(source.string(), 0, "unsupported corpus extension (expected .tsv or .jsonl)");
    }
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open '" + source.string() + "'");
    }
    auto docs = ext == ".tsv" ? read_corpus_tsv(in, source.string()) : read_corpus_jsonl(in, source.string());
    if (in.bad()) {
        throw IoFailure("read error on '" + source.string() + "'");
    }
    return docs;
}

}  // namespace rsj
