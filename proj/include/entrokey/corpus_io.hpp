#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entrokey/corpus.hpp"
#include "entrokey/detail/csv.hpp"
#include "entrokey/errors.hpp"
#include "entrokey/log.hpp"

namespace entrokey {

enum class CorpusFormat { jsonl, csv };

inline CorpusFormat corpus_format_from_string(const std::string& s) {
    if (s == "jsonl") return CorpusFormat::jsonl;
    if (s == "csv") return CorpusFormat::csv;
    fail(ErrorCategory::config, "unknown corpus format \"" + s + "\" (expected jsonl or csv)");
}

namespace detail {

[[noreturn]] inline void record_error(const std::filesystem::path& path, std::size_t line,
                                      const std::string& what) {
    fail(ErrorCategory::parse,
         path.string() + ":" + std::to_string(line) + ": malformed record: " + what);
}

inline Document parse_jsonl_record(const std::filesystem::path& path, std::size_t line_no,
                                   const std::string& line, const TokenizerConfig& tokenizer) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        record_error(path, line_no, e.what());
    }
    if (!j.is_object()) record_error(path, line_no, "record is not a JSON object");
    Document doc;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty())
        record_error(path, line_no, "missing or invalid \"id\"");
    doc.id = j["id"].get<std::string>();
    if (j.contains("text")) {
        if (!j["text"].is_string()) record_error(path, line_no, "\"text\" is not a string");
        doc.text = j["text"].get<std::string>();
    }
    bool has_tokens = false;
    if (j.contains("tokens")) {
        if (!j["tokens"].is_array()) record_error(path, line_no, "\"tokens\" is not an array");
        std::vector<std::string> tokens;
        for (const auto& t : j["tokens"]) {
            if (!t.is_string()) record_error(path, line_no, "\"tokens\" entry is not a string");
            tokens.push_back(t.get<std::string>());
        }
        doc.tokens = filter_tokens(tokens, tokenizer);
        has_tokens = true;
    }
    if (!j.contains("labels") || !j["labels"].is_array())
        record_error(path, line_no, "missing or invalid \"labels\"");
    for (const auto& l : j["labels"]) {
        if (!l.is_string()) record_error(path, line_no, "\"labels\" entry is not a string");
        doc.labels.insert(l.get<std::string>());
    }
    if (!has_tokens) {
        if (tokenizer.mode == TokenizerMode::pretokenized)
            record_error(path, line_no,
                         "pretokenized tokenizer mode requires a \"tokens\" field");
        if (!j.contains("text")) record_error(path, line_no, "record has neither text nor tokens");
        doc.tokens = tokenize(doc.text, tokenizer);
    }
    return doc;
}

inline Document parse_csv_record(const std::filesystem::path& path, std::size_t line_no,
                                 const std::string& line, const TokenizerConfig& tokenizer) {
    std::vector<std::string> fields;
    if (!entrokey::detail::csv_split(line, fields))
        record_error(path, line_no, "unbalanced quotes");
    if (fields.size() != 3)
        record_error(path, line_no,
                     "expected 3 fields (id,text,labels), got " + std::to_string(fields.size()));
    Document doc;
    doc.id = fields[0];
    if (doc.id.empty()) record_error(path, line_no, "empty id");
    doc.text = fields[1];
    if (!fields[2].empty()) {
        std::stringstream ss(fields[2]);
        std::string label;
        while (std::getline(ss, label, ';')) {
            if (!label.empty()) doc.labels.insert(label);
        }
    }
    doc.tokens = tokenize(doc.text, tokenizer);
    return doc;
}

}  // namespace detail

// Reads one record per line; order is preserved. Provided token lists pass
// through filter_tokens, text is tokenized with the given config otherwise.
inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                          const TopicCatalog& catalog, const TokenizerConfig& tokenizer = {}) {
    tokenizer.validate();
    if (format == CorpusFormat::csv && tokenizer.mode == TokenizerMode::pretokenized)
        fail(ErrorCategory::config, "csv corpus files cannot carry pretokenized records");
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::io, "cannot open corpus file " + path.string());

    std::vector<Document> documents;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (format == CorpusFormat::csv && !saw_header) {
            saw_header = true;
            if (line != "id,text,labels")
                detail::record_error(path, line_no, "expected header \"id,text,labels\"");
            continue;
        }
        documents.push_back(format == CorpusFormat::jsonl
                                ? detail::parse_jsonl_record(path, line_no, line, tokenizer)
                                : detail::parse_csv_record(path, line_no, line, tokenizer));
    }
    if (documents.empty())
        fail(ErrorCategory::data, "corpus file " + path.string() + " contains no records");
    log::info("loaded " + std::to_string(documents.size()) + " documents from " + path.string());
    return Corpus(std::move(documents), catalog);
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCategory::io, "cannot write corpus file " + path.string());
    for (const Document& d : corpus.documents()) {
        nlohmann::json j;
        j["id"] = d.id;
        j["text"] = d.text;
        j["tokens"] = d.tokens;
        j["labels"] = d.labels;
        out << j.dump() << '\n';
    }
    if (!out) fail(ErrorCategory::io, "failed writing corpus file " + path.string());
}

inline TopicCatalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::io, "cannot open catalog file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCategory::parse, "catalog file " + path.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("topics") || !j["topics"].is_array())
        fail(ErrorCategory::parse, "catalog file " + path.string() + ": expected {\"topics\": [...]}");
    std::vector<TopicInfo> entries;
    for (const auto& t : j["topics"]) {
        if (!t.is_object() || !t.contains("topic_id") || !t["topic_id"].is_string())
            fail(ErrorCategory::parse, "catalog file " + path.string() + ": topic entry missing topic_id");
        TopicInfo info;
        info.topic_id = t["topic_id"].get<std::string>();
        if (t.contains("display_name") && t["display_name"].is_string())
            info.display_name = t["display_name"].get<std::string>();
        if (t.contains("description") && t["description"].is_string())
            info.description = t["description"].get<std::string>();
        entries.push_back(std::move(info));
    }
    return TopicCatalog(std::move(entries));
}

inline void save_catalog(const TopicCatalog& catalog, const std::filesystem::path& path) {
    nlohmann::json topics = nlohmann::json::array();
    for (const TopicInfo& e : catalog.entries()) {
        topics.push_back({{"topic_id", e.topic_id},
                          {"display_name", e.display_name},
                          {"description", e.description}});
    }
    std::ofstream out(path);
    if (!out) fail(ErrorCategory::io, "cannot write catalog file " + path.string());
    out << nlohmann::json{{"topics", topics}}.dump(2) << '\n';
    if (!out) fail(ErrorCategory::io, "failed writing catalog file " + path.string());
}

}  // namespace entrokey
