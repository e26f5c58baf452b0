#pragma once

#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "entrokey/detail/text.hpp"
#include "entrokey/errors.hpp"

namespace entrokey {

struct TopicInfo {
    std::string topic_id;
    std::string display_name;
    std::string description;

    bool operator==(const TopicInfo&) const = default;
};

// Ordered list of topics; ids unique, at least one topic.
class TopicCatalog {
public:
    TopicCatalog() = default;

    explicit TopicCatalog(std::vector<TopicInfo> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) fail(ErrorCategory::data, "topic catalog has no topics");
        for (const TopicInfo& e : entries_) {
            if (e.topic_id.empty()) fail(ErrorCategory::data, "topic catalog entry with empty topic_id");
            if (!ids_.insert(e.topic_id).second)
                fail(ErrorCategory::data, "duplicate topic_id \"" + e.topic_id + "\" in catalog");
        }
    }

    const std::vector<TopicInfo>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(const std::string& topic_id) const { return ids_.count(topic_id) != 0; }

    std::vector<std::string> topic_ids() const {
        std::vector<std::string> ids;
        ids.reserve(entries_.size());
        for (const TopicInfo& e : entries_) ids.push_back(e.topic_id);
        return ids;
    }

    const TopicInfo* find(const std::string& topic_id) const {
        for (const TopicInfo& e : entries_) {
            if (e.topic_id == topic_id) return &e;
        }
        return nullptr;
    }

    bool operator==(const TopicCatalog& other) const { return entries_ == other.entries_; }

private:
    std::vector<TopicInfo> entries_;
    std::unordered_set<std::string> ids_;
};

// One post. `tokens` either comes from the configured tokenizer applied to
// `text`, or is supplied pre-tokenized (then `text` may be empty).
struct Document {
    std::string id;
    std::string text;
    std::vector<std::string> tokens;
    std::set<std::string> labels;

    bool operator==(const Document&) const = default;
};

enum class TokenizerMode { whitespace, pretokenized };

struct TokenizerConfig {
    TokenizerMode mode = TokenizerMode::whitespace;
    bool lowercase = false;
    std::set<std::string> stoplist;
    std::size_t min_token_length = 1;  // in codepoints

    void validate() const {
        if (min_token_length < 1)
            fail(ErrorCategory::config, "min_token_length must be >= 1");
    }
};

// Drops stoplist members and tokens shorter than min_token_length;
// the output is always a subsequence of the input.
inline std::vector<std::string> filter_tokens(const std::vector<std::string>& tokens,
                                              const TokenizerConfig& config) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) {
        if (config.stoplist.count(t) != 0) continue;
        if (config.min_token_length > 1 &&
            detail::codepoint_count(t) < config.min_token_length)
            continue;
        out.push_back(t);
    }
    return out;
}

// Whitespace mode: split on Unicode whitespace, lowercase (ASCII) if
// configured, then drop stoplist members and short tokens. Pretokenized
// mode treats the split pieces as ready-made tokens: no lowercasing,
// stoplist removal only.
inline std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
    config.validate();
    std::vector<std::string> pieces;
    std::string cur;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = detail::next_codepoint(text, pos);
        if (detail::is_unicode_space(cp)) {
            if (!cur.empty()) pieces.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.append(text.substr(start, pos - start));
        }
    }
    if (!cur.empty()) pieces.push_back(std::move(cur));

    if (config.mode == TokenizerMode::pretokenized) {
        std::vector<std::string> out;
        out.reserve(pieces.size());
        for (std::string& t : pieces) {
            if (config.stoplist.count(t) == 0) out.push_back(std::move(t));
        }
        return out;
    }

    if (config.lowercase) {
        for (std::string& t : pieces) t = detail::ascii_lower(t);
    }
    return filter_tokens(pieces, config);
}

// Immutable after construction; ids unique, labels within the catalog.
class Corpus {
public:
    Corpus(std::vector<Document> documents, TopicCatalog catalog)
        : documents_(std::move(documents)), catalog_(std::move(catalog)) {
        std::unordered_set<std::string> seen;
        seen.reserve(documents_.size());
        for (const Document& d : documents_) {
            if (d.id.empty()) fail(ErrorCategory::data, "document with empty id");
            if (!seen.insert(d.id).second)
                fail(ErrorCategory::data, "duplicate document id \"" + d.id + "\"");
            for (const std::string& label : d.labels) {
                if (!catalog_.contains(label))
                    fail(ErrorCategory::data,
                         "document \"" + d.id + "\" has unknown label \"" + label + "\"");
            }
        }
    }

    const std::vector<Document>& documents() const { return documents_; }
    const TopicCatalog& catalog() const { return catalog_; }
    std::size_t size() const { return documents_.size(); }

    bool operator==(const Corpus& other) const {
        return documents_ == other.documents_ && catalog_ == other.catalog_;
    }

private:
    std::vector<Document> documents_;
    TopicCatalog catalog_;
};

}  // namespace entrokey
