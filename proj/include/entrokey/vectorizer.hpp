#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entrokey/corpus.hpp"
#include "entrokey/detail/csv.hpp"
#include "entrokey/detail/hash.hpp"
#include "entrokey/errors.hpp"
#include "entrokey/feature_selection.hpp"

namespace entrokey {

namespace detail {

struct TransparentStringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

}  // namespace detail

// Dense, gapless token -> dimension mapping; index order is lexicographic
// (byte order, which equals codepoint order for UTF-8).
class Vocabulary {
public:
    Vocabulary() = default;

    // Tokens must be sorted and unique.
    explicit Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
        index_.reserve(tokens_.size());
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            if (i > 0 && !(tokens_[i - 1] < tokens_[i]))
                fail(ErrorCategory::internal, "vocabulary tokens not sorted/unique");
            index_.emplace(tokens_[i], static_cast<std::uint32_t>(i));
        }
    }

    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    std::optional<std::uint32_t> index_of(std::string_view token) const {
        const auto it = index_.find(token);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::uint64_t hash() const { return detail::hash_tokens(tokens_); }

    bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::uint32_t, detail::TransparentStringHash, std::equal_to<>>
        index_;
};

// Sparse count vector; entries sorted by dimension, zero counts absent.
struct DocVector {
    std::string doc_id;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

    std::uint32_t count_at(std::uint32_t dim) const {
        const auto it = std::lower_bound(
            entries.begin(), entries.end(), dim,
            [](const auto& e, std::uint32_t d) { return e.first < d; });
        if (it == entries.end() || it->first != dim) return 0;
        return it->second;
    }

    bool operator==(const DocVector&) const = default;
};

// Sorted, deduplicated union of positive and negative keywords across sets.
inline Vocabulary build_vocabulary(const std::vector<KeywordSet>& keyword_sets) {
    if (keyword_sets.empty()) fail(ErrorCategory::data, "no keyword sets given");
    std::set<std::string> merged;
    for (const KeywordSet& set : keyword_sets) {
        merged.insert(set.positive_keywords.begin(), set.positive_keywords.end());
        merged.insert(set.negative_keywords.begin(), set.negative_keywords.end());
    }
    if (merged.empty())
        fail(ErrorCategory::data, "keyword sets are all empty, vocabulary would be empty");
    return Vocabulary(std::vector<std::string>(merged.begin(), merged.end()));
}

// Counts vocabulary words in doc.tokens; out-of-vocabulary tokens contribute
// nothing.
inline DocVector vectorize(const Document& doc, const Vocabulary& vocab) {
    if (vocab.empty()) fail(ErrorCategory::data, "cannot vectorize against an empty vocabulary");
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const std::string& token : doc.tokens) {
        if (const auto dim = vocab.index_of(token)) ++counts[*dim];
    }
    DocVector vec;
    vec.doc_id = doc.id;
    vec.entries.assign(counts.begin(), counts.end());
    return vec;
}

inline std::vector<DocVector> vectorize_corpus(const Corpus& corpus, const Vocabulary& vocab) {
    std::vector<DocVector> vectors;
    vectors.reserve(corpus.size());
    for (const Document& doc : corpus.documents()) vectors.push_back(vectorize(doc, vocab));
    return vectors;
}

// CSV columns: index,token.
inline void export_vocabulary_csv(const Vocabulary& vocab, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCategory::io, "cannot write vocabulary file " + path.string());
    out << "index,token\n";
    const auto& tokens = vocab.tokens();
    for (std::size_t i = 0; i < tokens.size(); ++i)
        out << i << ',' << detail::csv_escape(tokens[i]) << '\n';
    if (!out) fail(ErrorCategory::io, "failed writing vocabulary file " + path.string());
}

}  // namespace entrokey
