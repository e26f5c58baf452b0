#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "entrokey/corpus.hpp"
#include "entrokey/detail/csv.hpp"
#include "entrokey/errors.hpp"

namespace entrokey {

// Per-word occurrence counts over the positive/negative document partition
// of one topic. Keys are corpus document indices; only nonzero counts are
// stored, and each index belongs to exactly one partition.
struct WordStats {
    std::string word;
    std::map<std::size_t, std::uint32_t> pos_counts;
    std::map<std::size_t, std::uint32_t> neg_counts;
    std::uint64_t pos_total = 0;
    std::uint64_t neg_total = 0;
};

struct EntropyScore {
    std::string word;
    double h_pos = 0.0;  // bits
    double h_neg = 0.0;  // bits
    std::size_t pos_doc_freq = 0;
    std::size_t neg_doc_freq = 0;
};

struct SelectionConfig {
    double alpha = 1.0;
    double alpha_prime = 1.0;
    // Floors guarding the degenerate case where the opposite side's entropy
    // is zero and the threshold test passes for every coefficient. Set to
    // (1, 0.0) to disable.
    std::size_t min_doc_freq = 2;
    double min_entropy = 1.0;  // bits

    void validate() const {
        if (!(alpha > 0.0)) fail(ErrorCategory::config, "alpha must be > 0");
        if (!(alpha_prime > 0.0)) fail(ErrorCategory::config, "alpha_prime must be > 0");
        if (min_doc_freq < 1) fail(ErrorCategory::config, "min_doc_freq must be >= 1");
        if (min_entropy < 0.0) fail(ErrorCategory::config, "min_entropy must be >= 0");
    }
};

struct KeywordSet {
    std::string topic_id;
    std::set<std::string> positive_keywords;
    std::set<std::string> negative_keywords;
    SelectionConfig config;
    std::map<std::string, EntropyScore> scores;
};

// Counts every word in the corpus over the one-vs-rest partition for
// `topic_id`: positive documents carry the label, negative are all others.
inline std::map<std::string, WordStats> compute_word_stats(const Corpus& corpus,
                                                           const std::string& topic_id) {
    if (corpus.size() == 0) fail(ErrorCategory::data, "cannot compute word stats on an empty corpus");
    if (!corpus.catalog().contains(topic_id))
        fail(ErrorCategory::data, "unknown topic \"" + topic_id + "\"");

    std::map<std::string, WordStats> stats;
    const auto& docs = corpus.documents();
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const bool positive = docs[i].labels.count(topic_id) != 0;
        for (const std::string& token : docs[i].tokens) {
            WordStats& ws = stats[token];
            if (ws.word.empty()) ws.word = token;
            if (positive) {
                ++ws.pos_counts[i];
                ++ws.pos_total;
            } else {
                ++ws.neg_counts[i];
                ++ws.neg_total;
            }
        }
    }
    return stats;
}

struct WordProbabilities {
    std::vector<double> positive;
    std::vector<double> negative;
};

// Normalizes per-document counts into occurrence probabilities, ordered by
// ascending document index. A zero total yields an empty list for that side.
inline WordProbabilities word_probabilities(const WordStats& stats) {
    WordProbabilities probs;
    if (stats.pos_total > 0) {
        probs.positive.reserve(stats.pos_counts.size());
        for (const auto& [doc, count] : stats.pos_counts)
            probs.positive.push_back(static_cast<double>(count) / static_cast<double>(stats.pos_total));
    }
    if (stats.neg_total > 0) {
        probs.negative.reserve(stats.neg_counts.size());
        for (const auto& [doc, count] : stats.neg_counts)
            probs.negative.push_back(static_cast<double>(count) / static_cast<double>(stats.neg_total));
    }
    return probs;
}

namespace detail {

// -sum p*log2(p); documents where the word is absent contribute zero,
// matching the 0*log2(0) := 0 convention.
inline double entropy_bits(const std::map<std::size_t, std::uint32_t>& counts,
                           std::uint64_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (const auto& [doc, count] : counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace detail

inline EntropyScore word_entropy(const WordStats& stats) {
    EntropyScore score;
    score.word = stats.word;
    score.pos_doc_freq = stats.pos_counts.size();
    score.neg_doc_freq = stats.neg_counts.size();
    score.h_pos = detail::entropy_bits(stats.pos_counts, stats.pos_total);
    score.h_neg = detail::entropy_bits(stats.neg_counts, stats.neg_total);
    return score;
}

// compute_word_stats + word_entropy for every word.
inline std::map<std::string, EntropyScore> compute_entropy_scores(const Corpus& corpus,
                                                                  const std::string& topic_id) {
    std::map<std::string, EntropyScore> scores;
    for (const auto& [word, stats] : compute_word_stats(corpus, topic_id))
        scores.emplace(word, word_entropy(stats));
    return scores;
}

// A word is a positive keyword when h_pos > alpha * h_neg (strict) and it
// clears the doc-frequency and entropy floors; negative keywords are the
// mirror image with alpha_prime.
inline KeywordSet select_keywords(const std::string& topic_id,
                                  const std::map<std::string, EntropyScore>& scores,
                                  const SelectionConfig& config) {
    config.validate();
    KeywordSet set;
    set.topic_id = topic_id;
    set.config = config;
    set.scores = scores;
    for (const auto& [word, s] : scores) {
        if (s.h_pos > config.alpha * s.h_neg && s.pos_doc_freq >= config.min_doc_freq &&
            s.h_pos >= config.min_entropy)
            set.positive_keywords.insert(word);
        if (s.h_neg > config.alpha_prime * s.h_pos && s.neg_doc_freq >= config.min_doc_freq &&
            s.h_neg >= config.min_entropy)
            set.negative_keywords.insert(word);
    }
    return set;
}

// CSV columns: topic_id,word,h_pos,h_neg,pos_doc_freq,neg_doc_freq,polarity.
inline void export_keywords_csv(const KeywordSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCategory::io, "cannot write keyword file " + path.string());
    out << "topic_id,word,h_pos,h_neg,pos_doc_freq,neg_doc_freq,polarity\n";
    const auto emit = [&](const std::set<std::string>& words, const char* polarity) {
        for (const std::string& word : words) {
            const EntropyScore& s = set.scores.at(word);
            char buf[64];
            out << detail::csv_escape(set.topic_id) << ',' << detail::csv_escape(word) << ',';
            std::snprintf(buf, sizeof(buf), "%.10g", s.h_pos);
            out << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.10g", s.h_neg);
            out << buf << ',' << s.pos_doc_freq << ',' << s.neg_doc_freq << ',' << polarity << '\n';
        }
    };
    emit(set.positive_keywords, "positive");
    emit(set.negative_keywords, "negative");
    if (!out) fail(ErrorCategory::io, "failed writing keyword file " + path.string());
}

}  // namespace entrokey
