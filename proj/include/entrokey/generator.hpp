#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "entrokey/corpus.hpp"
#include "entrokey/detail/rng.hpp"
#include "entrokey/errors.hpp"

namespace entrokey {

// Synthetic labeled corpus with a planted per-topic vocabulary: document i
// gets topic i mod n_topics (round-robin) and samples each token from its
// topic's planted words, or from a shared noise pool with probability
// noise_rate.
struct GeneratorConfig {
    std::size_t n_docs = 500;
    std::size_t n_topics = 5;
    std::size_t words_per_topic = 20;
    double noise_rate = 0.2;
    std::size_t tokens_per_doc = 30;
    std::size_t noise_vocab_size = 100;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_topics < 1) fail(ErrorCategory::config, "need at least one topic");
        if (n_docs < n_topics)
            fail(ErrorCategory::config, "n_docs must be >= number of topics");
        if (words_per_topic < 1) fail(ErrorCategory::config, "words_per_topic must be >= 1");
        if (!(noise_rate >= 0.0 && noise_rate < 1.0))
            fail(ErrorCategory::config, "noise_rate must be in [0, 1)");
        if (tokens_per_doc < 1) fail(ErrorCategory::config, "tokens_per_doc must be >= 1");
        if (noise_rate > 0.0 && noise_vocab_size < 1)
            fail(ErrorCategory::config, "noise_vocab_size must be >= 1 when noise_rate > 0");
    }
};

struct SyntheticCorpus {
    Corpus corpus;
    std::map<std::string, std::vector<std::string>> planted;  // topic_id -> words
    std::vector<std::string> noise_words;
};

namespace detail {

inline std::string zero_padded(std::size_t value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*zu", width, value);
    return buf;
}

}  // namespace detail

inline SyntheticCorpus generate_corpus(const GeneratorConfig& config) {
    config.validate();

    std::vector<TopicInfo> topics;
    std::map<std::string, std::vector<std::string>> planted;
    for (std::size_t t = 0; t < config.n_topics; ++t) {
        const std::string topic_id = "topic" + std::to_string(t + 1);
        topics.push_back({topic_id, "Topic " + std::to_string(t + 1),
                          "Synthetic planted topic " + std::to_string(t + 1)});
        std::vector<std::string> words;
        words.reserve(config.words_per_topic);
        for (std::size_t w = 0; w < config.words_per_topic; ++w)
            words.push_back("t" + std::to_string(t + 1) + "kw" + detail::zero_padded(w, 2));
        planted.emplace(topic_id, std::move(words));
    }
    std::vector<std::string> noise_words;
    noise_words.reserve(config.noise_vocab_size);
    for (std::size_t w = 0; w < config.noise_vocab_size; ++w)
        noise_words.push_back("noise" + detail::zero_padded(w, 3));

    std::mt19937_64 rng(config.seed);
    std::vector<Document> documents;
    documents.reserve(config.n_docs);
    for (std::size_t i = 0; i < config.n_docs; ++i) {
        const std::string& topic_id = topics[i % config.n_topics].topic_id;
        const std::vector<std::string>& pool = planted.at(topic_id);
        Document doc;
        doc.id = "d" + detail::zero_padded(i, 6);
        doc.labels.insert(topic_id);
        doc.tokens.reserve(config.tokens_per_doc);
        for (std::size_t t = 0; t < config.tokens_per_doc; ++t) {
            const bool noise =
                config.noise_rate > 0.0 && detail::uniform_unit(rng) < config.noise_rate;
            const std::vector<std::string>& source = noise ? noise_words : pool;
            doc.tokens.push_back(source[detail::uniform_below(rng, source.size())]);
        }
        doc.text.reserve(config.tokens_per_doc * 8);
        for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
            if (t > 0) doc.text.push_back(' ');
            doc.text += doc.tokens[t];
        }
        documents.push_back(std::move(doc));
    }

    SyntheticCorpus result{Corpus(std::move(documents), TopicCatalog(std::move(topics))),
                           std::move(planted), std::move(noise_words)};
    return result;
}

}  // namespace entrokey
