#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "entrokey/corpus.hpp"
#include "entrokey/feature_selection.hpp"

using namespace entrokey;

namespace {

// Independent direct-summation oracle over a dense per-document count row;
// zero counts contribute zero terms. Kept separate from the library path on
// purpose.
double oracle_entropy_bits(const std::vector<std::uint32_t>& dense_counts) {
    long double total = 0.0L;
    for (std::uint32_t c : dense_counts) total += c;
    if (total == 0.0L) return 0.0;
    long double h = 0.0L;
    for (std::uint32_t c : dense_counts) {
        if (c == 0) continue;
        const long double p = static_cast<long double>(c) / total;
        h -= p * std::log2(p);
    }
    return static_cast<double>(h);
}

TopicCatalog one_topic() { return TopicCatalog({{"t", "T", ""}}); }

Corpus two_doc_corpus() {
    std::vector<Document> docs;
    docs.push_back({"d1", "a a b", {"a", "a", "b"}, {"t"}});
    docs.push_back({"d2", "b", {"b"}, {}});
    return Corpus(docs, one_topic());
}

// Random corpus over a small vocabulary with dense ground-truth count
// matrix returned alongside.
struct RandomCorpus {
    Corpus corpus;
    std::vector<std::string> vocab;
    std::vector<std::vector<std::uint32_t>> counts;  // [doc][word]
    std::vector<bool> positive;                      // doc -> labeled "t"
};

RandomCorpus make_random_corpus(std::mt19937_64& rng, std::size_t max_docs,
                                std::size_t max_words, std::uint32_t max_count) {
    const std::size_t n_docs = 1 + rng() % max_docs;
    const std::size_t n_words = 1 + rng() % max_words;
    RandomCorpus rc{Corpus({{"tmp", "", {}, {}}}, one_topic()), {}, {}, {}};

    for (std::size_t w = 0; w < n_words; ++w) rc.vocab.push_back("w" + std::to_string(w));
    rc.counts.assign(n_docs, std::vector<std::uint32_t>(n_words, 0));

    std::vector<Document> docs;
    for (std::size_t i = 0; i < n_docs; ++i) {
        Document doc;
        doc.id = "d" + std::to_string(i);
        const bool positive = rng() % 2 == 0;
        rc.positive.push_back(positive);
        if (positive) doc.labels.insert("t");
        for (std::size_t w = 0; w < n_words; ++w) {
            // zero-inflated counts so zero-probability rows always occur
            const std::uint32_t c = rng() % 2 == 0 ? 0 : rng() % (max_count + 1);
            rc.counts[i][w] = c;
            for (std::uint32_t k = 0; k < c; ++k) doc.tokens.push_back(rc.vocab[w]);
        }
        docs.push_back(std::move(doc));
    }
    rc.corpus = Corpus(std::move(docs), one_topic());
    return rc;
}

}  // namespace

TEST_CASE("compute_word_stats counts per document and partition") {
    const auto stats = compute_word_stats(two_doc_corpus(), "t");
    REQUIRE(stats.count("a") == 1);
    REQUIRE(stats.count("b") == 1);

    const WordStats& a = stats.at("a");
    CHECK(a.pos_counts == std::map<std::size_t, std::uint32_t>{{0, 2}});
    CHECK(a.neg_counts.empty());
    CHECK(a.pos_total == 2);
    CHECK(a.neg_total == 0);

    const WordStats& b = stats.at("b");
    CHECK(b.pos_counts == std::map<std::size_t, std::uint32_t>{{0, 1}});
    CHECK(b.neg_counts == std::map<std::size_t, std::uint32_t>{{1, 1}});
}

TEST_CASE("compute_word_stats rejects unknown topics and empty corpora") {
    CHECK_THROWS_AS(compute_word_stats(two_doc_corpus(), "missing"), Error);
    const Corpus empty(std::vector<Document>{}, one_topic());
    CHECK_THROWS_AS(compute_word_stats(empty, "t"), Error);
}

TEST_CASE("compute_word_stats matches an independent recount on random corpora") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 50; ++trial) {
        const RandomCorpus rc = make_random_corpus(rng, 10, 8, 5);
        const auto stats = compute_word_stats(rc.corpus, "t");
        for (std::size_t w = 0; w < rc.vocab.size(); ++w) {
            // independent tally straight off the dense matrix
            std::uint64_t pos_total = 0, neg_total = 0;
            for (std::size_t i = 0; i < rc.counts.size(); ++i) {
                if (rc.positive[i]) pos_total += rc.counts[i][w];
                else neg_total += rc.counts[i][w];
            }
            if (pos_total + neg_total == 0) {
                CHECK(stats.count(rc.vocab[w]) == 0);
                continue;
            }
            const WordStats& ws = stats.at(rc.vocab[w]);
            CHECK(ws.pos_total == pos_total);
            CHECK(ws.neg_total == neg_total);
            for (std::size_t i = 0; i < rc.counts.size(); ++i) {
                const auto& side = rc.positive[i] ? ws.pos_counts : ws.neg_counts;
                const auto it = side.find(i);
                const std::uint32_t have = it == side.end() ? 0 : it->second;
                CHECK(have == rc.counts[i][w]);
            }
        }
    }
}

TEST_CASE("word_probabilities normalizes per side in document order") {
    WordStats ws;
    ws.pos_counts = {{0, 2}, {1, 1}, {2, 1}};
    ws.pos_total = 4;
    const WordProbabilities probs = word_probabilities(ws);
    CHECK(probs.positive == std::vector<double>{0.5, 0.25, 0.25});
    CHECK(probs.negative.empty());

    WordStats single;
    single.pos_counts = {{0, 5}};
    single.pos_total = 5;
    CHECK(word_probabilities(single).positive == std::vector<double>{1.0});
}

TEST_CASE("word_probabilities is scale invariant") {
    WordStats ws;
    ws.pos_counts = {{0, 2}, {1, 1}, {2, 1}};
    ws.pos_total = 4;
    WordStats scaled;
    for (const auto& [doc, c] : ws.pos_counts) scaled.pos_counts[doc] = c * 7;
    scaled.pos_total = ws.pos_total * 7;
    CHECK(word_probabilities(ws).positive == word_probabilities(scaled).positive);
}

TEST_CASE("word_probabilities sums to one when the side is nonzero") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        WordStats ws;
        const std::size_t n = 1 + rng() % 10;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t c = 1 + rng() % 9;
            ws.pos_counts[i] = c;
            ws.pos_total += c;
        }
        double sum = 0.0;
        for (double p : word_probabilities(ws).positive) sum += p;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("word_entropy on the 2,1,1 distribution is 1.5 bits") {
    WordStats ws;
    ws.pos_counts = {{0, 2}, {1, 1}, {2, 1}};
    ws.pos_total = 4;
    const EntropyScore score = word_entropy(ws);
    // frozen from the direct-summation oracle
    CHECK(std::abs(score.h_pos - 1.5) <= 1e-12);
    CHECK(std::abs(oracle_entropy_bits({2, 1, 1}) - 1.5) <= 1e-12);
    CHECK(score.pos_doc_freq == 3);
    CHECK(score.h_neg == 0.0);
    CHECK(score.neg_doc_freq == 0);
}

TEST_CASE("word_entropy analytic anchors") {
    // word used once in exactly one document: perfectly predictable
    WordStats once;
    once.pos_counts = {{0, 1}};
    once.pos_total = 1;
    CHECK(word_entropy(once).h_pos == 0.0);

    // word appearing once in each of 4 documents: uniform, log2(4) = 2 bits
    WordStats uniform;
    for (std::size_t i = 0; i < 4; ++i) uniform.pos_counts[i] = 1;
    uniform.pos_total = 4;
    CHECK(std::abs(word_entropy(uniform).h_pos - 2.0) <= 1e-12);
}

TEST_CASE("word_entropy matches the oracle on random corpora") {
    std::mt19937_64 rng(987654321);
    for (int trial = 0; trial < 300; ++trial) {
        const RandomCorpus rc = make_random_corpus(rng, 10, 20, 9);
        const auto stats = compute_word_stats(rc.corpus, "t");
        for (std::size_t w = 0; w < rc.vocab.size(); ++w) {
            std::vector<std::uint32_t> pos_row, neg_row;
            for (std::size_t i = 0; i < rc.counts.size(); ++i)
                (rc.positive[i] ? pos_row : neg_row).push_back(rc.counts[i][w]);
            const auto it = stats.find(rc.vocab[w]);
            const double h_pos = it == stats.end() ? 0.0 : word_entropy(it->second).h_pos;
            const double h_neg = it == stats.end() ? 0.0 : word_entropy(it->second).h_neg;
            CHECK(std::abs(h_pos - oracle_entropy_bits(pos_row)) <= 1e-9);
            CHECK(std::abs(h_neg - oracle_entropy_bits(neg_row)) <= 1e-9);
        }
    }
}

TEST_CASE("entropy is bounded by log2 of the containing-document count") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        WordStats ws;
        const std::size_t n = 1 + rng() % 12;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng() % 3 == 0) continue;
            const std::uint32_t c = 1 + rng() % 9;
            ws.pos_counts[i] = c;
            ws.pos_total += c;
        }
        const EntropyScore s = word_entropy(ws);
        CHECK(s.h_pos >= 0.0);
        const double bound = std::log2(std::max<std::size_t>(s.pos_doc_freq, 1));
        CHECK(s.h_pos <= bound + 1e-12);
    }
}

TEST_CASE("entropy scores are invariant under document reordering") {
    std::mt19937_64 rng(5150);
    const RandomCorpus rc = make_random_corpus(rng, 10, 10, 6);
    auto docs = rc.corpus.documents();
    auto shuffled = docs;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng() % i]);
    const Corpus permuted(shuffled, rc.corpus.catalog());

    const auto scores_a = compute_entropy_scores(rc.corpus, "t");
    const auto scores_b = compute_entropy_scores(permuted, "t");
    REQUIRE(scores_a.size() == scores_b.size());
    for (const auto& [word, sa] : scores_a) {
        const EntropyScore& sb = scores_b.at(word);
        CHECK(std::abs(sa.h_pos - sb.h_pos) <= 1e-12);
        CHECK(std::abs(sa.h_neg - sb.h_neg) <= 1e-12);
        CHECK(sa.pos_doc_freq == sb.pos_doc_freq);
        CHECK(sa.neg_doc_freq == sb.neg_doc_freq);
    }
}

TEST_CASE("entropy is invariant under count scaling on one side") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        WordStats ws;
        const std::size_t n = 1 + rng() % 8;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t c = 1 + rng() % 9;
            ws.pos_counts[i] = c;
            ws.pos_total += c;
        }
        const std::uint32_t factor = 2 + rng() % 9;
        WordStats scaled = ws;
        scaled.pos_total = 0;
        for (auto& [doc, c] : scaled.pos_counts) {
            c *= factor;
            scaled.pos_total += c;
        }
        CHECK(std::abs(word_entropy(ws).h_pos - word_entropy(scaled).h_pos) <= 1e-12);
    }
}

TEST_CASE("select_keywords applies the strict threshold rules") {
    SelectionConfig floors_off;
    floors_off.min_doc_freq = 1;
    floors_off.min_entropy = 0.0;

    std::map<std::string, EntropyScore> scores;
    scores["hit"] = {"hit", 1.5, 0.4, 3, 2};
    floors_off.alpha = 2.0;
    CHECK(select_keywords("t", scores, floors_off).positive_keywords.count("hit") == 1);

    // boundary: equality fails the strict inequality
    scores.clear();
    scores["edge"] = {"edge", 1.0, 1.0, 3, 3};
    floors_off.alpha = 1.0;
    floors_off.alpha_prime = 1.0;
    const KeywordSet edge = select_keywords("t", scores, floors_off);
    CHECK(edge.positive_keywords.empty());
    CHECK(edge.negative_keywords.empty());

    // zero right-hand side selects for the other polarity
    scores.clear();
    scores["neg"] = {"neg", 0.0, 2.0, 0, 4};
    floors_off.alpha_prime = 1.5;
    CHECK(select_keywords("t", scores, floors_off).negative_keywords.count("neg") == 1);
}

TEST_CASE("floors suppress one-sided hapax words") {
    std::map<std::string, EntropyScore> scores;
    scores["rare"] = {"rare", 0.9, 0.0, 1, 0};  // unique to positive side, low spread
    SelectionConfig defaults;                   // min_doc_freq 2, min_entropy 1.0
    CHECK(select_keywords("t", scores, defaults).positive_keywords.empty());

    SelectionConfig floors_off;
    floors_off.min_doc_freq = 1;
    floors_off.min_entropy = 0.0;
    CHECK(select_keywords("t", scores, floors_off).positive_keywords.count("rare") == 1);
}

TEST_CASE("positive and negative sets are disjoint when alpha*alpha_prime >= 1") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<std::string, EntropyScore> scores;
        const std::size_t n = 1 + rng() % 30;
        for (std::size_t w = 0; w < n; ++w) {
            EntropyScore s;
            s.word = "w" + std::to_string(w);
            s.h_pos = rng() % 4 == 0 ? 0.0 : static_cast<double>(rng() % 1000) / 200.0;
            s.h_neg = rng() % 4 == 0 ? 0.0 : static_cast<double>(rng() % 1000) / 200.0;
            s.pos_doc_freq = rng() % 20;
            s.neg_doc_freq = rng() % 20;
            scores[s.word] = s;
        }
        SelectionConfig config;
        config.min_doc_freq = 1;
        config.min_entropy = 0.0;
        config.alpha = 0.2 + static_cast<double>(rng() % 1000) / 208.0;
        config.alpha_prime = (1.0 / config.alpha) * (1.0 + static_cast<double>(rng() % 400) / 100.0);
        REQUIRE(config.alpha * config.alpha_prime >= 1.0);

        const KeywordSet set = select_keywords("t", scores, config);
        for (const std::string& w : set.positive_keywords)
            CHECK(set.negative_keywords.count(w) == 0);
    }
}

TEST_CASE("selection config validation") {
    SelectionConfig bad;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = SelectionConfig{};
    bad.min_doc_freq = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = SelectionConfig{};
    bad.min_entropy = -0.5;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("keyword csv export carries scores and polarity") {
    const Corpus corpus = two_doc_corpus();
    SelectionConfig config;
    config.min_doc_freq = 1;
    config.min_entropy = 0.0;
    const KeywordSet set = select_keywords("t", compute_entropy_scores(corpus, "t"), config);

    const auto path = std::filesystem::temp_directory_path() / "entrokey_keywords.csv";
    export_keywords_csv(set, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "topic_id,word,h_pos,h_neg,pos_doc_freq,neg_doc_freq,polarity");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == set.positive_keywords.size() + set.negative_keywords.size());
}
