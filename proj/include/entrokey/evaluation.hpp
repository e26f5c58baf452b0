#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entrokey/classifier.hpp"
#include "entrokey/corpus.hpp"
#include "entrokey/detail/rng.hpp"
#include "entrokey/errors.hpp"
#include "entrokey/feature_selection.hpp"
#include "entrokey/log.hpp"
#include "entrokey/vectorizer.hpp"

namespace entrokey {

// Deterministic partition of {0..n-1} into k folds of near-equal size.
struct FoldSpec {
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> assignments;  // document index -> fold index

    std::vector<std::size_t> fold_sizes() const {
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t f : assignments) ++sizes[f];
        return sizes;
    }
};

inline FoldSpec kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) fail(ErrorCategory::config, "fold count must be >= 2, got " + std::to_string(k));
    if (k > n)
        fail(ErrorCategory::config, "fold count " + std::to_string(k) +
                                        " exceeds document count " + std::to_string(n));
    FoldSpec spec;
    spec.n = n;
    spec.k = k;
    spec.seed = seed;
    spec.assignments.assign(n, 0);
    std::mt19937_64 rng(seed);
    const std::vector<std::size_t> order = detail::shuffled_indices(n, rng);
    for (std::size_t pos = 0; pos < n; ++pos) spec.assignments[order[pos]] = pos % k;
    return spec;
}

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }

    bool operator==(const ConfusionCounts&) const = default;
};

inline ConfusionCounts confusion_counts(const std::vector<std::set<std::string>>& predicted,
                                        const std::vector<std::set<std::string>>& gold,
                                        const std::string& topic_id) {
    if (predicted.size() != gold.size())
        fail(ErrorCategory::data, "predicted and gold label lists have different lengths");
    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i].count(topic_id) != 0;
        const bool g = gold[i].count(topic_id) != 0;
        if (p && g) ++c.tp;
        else if (p) ++c.fp;
        else if (g) ++c.fn;
        else ++c.tn;
    }
    return c;
}

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Harmonic mean of precision and recall; 0 when P + R = 0.
inline double f1_score(double precision, double recall) {
    const double denom = precision + recall;
    if (denom == 0.0) return 0.0;
    return 2.0 * precision * recall / denom;
}

// Any zero denominator yields that metric = 0.
inline Prf precision_recall_f1(const ConfusionCounts& c) {
    Prf m;
    const std::uint64_t pd = c.tp + c.fp;
    const std::uint64_t rd = c.tp + c.fn;
    m.precision = pd == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(pd);
    m.recall = rd == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(rd);
    m.f1 = f1_score(m.precision, m.recall);
    return m;
}

inline Prf macro_average(const std::vector<Prf>& per_topic) {
    if (per_topic.empty()) fail(ErrorCategory::data, "macro average over zero topics");
    Prf macro;
    for (const Prf& m : per_topic) {
        macro.precision += m.precision;
        macro.recall += m.recall;
        macro.f1 += m.f1;
    }
    const double n = static_cast<double>(per_topic.size());
    macro.precision /= n;
    macro.recall /= n;
    macro.f1 /= n;
    return macro;
}

struct TopicMetrics {
    std::string topic_id;
    ConfusionCounts counts;
    Prf metrics;
};

struct MetricsReport {
    std::vector<TopicMetrics> topics;  // catalog order
    Prf macro;
    std::size_t k_folds = 0;
    std::uint64_t seed = 0;
    std::size_t documents = 0;
};

// Everything one fold produced; exposed so callers (and tests) can inspect
// exactly what the held-out documents did or did not influence.
struct FoldArtifacts {
    std::size_t fold_index = 0;
    std::vector<KeywordSet> keyword_sets;
    Vocabulary vocabulary;
    MultiLabelModel model;
    std::vector<std::size_t> test_indices;
    std::vector<std::set<std::string>> predictions;  // aligned with test_indices
};

// K-fold cross-validation of the full pipeline: keyword selection and
// training happen on each fold's training portion only, predictions on the
// held-out fold; confusion counts are pooled across folds per topic.
inline MetricsReport cross_validate(const Corpus& corpus, const SelectionConfig& selection,
                                    const TrainConfig& training, std::size_t k, std::uint64_t seed,
                                    std::vector<FoldArtifacts>* artifacts = nullptr) {
    selection.validate();
    training.validate();
    const FoldSpec folds = kfold_split(corpus.size(), k, seed);
    const std::vector<std::string> topic_ids = corpus.catalog().topic_ids();
    std::map<std::string, ConfusionCounts> pooled;

    for (std::size_t fold = 0; fold < k; ++fold) {
        std::vector<Document> train_docs, test_docs;
        std::vector<std::size_t> test_indices;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (folds.assignments[i] == fold) {
                test_docs.push_back(corpus.documents()[i]);
                test_indices.push_back(i);
            } else {
                train_docs.push_back(corpus.documents()[i]);
            }
        }
        try {
            const Corpus train_corpus(std::move(train_docs), corpus.catalog());
            const Corpus test_corpus(std::move(test_docs), corpus.catalog());

            std::vector<KeywordSet> sets;
            sets.reserve(topic_ids.size());
            for (const std::string& topic_id : topic_ids)
                sets.push_back(select_keywords(
                    topic_id, compute_entropy_scores(train_corpus, topic_id), selection));
            const Vocabulary vocab = build_vocabulary(sets);
            const MultiLabelModel model = train_one_vs_rest(train_corpus, vocab, training);
            const std::vector<std::set<std::string>> predictions =
                classify_corpus(model, test_corpus);

            std::vector<std::set<std::string>> gold;
            gold.reserve(test_corpus.size());
            for (const Document& d : test_corpus.documents()) gold.push_back(d.labels);
            for (const std::string& topic_id : topic_ids)
                pooled[topic_id] += confusion_counts(predictions, gold, topic_id);

            log::debug("fold " + std::to_string(fold) + ": trained on " +
                       std::to_string(train_corpus.size()) + " docs, evaluated " +
                       std::to_string(test_corpus.size()));
            if (artifacts != nullptr) {
                FoldArtifacts fa;
                fa.fold_index = fold;
                fa.keyword_sets = std::move(sets);
                fa.vocabulary = vocab;
                fa.model = model;
                fa.test_indices = std::move(test_indices);
                fa.predictions = predictions;
                artifacts->push_back(std::move(fa));
            }
        } catch (const Error& e) {
            fail(e.category(), "fold " + std::to_string(fold) + ": " + e.what());
        }
    }

    MetricsReport report;
    report.k_folds = k;
    report.seed = seed;
    report.documents = corpus.size();
    std::vector<Prf> per_topic;
    for (const std::string& topic_id : topic_ids) {
        TopicMetrics tm;
        tm.topic_id = topic_id;
        tm.counts = pooled[topic_id];
        tm.metrics = precision_recall_f1(tm.counts);
        per_topic.push_back(tm.metrics);
        report.topics.push_back(std::move(tm));
    }
    report.macro = macro_average(per_topic);
    return report;
}

inline nlohmann::json metrics_to_json(const MetricsReport& report) {
    nlohmann::json topics = nlohmann::json::array();
    for (const TopicMetrics& tm : report.topics) {
        topics.push_back({
            {"topic_id", tm.topic_id},
            {"tp", tm.counts.tp},
            {"fp", tm.counts.fp},
            {"fn", tm.counts.fn},
            {"tn", tm.counts.tn},
            {"precision", tm.metrics.precision},
            {"recall", tm.metrics.recall},
            {"f1", tm.metrics.f1},
        });
    }
    return nlohmann::json{
        {"report", "metrics"},
        {"documents", report.documents},
        {"k_folds", report.k_folds},
        {"seed", report.seed},
        {"topics", std::move(topics)},
        {"macro",
         {{"precision", report.macro.precision},
          {"recall", report.macro.recall},
          {"f1", report.macro.f1}}},
    };
}

inline MetricsReport metrics_from_json(const nlohmann::json& j) {
    try {
        MetricsReport report;
        report.documents = j.at("documents").get<std::size_t>();
        report.k_folds = j.at("k_folds").get<std::size_t>();
        report.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& t : j.at("topics")) {
            TopicMetrics tm;
            tm.topic_id = t.at("topic_id").get<std::string>();
            tm.counts = {t.at("tp").get<std::uint64_t>(), t.at("fp").get<std::uint64_t>(),
                         t.at("fn").get<std::uint64_t>(), t.at("tn").get<std::uint64_t>()};
            tm.metrics = {t.at("precision").get<double>(), t.at("recall").get<double>(),
                          t.at("f1").get<double>()};
            report.topics.push_back(std::move(tm));
        }
        const auto& m = j.at("macro");
        report.macro = {m.at("precision").get<double>(), m.at("recall").get<double>(),
                        m.at("f1").get<double>()};
        return report;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCategory::parse, std::string("metrics report: ") + e.what());
    }
}

// One row per topic plus one macro row, aligned columns.
inline std::string render_metrics_table(const MetricsReport& report) {
    std::size_t id_width = 5;  // "topic"
    for (const TopicMetrics& tm : report.topics) id_width = std::max(id_width, tm.topic_id.size());
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %8s %10s %8s %8s\n",
                  static_cast<int>(id_width), "topic", "tp", "fp", "fn", "tn", "precision",
                  "recall", "f1");
    out += buf;
    for (const TopicMetrics& tm : report.topics) {
        std::snprintf(buf, sizeof(buf), "%-*s %8llu %8llu %8llu %8llu %10.2f %8.2f %8.2f\n",
                      static_cast<int>(id_width), tm.topic_id.c_str(),
                      static_cast<unsigned long long>(tm.counts.tp),
                      static_cast<unsigned long long>(tm.counts.fp),
                      static_cast<unsigned long long>(tm.counts.fn),
                      static_cast<unsigned long long>(tm.counts.tn), tm.metrics.precision,
                      tm.metrics.recall, tm.metrics.f1);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %8s %10.2f %8.2f %8.2f\n",
                  static_cast<int>(id_width), "macro", "", "", "", "", report.macro.precision,
                  report.macro.recall, report.macro.f1);
    out += buf;
    return out;
}

}  // namespace entrokey
