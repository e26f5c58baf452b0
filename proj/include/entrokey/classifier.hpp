#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "entrokey/corpus.hpp"
#include "entrokey/detail/rng.hpp"
#include "entrokey/errors.hpp"
#include "entrokey/log.hpp"
#include "entrokey/vectorizer.hpp"

namespace entrokey {

// f(x) = w.x + b
struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    bool converged = false;
    std::uint32_t epochs_run = 0;

    bool operator==(const LinearModel&) const = default;
};

enum class UpdateRule { label_driven, paper_literal };

inline const char* update_rule_name(UpdateRule r) {
    return r == UpdateRule::label_driven ? "label_driven" : "paper_literal";
}

inline UpdateRule update_rule_from_string(const std::string& s) {
    if (s == "label_driven" || s == "label-driven") return UpdateRule::label_driven;
    if (s == "paper_literal" || s == "paper-literal") return UpdateRule::paper_literal;
    fail(ErrorCategory::config, "unknown update rule \"" + s + "\"");
}

struct TrainConfig {
    double learning_rate = 1.0;
    std::uint32_t max_epochs = 100;
    std::uint64_t shuffle_seed = 0;
    // label_driven moves w toward the true label on mistakes and converges on
    // separable data; paper_literal moves it toward the current prediction
    // and is kept for fidelity experiments only.
    UpdateRule update_rule = UpdateRule::label_driven;

    void validate() const {
        if (!(learning_rate > 0.0)) fail(ErrorCategory::config, "learning_rate must be > 0");
        if (max_epochs < 1) fail(ErrorCategory::config, "max_epochs must be >= 1");
    }
};

struct TrainingSet {
    std::vector<DocVector> vectors;
    std::vector<int> labels;  // +1 / -1, aligned with vectors
    std::size_t dimension = 0;

    void validate() const {
        if (vectors.empty()) fail(ErrorCategory::data, "empty training set");
        if (vectors.size() != labels.size())
            fail(ErrorCategory::data, "training vectors and labels have different lengths");
        bool has_pos = false, has_neg = false;
        for (int y : labels) {
            if (y == 1) has_pos = true;
            else if (y == -1) has_neg = true;
            else fail(ErrorCategory::data, "training labels must be +1 or -1");
        }
        if (!has_pos || !has_neg)
            fail(ErrorCategory::data, "single-class training set: need at least one example of each label");
        for (const DocVector& v : vectors) {
            if (!v.entries.empty() && v.entries.back().first >= dimension)
                fail(ErrorCategory::data, "training vector index exceeds dimension");
        }
    }
};

// Classifier in the explicit kernel form f(x) = sum_i alpha_i y_i (x_i.x) + b.
// For the label_driven rule, alpha_i is the learning rate times the number of
// mistake-updates on example i; reconstructing w = sum_i alpha_i y_i x_i
// reproduces the paired primal model.
struct DualModel {
    std::vector<double> coefficients;
    std::vector<DocVector> training_vectors;
    std::vector<int> labels;
    double bias = 0.0;
    std::size_t dimension = 0;
};

inline double decision(const LinearModel& model, const DocVector& vec) {
    double score = model.bias;
    for (const auto& [dim, count] : vec.entries) {
        if (dim >= model.weights.size())
            fail(ErrorCategory::data, "dimension mismatch: vector index " + std::to_string(dim) +
                                          " >= model dimension " + std::to_string(model.weights.size()));
        score += model.weights[dim] * static_cast<double>(count);
    }
    return score;
}

// The tie at exactly 0 maps to +1.
inline int predict(const LinearModel& model, const DocVector& vec) {
    return decision(model, vec) >= 0.0 ? 1 : -1;
}

inline double dual_decision(const DualModel& model, const DocVector& vec) {
    for (const auto& [dim, count] : vec.entries) {
        if (dim >= model.dimension)
            fail(ErrorCategory::data, "dimension mismatch: vector index " + std::to_string(dim) +
                                          " >= model dimension " + std::to_string(model.dimension));
    }
    double score = model.bias;
    for (std::size_t i = 0; i < model.training_vectors.size(); ++i) {
        if (model.coefficients[i] == 0.0) continue;
        // sparse dot product, both entry lists sorted by dimension
        double dot = 0.0;
        const auto& a = model.training_vectors[i].entries;
        const auto& b = vec.entries;
        std::size_t ia = 0, ib = 0;
        while (ia < a.size() && ib < b.size()) {
            if (a[ia].first < b[ib].first) ++ia;
            else if (b[ib].first < a[ia].first) ++ib;
            else {
                dot += static_cast<double>(a[ia].second) * static_cast<double>(b[ib].second);
                ++ia;
                ++ib;
            }
        }
        score += model.coefficients[i] * static_cast<double>(model.labels[i]) * dot;
    }
    return score;
}

struct TrainResult {
    LinearModel primal;
    DualModel dual;
};

// Mistake-driven perceptron from w = 0, b = 0. Examples are swept in
// seeded-shuffle order, reshuffled every epoch; training stops at the first
// full epoch with zero mistakes, or at max_epochs with converged = false.
inline TrainResult train_binary(const TrainingSet& data, const TrainConfig& config) {
    config.validate();
    data.validate();

    const std::size_t n = data.vectors.size();
    LinearModel model;
    model.weights.assign(data.dimension, 0.0);

    DualModel dual;
    dual.coefficients.assign(n, 0.0);
    dual.training_vectors = data.vectors;
    dual.labels = data.labels;
    dual.dimension = data.dimension;

    std::mt19937_64 rng(config.shuffle_seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    const double eta = config.learning_rate;
    for (std::uint32_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        detail::shuffle(order, rng);
        std::size_t mistakes = 0;
        for (const std::size_t i : order) {
            const DocVector& x = data.vectors[i];
            const int y = data.labels[i];
            const double f = decision(model, x);
            const int predicted = f >= 0.0 ? 1 : -1;
            if (predicted == y) continue;
            ++mistakes;
            const int direction =
                config.update_rule == UpdateRule::label_driven ? y : predicted;
            for (const auto& [dim, count] : x.entries)
                model.weights[dim] += eta * direction * static_cast<double>(count);
            if (config.update_rule == UpdateRule::label_driven) model.bias += eta * y;
            dual.coefficients[i] += eta * direction * y;
        }
        model.epochs_run = epoch;
        if (mistakes == 0) {
            model.converged = true;
            break;
        }
    }
    dual.bias = model.bias;
    return {std::move(model), std::move(dual)};
}

struct MultiLabelModel {
    std::vector<std::string> topic_ids;  // catalog order
    std::map<std::string, LinearModel> models;
    Vocabulary vocabulary;
    TrainConfig config;
};

namespace detail {

inline std::vector<int> topic_labels(const Corpus& corpus, const std::string& topic_id) {
    std::vector<int> labels;
    labels.reserve(corpus.size());
    for (const Document& doc : corpus.documents())
        labels.push_back(doc.labels.count(topic_id) != 0 ? 1 : -1);
    return labels;
}

// Keeps only entries whose dimension is allowed for this topic.
inline std::vector<DocVector> mask_vectors(const std::vector<DocVector>& vectors,
                                           const std::vector<bool>& allowed) {
    std::vector<DocVector> masked;
    masked.reserve(vectors.size());
    for (const DocVector& v : vectors) {
        DocVector m;
        m.doc_id = v.doc_id;
        for (const auto& e : v.entries) {
            if (allowed[e.first]) m.entries.push_back(e);
        }
        masked.push_back(std::move(m));
    }
    return masked;
}

}  // namespace detail

// One binary perceptron per catalog topic over shared vectors: positive
// examples are the documents carrying that topic's label. When
// `per_topic_restriction` is given, each topic's training only sees the
// dimensions of its own keyword set (weights elsewhere stay zero).
inline MultiLabelModel train_one_vs_rest(const Corpus& corpus, const Vocabulary& vocab,
                                         const TrainConfig& config,
                                         const std::vector<KeywordSet>* per_topic_restriction = nullptr) {
    config.validate();
    if (vocab.empty()) fail(ErrorCategory::data, "cannot train against an empty vocabulary");

    const std::vector<DocVector> vectors = vectorize_corpus(corpus, vocab);

    MultiLabelModel model;
    model.vocabulary = vocab;
    model.config = config;
    for (const TopicInfo& topic : corpus.catalog().entries()) {
        std::vector<int> labels = detail::topic_labels(corpus, topic.topic_id);
        std::size_t positives = 0;
        for (int y : labels)
            if (y == 1) ++positives;
        if (positives == 0)
            fail(ErrorCategory::data,
                 "topic \"" + topic.topic_id + "\" has no positive training documents");
        if (positives == labels.size())
            fail(ErrorCategory::data,
                 "topic \"" + topic.topic_id + "\" has no negative training documents");

        TrainingSet data;
        data.labels = std::move(labels);
        data.dimension = vocab.size();
        if (per_topic_restriction != nullptr) {
            const KeywordSet* set = nullptr;
            for (const KeywordSet& s : *per_topic_restriction) {
                if (s.topic_id == topic.topic_id) { set = &s; break; }
            }
            if (set == nullptr)
                fail(ErrorCategory::data,
                     "no keyword set for topic \"" + topic.topic_id + "\" in restriction");
            std::vector<bool> allowed(vocab.size(), false);
            for (const auto& words : {&set->positive_keywords, &set->negative_keywords}) {
                for (const std::string& w : *words) {
                    if (const auto dim = vocab.index_of(w)) allowed[*dim] = true;
                }
            }
            data.vectors = detail::mask_vectors(vectors, allowed);
        } else {
            data.vectors = vectors;
        }

        TrainResult result = train_binary(data, config);
        log::debug("topic " + topic.topic_id + ": " +
                   (result.primal.converged ? "converged" : "not converged") + " after " +
                   std::to_string(result.primal.epochs_run) + " epochs");
        model.topic_ids.push_back(topic.topic_id);
        model.models.emplace(topic.topic_id, std::move(result.primal));
    }
    return model;
}

// Predicted set per document: all topics whose binary prediction is +1.
// May be empty or plural.
inline std::vector<std::set<std::string>> classify_corpus(const MultiLabelModel& model,
                                                          const Corpus& corpus) {
    std::vector<std::set<std::string>> predictions;
    predictions.reserve(corpus.size());
    for (const Document& doc : corpus.documents()) {
        const DocVector vec = vectorize(doc, model.vocabulary);
        std::set<std::string> assigned;
        for (const std::string& topic_id : model.topic_ids) {
            if (predict(model.models.at(topic_id), vec) == 1) assigned.insert(topic_id);
        }
        predictions.push_back(std::move(assigned));
    }
    return predictions;
}

}  // namespace entrokey
