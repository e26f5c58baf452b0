#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "entrokey/classifier.hpp"
#include "entrokey/corpus_io.hpp"
#include "entrokey/errors.hpp"
#include "entrokey/evaluation.hpp"
#include "entrokey/feature_selection.hpp"
#include "entrokey/generator.hpp"
#include "entrokey/log.hpp"
#include "entrokey/model_io.hpp"
#include "entrokey/vectorizer.hpp"

namespace entrokey {

// Everything a pipeline stage needs; the CLI fills this from flags and the
// optional config file.
struct PipelineConfig {
    TokenizerConfig tokenizer;
    SelectionConfig selection;
    TrainConfig training;
    std::size_t k_folds = 5;
    std::uint64_t seed = 0;
    bool per_topic_vocabulary = false;

    std::filesystem::path corpus_path;
    CorpusFormat corpus_format = CorpusFormat::jsonl;
    std::filesystem::path catalog_path;
    std::filesystem::path model_path;
    std::filesystem::path out_dir = ".";
};

struct TopicCountReport {
    std::vector<std::pair<std::string, std::uint64_t>> per_topic;  // catalog order
    std::uint64_t total_documents = 0;
    std::uint64_t unassigned = 0;
};

namespace detail {

inline void ensure_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorCategory::io, "cannot create output directory " + dir.string());
}

inline Corpus load_pipeline_corpus(const PipelineConfig& config) {
    const TopicCatalog catalog = load_catalog(config.catalog_path);
    return load_corpus(config.corpus_path, config.corpus_format, catalog, config.tokenizer);
}

inline std::vector<KeywordSet> select_all_topics(const Corpus& corpus,
                                                 const SelectionConfig& selection) {
    std::vector<KeywordSet> sets;
    sets.reserve(corpus.catalog().size());
    for (const std::string& topic_id : corpus.catalog().topic_ids())
        sets.push_back(
            select_keywords(topic_id, compute_entropy_scores(corpus, topic_id), selection));
    return sets;
}

}  // namespace detail

struct GenerateResult {
    std::filesystem::path corpus_path;
    std::filesystem::path catalog_path;
    std::filesystem::path planted_path;
    std::size_t documents = 0;
};

// Writes corpus.jsonl, catalog.json and planted_vocabulary.json.
inline GenerateResult run_generate(const GeneratorConfig& config,
                                   const std::filesystem::path& out_dir) {
    detail::ensure_out_dir(out_dir);
    const SyntheticCorpus synthetic = generate_corpus(config);

    GenerateResult result;
    result.corpus_path = out_dir / "corpus.jsonl";
    result.catalog_path = out_dir / "catalog.json";
    result.planted_path = out_dir / "planted_vocabulary.json";
    result.documents = synthetic.corpus.size();

    save_corpus(synthetic.corpus, result.corpus_path);
    save_catalog(synthetic.corpus.catalog(), result.catalog_path);

    nlohmann::json planted;
    for (const auto& [topic_id, words] : synthetic.planted) planted[topic_id] = words;
    std::ofstream out(result.planted_path);
    if (!out) fail(ErrorCategory::io, "cannot write " + result.planted_path.string());
    out << nlohmann::json{{"topics", std::move(planted)}, {"noise_words", synthetic.noise_words}}
               .dump(2)
        << '\n';
    if (!out) fail(ErrorCategory::io, "failed writing " + result.planted_path.string());

    log::info("generated " + std::to_string(result.documents) + " documents into " +
              out_dir.string());
    return result;
}

struct ExtractResult {
    std::vector<KeywordSet> keyword_sets;
    Vocabulary vocabulary;
    std::vector<std::filesystem::path> keyword_files;
};

// One keyword CSV per topic plus vocabulary.csv.
inline ExtractResult run_extract_keywords(const PipelineConfig& config) {
    detail::ensure_out_dir(config.out_dir);
    const Corpus corpus = detail::load_pipeline_corpus(config);

    ExtractResult result;
    result.keyword_sets = detail::select_all_topics(corpus, config.selection);
    for (const KeywordSet& set : result.keyword_sets) {
        const std::filesystem::path path = config.out_dir / ("keywords_" + set.topic_id + ".csv");
        export_keywords_csv(set, path);
        result.keyword_files.push_back(path);
    }
    result.vocabulary = build_vocabulary(result.keyword_sets);
    export_vocabulary_csv(result.vocabulary, config.out_dir / "vocabulary.csv");
    return result;
}

// Keyword selection + one-vs-rest training; persists the model and the
// vocabulary it was trained over.
inline std::filesystem::path run_train(const PipelineConfig& config) {
    detail::ensure_out_dir(config.out_dir);
    const Corpus corpus = detail::load_pipeline_corpus(config);

    const std::vector<KeywordSet> sets = detail::select_all_topics(corpus, config.selection);
    const Vocabulary vocab = build_vocabulary(sets);
    const MultiLabelModel model =
        train_one_vs_rest(corpus, vocab, config.training,
                          config.per_topic_vocabulary ? &sets : nullptr);

    const std::filesystem::path model_path =
        config.model_path.empty() ? config.out_dir / "model.json" : config.model_path;
    save_model(model, model_path);
    export_vocabulary_csv(vocab, config.out_dir / "vocabulary.csv");
    log::info("model written to " + model_path.string());
    return model_path;
}

// Cross-validated metrics; writes metrics.json.
inline MetricsReport run_evaluate(const PipelineConfig& config) {
    detail::ensure_out_dir(config.out_dir);
    const Corpus corpus = detail::load_pipeline_corpus(config);
    const MetricsReport report =
        cross_validate(corpus, config.selection, config.training, config.k_folds, config.seed);

    std::ofstream out(config.out_dir / "metrics.json");
    if (!out) fail(ErrorCategory::io, "cannot write metrics report");
    out << metrics_to_json(report).dump(2) << '\n';
    if (!out) fail(ErrorCategory::io, "failed writing metrics report");
    return report;
}

inline nlohmann::json topic_counts_to_json(const TopicCountReport& report) {
    nlohmann::json topics = nlohmann::json::array();
    for (const auto& [topic_id, count] : report.per_topic)
        topics.push_back({{"topic_id", topic_id}, {"positives", count}});
    return nlohmann::json{
        {"report", "topic_counts"},
        {"total_documents", report.total_documents},
        {"unassigned", report.unassigned},
        {"topics", std::move(topics)},
    };
}

inline TopicCountReport topic_counts_from_json(const nlohmann::json& j) {
    try {
        TopicCountReport report;
        report.total_documents = j.at("total_documents").get<std::uint64_t>();
        report.unassigned = j.at("unassigned").get<std::uint64_t>();
        for (const auto& t : j.at("topics"))
            report.per_topic.emplace_back(t.at("topic_id").get<std::string>(),
                                          t.at("positives").get<std::uint64_t>());
        return report;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCategory::parse, std::string("topic count report: ") + e.what());
    }
}

inline std::string render_topic_counts_table(const TopicCountReport& report) {
    std::size_t id_width = 5;  // "topic"
    for (const auto& [topic_id, count] : report.per_topic)
        id_width = std::max(id_width, topic_id.size());
    char buf[128];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-*s %12s\n", static_cast<int>(id_width), "topic",
                  "positives");
    out += buf;
    for (const auto& [topic_id, count] : report.per_topic) {
        std::snprintf(buf, sizeof(buf), "%-*s %12llu\n", static_cast<int>(id_width),
                      topic_id.c_str(), static_cast<unsigned long long>(count));
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "total documents: %llu, unassigned: %llu\n",
                  static_cast<unsigned long long>(report.total_documents),
                  static_cast<unsigned long long>(report.unassigned));
    out += buf;
    return out;
}

struct ClassifyResult {
    TopicCountReport counts;
    std::filesystem::path predictions_path;
    std::filesystem::path counts_path;
};

// Applies a persisted model; writes per-document predictions (JSONL) and the
// per-topic positive-count report.
inline ClassifyResult run_classify(const PipelineConfig& config) {
    detail::ensure_out_dir(config.out_dir);
    if (config.model_path.empty())
        fail(ErrorCategory::config, "classify requires --model");
    const MultiLabelModel model = load_model(config.model_path);
    const Corpus corpus = detail::load_pipeline_corpus(config);
    const std::vector<std::set<std::string>> predictions = classify_corpus(model, corpus);

    ClassifyResult result;
    result.predictions_path = config.out_dir / "predictions.jsonl";
    result.counts_path = config.out_dir / "topic_counts.json";

    std::ofstream out(result.predictions_path);
    if (!out) fail(ErrorCategory::io, "cannot write " + result.predictions_path.string());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        out << nlohmann::json{{"id", corpus.documents()[i].id}, {"predicted", predictions[i]}}
                   .dump()
            << '\n';
    }
    if (!out) fail(ErrorCategory::io, "failed writing " + result.predictions_path.string());

    result.counts.total_documents = corpus.size();
    std::map<std::string, std::uint64_t> counts;
    for (const std::set<std::string>& p : predictions) {
        if (p.empty()) ++result.counts.unassigned;
        for (const std::string& topic_id : p) ++counts[topic_id];
    }
    for (const std::string& topic_id : model.topic_ids)
        result.counts.per_topic.emplace_back(topic_id, counts[topic_id]);

    std::ofstream counts_out(result.counts_path);
    if (!counts_out) fail(ErrorCategory::io, "cannot write " + result.counts_path.string());
    counts_out << topic_counts_to_json(result.counts).dump(2) << '\n';
    if (!counts_out) fail(ErrorCategory::io, "failed writing " + result.counts_path.string());
    return result;
}

}  // namespace entrokey
