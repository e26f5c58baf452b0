#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entrokey/classifier.hpp"
#include "entrokey/detail/hash.hpp"
#include "entrokey/errors.hpp"

namespace entrokey {

inline constexpr const char* kModelFormat = "entrokey-model";
inline constexpr int kModelFormatVersion = 1;

// The file records the vocabulary reference (hash + size) alongside the
// token list itself, so classification needs no separate vocabulary input;
// the hash is re-verified on load.
inline void save_model(const MultiLabelModel& model, const std::filesystem::path& path) {
    nlohmann::json j;
    j["format"] = kModelFormat;
    j["format_version"] = kModelFormatVersion;
    j["vocabulary"] = {
        {"hash", detail::hash_to_hex(model.vocabulary.hash())},
        {"size", model.vocabulary.size()},
        {"tokens", model.vocabulary.tokens()},
    };
    j["training"] = {
        {"learning_rate", model.config.learning_rate},
        {"max_epochs", model.config.max_epochs},
        {"shuffle_seed", model.config.shuffle_seed},
        {"update_rule", update_rule_name(model.config.update_rule)},
    };
    nlohmann::json topics = nlohmann::json::array();
    for (const std::string& topic_id : model.topic_ids) {
        const LinearModel& m = model.models.at(topic_id);
        topics.push_back({
            {"topic_id", topic_id},
            {"bias", m.bias},
            {"converged", m.converged},
            {"epochs_run", m.epochs_run},
            {"weights", m.weights},
        });
    }
    j["topics"] = std::move(topics);

    std::ofstream out(path);
    if (!out) fail(ErrorCategory::io, "cannot write model file " + path.string());
    out << j.dump() << '\n';
    if (!out) fail(ErrorCategory::io, "failed writing model file " + path.string());
}

inline MultiLabelModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::io, "cannot open model file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCategory::parse, "model file " + path.string() + ": " + e.what());
    }

    try {
        if (j.at("format").get<std::string>() != kModelFormat)
            fail(ErrorCategory::model, "model file " + path.string() + ": unrecognized format");
        if (j.at("format_version").get<int>() != kModelFormatVersion)
            fail(ErrorCategory::model, "model file " + path.string() + ": unsupported format version");

        const auto& jv = j.at("vocabulary");
        Vocabulary vocab(jv.at("tokens").get<std::vector<std::string>>());
        if (jv.at("size").get<std::size_t>() != vocab.size())
            fail(ErrorCategory::model, "model file " + path.string() + ": vocabulary size mismatch");
        const std::string recorded_hash = jv.at("hash").get<std::string>();
        const std::string actual_hash = detail::hash_to_hex(vocab.hash());
        if (recorded_hash != actual_hash)
            fail(ErrorCategory::model,
                 "model file " + path.string() + ": vocabulary hash mismatch (recorded " +
                     recorded_hash + ", loaded vocabulary hashes to " + actual_hash + ")");

        MultiLabelModel model;
        model.vocabulary = std::move(vocab);
        const auto& jt = j.at("training");
        model.config.learning_rate = jt.at("learning_rate").get<double>();
        model.config.max_epochs = jt.at("max_epochs").get<std::uint32_t>();
        model.config.shuffle_seed = jt.at("shuffle_seed").get<std::uint64_t>();
        model.config.update_rule = update_rule_from_string(jt.at("update_rule").get<std::string>());

        for (const auto& t : j.at("topics")) {
            LinearModel m;
            m.bias = t.at("bias").get<double>();
            m.converged = t.at("converged").get<bool>();
            m.epochs_run = t.at("epochs_run").get<std::uint32_t>();
            m.weights = t.at("weights").get<std::vector<double>>();
            if (m.weights.size() != model.vocabulary.size())
                fail(ErrorCategory::model,
                     "model file " + path.string() + ": weight vector length does not match vocabulary");
            const std::string topic_id = t.at("topic_id").get<std::string>();
            model.topic_ids.push_back(topic_id);
            model.models.emplace(topic_id, std::move(m));
        }
        if (model.topic_ids.empty())
            fail(ErrorCategory::model, "model file " + path.string() + ": no topics");
        return model;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCategory::parse, "model file " + path.string() + ": " + e.what());
    }
}

}  // namespace entrokey
