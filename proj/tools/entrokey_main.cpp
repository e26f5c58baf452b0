// Command-line frontend for the entropy-keyword pipeline. One subcommand per
// stage: generate, extract-keywords, train, evaluate, classify, report.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entrokey/entrokey.hpp"

namespace {

struct CliOptions {
    entrokey::PipelineConfig pipeline;
    std::string corpus_format = "jsonl";
    std::string update_rule = "label-driven";
    std::string tokenizer_mode = "whitespace";
    std::string stoplist_path;

    entrokey::GeneratorConfig generator;
    std::string report_file;
};

std::set<std::string> load_stoplist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) entrokey::fail(entrokey::ErrorCategory::io, "cannot open stoplist " + path.string());
    std::set<std::string> stoplist;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) stoplist.insert(line);
    }
    return stoplist;
}

void add_io_flags(CLI::App* cmd, CliOptions& opt, bool needs_corpus) {
    auto* corpus = cmd->add_option("--corpus", opt.pipeline.corpus_path, "Corpus file (JSONL or CSV)");
    auto* catalog = cmd->add_option("--catalog", opt.pipeline.catalog_path, "Topic catalog file (JSON)");
    if (needs_corpus) {
        corpus->required();
        catalog->required();
    }
    cmd->add_option("--format", opt.corpus_format, "Corpus file format")
        ->check(CLI::IsMember({"jsonl", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.pipeline.out_dir, "Output directory")->capture_default_str();
}

void add_tokenizer_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--tokenizer-mode", opt.tokenizer_mode, "Tokenizer mode")
        ->check(CLI::IsMember({"whitespace", "pretokenized"}))
        ->capture_default_str();
    cmd->add_flag("--lowercase", opt.pipeline.tokenizer.lowercase, "Lowercase ASCII letters");
    cmd->add_option("--stoplist", opt.stoplist_path, "Stoplist file, one token per line");
    cmd->add_option("--min-token-length", opt.pipeline.tokenizer.min_token_length,
                    "Drop tokens shorter than this many codepoints")
        ->capture_default_str();
}

void add_selection_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--alpha", opt.pipeline.selection.alpha,
                    "Positive-keyword threshold coefficient")
        ->capture_default_str();
    cmd->add_option("--alpha-prime", opt.pipeline.selection.alpha_prime,
                    "Negative-keyword threshold coefficient")
        ->capture_default_str();
    cmd->add_option("--min-doc-freq", opt.pipeline.selection.min_doc_freq,
                    "Keyword floor: same-side document frequency")
        ->capture_default_str();
    cmd->add_option("--min-entropy", opt.pipeline.selection.min_entropy,
                    "Keyword floor: same-side entropy in bits")
        ->capture_default_str();
}

void add_training_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--learning-rate", opt.pipeline.training.learning_rate,
                    "Perceptron update step")
        ->capture_default_str();
    cmd->add_option("--max-epochs", opt.pipeline.training.max_epochs,
                    "Epoch cap when training does not converge")
        ->capture_default_str();
    cmd->add_option("--update-rule", opt.update_rule, "Perceptron update rule")
        ->check(CLI::IsMember({"label-driven", "paper-literal"}))
        ->capture_default_str();
    cmd->add_flag("--per-topic-vocab", opt.pipeline.per_topic_vocabulary,
                  "Restrict each topic's classifier to its own keyword dimensions");
}

void finalize(CliOptions& opt) {
    opt.pipeline.corpus_format = entrokey::corpus_format_from_string(opt.corpus_format);
    opt.pipeline.training.update_rule = entrokey::update_rule_from_string(opt.update_rule);
    opt.pipeline.training.shuffle_seed = opt.pipeline.seed;
    opt.pipeline.tokenizer.mode = opt.tokenizer_mode == "pretokenized"
                                      ? entrokey::TokenizerMode::pretokenized
                                      : entrokey::TokenizerMode::whitespace;
    if (!opt.stoplist_path.empty())
        opt.pipeline.tokenizer.stoplist = load_stoplist(opt.stoplist_path);
    opt.generator.seed = opt.pipeline.seed;
}

int run_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) entrokey::fail(entrokey::ErrorCategory::io, "cannot open report file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        entrokey::fail(entrokey::ErrorCategory::parse, "report file " + path + ": " + e.what());
    }
    const std::string kind = j.value("report", "");
    if (kind == "metrics") {
        std::cout << entrokey::render_metrics_table(entrokey::metrics_from_json(j));
    } else if (kind == "topic_counts") {
        std::cout << entrokey::render_topic_counts_table(entrokey::topic_counts_from_json(j));
    } else {
        entrokey::fail(entrokey::ErrorCategory::parse,
                       "report file " + path + ": unrecognized report type");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-based topic keyword extraction, training and evaluation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (INI; sections per subcommand)");

    CliOptions opt;

    auto* seed_opt =
        app.add_option("--seed", opt.pipeline.seed, "Master seed for shuffling and generation");
    seed_opt->capture_default_str();

    CLI::App* generate = app.add_subcommand("generate", "Write a synthetic planted-topic corpus");
    generate->add_option("--docs", opt.generator.n_docs, "Number of documents")->capture_default_str();
    generate->add_option("--topics", opt.generator.n_topics, "Number of topics")->capture_default_str();
    generate->add_option("--words-per-topic", opt.generator.words_per_topic,
                         "Planted vocabulary size per topic")->capture_default_str();
    generate->add_option("--noise", opt.generator.noise_rate,
                         "Probability a token is drawn from the shared noise pool")
        ->capture_default_str();
    generate->add_option("--doc-length", opt.generator.tokens_per_doc, "Tokens per document")
        ->capture_default_str();
    generate->add_option("--noise-vocab", opt.generator.noise_vocab_size,
                         "Size of the shared noise pool")->capture_default_str();
    generate->add_option("--seed", opt.pipeline.seed, "Generation seed");
    generate->add_option("--out", opt.pipeline.out_dir, "Output directory")->capture_default_str();

    CLI::App* extract =
        app.add_subcommand("extract-keywords", "Select per-topic keywords by entropy comparison");
    add_io_flags(extract, opt, true);
    add_tokenizer_flags(extract, opt);
    add_selection_flags(extract, opt);
    extract->add_option("--seed", opt.pipeline.seed, "Master seed");

    CLI::App* train = app.add_subcommand("train", "Train one-vs-rest linear classifiers");
    add_io_flags(train, opt, true);
    add_tokenizer_flags(train, opt);
    add_selection_flags(train, opt);
    add_training_flags(train, opt);
    train->add_option("--model", opt.pipeline.model_path, "Model output path (default <out>/model.json)");
    train->add_option("--seed", opt.pipeline.seed, "Shuffle seed");

    CLI::App* evaluate = app.add_subcommand("evaluate", "K-fold cross-validation with P/R/F1 report");
    add_io_flags(evaluate, opt, true);
    add_tokenizer_flags(evaluate, opt);
    add_selection_flags(evaluate, opt);
    add_training_flags(evaluate, opt);
    evaluate->add_option("--k-folds", opt.pipeline.k_folds, "Number of folds")->capture_default_str();
    evaluate->add_option("--seed", opt.pipeline.seed, "Fold and shuffle seed");

    CLI::App* classify = app.add_subcommand("classify", "Assign topics with a trained model");
    add_io_flags(classify, opt, true);
    add_tokenizer_flags(classify, opt);
    classify->add_option("--model", opt.pipeline.model_path, "Model file")->required();

    CLI::App* report = app.add_subcommand("report", "Render a metrics or topic-count report as a table");
    report->add_option("file", opt.report_file, "Report JSON written by evaluate or classify")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        finalize(opt);
        if (generate->parsed()) {
            const entrokey::GenerateResult result =
                entrokey::run_generate(opt.generator, opt.pipeline.out_dir);
            std::cout << "wrote " << result.corpus_path.string() << " (" << result.documents
                      << " documents), " << result.catalog_path.string() << ", "
                      << result.planted_path.string() << "\n";
        } else if (extract->parsed()) {
            const entrokey::ExtractResult result = entrokey::run_extract_keywords(opt.pipeline);
            for (const entrokey::KeywordSet& set : result.keyword_sets) {
                std::cout << set.topic_id << ": " << set.positive_keywords.size()
                          << " positive, " << set.negative_keywords.size()
                          << " negative keywords\n";
            }
            std::cout << "vocabulary size " << result.vocabulary.size() << ", files in "
                      << opt.pipeline.out_dir.string() << "\n";
        } else if (train->parsed()) {
            const std::filesystem::path model_path = entrokey::run_train(opt.pipeline);
            const entrokey::MultiLabelModel model = entrokey::load_model(model_path);
            for (const std::string& topic_id : model.topic_ids) {
                const entrokey::LinearModel& m = model.models.at(topic_id);
                std::cout << topic_id << ": " << (m.converged ? "converged" : "not converged")
                          << " after " << m.epochs_run << " epochs\n";
            }
            std::cout << "model written to " << model_path.string() << "\n";
        } else if (evaluate->parsed()) {
            const entrokey::MetricsReport result = entrokey::run_evaluate(opt.pipeline);
            std::cout << entrokey::render_metrics_table(result);
            std::cout << "metrics written to " << (opt.pipeline.out_dir / "metrics.json").string()
                      << "\n";
        } else if (classify->parsed()) {
            const entrokey::ClassifyResult result = entrokey::run_classify(opt.pipeline);
            std::cout << entrokey::render_topic_counts_table(result.counts);
            std::cout << "predictions written to " << result.predictions_path.string() << "\n";
        } else if (report->parsed()) {
            return run_report(opt.report_file);
        }
    } catch (const entrokey::Error& e) {
        std::cerr << "entrokey: error [" << entrokey::category_name(e.category()) << "]: "
                  << e.what() << "\n";
        return entrokey::category_exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "entrokey: error [internal]: " << e.what() << "\n";
        return entrokey::category_exit_code(entrokey::ErrorCategory::internal);
    }
    return 0;
}
