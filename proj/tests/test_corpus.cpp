#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "entrokey/corpus.hpp"
#include "entrokey/corpus_io.hpp"

using namespace entrokey;
namespace fs = std::filesystem;

namespace {

TopicCatalog five_topics() {
    std::vector<TopicInfo> entries;
    for (int i = 1; i <= 5; ++i)
        entries.push_back({"topic" + std::to_string(i), "Topic " + std::to_string(i), ""});
    return TopicCatalog(entries);
}

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("tokenize splits on unicode whitespace") {
    TokenizerConfig config;
    CHECK(tokenize("駅 近い", config) == std::vector<std::string>{"駅", "近い"});
    // ideographic space U+3000
    CHECK(tokenize("駅\xE3\x80\x80近い", config) == std::vector<std::string>{"駅", "近い"});
    CHECK(tokenize("", config).empty());
    CHECK(tokenize("   \t\n ", config).empty());
    CHECK(tokenize("one\ttwo\nthree", config) ==
          std::vector<std::string>{"one", "two", "three"});
}

TEST_CASE("tokenize applies lowercase and stoplist") {
    TokenizerConfig config;
    config.lowercase = true;
    config.stoplist = {"the"};
    CHECK(tokenize("The the STATION", config) == std::vector<std::string>{"station"});
}

TEST_CASE("tokenize drops short tokens by codepoint count") {
    TokenizerConfig config;
    config.min_token_length = 2;
    // 駅 is one codepoint (three bytes): dropped. 近い is two: kept.
    CHECK(tokenize("駅 近い ab c", config) == std::vector<std::string>{"近い", "ab"});
}

TEST_CASE("tokenize is deterministic") {
    TokenizerConfig config;
    config.lowercase = true;
    config.stoplist = {"a", "of"};
    const std::string text = "A tale OF two Cities of a";
    CHECK(tokenize(text, config) == tokenize(text, config));
}

TEST_CASE("pretokenized mode keeps case and drops stoplist only") {
    TokenizerConfig config;
    config.mode = TokenizerMode::pretokenized;
    config.lowercase = true;  // ignored in this mode
    config.stoplist = {"の"};
    CHECK(tokenize("駅 の 近い Big", config) == std::vector<std::string>{"駅", "近い", "Big"});
}

TEST_CASE("filter_tokens removes stoplist members preserving order") {
    TokenizerConfig config;
    config.stoplist = {"a"};
    CHECK(filter_tokens({"a", "park", "a"}, config) == std::vector<std::string>{"park"});
    CHECK(filter_tokens({}, config).empty());

    TokenizerConfig jp;
    jp.stoplist = {"の"};
    // hand-filtered expectation
    CHECK(filter_tokens({"駅", "の", "近い"}, jp) == std::vector<std::string>{"駅", "近い"});
}

TEST_CASE("filter_tokens output is a subsequence of its input") {
    TokenizerConfig config;
    config.stoplist = {"x", "yy"};
    config.min_token_length = 2;
    const std::vector<std::string> input = {"x", "ab", "yy", "c", "abc", "x", "dd"};
    const std::vector<std::string> output = filter_tokens(input, config);
    std::size_t pos = 0;
    for (const std::string& t : output) {
        bool found = false;
        while (pos < input.size()) {
            if (input[pos++] == t) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("load_corpus preserves record order") {
    const fs::path path = temp_file(
        "entrokey_order.jsonl",
        R"({"id": "p1", "text": "station near", "labels": ["topic1"]})"
        "\n"
        R"({"id": "p2", "text": "park", "labels": []})"
        "\n");
    const Corpus corpus = load_corpus(path, CorpusFormat::jsonl, five_topics());
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.documents()[0].id == "p1");
    CHECK(corpus.documents()[1].id == "p2");
    CHECK(corpus.documents()[0].tokens == std::vector<std::string>{"station", "near"});
    CHECK(corpus.documents()[0].labels == std::set<std::string>{"topic1"});
}

TEST_CASE("load_corpus rejects unknown labels naming the record") {
    const fs::path path = temp_file(
        "entrokey_unknown.jsonl",
        R"({"id": "p1", "text": "x", "labels": ["topic_9"]})"
        "\n");
    try {
        load_corpus(path, CorpusFormat::jsonl, five_topics());
        FAIL("expected unknown-label error");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::data);
        CHECK(std::string(e.what()).find("p1") != std::string::npos);
        CHECK(std::string(e.what()).find("topic_9") != std::string::npos);
    }
}

TEST_CASE("load_corpus rejects duplicate ids") {
    const fs::path path = temp_file(
        "entrokey_dup.jsonl",
        R"({"id": "p1", "text": "x", "labels": []})"
        "\n"
        R"({"id": "p1", "text": "y", "labels": []})"
        "\n");
    try {
        load_corpus(path, CorpusFormat::jsonl, five_topics());
        FAIL("expected duplicate-id error");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::data);
        CHECK(std::string(e.what()).find("p1") != std::string::npos);
    }
}

TEST_CASE("load_corpus reports malformed records with line numbers") {
    const fs::path path = temp_file(
        "entrokey_malformed.jsonl",
        R"({"id": "p1", "text": "x", "labels": []})"
        "\n"
        "{not json\n");
    try {
        load_corpus(path, CorpusFormat::jsonl, five_topics());
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::parse);
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("load_corpus rejects empty files") {
    const fs::path path = temp_file("entrokey_empty.jsonl", "");
    CHECK_THROWS_AS(load_corpus(path, CorpusFormat::jsonl, five_topics()), Error);
}

TEST_CASE("load_corpus accepts pretokenized records") {
    TokenizerConfig config;
    config.mode = TokenizerMode::pretokenized;
    config.stoplist = {"の"};
    const fs::path path = temp_file(
        "entrokey_pretok.jsonl",
        R"({"id": "p1", "tokens": ["駅", "の", "近い"], "labels": ["topic1"]})"
        "\n");
    const Corpus corpus = load_corpus(path, CorpusFormat::jsonl, five_topics(), config);
    CHECK(corpus.documents()[0].tokens == std::vector<std::string>{"駅", "近い"});
    CHECK(corpus.documents()[0].text.empty());
}

TEST_CASE("pretokenized mode requires a tokens field") {
    TokenizerConfig config;
    config.mode = TokenizerMode::pretokenized;
    const fs::path path = temp_file(
        "entrokey_pretok_missing.jsonl",
        R"({"id": "p1", "text": "a b", "labels": []})"
        "\n");
    try {
        load_corpus(path, CorpusFormat::jsonl, five_topics(), config);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::parse);
    }
}

TEST_CASE("load_corpus reads csv with quoted fields and semicolon labels") {
    const fs::path path = temp_file("entrokey_basic.csv",
                                    "id,text,labels\n"
                                    "p1,station near,topic1\n"
                                    "p2,\"park, green\",topic1;topic3\n"
                                    "p3,empty,\n");
    const Corpus corpus = load_corpus(path, CorpusFormat::csv, five_topics());
    REQUIRE(corpus.size() == 3);
    CHECK(corpus.documents()[1].text == "park, green");
    CHECK(corpus.documents()[1].labels == std::set<std::string>{"topic1", "topic3"});
    CHECK(corpus.documents()[2].labels.empty());
}

TEST_CASE("csv format cannot carry pretokenized records") {
    TokenizerConfig config;
    config.mode = TokenizerMode::pretokenized;
    const fs::path path = temp_file("entrokey_pretok.csv", "id,text,labels\np1,x,\n");
    try {
        load_corpus(path, CorpusFormat::csv, five_topics(), config);
        FAIL("expected config error");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::config);
    }
}

TEST_CASE("save then load round-trips the corpus") {
    std::vector<Document> docs;
    docs.push_back({"p1", "駅 近い", {"駅", "近い"}, {"topic1"}});
    docs.push_back({"p2", "a park, \"quoted\"", {"a", "park,", "\"quoted\""}, {"topic3", "topic5"}});
    docs.push_back({"p3", "", {}, {}});
    const Corpus corpus(docs, five_topics());

    const fs::path path = fs::temp_directory_path() / "entrokey_roundtrip.jsonl";
    save_corpus(corpus, path);
    const Corpus reloaded = load_corpus(path, CorpusFormat::jsonl, five_topics());
    CHECK(reloaded == corpus);
}

TEST_CASE("catalog io round-trips and validates") {
    const TopicCatalog catalog = five_topics();
    const fs::path path = fs::temp_directory_path() / "entrokey_catalog.json";
    save_catalog(catalog, path);
    CHECK(load_catalog(path) == catalog);

    CHECK_THROWS_AS(TopicCatalog(std::vector<TopicInfo>{}), Error);
    CHECK_THROWS_AS(TopicCatalog({{"t1", "", ""}, {"t1", "", ""}}), Error);
}
