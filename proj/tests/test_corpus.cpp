#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tempovec/corpus.hpp"
#include "tempovec/index_io.hpp"
#include "tempovec/tokenize.hpp"
#include "toy.hpp"

using namespace tempovec;

namespace {

RawRecord rec(std::string id, std::string ts, std::vector<std::string> tokens) {
    RawRecord r;
    r.id = std::move(id);
    r.timestamp = std::move(ts);
    r.tokens = std::move(tokens);
    return r;
}

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("extract_phrases groups non-stopword runs") {
    CHECK(extract_phrases("") == std::vector<std::string>{});
    CHECK(extract_phrases("Gastric cancer, and gastric cancer.") ==
          std::vector<std::string>{"gastric cancer", "gastric cancer"});
    CHECK(extract_phrases("The anticancer agents") ==
          std::vector<std::string>{"anticancer agents"});
    CHECK(extract_phrases("and or the") == std::vector<std::string>{});
    CHECK(extract_phrases("p53; BRCA1") == std::vector<std::string>{"p53", "brca1"});
}

TEST_CASE("split_words keeps stopwords as plain tokens") {
    CHECK(split_words("The anticancer agents") ==
          std::vector<std::string>{"the", "anticancer", "agents"});
    CHECK(split_words("") == std::vector<std::string>{});
}

TEST_CASE("bin_timestamp granularities") {
    CHECK(bin_timestamp("1998-06-01", Granularity::Year) == 1998);
    CHECK(bin_timestamp("1998-12-31", Granularity::Year) == 1998);
    CHECK(bin_timestamp("2018-04-30", Granularity::Month) == 2018 * 12 + 3);
    CHECK(bin_timestamp("2018-03-31", Granularity::Month) == 2018 * 12 + 2);
    CHECK(bin_timestamp("2018-04-30", Granularity::Month) !=
          bin_timestamp("2018-03-31", Granularity::Month));
    CHECK(bin_timestamp("42", Granularity::RawInteger) == 42);
    CHECK(bin_timestamp("-7", Granularity::RawInteger) == -7);

    // Plain integers act as pre-binned keys under any granularity.
    CHECK(bin_timestamp("1998", Granularity::Year) == 1998);
    CHECK(bin_timestamp("5", Granularity::Month) == 5);

    CHECK(!bin_timestamp("not a date", Granularity::Year));
    CHECK(!bin_timestamp("", Granularity::Year));
    CHECK(!bin_timestamp("1998-13-01", Granularity::Month));

    // Monotone in the raw value.
    CHECK(*bin_timestamp("1997-12-31", Granularity::Year) <=
          *bin_timestamp("1998-01-01", Granularity::Year));
}

TEST_CASE("format_bin_key inverts the binning") {
    CHECK(format_bin_key(1998, Granularity::Year) == "1998");
    CHECK(format_bin_key(2018 * 12 + 3, Granularity::Month) == "2018-04");
    CHECK(format_bin_key(42, Granularity::RawInteger) == "42");
    // Floor division for pre-1 AD months.
    CHECK(format_bin_key(-1, Granularity::Month) == "-1-12");
}

TEST_CASE("build_vocabulary ranks by frequency then phrase") {
    const std::unordered_map<std::string, std::uint64_t> counts{
        {"a", 5}, {"b", 3}, {"c", 1}};
    auto vocab = build_vocabulary(counts, 2);
    CHECK(vocab.size() == 2);
    CHECK(vocab.count("a") == 1);
    CHECK(vocab.count("b") == 1);
    CHECK(vocab.at("a") == 0);
    CHECK(vocab.at("b") == 1);

    const std::unordered_map<std::string, std::uint64_t> tied{{"a", 2}, {"b", 2}};
    auto first = build_vocabulary(tied, 1);
    CHECK(first.size() == 1);
    CHECK(first.count("a") == 1);

    bool truncated = true;
    auto all = build_vocabulary(tied, 10, &truncated);
    CHECK(all.size() == 2);
    CHECK(!truncated);

    CHECK_THROWS_AS(build_vocabulary(counts, 0), std::invalid_argument);
}

TEST_CASE("ingest_documents counts the two-record example") {
    const std::vector<RawRecord> records{rec("d1", "1998", {"a", "b"}),
                                         rec("d2", "1999", {"b", "c"})};
    IngestConfig config;
    config.vocab_size = 10;
    const auto index = ingest_documents(records, config);

    CHECK(index.num_words() == 3);
    CHECK(index.num_docs() == 2);
    CHECK(index.num_bins() == 2);
    CHECK(index.doc_freq(index.require_word("b")) == 2);
    CHECK(index.doc_freq(index.require_word("a")) == 1);
    CHECK(index.bin_label(0) == "1998");
    CHECK(index.bin_label(1) == "1999");
}

TEST_CASE("ingest_documents counts repeated tokens") {
    const auto index = ingest_documents({rec("d", "2000", {"x", "x", "x"})}, IngestConfig{});
    const WordId x = index.require_word("x");
    CHECK(index.term_freq(x, 0) == 3);
    CHECK(index.doc_freq(x) == 1);
    CHECK(index.postings(x).size() == 1);
    CHECK(index.postings(x)[0].positions == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("ingest_documents error paths") {
    CHECK_THROWS_WITH_AS(ingest_documents({}, IngestConfig{}), "empty corpus", CorpusError);

    const std::vector<RawRecord> untimed{rec("d1", "never", {"a"})};
    CHECK_THROWS_WITH_AS(ingest_documents(untimed, IngestConfig{}), "no timestamped documents",
                         CorpusError);

    const std::vector<RawRecord> dup{rec("d", "1998", {"a"}), rec("d", "1999", {"b"})};
    CHECK_THROWS_AS(ingest_documents(dup, IngestConfig{}), CorpusError);
}

TEST_CASE("ingest_documents skips and drops with counts") {
    IngestConfig config;
    config.vocab_size = 1;  // keeps only the most frequent phrase
    const std::vector<RawRecord> records{
        rec("d1", "1998", {"a", "a", "b"}),
        rec("d2", "bogus", {"a"}),
        rec("d3", "1999", {"b"}),  // all tokens filtered out -> dropped
    };
    const auto index = ingest_documents(records, config);
    CHECK(index.num_docs() == 1);
    CHECK(index.num_words() == 1);
    CHECK(index.stats().records_read == 3);
    CHECK(index.stats().skipped_bad_timestamp == 1);
    CHECK(index.stats().dropped_empty_docs == 1);
    CHECK(index.stats().vocabulary_truncated);

    // Positions refer to the filtered token sequence.
    const auto index2 = ingest_documents({rec("d", "1998", {"a", "b", "a"})}, [] {
        IngestConfig c;
        c.vocab_size = 1;
        return c;
    }());
    const WordId a = index2.require_word("a");
    CHECK(index2.postings(a)[0].positions == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("word lookups") {
    const auto index = ingest_documents({rec("d", "1998", {"alpha", "beta"})}, IngestConfig{});
    CHECK(index.word_id("alpha").has_value());
    CHECK(!index.word_id("gamma").has_value());
    CHECK_THROWS_AS(index.require_word("gamma"), UnknownWordError);
    CHECK(index.phrase(index.require_word("beta")) == "beta");
}

TEST_CASE("read_jsonl_records parses and validates") {
    std::istringstream in(R"({"id": "d1", "timestamp": "1998", "tokens": ["a", "b"]}

{"id": "d2", "timestamp": "1999-03-02", "text": "gastric cancer"}
)");
    const auto records = read_jsonl_records(in);
    REQUIRE(records.size() == 2);
    CHECK(records[0].id == "d1");
    CHECK(records[0].tokens == std::vector<std::string>{"a", "b"});
    CHECK(!records[0].text);
    CHECK(records[1].text == "gastric cancer");

    std::istringstream bad("{\"id\": \"d1\"\n");
    CHECK_THROWS_AS(read_jsonl_records(bad), CorpusError);

    std::istringstream both(
        R"({"id": "d", "timestamp": "1", "text": "x", "tokens": ["x"]})");
    CHECK_THROWS_AS(read_jsonl_records(both), CorpusError);

    std::istringstream neither(R"({"id": "d", "timestamp": "1"})");
    CHECK_THROWS_AS(read_jsonl_records(neither), CorpusError);
}

TEST_CASE("ingest_jsonl end to end with integer timestamps in JSON") {
    std::istringstream in(
        R"({"id": "d1", "timestamp": 1998, "tokens": ["a", "b"]}
{"id": "d2", "timestamp": 1999, "tokens": ["b"]}
)");
    const auto index = ingest_jsonl(in, IngestConfig{});
    CHECK(index.num_docs() == 2);
    CHECK(index.num_bins() == 2);
}

TEST_CASE("index round-trips through disk") {
    const auto records = make_toy_corpus(7);
    const auto index = ingest_toy(records);
    const auto dir = temp_dir("tempovec_roundtrip");

    save_index(index, dir);
    const auto loaded = load_index(dir);

    CHECK(loaded.num_docs() == index.num_docs());
    CHECK(loaded.num_words() == index.num_words());
    CHECK(loaded.num_bins() == index.num_bins());
    for (WordId w = 0; w < index.num_words(); ++w) {
        CHECK(loaded.phrase(w) == index.phrase(w));
        CHECK(loaded.doc_freq(w) == index.doc_freq(w));
        REQUIRE(loaded.postings(w).size() == index.postings(w).size());
        for (std::size_t i = 0; i < index.postings(w).size(); ++i) {
            CHECK(loaded.postings(w)[i].doc == index.postings(w)[i].doc);
            CHECK(loaded.postings(w)[i].positions == index.postings(w)[i].positions);
        }
    }
    for (DocId d = 0; d < index.num_docs(); ++d) {
        CHECK(loaded.document(d).id == index.document(d).id);
        CHECK(loaded.document(d).bin == index.document(d).bin);
        CHECK(loaded.document(d).tokens == index.document(d).tokens);
    }
    CHECK(loaded.config().granularity == index.config().granularity);

    // Saving the loaded index reproduces the same checksum.
    const auto dir2 = temp_dir("tempovec_roundtrip2");
    save_index(loaded, dir2);
    CHECK(index_checksum(dir) == index_checksum(dir2));

    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("load_index rejects corruption") {
    const auto index = ingest_toy(make_toy_corpus(9));
    const auto dir = temp_dir("tempovec_corrupt");
    save_index(index, dir);

    // Flip one byte in the middle of the tables.
    std::fstream f(dir / "tables.bin", std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(0, std::ios::end);
    const auto size = static_cast<long>(f.tellg());
    f.seekp(size / 2);
    char c;
    f.seekg(size / 2);
    f.get(c);
    f.seekp(size / 2);
    f.put(static_cast<char>(c ^ 0x40));
    f.close();

    CHECK_THROWS_AS(load_index(dir), std::exception);
    std::filesystem::remove_all(dir);
}

TEST_CASE("save_index refuses version mismatch without force") {
    const auto index = ingest_toy(make_toy_corpus(11));
    const auto dir = temp_dir("tempovec_version");
    save_index(index, dir);

    // Fake an older index by editing the manifest's format_version.
    {
        std::ifstream in(dir / "manifest.json");
        std::string manifest((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
        const auto pos = manifest.find("\"format_version\": 1");
        REQUIRE(pos != std::string::npos);
        manifest.replace(pos, 19, "\"format_version\": 0");
        std::ofstream out(dir / "manifest.json", std::ios::trunc);
        out << manifest;
    }

    CHECK_THROWS_AS(save_index(index, dir), IndexFormatError);
    CHECK_NOTHROW(save_index(index, dir, /*force=*/true));
    CHECK_NOTHROW(load_index(dir));
    std::filesystem::remove_all(dir);
}

TEST_CASE("reingesting is deterministic") {
    const auto records = make_toy_corpus(13);
    const auto a = ingest_toy(records);
    const auto b = ingest_toy(records);
    const auto dir_a = temp_dir("tempovec_det_a");
    const auto dir_b = temp_dir("tempovec_det_b");
    save_index(a, dir_a);
    save_index(b, dir_b);
    CHECK(index_checksum(dir_a) == index_checksum(dir_b));
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}
