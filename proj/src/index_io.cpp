#include "tempovec/index_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "tempovec/util.hpp"

namespace tempovec {

namespace {

constexpr std::uint32_t kMagic = 0x54564958;  // "TVIX"

void put_u32(std::string& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                 static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
    out.append(b, 4);
}

void put_i64(std::string& out, std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(u >> (8 * i)));
}

void put_str(std::string& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.append(s);
}

class Reader {
public:
    Reader(const std::string& data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return byte();
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte()) << (8 * i);
        return v;
    }
    std::int64_t i64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
        return static_cast<std::int64_t>(v);
    }
    std::string str() {
        std::uint32_t n = u32();
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == data_.size(); }

private:
    unsigned char byte() { return static_cast<unsigned char>(data_[pos_++]); }
    void need(std::size_t n) {
        if (pos_ + n > data_.size()) throw IndexFormatError("truncated index tables");
    }
    const std::string& data_;
    std::size_t pos_ = 0;
};

std::string encode_tables(const TemporalIndex& index) {
    std::string out;
    put_u32(out, kMagic);
    put_u32(out, kIndexFormatVersion);
    out.push_back(static_cast<char>(index.granularity()));

    put_u32(out, static_cast<std::uint32_t>(index.num_words()));
    for (WordId w = 0; w < index.num_words(); ++w) put_str(out, index.phrase(w));

    put_u32(out, static_cast<std::uint32_t>(index.num_bins()));
    for (BinId b = 0; b < static_cast<BinId>(index.num_bins()); ++b) put_i64(out, index.bin_key(b));

    put_u32(out, static_cast<std::uint32_t>(index.num_docs()));
    for (const auto& doc : index.documents()) {
        put_str(out, doc.id);
        put_u32(out, static_cast<std::uint32_t>(doc.bin));
        put_u32(out, static_cast<std::uint32_t>(doc.tokens.size()));
        for (WordId w : doc.tokens) put_u32(out, w);
    }
    return out;
}

std::string checksum_string(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IndexFormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json make_manifest(const TemporalIndex& index, const std::string& checksum) {
    const auto& stats = index.stats();
    nlohmann::json manifest;
    manifest["format"] = "tempovec-index";
    manifest["format_version"] = kIndexFormatVersion;
    manifest["config"] = {
        {"granularity", to_string(index.config().granularity)},
        {"vocab_size", index.config().vocab_size},
        {"tokenizer", to_string(index.config().tokenizer)},
    };
    manifest["counts"] = {
        {"documents", index.num_docs()},
        {"words", index.num_words()},
        {"bins", index.num_bins()},
        {"records_read", stats.records_read},
        {"skipped_bad_timestamp", stats.skipped_bad_timestamp},
        {"dropped_empty_docs", stats.dropped_empty_docs},
        {"distinct_phrases", stats.distinct_phrases},
        {"vocabulary_truncated", stats.vocabulary_truncated},
    };
    manifest["checksum"] = checksum;
    return manifest;
}

}  // namespace

void save_index(const TemporalIndex& index, const std::filesystem::path& dir, bool force) {
    namespace fs = std::filesystem;
    const fs::path manifest_path = dir / "manifest.json";
    if (fs::exists(manifest_path) && !force) {
        try {
            auto existing = nlohmann::json::parse(read_file(manifest_path));
            auto version = existing.value("format_version", 0u);
            if (version != kIndexFormatVersion) {
                throw IndexFormatError(
                    "refusing to overwrite index of format version " + std::to_string(version) +
                    " (expected " + std::to_string(kIndexFormatVersion) + "); pass force to override");
            }
        } catch (const nlohmann::json::exception&) {
            throw IndexFormatError("existing manifest at " + manifest_path.string() +
                                   " is unreadable; pass force to override");
        }
    }
    fs::create_directories(dir);

    const std::string tables = encode_tables(index);
    const std::string checksum = checksum_string(tables);

    {
        std::ofstream out(dir / "tables.bin", std::ios::binary | std::ios::trunc);
        if (!out) throw IndexFormatError("cannot write " + (dir / "tables.bin").string());
        out.write(tables.data(), static_cast<std::streamsize>(tables.size()));
        if (!out) throw IndexFormatError("write failed for " + (dir / "tables.bin").string());
    }
    {
        std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IndexFormatError("cannot write " + manifest_path.string());
        out << make_manifest(index, checksum).dump(2) << "\n";
        if (!out) throw IndexFormatError("write failed for " + manifest_path.string());
    }
}

TemporalIndex load_index(const std::filesystem::path& dir) {
    const auto manifest_text = read_file(dir / "manifest.json");
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(manifest_text);
    } catch (const nlohmann::json::exception& e) {
        throw IndexFormatError("invalid manifest: " + std::string(e.what()));
    }
    if (manifest.value("format", "") != "tempovec-index")
        throw IndexFormatError("not a tempovec index directory: " + dir.string());
    const auto version = manifest.value("format_version", 0u);
    if (version != kIndexFormatVersion)
        throw IndexFormatError("unsupported index format version " + std::to_string(version));

    const std::string tables = read_file(dir / "tables.bin");
    if (manifest.value("checksum", "") != checksum_string(tables))
        throw IndexFormatError("index checksum mismatch; tables.bin is corrupt");

    Reader reader(tables);
    if (reader.u32() != kMagic) throw IndexFormatError("bad magic in tables.bin");
    if (reader.u32() != kIndexFormatVersion) throw IndexFormatError("bad version in tables.bin");

    IngestConfig config;
    const auto gran = reader.u8();
    if (gran > static_cast<std::uint8_t>(Granularity::RawInteger))
        throw IndexFormatError("bad granularity byte in tables.bin");
    config.granularity = static_cast<Granularity>(gran);

    const auto& manifest_config = manifest.at("config");
    config.vocab_size = manifest_config.value("vocab_size", std::size_t{10000});
    if (auto mode = tokenizer_from_string(manifest_config.value("tokenizer", "heuristic")))
        config.tokenizer = *mode;

    IngestStats stats;
    const auto& counts = manifest.at("counts");
    stats.records_read = counts.value("records_read", std::uint64_t{0});
    stats.skipped_bad_timestamp = counts.value("skipped_bad_timestamp", std::uint64_t{0});
    stats.dropped_empty_docs = counts.value("dropped_empty_docs", std::uint64_t{0});
    stats.distinct_phrases = counts.value("distinct_phrases", std::uint64_t{0});
    stats.vocabulary_truncated = counts.value("vocabulary_truncated", false);

    const std::uint32_t num_words = reader.u32();
    std::vector<std::string> phrases;
    phrases.reserve(num_words);
    for (std::uint32_t w = 0; w < num_words; ++w) phrases.push_back(reader.str());

    const std::uint32_t num_bins = reader.u32();
    std::vector<std::int64_t> bin_keys;
    bin_keys.reserve(num_bins);
    for (std::uint32_t b = 0; b < num_bins; ++b) bin_keys.push_back(reader.i64());

    const std::uint32_t num_docs = reader.u32();
    std::vector<Document> docs;
    docs.reserve(num_docs);
    for (std::uint32_t d = 0; d < num_docs; ++d) {
        Document doc;
        doc.id = reader.str();
        const std::uint32_t bin = reader.u32();
        if (bin >= num_bins) throw IndexFormatError("document bin out of range in tables.bin");
        doc.bin = static_cast<BinId>(bin);
        const std::uint32_t ntokens = reader.u32();
        doc.tokens.reserve(ntokens);
        for (std::uint32_t i = 0; i < ntokens; ++i) {
            const std::uint32_t w = reader.u32();
            if (w >= num_words) throw IndexFormatError("token word id out of range in tables.bin");
            doc.tokens.push_back(w);
        }
        docs.push_back(std::move(doc));
    }
    if (!reader.done()) throw IndexFormatError("trailing bytes in tables.bin");

    auto index = IndexBuilder::build(std::move(phrases), std::move(docs), std::move(bin_keys),
                                     config, stats);
    index.verify();
    return index;
}

std::string index_checksum(const std::filesystem::path& dir) {
    return checksum_string(read_file(dir / "tables.bin"));
}

}  // namespace tempovec
