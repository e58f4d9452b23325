#include "tempovec/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "json.hpp"

#include "tempovec/tokenize.hpp"

namespace tempovec {

std::string to_string(Granularity g) {
    switch (g) {
        case Granularity::Year: return "year";
        case Granularity::Month: return "month";
        case Granularity::RawInteger: return "raw";
    }
    return "year";
}

std::string to_string(TokenizerMode m) {
    return m == TokenizerMode::Heuristic ? "heuristic" : "whitespace";
}

std::optional<Granularity> granularity_from_string(std::string_view s) {
    if (s == "year") return Granularity::Year;
    if (s == "month") return Granularity::Month;
    if (s == "raw" || s == "raw-integer") return Granularity::RawInteger;
    return std::nullopt;
}

std::optional<TokenizerMode> tokenizer_from_string(std::string_view s) {
    if (s == "heuristic") return TokenizerMode::Heuristic;
    if (s == "whitespace") return TokenizerMode::Whitespace;
    return std::nullopt;
}

namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

// Accepts YYYY, YYYY-MM, YYYY-MM-DD with an optional time suffix after 'T'
// or space. Returns false if the shape does not match.
bool parse_iso_date(std::string_view s, int& year, int& month) {
    auto cut = s.find_first_of("T ");
    if (cut != std::string_view::npos) s = s.substr(0, cut);

    std::int64_t y = 0, m = 1;
    auto dash1 = s.find('-', 1);  // allow a leading '-' for negative years
    if (dash1 == std::string_view::npos) {
        if (!parse_int(s, y)) return false;
    } else {
        if (!parse_int(s.substr(0, dash1), y)) return false;
        std::string_view rest = s.substr(dash1 + 1);
        auto dash2 = rest.find('-');
        std::string_view month_part = dash2 == std::string_view::npos ? rest : rest.substr(0, dash2);
        if (!parse_int(month_part, m) || m < 1 || m > 12) return false;
        if (dash2 != std::string_view::npos) {
            std::int64_t day = 0;
            if (!parse_int(rest.substr(dash2 + 1), day) || day < 1 || day > 31) return false;
        }
    }
    year = static_cast<int>(y);
    month = static_cast<int>(m);
    return true;
}

}  // namespace

std::optional<std::int64_t> bin_timestamp(std::string_view raw, Granularity granularity) {
    // Trim surrounding whitespace.
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    if (raw.empty()) return std::nullopt;

    std::int64_t value = 0;
    if (parse_int(raw, value)) {
        // A plain integer is a pre-binned key under every granularity.
        return value;
    }
    if (granularity == Granularity::RawInteger) return std::nullopt;

    int year = 0, month = 1;
    if (!parse_iso_date(raw, year, month)) return std::nullopt;
    if (granularity == Granularity::Year) return static_cast<std::int64_t>(year);
    return static_cast<std::int64_t>(year) * 12 + (month - 1);
}

std::string format_bin_key(std::int64_t key, Granularity granularity) {
    if (granularity != Granularity::Month) return std::to_string(key);
    std::int64_t y = key >= 0 ? key / 12 : -((-key + 11) / 12);
    int m = static_cast<int>(key - y * 12) + 1;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld-%02d", static_cast<long long>(y), m);
    return buf;
}

std::unordered_map<std::string, WordId> build_vocabulary(
    const std::unordered_map<std::string, std::uint64_t>& counts, std::size_t n,
    bool* truncated) {
    if (n < 1) throw std::invalid_argument("vocabulary size must be >= 1");
    std::vector<std::pair<std::string_view, std::uint64_t>> ranked;
    ranked.reserve(counts.size());
    for (const auto& [phrase, count] : counts) ranked.emplace_back(phrase, count);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (truncated) *truncated = ranked.size() > n;
    if (ranked.size() > n) ranked.resize(n);

    std::unordered_map<std::string, WordId> vocab;
    vocab.reserve(ranked.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        vocab.emplace(std::string(ranked[i].first), static_cast<WordId>(i));
    }
    return vocab;
}

std::optional<WordId> TemporalIndex::word_id(std::string_view phrase) const {
    auto it = vocab_.find(std::string(phrase));
    if (it == vocab_.end()) return std::nullopt;
    return it->second;
}

WordId TemporalIndex::require_word(std::string_view phrase) const {
    auto id = word_id(phrase);
    if (!id) throw UnknownWordError(std::string(phrase));
    return *id;
}

std::uint32_t TemporalIndex::term_freq(WordId w, DocId d) const {
    const auto& terms = doc_terms_[d];
    auto it = std::lower_bound(terms.begin(), terms.end(), w,
                               [](const TermEntry& e, WordId id) { return e.word < id; });
    if (it == terms.end() || it->word != w) return 0;
    return it->tf;
}

std::string TemporalIndex::bin_label(BinId b) const {
    return format_bin_key(bin_keys_[b], config_.granularity);
}

std::optional<BinId> TemporalIndex::bin_of_key(std::int64_t key) const {
    auto it = std::lower_bound(bin_keys_.begin(), bin_keys_.end(), key);
    if (it == bin_keys_.end() || *it != key) return std::nullopt;
    return static_cast<BinId>(it - bin_keys_.begin());
}

void TemporalIndex::verify() const {
    for (std::size_t b = 1; b < bin_keys_.size(); ++b) {
        if (bin_keys_[b - 1] >= bin_keys_[b])
            throw IndexCorruptionError("timestamp keys not strictly increasing");
    }
    for (WordId w = 0; w < num_words(); ++w) {
        if (doc_freq_[w] < 1 || doc_freq_[w] > num_docs())
            throw IndexCorruptionError("doc_freq out of range for word '" + phrases_[w] + "'");
        if (doc_freq_[w] != postings_[w].size())
            throw IndexCorruptionError("doc_freq disagrees with posting count");
        for (const auto& p : postings_[w]) {
            if (p.tf < 1 || p.positions.size() != p.tf)
                throw IndexCorruptionError("posting positions disagree with term_freq");
        }
    }
    for (DocId d = 0; d < num_docs(); ++d) {
        const auto& doc = docs_[d];
        if (doc.tokens.empty()) throw IndexCorruptionError("retained document with no tokens");
        if (doc.bin < 0 || static_cast<std::size_t>(doc.bin) >= bin_keys_.size())
            throw IndexCorruptionError("document bin out of range");
    }
}

TemporalIndex IndexBuilder::build(std::vector<std::string> phrases,
                                  std::vector<Document> docs,
                                  std::vector<std::int64_t> bin_keys,
                                  IngestConfig config, IngestStats stats) {
    TemporalIndex index;
    index.phrases_ = std::move(phrases);
    index.docs_ = std::move(docs);
    index.bin_keys_ = std::move(bin_keys);
    index.config_ = config;
    index.stats_ = stats;

    index.vocab_.reserve(index.phrases_.size());
    for (WordId w = 0; w < index.phrases_.size(); ++w) index.vocab_.emplace(index.phrases_[w], w);

    const std::size_t W = index.phrases_.size();
    const std::size_t D = index.docs_.size();
    index.doc_freq_.assign(W, 0);
    index.postings_.assign(W, {});
    index.doc_terms_.assign(D, {});
    index.docs_by_bin_.assign(index.bin_keys_.size(), {});

    for (DocId d = 0; d < D; ++d) {
        const auto& doc = index.docs_[d];
        index.docs_by_bin_[doc.bin].push_back(d);

        // Occurrence positions per word, in document order.
        std::map<WordId, std::vector<std::uint32_t>> occurrences;
        for (std::uint32_t pos = 0; pos < doc.tokens.size(); ++pos) {
            occurrences[doc.tokens[pos]].push_back(pos);
        }
        auto& terms = index.doc_terms_[d];
        terms.reserve(occurrences.size());
        for (auto& [w, positions] : occurrences) {
            terms.push_back({w, static_cast<std::uint32_t>(positions.size())});
            index.doc_freq_[w] += 1;
            index.postings_[w].push_back(
                {d, static_cast<std::uint32_t>(positions.size()), std::move(positions)});
        }
    }
    return index;
}

namespace {

std::vector<std::string> record_tokens(const RawRecord& record, const IngestConfig& config) {
    if (record.tokens) return *record.tokens;
    if (!record.text) return {};
    if (config.tokenizer == TokenizerMode::Heuristic) return extract_phrases(*record.text);
    return split_words(*record.text);
}

}  // namespace

TemporalIndex ingest_documents(const std::vector<RawRecord>& records,
                               const IngestConfig& config) {
    if (records.empty()) throw CorpusError("empty corpus");

    IngestStats stats;
    stats.records_read = records.size();

    struct Parsed {
        const RawRecord* record;
        std::int64_t key;
        std::vector<std::string> tokens;
    };
    std::vector<Parsed> parsed;
    parsed.reserve(records.size());

    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& record : records) {
        auto key = bin_timestamp(record.timestamp, config.granularity);
        if (!key) {
            ++stats.skipped_bad_timestamp;
            continue;
        }
        Parsed p{&record, *key, record_tokens(record, config)};
        for (const auto& token : p.tokens) counts[token] += 1;
        parsed.push_back(std::move(p));
    }
    if (parsed.empty()) throw CorpusError("no timestamped documents");

    stats.distinct_phrases = counts.size();
    auto vocab = build_vocabulary(counts, config.vocab_size, &stats.vocabulary_truncated);

    // Filter each document to the vocabulary; drop documents left empty.
    std::vector<Document> docs;
    docs.reserve(parsed.size());
    std::vector<std::int64_t> doc_keys;
    for (const auto& p : parsed) {
        Document doc;
        doc.id = p.record->id;
        doc.tokens.reserve(p.tokens.size());
        for (const auto& token : p.tokens) {
            auto it = vocab.find(token);
            if (it != vocab.end()) doc.tokens.push_back(it->second);
        }
        if (doc.tokens.empty()) {
            ++stats.dropped_empty_docs;
            continue;
        }
        docs.push_back(std::move(doc));
        doc_keys.push_back(p.key);
    }
    if (docs.empty()) throw CorpusError("empty corpus after vocabulary filtering");

    {
        std::unordered_map<std::string_view, int> seen;
        for (const auto& doc : docs) {
            if (++seen[doc.id] > 1) throw CorpusError("duplicate document id: '" + doc.id + "'");
        }
    }

    std::vector<std::int64_t> bin_keys = doc_keys;
    std::sort(bin_keys.begin(), bin_keys.end());
    bin_keys.erase(std::unique(bin_keys.begin(), bin_keys.end()), bin_keys.end());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto it = std::lower_bound(bin_keys.begin(), bin_keys.end(), doc_keys[i]);
        docs[i].bin = static_cast<BinId>(it - bin_keys.begin());
    }

    std::vector<std::string> phrases(vocab.size());
    for (const auto& [phrase, id] : vocab) phrases[id] = phrase;

    return IndexBuilder::build(std::move(phrases), std::move(docs), std::move(bin_keys),
                               config, stats);
}

std::vector<RawRecord> read_jsonl_records(std::istream& in) {
    std::vector<RawRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw CorpusError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("timestamp"))
            throw CorpusError("line " + std::to_string(line_no) +
                              ": record needs 'id' and 'timestamp' fields");
        const bool has_text = obj.contains("text");
        const bool has_tokens = obj.contains("tokens");
        if (has_text == has_tokens)
            throw CorpusError("line " + std::to_string(line_no) +
                              ": record needs exactly one of 'text' or 'tokens'");

        RawRecord record;
        record.id = obj["id"].is_string() ? obj["id"].get<std::string>() : obj["id"].dump();
        const auto& ts = obj["timestamp"];
        record.timestamp = ts.is_string() ? ts.get<std::string>() : ts.dump();
        if (has_text) {
            if (!obj["text"].is_string())
                throw CorpusError("line " + std::to_string(line_no) + ": 'text' must be a string");
            record.text = obj["text"].get<std::string>();
        } else {
            if (!obj["tokens"].is_array())
                throw CorpusError("line " + std::to_string(line_no) + ": 'tokens' must be an array");
            std::vector<std::string> tokens;
            for (const auto& t : obj["tokens"]) {
                if (!t.is_string())
                    throw CorpusError("line " + std::to_string(line_no) +
                                      ": 'tokens' entries must be strings");
                tokens.push_back(t.get<std::string>());
            }
            record.tokens = std::move(tokens);
        }
        records.push_back(std::move(record));
    }
    return records;
}

TemporalIndex ingest_jsonl(std::istream& in, const IngestConfig& config) {
    return ingest_documents(read_jsonl_records(in), config);
}

}  // namespace tempovec
