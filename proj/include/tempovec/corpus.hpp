#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempovec/types.hpp"

namespace tempovec {

enum class Granularity { Year, Month, RawInteger };
enum class TokenizerMode { Heuristic, Whitespace };

std::string to_string(Granularity g);
std::string to_string(TokenizerMode m);
std::optional<Granularity> granularity_from_string(std::string_view s);
std::optional<TokenizerMode> tokenizer_from_string(std::string_view s);

struct IngestConfig {
    Granularity granularity = Granularity::Year;
    std::size_t vocab_size = 10000;
    TokenizerMode tokenizer = TokenizerMode::Heuristic;
};

/// One input record, before vocabulary filtering. Carries either raw text
/// or a pre-extracted token list, never both.
struct RawRecord {
    std::string id;
    std::string timestamp;  // ISO-8601 date or integer, as written
    std::optional<std::string> text;
    std::optional<std::vector<std::string>> tokens;
};

/// Maps a raw timestamp to its bin key under the given granularity.
/// Year: calendar year. Month: year*12 + (month-1). RawInteger: identity.
/// Plain integers are accepted under every granularity as pre-binned keys.
/// The mapping is monotone; unparseable input yields nullopt (per-record
/// skip signal).
std::optional<std::int64_t> bin_timestamp(std::string_view raw, Granularity granularity);

/// Human-readable label for a bin key ("1998", "1998-06", "42").
std::string format_bin_key(std::int64_t key, Granularity granularity);

/// Top-n phrases by total corpus frequency, ties broken lexicographically
/// ascending; dense ids assigned in (frequency desc, phrase asc) order.
/// If n exceeds the number of distinct phrases, all phrases are kept and
/// *truncated (when given) is left false.
std::unordered_map<std::string, WordId> build_vocabulary(
    const std::unordered_map<std::string, std::uint64_t>& counts, std::size_t n,
    bool* truncated = nullptr);

/// One retained document: tokens are vocabulary word ids in original order.
struct Document {
    std::string id;
    BinId bin = 0;
    std::vector<WordId> tokens;
};

struct Posting {
    DocId doc;
    std::uint32_t tf;
    std::vector<std::uint32_t> positions;  // sorted occurrence positions
};

struct TermEntry {
    WordId word;
    std::uint32_t tf;
};

struct IngestStats {
    std::uint64_t records_read = 0;
    std::uint64_t skipped_bad_timestamp = 0;
    std::uint64_t dropped_empty_docs = 0;  // no in-vocabulary tokens
    std::uint64_t distinct_phrases = 0;    // before truncation
    bool vocabulary_truncated = false;
};

/// Immutable query substrate: vocabulary, frequency tables, positions, and
/// the ordered timestamp set. Built once by ingest_documents and shared
/// read-only by all queries.
class TemporalIndex {
public:
    std::size_t num_docs() const { return docs_.size(); }
    std::size_t num_words() const { return phrases_.size(); }
    std::size_t num_bins() const { return bin_keys_.size(); }

    const std::vector<Document>& documents() const { return docs_; }
    const Document& document(DocId d) const { return docs_[d]; }

    std::optional<WordId> word_id(std::string_view phrase) const;
    /// Like word_id but throws UnknownWordError.
    WordId require_word(std::string_view phrase) const;
    const std::string& phrase(WordId w) const { return phrases_[w]; }

    std::uint32_t doc_freq(WordId w) const { return doc_freq_[w]; }
    /// 0 when the pair is absent.
    std::uint32_t term_freq(WordId w, DocId d) const;
    const std::vector<Posting>& postings(WordId w) const { return postings_[w]; }

    /// Distinct terms of a document with frequencies, sorted by word id.
    const std::vector<TermEntry>& doc_terms(DocId d) const { return doc_terms_[d]; }

    std::int64_t bin_key(BinId b) const { return bin_keys_[b]; }
    std::string bin_label(BinId b) const;
    /// Index of the bin holding `key`, if present.
    std::optional<BinId> bin_of_key(std::int64_t key) const;
    const std::vector<DocId>& docs_in_bin(BinId b) const { return docs_by_bin_[b]; }

    Granularity granularity() const { return config_.granularity; }
    const IngestConfig& config() const { return config_; }
    const IngestStats& stats() const { return stats_; }

    /// Cross-checks internal invariants (doc_freq consistency, position
    /// counts, bin ordering). Throws IndexCorruptionError on violation.
    void verify() const;

private:
    friend class IndexBuilder;

    std::vector<std::string> phrases_;
    std::unordered_map<std::string, WordId> vocab_;
    std::vector<Document> docs_;
    std::vector<std::uint32_t> doc_freq_;
    std::vector<std::vector<Posting>> postings_;
    std::vector<std::vector<TermEntry>> doc_terms_;
    std::vector<std::int64_t> bin_keys_;
    std::vector<std::vector<DocId>> docs_by_bin_;
    IngestConfig config_;
    IngestStats stats_;
};

/// Assembles a TemporalIndex from already-filtered documents. Used by
/// ingestion and by the on-disk loader; derives every frequency structure
/// from the document token sequences.
class IndexBuilder {
public:
    static TemporalIndex build(std::vector<std::string> phrases,
                               std::vector<Document> docs,
                               std::vector<std::int64_t> bin_keys,
                               IngestConfig config, IngestStats stats);
};

/// Parses timestamped records into a fully populated TemporalIndex
/// restricted to the top-N vocabulary. Records with unparseable timestamps
/// are skipped and counted; documents with no in-vocabulary tokens are
/// dropped and counted. Deterministic for a fixed input order and config.
///
/// Throws CorpusError for an empty source ("empty corpus") or when no
/// record has a parseable timestamp ("no timestamped documents").
TemporalIndex ingest_documents(const std::vector<RawRecord>& records,
                               const IngestConfig& config);

/// Reads line-delimited JSON records ({"id", "timestamp", "text"|"tokens"})
/// and ingests them. Blank lines are ignored; malformed lines raise
/// CorpusError with the line number.
TemporalIndex ingest_jsonl(std::istream& in, const IngestConfig& config);

std::vector<RawRecord> read_jsonl_records(std::istream& in);

}  // namespace tempovec
