#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempovec/corpus.hpp"

namespace tempovec {

/// One collocate planted next to the target with the given probability.
struct ScheduleEntry {
    std::string collocate;
    double probability = 0.0;
};

/// Recipe for a synthetic corpus with planted semantic drift. Documents
/// alternate: even-indexed documents of a bin contain the target exactly
/// once, odd-indexed documents are background filler. (An all-documents
/// target would have zero idf and an identically zero vector.) In a target
/// document each scheduled collocate of the bin fires independently with its
/// probability and is placed next to the target, alternating sides, so the
/// first two fired collocates are strictly adjacent. Remaining token slots
/// are random fillers drawn from the rest of the vocabulary, each emitted
/// with probability background_noise. Nominal document length is 8-32
/// tokens; a background document whose every filler slot stays silent comes
/// out empty and is dropped at ingestion.
struct DriftSpec {
    std::uint32_t num_bins = 2;
    std::uint32_t docs_per_bin = 1;
    std::vector<std::string> vocab;
    std::string target;
    /// schedule[bin] lists that bin's collocates; entries are evaluated in
    /// phrase order regardless of input order. Size must equal num_bins.
    std::vector<std::vector<ScheduleEntry>> schedule;
    double background_noise = 1.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument listing every violation at once.
    void validate() const;
};

/// Generates the corpus: num_bins * docs_per_bin records with integer
/// timestamps 0..num_bins-1 and ids "b{bin}_d{j}", carrying pre-split token
/// lists. Deterministic for a fixed spec (documented source: mt19937_64 with
/// rejection-sampled integer draws and 53-bit unit doubles).
std::vector<RawRecord> generate_drift_corpus(const DriftSpec& spec);

/// Writes records in the ingestion JSONL format, one compact object per line.
void write_jsonl(const std::vector<RawRecord>& records, const std::string& path);

/// Reads a DriftSpec from a JSON file: keys num_bins, docs_per_bin, vocab,
/// target, background_noise, seed, and schedule — an array of entries with
/// collocate, probability, and either "bin": n or "bins": [lo, hi]
/// (inclusive). Throws std::invalid_argument on malformed input; the result
/// is validated.
DriftSpec load_drift_spec(const std::string& path);

}  // namespace tempovec
