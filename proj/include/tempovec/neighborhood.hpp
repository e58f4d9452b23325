#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tempovec/context.hpp"
#include "tempovec/corpus.hpp"
#include "tempovec/types.hpp"
#include "tempovec/weighting.hpp"

namespace tempovec {

/// A word's sparse vector over the document axis at one timestamp bin.
/// Entries hold strictly positive diffused weights; zeros are never stored.
struct DiffusedVector {
    WordId word = kInvalidWord;
    BinId bin = 0;
    std::vector<std::pair<DocId, double>> entries;  // sorted by doc

    double norm() const;
    bool empty() const { return entries.empty(); }
};

struct ScoredWord {
    WordId word;
    double score;
};

/// Ranked top-k neighbor list for one (word, bin) pair. Scores are in [0, 1]
/// and non-increasing; ties are broken lexicographically ascending by phrase.
struct Neighborhood {
    WordId target = kInvalidWord;
    BinId bin = 0;
    std::uint32_t k = 0;
    std::vector<ScoredWord> members;  // |members| <= k, target excluded

    std::vector<WordId> member_set() const;  // sorted word ids
};

/// The diffused vector of `word` at `bin`: one entry per document containing
/// the word within the truncation radius, values from the diffusion formula.
/// May be empty. Throws UnknownWordError for an out-of-range word.
DiffusedVector word_vector(WordId word, BinId bin, const DiffusionParams& params,
                           const TemporalIndex& index, const DocNormCache& norms);

/// u.v / (|u| |v|); 0 when either vector is empty or all-zero. Result
/// clamped to [0, 1] (entries are non-negative).
double cosine_similarity(const DiffusedVector& u, const DiffusedVector& v);

/// Scores every candidate with at least one surviving entry under the mask:
/// the candidate vector is zeroed at documents where it is outside the
/// target's context, then compared against the unfiltered target vector.
/// Returns all candidates with score > 0, sorted (score desc, phrase asc).
std::vector<ScoredWord> score_candidates(WordId target, BinId bin, const ContextMask& mask,
                                         const DiffusionParams& params,
                                         const TemporalIndex& index,
                                         const DocNormCache& norms);

/// Top-k context-filtered cosine neighborhood of `target` at `bin`.
/// Candidates scoring exactly 0 are omitted even if fewer than k remain; an
/// empty target vector yields an empty neighborhood.
Neighborhood nearest_neighbors(WordId target, BinId bin, std::uint32_t k,
                               const ContextSpec& spec, const DiffusionParams& params,
                               const TemporalIndex& index, const DocNormCache& norms,
                               MaskCache* cache = nullptr);

/// How track_evolution chooses the words whose series are reported:
/// per-bin top-k union (default), or the top-k words by peak similarity at
/// any bin, tracked across all bins.
enum class TrackMode { PerBinTopK, PeakUnion };

/// Neighborhoods at every bin plus, for each tracked word, its similarity at
/// every bin (0 where filtered out or absent) — streamgraph-ready series.
struct EvolutionResult {
    WordId target = kInvalidWord;
    std::uint32_t k = 0;
    std::vector<BinId> bins;                  // evaluated bins, ascending
    std::vector<Neighborhood> per_bin;        // one per evaluated bin
    std::vector<WordId> tracked;              // ordered by (peak score desc, phrase asc)
    std::vector<std::vector<double>> series;  // series[i][j]: tracked[i] at bins[j]

    std::optional<double> score_at(WordId word, std::size_t bin_pos) const;
};

/// Runs nearest_neighbors at every bin of the index (or the given subset)
/// and assembles the similarity time series. Per-bin work runs in parallel;
/// results are deterministic.
EvolutionResult track_evolution(WordId target, std::uint32_t k, const ContextSpec& spec,
                                const DiffusionParams& params, const TemporalIndex& index,
                                const DocNormCache& norms,
                                TrackMode mode = TrackMode::PerBinTopK,
                                const std::vector<BinId>* bins_filter = nullptr);

}  // namespace tempovec
