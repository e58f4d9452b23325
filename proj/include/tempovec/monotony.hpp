#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempovec/neighborhood.hpp"

namespace tempovec {

/// Jaccard similarity of two sorted word-id sets: |a ∩ b| / |a ∪ b|.
/// Both empty → 1.0 (identical-sets convention).
double jaccard(const std::vector<WordId>& a, const std::vector<WordId>& b);

/// Stability metrics of a word's neighborhood across consecutive bins.
/// A consecutive pair with an empty neighborhood on either side is skipped
/// (and counted), so pair_jaccards holds only the retained pairs; when every
/// pair is skipped the metrics stay unset.
struct MonotonyReport {
    WordId target = kInvalidWord;
    std::uint32_t k = 0;

    std::optional<double> average;
    std::optional<double> minimum;
    /// Index i of the retained pair (bins[i], bins[i+1]) attaining the minimum.
    std::optional<std::size_t> minimum_pair;
    /// Jaccard of the first and last neighborhoods; unset if either is empty.
    std::optional<double> absolute;

    std::vector<double> pair_jaccards;              // retained pairs, time order
    std::vector<std::pair<BinId, BinId>> pair_bins; // parallel to pair_jaccards
    std::size_t skipped_pairs = 0;
};

/// Full monotony report over per-bin neighborhoods in time order: average,
/// minimum (with its pair), absolute, and the per-pair Jaccard series.
/// Throws std::invalid_argument when fewer than two bins are given.
MonotonyReport average_monotony(const std::vector<Neighborhood>& series);

/// Jaccard of the first and last neighborhoods; nullopt when either boundary
/// neighborhood is empty. Throws like average_monotony for |series| < 2.
std::optional<double> absolute_monotony(const std::vector<Neighborhood>& series);

/// One (target, sigma, context, k) cell of a sensitivity sweep.
struct SweepCell {
    WordId target = kInvalidWord;
    double sigma = 1.0;
    ContextSpec spec;
    std::uint32_t k = 0;
    MonotonyReport report;
    std::string status = "ok";  // an error message when the cell failed
};

/// Mean metrics across targets for one (sigma, context, k) combination,
/// computed over the cells whose metric is defined.
struct SweepAggregate {
    double sigma = 1.0;
    ContextSpec spec;
    std::uint32_t k = 0;
    std::optional<double> mean_average;
    std::optional<double> mean_minimum;
    std::optional<double> mean_absolute;
    std::size_t targets_counted = 0;
};

struct SweepReport {
    std::vector<SweepCell> cells;           // target-major, then sigma, spec, k
    std::vector<SweepAggregate> aggregates; // sigma, spec, k order
};

/// Evaluates the monotony metrics for every (target, sigma, spec, k) cell.
/// Each sigma runs with truncation radius ceil(4*sigma). Cells are computed
/// in parallel; a failing cell carries its error message in `status` instead
/// of aborting the sweep. All parameter lists must be nonempty.
SweepReport sensitivity_sweep(const TemporalIndex& index,
                              const std::vector<WordId>& targets,
                              const std::vector<double>& sigmas,
                              const std::vector<ContextSpec>& specs,
                              const std::vector<std::uint32_t>& ks,
                              bool literal_denominator = false,
                              TrackMode mode = TrackMode::PerBinTopK);

}  // namespace tempovec
