#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "tempovec/monotony.hpp"
#include "tempovec/neighborhood.hpp"

namespace tempovec {

enum class ExportFormat { Csv, Json };

std::optional<ExportFormat> export_format_from_string(std::string_view s);

/// RFC-4180 quoting: wraps the field in double quotes when it contains a
/// comma, quote, or newline, doubling embedded quotes.
std::string csv_escape(std::string_view field);

/// Similarity score rendered with 12 significant digits, no trailing zeros.
std::string format_score(double value);

/// Streamgraph data: one row per (tracked neighbor, bin) with the neighbor's
/// similarity at that bin, zero-filled where it leaves the neighborhood.
/// Rows are neighbor-major in tracked order (peak score desc, phrase asc).
/// CSV columns: target, neighbor, bin, score.
void write_series(const EvolutionResult& evo, const TemporalIndex& index,
                  ExportFormat format, std::ostream& out);

/// Ranked neighborhoods per bin. CSV columns: target, bin, rank, neighbor,
/// score; rank starts at 1 within each bin.
void write_neighborhoods(const EvolutionResult& evo, const TemporalIndex& index,
                         ExportFormat format, std::ostream& out);

/// Sensitivity sweep report. CSV columns: target, sigma, context_kind,
/// window_size, k, average, minimum, minimum_pair, absolute, skipped_pairs,
/// status. minimum_pair is "firstlabel..secondlabel"; undefined metrics are
/// empty fields. Aggregate rows (means across targets) use target "*".
void write_sweep(const SweepReport& report, const TemporalIndex& index,
                 ExportFormat format, std::ostream& out);

}  // namespace tempovec
