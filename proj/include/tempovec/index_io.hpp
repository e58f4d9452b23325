#pragma once

#include <filesystem>
#include <string>

#include "tempovec/corpus.hpp"

namespace tempovec {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

/// Writes the index to `dir` as manifest.json + tables.bin. The encoding is
/// canonical: the same index always produces byte-identical files. Refuses
/// to overwrite an existing index of a different format version unless
/// `force` is set.
void save_index(const TemporalIndex& index, const std::filesystem::path& dir,
                bool force = false);

/// Loads an index directory written by save_index. Verifies the manifest
/// checksum and format version; throws IndexFormatError on mismatch.
TemporalIndex load_index(const std::filesystem::path& dir);

/// Content checksum of the binary tables, as stored in the manifest.
std::string index_checksum(const std::filesystem::path& dir);

}  // namespace tempovec
