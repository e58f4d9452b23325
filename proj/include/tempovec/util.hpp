#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

namespace tempovec {

/// FNV-1a 64-bit hash, used for index content checksums.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(std::string_view s);

/// Levenshtein edit distance (unit costs). Used for unknown-word suggestions.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Deterministic random source: mt19937_64 with fixed output mappings.
/// The standard fully specifies the mt19937_64 sequence; the derived draws
/// below avoid std::*_distribution, whose results vary across standard
/// libraries.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0. Rejection sampling keeps the
    /// draw unbiased and platform-independent.
    std::uint64_t uniform(std::uint64_t n);

    /// Uniform double in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

/// Runs fn(i) for i in [0, n), possibly on several threads. Each index is
/// processed exactly once; callers own any ordering of results (write to
/// slot i). The first exception thrown by fn is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace tempovec
