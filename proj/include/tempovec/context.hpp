#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tempovec/corpus.hpp"
#include "tempovec/types.hpp"

namespace tempovec {

/// Which words are eligible to be neighbors of a target: everything sharing
/// a document, or only words within +-window_size tokens of the target's
/// occurrences.
struct ContextSpec {
    enum class Kind { Document, Window };

    Kind kind = Kind::Window;
    std::uint32_t window_size = 2;  // tokens on each side; meaningful for Window

    static ContextSpec document() { return {Kind::Document, 0}; }
    static ContextSpec window(std::uint32_t size) { return {Kind::Window, size}; }

    /// Throws std::invalid_argument for a window of size 0.
    void validate() const;

    std::string describe() const;  // "document", "window(2)"

    friend bool operator==(const ContextSpec&, const ContextSpec&) = default;
};

/// Parses "document", "window" (size supplied separately) is handled by the
/// CLI; this accepts "document" or "windowK" / "window:K".
std::optional<ContextSpec> context_from_string(std::string_view s);

/// Words co-occurring with `target` in `doc` under a window of `window_size`
/// tokens on each side: the union over all occurrence positions p of the
/// tokens at [p-k, p+k], clipped to the document. The target itself is
/// included. Absent target yields an empty set. Returned sorted, unique.
std::vector<WordId> window_context(const Document& doc, WordId target,
                                   std::uint32_t window_size);

/// Per-document candidate sets for one target under one spec. Covers exactly
/// the documents containing the target; immutable once built.
struct ContextMask {
    struct DocEntry {
        DocId doc;
        std::vector<WordId> words;  // sorted, unique
    };

    WordId target = kInvalidWord;
    ContextSpec spec;
    std::vector<DocEntry> entries;  // sorted by doc
};

/// Builds the mask for `target`: per-document word sets from window_context
/// (Window kind) or the full distinct-token set (Document kind).
ContextMask build_context_mask(const TemporalIndex& index, WordId target,
                               const ContextSpec& spec);

/// Lazy (target, spec)-keyed cache of built masks. Safe for concurrent
/// lookup and insert; returned references stay valid for the cache lifetime.
class MaskCache {
public:
    const ContextMask& get(const TemporalIndex& index, WordId target, const ContextSpec& spec);

private:
    using Key = std::tuple<WordId, ContextSpec::Kind, std::uint32_t>;
    std::mutex mutex_;
    std::map<Key, std::unique_ptr<ContextMask>> masks_;
};

}  // namespace tempovec
