#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tempovec {

using WordId = std::uint32_t;
using DocId = std::uint32_t;
// Index into the ordered timestamp set of an index, 0 .. num_bins()-1.
using BinId = std::int32_t;

inline constexpr WordId kInvalidWord = static_cast<WordId>(-1);

/// Raised for malformed or unusable input corpora.
class CorpusError : public std::runtime_error {
public:
    explicit CorpusError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when on-disk index data is missing, corrupt, or of the wrong version.
class IndexFormatError : public std::runtime_error {
public:
    explicit IndexFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when frequency statistics are inconsistent (df = 0, df > |D|, ...).
class IndexCorruptionError : public std::logic_error {
public:
    explicit IndexCorruptionError(const std::string& msg) : std::logic_error(msg) {}
};

/// Raised when a query names a phrase outside the vocabulary.
class UnknownWordError : public std::runtime_error {
public:
    explicit UnknownWordError(const std::string& phrase)
        : std::runtime_error("unknown word: '" + phrase + "'"), phrase_(phrase) {}

    const std::string& phrase() const { return phrase_; }

private:
    std::string phrase_;
};

}  // namespace tempovec
