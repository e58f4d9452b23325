#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tempovec {

/// Heuristic noun-phrase extraction for raw text. Lowercases, strips
/// punctuation, and joins contiguous non-stopword word runs into single
/// phrase tokens. Runs are delimited by stopwords and by punctuation
/// between words. Deterministic; empty text yields an empty sequence.
///
/// This is a self-contained fallback; pre-extracted token streams are the
/// first-class ingestion path.
std::vector<std::string> extract_phrases(std::string_view text);

/// Plain tokenizer: lowercased, punctuation-delimited single words, no
/// phrase grouping and no stopword removal.
std::vector<std::string> split_words(std::string_view text);

bool is_stopword(std::string_view word);

}  // namespace tempovec
