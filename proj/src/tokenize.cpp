#include "tempovec/tokenize.hpp"

#include <cctype>
#include <unordered_set>

namespace tempovec {

namespace {

const std::unordered_set<std::string_view>& stopwords() {
    static const std::unordered_set<std::string_view> kStopwords = {
        "a", "an", "the", "and", "or", "but", "nor", "so", "yet",
        "of", "in", "on", "at", "to", "for", "with", "by", "from", "as",
        "into", "onto", "over", "under", "between", "through", "during",
        "before", "after", "above", "below", "about", "against", "among",
        "is", "are", "was", "were", "be", "been", "being", "am",
        "have", "has", "had", "having", "do", "does", "did", "doing",
        "will", "would", "shall", "should", "can", "could", "may", "might",
        "must", "ought",
        "i", "me", "my", "we", "us", "our", "you", "your", "he", "him",
        "his", "she", "her", "it", "its", "they", "them", "their",
        "this", "that", "these", "those", "which", "who", "whom", "whose",
        "what", "when", "where", "why", "how",
        "not", "no", "if", "then", "than", "there", "here", "while",
        "because", "until", "although", "though", "since", "unless",
        "both", "each", "few", "more", "most", "other", "some", "such",
        "any", "all", "own", "same", "too", "very", "only", "also",
    };
    return kStopwords;
}

bool is_word_byte(unsigned char c) {
    // ASCII alphanumerics are word characters; bytes >= 0x80 are kept so
    // UTF-8 sequences pass through untouched. Everything else separates.
    return std::isalnum(c) != 0 || c >= 0x80;
}

}  // namespace

bool is_stopword(std::string_view word) { return stopwords().count(word) > 0; }

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::string current;
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

std::vector<std::string> extract_phrases(std::string_view text) {
    std::vector<std::string> phrases;
    std::string word;
    std::string run;

    auto end_word = [&] {
        if (word.empty()) return;
        if (is_stopword(word)) {
            if (!run.empty()) {
                phrases.push_back(std::move(run));
                run.clear();
            }
        } else {
            if (!run.empty()) run.push_back(' ');
            run += word;
        }
        word.clear();
    };
    auto end_run = [&] {
        end_word();
        if (!run.empty()) {
            phrases.push_back(std::move(run));
            run.clear();
        }
    };

    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            word.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == ' ' || c == '\t') {
            end_word();
        } else {
            // Punctuation and newlines end the current phrase run.
            end_run();
        }
    }
    end_run();
    return phrases;
}

}  // namespace tempovec
