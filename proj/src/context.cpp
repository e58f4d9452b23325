#include "tempovec/context.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace tempovec {

void ContextSpec::validate() const {
    if (kind == Kind::Window && window_size < 1)
        throw std::invalid_argument("window context requires window_size >= 1");
}

std::string ContextSpec::describe() const {
    if (kind == Kind::Document) return "document";
    return "window(" + std::to_string(window_size) + ")";
}

std::optional<ContextSpec> context_from_string(std::string_view s) {
    if (s == "document") return ContextSpec::document();
    if (s.rfind("window", 0) == 0) {
        std::string_view rest = s.substr(6);
        if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
        if (rest.empty()) return ContextSpec::window(2);
        std::uint32_t size = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), size);
        if (ec != std::errc() || ptr != rest.data() + rest.size() || size < 1) return std::nullopt;
        return ContextSpec::window(size);
    }
    return std::nullopt;
}

std::vector<WordId> window_context(const Document& doc, WordId target,
                                   std::uint32_t window_size) {
    std::vector<WordId> words;
    const auto n = doc.tokens.size();
    for (std::size_t p = 0; p < n; ++p) {
        if (doc.tokens[p] != target) continue;
        const std::size_t lo = p >= window_size ? p - window_size : 0;
        const std::size_t hi = std::min(n - 1, p + window_size);
        for (std::size_t q = lo; q <= hi; ++q) words.push_back(doc.tokens[q]);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

ContextMask build_context_mask(const TemporalIndex& index, WordId target,
                               const ContextSpec& spec) {
    if (target >= index.num_words()) throw UnknownWordError("word id " + std::to_string(target));
    spec.validate();

    ContextMask mask;
    mask.target = target;
    mask.spec = spec;
    mask.entries.reserve(index.postings(target).size());

    for (const auto& posting : index.postings(target)) {
        ContextMask::DocEntry entry;
        entry.doc = posting.doc;
        if (spec.kind == ContextSpec::Kind::Document) {
            const auto& terms = index.doc_terms(posting.doc);
            entry.words.reserve(terms.size());
            for (const auto& t : terms) entry.words.push_back(t.word);
        } else {
            entry.words = window_context(index.document(posting.doc), target, spec.window_size);
        }
        mask.entries.push_back(std::move(entry));
    }
    return mask;
}

const ContextMask& MaskCache::get(const TemporalIndex& index, WordId target,
                                  const ContextSpec& spec) {
    const Key key{target, spec.kind, spec.kind == ContextSpec::Kind::Window ? spec.window_size : 0};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = masks_.find(key);
        if (it != masks_.end()) return *it->second;
    }
    auto built = std::make_unique<ContextMask>(build_context_mask(index, target, spec));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = masks_.emplace(key, std::move(built));
    return *it->second;
}

}  // namespace tempovec
