#include "tempovec/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "tempovec/util.hpp"

namespace tempovec {

double DiffusedVector::norm() const {
    double sum_sq = 0.0;
    for (const auto& [doc, value] : entries) sum_sq += value * value;
    return std::sqrt(sum_sq);
}

std::vector<WordId> Neighborhood::member_set() const {
    std::vector<WordId> ids;
    ids.reserve(members.size());
    for (const auto& m : members) ids.push_back(m.word);
    std::sort(ids.begin(), ids.end());
    return ids;
}

DiffusedVector word_vector(WordId word, BinId bin, const DiffusionParams& params,
                           const TemporalIndex& index, const DocNormCache& norms) {
    if (word >= index.num_words()) throw UnknownWordError("word id " + std::to_string(word));
    if (bin < 0 || static_cast<std::size_t>(bin) >= index.num_bins())
        throw std::invalid_argument("bin out of range");
    params.validate();

    DiffusedVector vec;
    vec.word = word;
    vec.bin = bin;
    for (const auto& posting : index.postings(word)) {
        const double w = diffused_weight(word, posting.doc, bin, params, index, norms);
        if (w > 0.0) vec.entries.emplace_back(posting.doc, w);
    }
    return vec;
}

double cosine_similarity(const DiffusedVector& u, const DiffusedVector& v) {
    double dot = 0.0;
    auto iu = u.entries.begin();
    auto iv = v.entries.begin();
    while (iu != u.entries.end() && iv != v.entries.end()) {
        if (iu->first < iv->first) {
            ++iu;
        } else if (iv->first < iu->first) {
            ++iv;
        } else {
            dot += iu->second * iv->second;
            ++iu;
            ++iv;
        }
    }
    if (dot == 0.0) return 0.0;
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::clamp(dot / (nu * nv), 0.0, 1.0);
}

namespace {

void sort_scored(std::vector<ScoredWord>& scored, const TemporalIndex& index) {
    std::sort(scored.begin(), scored.end(), [&](const ScoredWord& a, const ScoredWord& b) {
        if (a.score != b.score) return a.score > b.score;
        return index.phrase(a.word) < index.phrase(b.word);
    });
}

}  // namespace

std::vector<ScoredWord> score_candidates(WordId target, BinId bin, const ContextMask& mask,
                                         const DiffusionParams& params,
                                         const TemporalIndex& index,
                                         const DocNormCache& norms) {
    const DiffusedVector u = word_vector(target, bin, params, index, norms);
    if (u.empty()) return {};
    const double u_norm = u.norm();

    struct Accum {
        double dot = 0.0;
        double norm_sq = 0.0;
    };
    std::unordered_map<WordId, Accum> accum;

    // Mask entries cover exactly the documents containing the target, so a
    // candidate's surviving entries all lie on documents visited here. The
    // target's own weight may be 0 at a document (degenerate or zero idf);
    // such documents still contribute to the candidate's filtered norm.
    auto u_it = u.entries.begin();
    for (const auto& entry : mask.entries) {
        const DocId d = entry.doc;
        const Document& doc = index.document(d);
        const double g = gaussian_factor(doc.bin, bin, params);
        if (g == 0.0) continue;
        if (norms.degenerate(d)) continue;
        const double scale = g / norms.normalizer(d);

        while (u_it != u.entries.end() && u_it->first < d) ++u_it;
        const double u_d = (u_it != u.entries.end() && u_it->first == d) ? u_it->second : 0.0;

        // entry.words and doc_terms(d) are both sorted by word id.
        const auto& terms = index.doc_terms(d);
        auto term_it = terms.begin();
        for (const WordId v : entry.words) {
            while (term_it != terms.end() && term_it->word < v) ++term_it;
            if (term_it == terms.end()) break;
            if (term_it->word != v) continue;
            const double idf = norms.idf(v);
            if (idf == 0.0) continue;
            const double b = scale * (1.0 + std::log(static_cast<double>(term_it->tf))) * idf;
            auto& acc = accum[v];
            acc.norm_sq += b * b;
            acc.dot += u_d * b;
        }
    }

    std::vector<ScoredWord> scored;
    scored.reserve(accum.size());
    for (const auto& [v, acc] : accum) {
        if (v == target || acc.dot <= 0.0) continue;
        const double score = acc.dot / (u_norm * std::sqrt(acc.norm_sq));
        scored.push_back({v, std::clamp(score, 0.0, 1.0)});
    }
    sort_scored(scored, index);
    return scored;
}

Neighborhood nearest_neighbors(WordId target, BinId bin, std::uint32_t k,
                               const ContextSpec& spec, const DiffusionParams& params,
                               const TemporalIndex& index, const DocNormCache& norms,
                               MaskCache* cache) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    Neighborhood result;
    result.target = target;
    result.bin = bin;
    result.k = k;

    std::vector<ScoredWord> scored;
    if (cache) {
        scored = score_candidates(target, bin, cache->get(index, target, spec), params, index, norms);
    } else {
        const ContextMask mask = build_context_mask(index, target, spec);
        scored = score_candidates(target, bin, mask, params, index, norms);
    }
    if (scored.size() > k) scored.resize(k);
    result.members = std::move(scored);
    return result;
}

std::optional<double> EvolutionResult::score_at(WordId word, std::size_t bin_pos) const {
    for (std::size_t i = 0; i < tracked.size(); ++i) {
        if (tracked[i] == word) return series[i][bin_pos];
    }
    return std::nullopt;
}

EvolutionResult track_evolution(WordId target, std::uint32_t k, const ContextSpec& spec,
                                const DiffusionParams& params, const TemporalIndex& index,
                                const DocNormCache& norms, TrackMode mode,
                                const std::vector<BinId>* bins_filter) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (target >= index.num_words()) throw UnknownWordError("word id " + std::to_string(target));
    spec.validate();
    params.validate();

    EvolutionResult result;
    result.target = target;
    result.k = k;
    if (bins_filter) {
        result.bins = *bins_filter;
        std::sort(result.bins.begin(), result.bins.end());
        result.bins.erase(std::unique(result.bins.begin(), result.bins.end()), result.bins.end());
        for (BinId b : result.bins) {
            if (b < 0 || static_cast<std::size_t>(b) >= index.num_bins())
                throw std::invalid_argument("bin filter out of range");
        }
    } else {
        result.bins.resize(index.num_bins());
        for (std::size_t i = 0; i < index.num_bins(); ++i) result.bins[i] = static_cast<BinId>(i);
    }

    const ContextMask mask = build_context_mask(index, target, spec);

    // Per-bin candidate scores; bins are independent.
    std::vector<std::vector<ScoredWord>> all_scores(result.bins.size());
    parallel_for(result.bins.size(), [&](std::size_t i) {
        all_scores[i] = score_candidates(target, result.bins[i], mask, params, index, norms);
    });

    result.per_bin.reserve(result.bins.size());
    for (std::size_t i = 0; i < result.bins.size(); ++i) {
        Neighborhood hood;
        hood.target = target;
        hood.bin = result.bins[i];
        hood.k = k;
        hood.members.assign(all_scores[i].begin(),
                            all_scores[i].begin() +
                                std::min<std::size_t>(k, all_scores[i].size()));
        result.per_bin.push_back(std::move(hood));
    }

    // Select the tracked word set and collect each word's peak score.
    std::unordered_map<WordId, double> peak;
    if (mode == TrackMode::PerBinTopK) {
        for (const auto& hood : result.per_bin) {
            for (const auto& m : hood.members) {
                auto [it, inserted] = peak.emplace(m.word, m.score);
                if (!inserted && m.score > it->second) it->second = m.score;
            }
        }
    } else {
        for (const auto& scores : all_scores) {
            for (const auto& s : scores) {
                auto [it, inserted] = peak.emplace(s.word, s.score);
                if (!inserted && s.score > it->second) it->second = s.score;
            }
        }
    }

    result.tracked.reserve(peak.size());
    for (const auto& [w, p] : peak) result.tracked.push_back(w);
    std::sort(result.tracked.begin(), result.tracked.end(), [&](WordId a, WordId b) {
        const double pa = peak.at(a);
        const double pb = peak.at(b);
        if (pa != pb) return pa > pb;
        return index.phrase(a) < index.phrase(b);
    });
    if (mode == TrackMode::PeakUnion && result.tracked.size() > k) result.tracked.resize(k);

    // Zero-filled series over the evaluated bins.
    result.series.assign(result.tracked.size(),
                         std::vector<double>(result.bins.size(), 0.0));
    std::unordered_map<WordId, std::size_t> tracked_pos;
    for (std::size_t i = 0; i < result.tracked.size(); ++i) tracked_pos[result.tracked[i]] = i;
    for (std::size_t j = 0; j < result.bins.size(); ++j) {
        for (const auto& s : all_scores[j]) {
            auto it = tracked_pos.find(s.word);
            if (it != tracked_pos.end()) result.series[it->second][j] = s.score;
        }
    }
    return result;
}

}  // namespace tempovec
