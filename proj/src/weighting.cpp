#include "tempovec/weighting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tempovec {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::int32_t default_truncation_radius(double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be > 0");
    return static_cast<std::int32_t>(std::ceil(4.0 * sigma));
}

DiffusionParams DiffusionParams::with_sigma(double sigma) {
    DiffusionParams params;
    params.sigma = sigma;
    params.truncation_radius = default_truncation_radius(sigma);
    return params;
}

void DiffusionParams::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    if (truncation_radius < 0) throw std::invalid_argument("truncation_radius must be >= 0");
}

double gaussian_factor(BinId t_d, BinId t, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    const double offset = static_cast<double>(t_d) - static_cast<double>(t);
    return std::exp(-(offset * offset) / (2.0 * sigma * sigma)) / std::sqrt(kTwoPi * sigma * sigma);
}

double gaussian_factor(BinId t_d, BinId t, const DiffusionParams& params) {
    params.validate();
    const std::int64_t offset = static_cast<std::int64_t>(t_d) - static_cast<std::int64_t>(t);
    if (std::abs(offset) > params.truncation_radius) return 0.0;
    return gaussian_factor(t_d, t, params.sigma);
}

double raw_tfidf(std::uint32_t f, std::uint32_t df, std::size_t num_docs) {
    if (f == 0) return 0.0;
    if (df == 0 || df > num_docs)
        throw IndexCorruptionError("document frequency " + std::to_string(df) +
                                   " out of range for corpus of " + std::to_string(num_docs));
    return (1.0 + std::log(static_cast<double>(f))) *
           std::log(static_cast<double>(num_docs) / static_cast<double>(df));
}

double doc_normalizer(DocId d, const TemporalIndex& index, bool literal_denominator) {
    double sum_sq = 0.0;
    for (const auto& entry : index.doc_terms(d)) {
        const double r = raw_tfidf(entry.tf, index.doc_freq(entry.word), index.num_docs());
        sum_sq += r * r;
    }
    return literal_denominator ? sum_sq : std::sqrt(sum_sq);
}

DocNormCache::DocNormCache(const TemporalIndex& index, bool literal_denominator)
    : literal_(literal_denominator) {
    idf_.resize(index.num_words());
    for (WordId w = 0; w < index.num_words(); ++w) {
        const auto df = index.doc_freq(w);
        if (df == 0 || df > index.num_docs())
            throw IndexCorruptionError("document frequency out of range for word '" +
                                       index.phrase(w) + "'");
        idf_[w] = std::log(static_cast<double>(index.num_docs()) / static_cast<double>(df));
    }
    normalizers_.resize(index.num_docs());
    for (DocId d = 0; d < index.num_docs(); ++d) {
        normalizers_[d] = doc_normalizer(d, index, literal_denominator);
    }
}

double diffused_weight(WordId w, DocId d, BinId t, const DiffusionParams& params,
                       const TemporalIndex& index, const DocNormCache& norms) {
    const std::uint32_t f = index.term_freq(w, d);
    if (f == 0) return 0.0;
    const double g = gaussian_factor(index.document(d).bin, t, params);
    if (g == 0.0) return 0.0;
    if (norms.degenerate(d)) return 0.0;
    const double r = raw_tfidf(f, index.doc_freq(w), index.num_docs());
    if (r == 0.0) return 0.0;
    return g * r / norms.normalizer(d);
}

}  // namespace tempovec
