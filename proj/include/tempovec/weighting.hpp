#pragma once

#include <cstdint>
#include <vector>

#include "tempovec/corpus.hpp"
#include "tempovec/types.hpp"

namespace tempovec {

/// Radius at which Gaussian contributions are cut off, in bins: ceil(4*sigma).
/// Beyond 4 sigma the density is below 0.0034% of the peak.
std::int32_t default_truncation_radius(double sigma);

/// Parameters of the temporal diffusion kernel.
struct DiffusionParams {
    /// Standard deviation of the Gaussian kernel, in timestamp-bin units.
    double sigma = 1.0;
    /// Contributions from documents farther than this many bins are exactly 0.
    std::int32_t truncation_radius = 4;
    /// When set, the per-document denominator is the plain sum of squared
    /// raw weights (the formula as printed) instead of its square root
    /// (standard cosine normalization, the default).
    bool literal_denominator = false;

    static DiffusionParams with_sigma(double sigma);

    /// Throws std::invalid_argument for sigma <= 0 or a negative radius.
    void validate() const;
};

/// Gaussian density at offset (t_d - t): exp(-(t_d-t)^2 / (2 sigma^2)) / sqrt(2 pi sigma^2).
/// Symmetric in the first two arguments; maximal at t_d == t.
double gaussian_factor(BinId t_d, BinId t, double sigma);

/// Same, but exactly 0 when |t_d - t| exceeds params.truncation_radius.
double gaussian_factor(BinId t_d, BinId t, const DiffusionParams& params);

/// Raw tf-idf weight: 0 when f == 0, otherwise (1 + ln f) * ln(num_docs / df).
/// Natural log throughout. Throws IndexCorruptionError when df is 0 or
/// exceeds num_docs.
double raw_tfidf(std::uint32_t f, std::uint32_t df, std::size_t num_docs);

/// Per-document normalizers of the raw tf-idf vectors, plus cached idf
/// values. Computed once after ingestion; immutable afterwards. A document
/// whose every word has zero idf is degenerate: its normalizer is 0 and all
/// of its diffused weights are 0.
class DocNormCache {
public:
    DocNormCache(const TemporalIndex& index, bool literal_denominator);

    double normalizer(DocId d) const { return normalizers_[d]; }
    bool degenerate(DocId d) const { return normalizers_[d] == 0.0; }
    double idf(WordId w) const { return idf_[w]; }
    bool literal_denominator() const { return literal_; }

private:
    std::vector<double> normalizers_;
    std::vector<double> idf_;
    bool literal_;
};

/// L2 normalizer of document d's raw tf-idf vector:
/// sqrt(sum over distinct words of raw_tfidf^2), or the literal sum of
/// squares when literal_denominator is set. 0 marks a degenerate document.
double doc_normalizer(DocId d, const TemporalIndex& index, bool literal_denominator = false);

/// The full diffusion-weighted value for (word, document) at timestamp bin t:
/// gaussian_factor * raw_tfidf / doc_normalizer. Zero when the word is absent
/// from the document, when its idf is zero, when the document is degenerate,
/// or when |t - t_d| exceeds the truncation radius.
double diffused_weight(WordId w, DocId d, BinId t, const DiffusionParams& params,
                       const TemporalIndex& index, const DocNormCache& norms);

}  // namespace tempovec
