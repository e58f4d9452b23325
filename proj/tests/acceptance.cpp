// Acceptance gate: one self-contained check per shipping criterion, each
// printed as a single PASS/FAIL line. Exits nonzero if any criterion fails.
//
// Tolerances: oracle cross-checks use absolute 1e-9 on scores and weights,
// with ranked-list ties resolved at that same granularity (see
// compare_ranked); monotony extremes are exact.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "tempovec/index_io.hpp"
#include "tempovec/monotony.hpp"
#include "tempovec/synth.hpp"
#include "toy.hpp"

using namespace tempovec;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTol = 1e-9;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

Neighborhood fixed_hood(BinId bin, std::vector<WordId> members) {
    Neighborhood h;
    h.target = 0;
    h.bin = bin;
    h.k = static_cast<std::uint32_t>(members.size());
    for (WordId w : members) h.members.push_back(ScoredWord{w, 1.0});
    return h;
}

struct RankedEntry {
    std::string word;
    double score = 0.0;
};

// Two floating-point implementations agree on ranked lists except inside
// mathematical ties, where each side applies the phrase tie-break to its own
// bitwise-equality groups (the two paths group a tie differently when they
// land 1 ulp apart). Lists are therefore compared as ranked lists with ties
// resolved at the pinned tolerance: equal sizes, per-rank scores within tol,
// per-word scores within tol, and any membership difference confined to a
// tie block straddling the k-cut. Returns an empty string when equivalent.
std::string compare_ranked(const std::vector<RankedEntry>& lib,
                           const std::vector<RankedEntry>& orac, double tol) {
    if (lib.size() != orac.size())
        return "size " + std::to_string(lib.size()) + " vs " + std::to_string(orac.size());
    for (std::size_t i = 0; i < lib.size(); ++i)
        if (std::fabs(lib[i].score - orac[i].score) > tol)
            return "score gap at rank " + std::to_string(i);

    std::map<std::string, double> lib_scores, orac_scores;
    for (const auto& e : lib) lib_scores[e.word] = e.score;
    for (const auto& e : orac) orac_scores[e.word] = e.score;
    for (const auto& [word, score] : lib_scores) {
        const auto it = orac_scores.find(word);
        if (it == orac_scores.end()) {
            // Only a tie straddling the cut may drop a word on one side.
            if (lib.empty() || std::fabs(score - lib.back().score) > tol)
                return "word " + word + " missing from the reference list";
        } else if (std::fabs(score - it->second) > tol) {
            return "score of " + word + " differs beyond tolerance";
        }
    }
    for (const auto& [word, score] : orac_scores)
        if (!lib_scores.count(word) && std::fabs(score - orac.back().score) > tol)
            return "word " + word + " missing from the production list";
    return "";
}

std::vector<RankedEntry> as_ranked(const TemporalIndex& index, const Neighborhood& hood) {
    std::vector<RankedEntry> out;
    out.reserve(hood.members.size());
    for (const auto& m : hood.members) out.push_back({index.phrase(m.word), m.score});
    return out;
}

std::vector<RankedEntry> as_ranked(const std::vector<oracle::Scored>& scored) {
    std::vector<RankedEntry> out;
    out.reserve(scored.size());
    for (const auto& s : scored) out.push_back({s.word, s.score});
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 1: the sparse production path reproduces a dense brute-force
// reference on randomized toy corpora — every diffused vector and every
// ranked neighborhood, to 1e-9, in under a minute.

Outcome criterion1() {
    const auto start = Clock::now();
    const double sigmas[] = {0.5, 1.0, 2.0};
    std::size_t vectors = 0;
    std::size_t hoods = 0;

    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto records = make_toy_corpus(seed);
        const auto index = ingest_toy(records);
        const auto ref = oracle::build(records);
        if (index.num_docs() != ref.docs.size() || index.num_bins() != ref.bins.size())
            return {false, "seed " + std::to_string(seed) + ": corpus shape mismatch"};

        const double sigma = sigmas[seed % 3];
        const DiffusionParams params = DiffusionParams::with_sigma(sigma);
        const oracle::Params ref_params{sigma, params.truncation_radius, false};
        const DocNormCache norms(index, false);

        for (WordId w = 0; w < index.num_words(); ++w) {
            const std::string& phrase = index.phrase(w);
            for (BinId t = 0; t < static_cast<BinId>(index.num_bins()); ++t) {
                const auto vec = word_vector(w, t, params, index, norms);
                const auto ref_vec = oracle::vector_of(ref, phrase, t, ref_params);
                if (vec.entries.size() != ref_vec.size())
                    return {false, "seed " + std::to_string(seed) + ", word " + phrase +
                                       ", bin " + std::to_string(t) + ": vector support " +
                                       std::to_string(vec.entries.size()) + " vs " +
                                       std::to_string(ref_vec.size())};
                for (const auto& [doc, weight] : vec.entries) {
                    const auto it = ref_vec.find(index.document(doc).id);
                    if (it == ref_vec.end() || std::fabs(weight - it->second) > kTol)
                        return {false, "seed " + std::to_string(seed) + ", word " + phrase +
                                           ": diffused weight mismatch in doc " +
                                           index.document(doc).id};
                }
                ++vectors;

                for (const int window : {-1, 2}) {
                    const ContextSpec spec =
                        window < 0 ? ContextSpec::document()
                                   : ContextSpec::window(static_cast<std::uint32_t>(window));
                    const auto hood = nearest_neighbors(w, t, 8, spec, params, index, norms);
                    const auto ref_hood =
                        oracle::neighborhood(ref, phrase, t, 8, window, ref_params);
                    const std::string verdict =
                        compare_ranked(as_ranked(index, hood), as_ranked(ref_hood), kTol);
                    if (!verdict.empty())
                        return {false, "seed " + std::to_string(seed) + ", word " + phrase +
                                           ", bin " + std::to_string(t) + ": " + verdict};
                    ++hoods;
                }
            }
        }
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= 60.0)
        return {false, "matched but took " + fmt(elapsed) + "s (limit 60s)"};
    return {true, "50 corpora, " + std::to_string(vectors) + " vectors and " +
                      std::to_string(hoods) + " neighborhoods matched to 1e-9 in " +
                      fmt(elapsed) + "s"};
}

// ---------------------------------------------------------------------------
// Criterion 2: monotony extremes are exact — a constant neighborhood series
// scores 1.0 on every metric, a fully disjoint series averages 0.0.

Outcome criterion2() {
    const std::vector<Neighborhood> constant{
        fixed_hood(0, {1, 2, 3}),
        fixed_hood(1, {1, 2, 3}),
        fixed_hood(2, {1, 2, 3}),
        fixed_hood(3, {1, 2, 3}),
    };
    const auto stable = average_monotony(constant);
    if (stable.average != 1.0 || stable.minimum != 1.0 || stable.absolute != 1.0)
        return {false, "constant series: average/minimum/absolute not exactly 1.0"};

    const std::vector<Neighborhood> disjoint{
        fixed_hood(0, {1, 2}),
        fixed_hood(1, {3, 4}),
        fixed_hood(2, {5, 6}),
    };
    const auto churn = average_monotony(disjoint);
    if (churn.average != 0.0 || churn.minimum != 0.0)
        return {false, "disjoint series: average/minimum not exactly 0.0"};
    return {true, "constant series = 1.0, disjoint series = 0.0, exact"};
}

// ---------------------------------------------------------------------------
// Criterion 3: with truncation radius 0 the per-bin neighborhoods coincide
// with plain cosine-normalized tf-idf neighborhoods computed independently
// per bin (no kernel at all) — exact member lists, all targets.

Outcome criterion3() {
    std::size_t compared = 0;
    for (std::uint64_t seed = 60; seed < 80; ++seed) {
        const auto records = make_toy_corpus(seed);
        const auto index = ingest_toy(records);
        const auto ref = oracle::build(records);

        DiffusionParams params;
        params.truncation_radius = 0;
        const DocNormCache norms(index, false);

        for (WordId w = 0; w < index.num_words(); ++w) {
            for (BinId t = 0; t < static_cast<BinId>(index.num_bins()); ++t) {
                for (const int window : {-1, 2}) {
                    const ContextSpec spec =
                        window < 0 ? ContextSpec::document()
                                   : ContextSpec::window(static_cast<std::uint32_t>(window));
                    const auto hood = nearest_neighbors(w, t, 8, spec, params, index, norms);
                    const auto ref_hood = oracle::plain_neighborhood(ref, index.phrase(w), t, 8,
                                                                     window, false);
                    // The kernel's peak factor scales the target and every
                    // candidate alike, so the cosines coincide exactly (up
                    // to within-tie ordering, handled by compare_ranked).
                    const std::string verdict =
                        compare_ranked(as_ranked(index, hood), as_ranked(ref_hood), kTol);
                    if (!verdict.empty())
                        return {false, "seed " + std::to_string(seed) + ", word " +
                                           index.phrase(w) + ", bin " + std::to_string(t) +
                                           ": " + verdict};
                    ++compared;
                }
            }
        }
    }
    return {true, "20 corpora, " + std::to_string(compared) +
                      " radius-0 neighborhoods equal per-bin tf-idf exactly"};
}

// ---------------------------------------------------------------------------
// Shared synthetic corpora for the trend criteria.

DriftSpec rich_drift_spec(std::uint64_t seed, std::uint32_t docs_per_bin) {
    DriftSpec spec;
    spec.num_bins = 10;
    spec.docs_per_bin = docs_per_bin;
    spec.target = "signal";
    spec.vocab = {"signal", "alpha_old", "alpha_new"};
    const double anchor_probs[] = {0.7, 0.6, 0.5, 0.4, 0.35, 0.3};
    for (int a = 1; a <= 6; ++a) spec.vocab.push_back("anchor" + std::to_string(a));
    for (int f = 0; f < 40; ++f) {
        char name[8];
        std::snprintf(name, sizeof(name), "f%02d", f);
        spec.vocab.emplace_back(name);
    }
    spec.schedule.assign(10, {});
    for (std::uint32_t b = 0; b < 10; ++b) {
        spec.schedule[b].push_back({b < 5 ? "alpha_old" : "alpha_new", 0.9});
        for (int a = 1; a <= 6; ++a)
            spec.schedule[b].push_back({"anchor" + std::to_string(a), anchor_probs[a - 1]});
    }
    spec.background_noise = 1.0;
    spec.seed = seed;
    return spec;
}

std::vector<WordId> sweep_targets(const TemporalIndex& index,
                                  const std::vector<std::string>& phrases) {
    std::vector<WordId> out;
    for (const auto& p : phrases) out.push_back(index.require_word(p));
    return out;
}

// Criterion 4: averaged monotony rises with sigma on a drifting corpus —
// non-decreasing across {0.5, 1, 2, 3, 5} with a total gain of at least 0.1.

Outcome criterion4(const TemporalIndex& index) {
    const auto start = Clock::now();
    const std::vector<double> grid{0.5, 1.0, 2.0, 3.0, 5.0};
    const auto report = sensitivity_sweep(
        index, sweep_targets(index, {"signal", "f00", "f01", "f02", "f03"}), grid,
        {ContextSpec::window(2)}, {16});

    std::vector<double> means;
    for (const auto& agg : report.aggregates) {
        if (!agg.mean_average) return {false, "mean average undefined at sigma " + fmt(agg.sigma)};
        means.push_back(*agg.mean_average);
    }
    std::ostringstream curve;
    for (std::size_t i = 0; i < means.size(); ++i)
        curve << (i ? ", " : "") << fmt(grid[i]) << ":" << fmt(means[i]);
    for (std::size_t i = 1; i < means.size(); ++i)
        if (means[i] < means[i - 1])
            return {false, "mean average-monotony not non-decreasing (" + curve.str() + ")"};
    const double gain = means.back() - means.front();
    if (gain < 0.1)
        return {false, "gain mean(5) - mean(0.5) = " + fmt(gain) + " < 0.1 (" + curve.str() + ")"};
    const double elapsed = seconds_since(start);
    if (elapsed >= 300.0) return {false, "took " + fmt(elapsed) + "s (limit 300s)"};
    return {true, "mean average-monotony " + curve.str() + "; gain " + fmt(gain) + " in " +
                      fmt(elapsed) + "s"};
}

// Criterion 5: varying the context (document, window 1..4) at sigma 1, k 16
// moves the mean average-monotony by at most 0.15 on the same corpus.

Outcome criterion5(const TemporalIndex& index) {
    const std::vector<ContextSpec> contexts{ContextSpec::document(), ContextSpec::window(1),
                                            ContextSpec::window(2), ContextSpec::window(3),
                                            ContextSpec::window(4)};
    const auto report = sensitivity_sweep(
        index, sweep_targets(index, {"signal", "f00", "f01", "f02", "f03"}), {1.0}, contexts,
        {16});

    double lo = 2.0, hi = -1.0;
    std::ostringstream values;
    for (const auto& agg : report.aggregates) {
        if (!agg.mean_average)
            return {false, "mean average undefined for context " + agg.spec.describe()};
        lo = std::min(lo, *agg.mean_average);
        hi = std::max(hi, *agg.mean_average);
        values << (values.tellp() > 0 ? ", " : "") << agg.spec.describe() << ":"
               << fmt(*agg.mean_average);
    }
    const double spread = hi - lo;
    if (spread > 0.15)
        return {false, "context spread " + fmt(spread) + " > 0.15 (" + values.str() + ")"};
    return {true, "context spread " + fmt(spread) + " (" + values.str() + ")"};
}

// Criterion 6: the minimum monotony grows with neighborhood size — k = 32
// beats k = 4 averaged over 20 seeded drift corpora.

Outcome criterion6() {
    double sum4 = 0.0, sum32 = 0.0;
    std::size_t seeds = 0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const auto spec = rich_drift_spec(seed, 60);
        const auto index = ingest_toy(generate_drift_corpus(spec));
        const auto report =
            sensitivity_sweep(index, sweep_targets(index, {"signal", "f00", "f01"}), {1.0},
                              {ContextSpec::window(2)}, {4, 32});
        if (report.aggregates.size() != 2 || !report.aggregates[0].mean_minimum ||
            !report.aggregates[1].mean_minimum)
            return {false, "seed " + std::to_string(seed) + ": mean minimum undefined"};
        sum4 += *report.aggregates[0].mean_minimum;
        sum32 += *report.aggregates[1].mean_minimum;
        ++seeds;
    }
    const double mean4 = sum4 / static_cast<double>(seeds);
    const double mean32 = sum32 / static_cast<double>(seeds);
    if (mean32 <= mean4)
        return {false, "mean minimum k=32 (" + fmt(mean32) + ") not above k=4 (" + fmt(mean4) +
                           ") over " + std::to_string(seeds) + " seeds"};
    return {true, "mean minimum k=4: " + fmt(mean4) + ", k=32: " + fmt(mean32) + " over " +
                      std::to_string(seeds) + " seeds"};
}

// Criterion 7: a sharp planted drift (probability gap >= 0.8) is localized —
// the minimum-monotony pair lands on the planted boundary in >= 90% of runs.

Outcome criterion7() {
    std::size_t hits = 0;
    const std::size_t runs = 20;
    for (std::uint64_t seed = 200; seed < 200 + runs; ++seed) {
        DriftSpec spec;
        spec.num_bins = 10;
        spec.docs_per_bin = 60;
        spec.target = "signal";
        spec.vocab = {"signal", "old1", "old2", "old3", "new1", "new2", "new3"};
        for (int f = 0; f < 30; ++f) {
            char name[8];
            std::snprintf(name, sizeof(name), "f%02d", f);
            spec.vocab.emplace_back(name);
        }
        spec.schedule.assign(10, {});
        for (std::uint32_t b = 0; b < 10; ++b)
            for (int c = 1; c <= 3; ++c)
                spec.schedule[b].push_back(
                    {(b < 5 ? "old" : "new") + std::to_string(c), 0.95});
        spec.background_noise = 1.0;
        spec.seed = seed;

        const auto index = ingest_toy(generate_drift_corpus(spec));
        const DocNormCache norms(index, false);
        const auto evo = track_evolution(index.require_word("signal"), 3,
                                         ContextSpec::window(2), DiffusionParams{}, index, norms);
        const auto report = average_monotony(evo.per_bin);
        if (report.minimum_pair &&
            report.pair_bins[*report.minimum_pair] == std::pair<BinId, BinId>{4, 5})
            ++hits;
    }
    if (hits * 10 < runs * 9)
        return {false, "drift localized in " + std::to_string(hits) + "/" +
                           std::to_string(runs) + " runs (< 90%)"};
    return {true, "minimum-monotony pair on the planted boundary in " + std::to_string(hits) +
                      "/" + std::to_string(runs) + " runs"};
}

// ---------------------------------------------------------------------------
// Criterion 8: metric invariants under randomized property tests, 1000 cases
// per property.

std::vector<WordId> random_set(DetRng& rng, std::size_t universe, std::size_t max_size) {
    std::set<WordId> s;
    const std::size_t n = rng.uniform(max_size + 1);
    for (std::size_t i = 0; i < n; ++i) s.insert(static_cast<WordId>(rng.uniform(universe)));
    return {s.begin(), s.end()};
}

Outcome criterion8() {
    constexpr std::size_t kCases = 1000;
    DetRng rng(8);

    for (std::size_t i = 0; i < kCases; ++i) {  // Jaccard bounds and conventions
        const auto a = random_set(rng, 12, 8);
        const auto b = random_set(rng, 12, 8);
        const double j = jaccard(a, b);
        if (j < 0.0 || j > 1.0) return {false, "jaccard out of [0,1]"};
        if (jaccard(a, b) != jaccard(b, a)) return {false, "jaccard asymmetric"};
        if (jaccard(a, a) != 1.0) return {false, "jaccard(a,a) != 1"};
        if (a.empty() && b.empty() && j != 1.0) return {false, "empty-set convention broken"};
    }

    for (std::size_t i = 0; i < kCases; ++i) {  // minimum <= average
        const std::size_t bins = 2 + rng.uniform(5);
        std::vector<Neighborhood> series;
        for (std::size_t t = 0; t < bins; ++t)
            series.push_back(fixed_hood(static_cast<BinId>(t), random_set(rng, 8, 5)));
        const auto report = average_monotony(series);
        if (report.pair_jaccards.size() + report.skipped_pairs != bins - 1)
            return {false, "pair bookkeeping broken"};
        if (report.average.has_value() != report.minimum.has_value())
            return {false, "average/minimum defined inconsistently"};
        if (report.average && *report.minimum > *report.average + 1e-12)
            return {false, "minimum above average"};
    }

    for (std::size_t i = 0; i < kCases; ++i) {  // cosine in [0,1] for non-negative vectors
        DiffusedVector u, v;
        for (WordId d : random_set(rng, 12, 6))
            u.entries.emplace_back(d, rng.unit() * 10.0);
        for (WordId d : random_set(rng, 12, 6))
            v.entries.emplace_back(d, rng.unit() * 10.0);
        const double c = cosine_similarity(u, v);
        if (c < 0.0 || c > 1.0) return {false, "cosine out of [0,1]"};
    }

    for (std::size_t i = 0; i < kCases; ++i) {  // Gaussian symmetry and unimodality
        const double sigma = 0.3 + rng.unit() * 4.5;
        const BinId a = static_cast<BinId>(rng.uniform(50));
        const BinId b = static_cast<BinId>(rng.uniform(50));
        if (gaussian_factor(a, b, sigma) != gaussian_factor(b, a, sigma))
            return {false, "gaussian asymmetric"};
        const BinId t = static_cast<BinId>(rng.uniform(20));
        const BinId d = static_cast<BinId>(rng.uniform(10));
        if (gaussian_factor(t + d, t, sigma) < gaussian_factor(t + d + 1, t, sigma))
            return {false, "gaussian not unimodal"};
    }

    for (std::size_t i = 0; i < kCases; ++i) {  // window contexts grow with the window
        Document doc;
        doc.id = "p";
        const std::size_t len = 1 + rng.uniform(20);
        for (std::size_t p = 0; p < len; ++p)
            doc.tokens.push_back(static_cast<WordId>(rng.uniform(6)));
        const WordId target = static_cast<WordId>(rng.uniform(6));
        const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.uniform(6));
        const auto narrow = window_context(doc, target, k);
        const auto wide = window_context(doc, target, k + 1);
        if (!std::includes(wide.begin(), wide.end(), narrow.begin(), narrow.end()))
            return {false, "window context shrank as the window grew"};
    }

    return {true, "5 properties x 1000 randomized cases"};
}

// ---------------------------------------------------------------------------
// Criterion 9: plumbing speed — a 10,000-document build (ingest + save)
// under 10 s, and a 20-bin evolution query under 2 s.

Outcome criterion9() {
    DriftSpec spec;
    spec.num_bins = 20;
    spec.docs_per_bin = 500;
    spec.target = "signal";
    spec.vocab = {"signal", "alpha", "beta"};
    for (int f = 0; f < 200; ++f) {
        char name[8];
        std::snprintf(name, sizeof(name), "f%03d", f);
        spec.vocab.emplace_back(name);
    }
    spec.schedule.assign(20, {});
    for (std::uint32_t b = 0; b < 20; ++b)
        spec.schedule[b].push_back({b < 10 ? "alpha" : "beta", 0.8});
    spec.background_noise = 1.0;
    spec.seed = 999;
    const auto records = generate_drift_corpus(spec);

    const auto dir = std::filesystem::temp_directory_path() / "tempovec_accept_9";
    std::filesystem::remove_all(dir);

    const auto build_start = Clock::now();
    IngestConfig config;
    config.granularity = Granularity::RawInteger;
    config.vocab_size = 100000;
    const auto index = ingest_documents(records, config);
    save_index(index, dir);
    const double build_s = seconds_since(build_start);

    const auto query_start = Clock::now();
    const DocNormCache norms(index, false);
    const auto evo = track_evolution(index.require_word("signal"), 16, ContextSpec::window(2),
                                     DiffusionParams{}, index, norms);
    const double query_s = seconds_since(query_start);
    std::filesystem::remove_all(dir);

    if (index.num_docs() != 10000)
        return {false, "expected 10000 documents, ingested " + std::to_string(index.num_docs())};
    if (evo.bins.size() != 20)
        return {false, "expected 20 bins, tracked " + std::to_string(evo.bins.size())};
    if (build_s >= 10.0) return {false, "build took " + fmt(build_s) + "s (limit 10s)"};
    if (query_s >= 2.0) return {false, "query took " + fmt(query_s) + "s (limit 2s)"};
    return {true, "10000-doc build " + fmt(build_s) + "s, 20-bin track " + fmt(query_s) + "s"};
}

}  // namespace

int main() {
    const auto rich = rich_drift_spec(4242, 200);
    const auto rich_index = ingest_toy(generate_drift_corpus(rich));

    struct Entry {
        int number;
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> entries{
        {1, "oracle equivalence", criterion1},
        {2, "monotony extremes", criterion2},
        {3, "radius-0 equals per-bin tf-idf", criterion3},
        {4, "sigma sweep trend", [&] { return criterion4(rich_index); }},
        {5, "context insensitivity", [&] { return criterion5(rich_index); }},
        {6, "k trend on minimum monotony", criterion6},
        {7, "drift localization", criterion7},
        {8, "property tests", criterion8},
        {9, "plumbing performance", criterion9},
    };

    bool all_pass = true;
    for (const auto& entry : entries) {
        Outcome outcome;
        try {
            outcome = entry.fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s: criterion %d (%s) — %s\n", outcome.pass ? "PASS" : "FAIL",
                    entry.number, entry.name, outcome.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
