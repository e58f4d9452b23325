// tempovec: build temporal indexes and query diffusion-weighted
// neighborhoods, evolution series, and monotony reports.

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tempovec/corpus.hpp"
#include "tempovec/export.hpp"
#include "tempovec/index_io.hpp"
#include "tempovec/monotony.hpp"
#include "tempovec/neighborhood.hpp"
#include "tempovec/synth.hpp"
#include "tempovec/util.hpp"

namespace {

using namespace tempovec;

// Query settings shared by track, monotony, and sweep.
struct QueryOptions {
    std::string index_dir;
    double sigma = 1.0;
    std::optional<std::int32_t> truncation_radius;  // default: ceil(4*sigma)
    std::string context = "window2";
    std::optional<std::uint32_t> window_size;       // overrides the context's size
    std::uint32_t k = 16;
    bool literal_denominator = false;
    bool paper_mode = false;
    std::string format = "csv";
    std::string output;  // empty: stdout
};

void add_query_flags(CLI::App* cmd, QueryOptions& opt) {
    cmd->add_option("--index", opt.index_dir, "Index directory written by `build`")
        ->required();
    cmd->add_option("--sigma", opt.sigma, "Gaussian standard deviation in bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--truncation-radius", opt.truncation_radius,
                    "Cutoff distance in bins (default: ceil(4*sigma))");
    cmd->add_option("--context", opt.context,
                    "Context filter: document, windowK, or window:K")
        ->capture_default_str();
    cmd->add_option("--window-size", opt.window_size,
                    "Window half-width; shorthand for --context window:K");
    cmd->add_option("-k,--k", opt.k, "Neighborhood size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--literal-denominator", opt.literal_denominator,
                  "Normalize by the sum of squared weights instead of its root");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", opt.output, "Output file (default: stdout)");
}

DiffusionParams diffusion_params(const QueryOptions& opt) {
    DiffusionParams params = DiffusionParams::with_sigma(opt.sigma);
    if (opt.truncation_radius) params.truncation_radius = *opt.truncation_radius;
    params.literal_denominator = opt.literal_denominator;
    params.validate();
    return params;
}

ContextSpec context_spec(const QueryOptions& opt) {
    auto spec = context_from_string(opt.context);
    if (!spec)
        throw std::invalid_argument("unrecognized context \"" + opt.context +
                                    "\" (expected document, windowK, or window:K)");
    if (opt.window_size) {
        if (spec->kind == ContextSpec::Kind::Document)
            throw std::invalid_argument("--window-size conflicts with --context document");
        spec->window_size = *opt.window_size;
    }
    spec->validate();
    return *spec;
}

// Resolves a phrase, suggesting the nearest vocabulary entries on a miss.
WordId resolve_word(const TemporalIndex& index, const std::string& phrase) {
    if (auto id = index.word_id(phrase)) return *id;

    std::vector<std::pair<std::size_t, WordId>> ranked;
    for (WordId w = 0; w < index.num_words(); ++w)
        ranked.emplace_back(edit_distance(phrase, index.phrase(w)), w);
    const std::size_t shown = std::min<std::size_t>(3, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + shown, ranked.end(),
                      [&](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first < b.first;
                          return index.phrase(a.second) < index.phrase(b.second);
                      });
    std::string message = "unknown word \"" + phrase + "\"";
    if (shown > 0) {
        message += "; nearest:";
        for (std::size_t i = 0; i < shown; ++i)
            message += (i ? ", " : " ") + index.phrase(ranked[i].second);
    }
    throw UnknownWordError(message);
}

std::vector<WordId> resolve_words(const TemporalIndex& index,
                                  const std::vector<std::string>& phrases) {
    std::vector<WordId> ids;
    ids.reserve(phrases.size());
    for (const auto& p : phrases) ids.push_back(resolve_word(index, p));
    return ids;
}

// Bins whose key lies in [from, to] (either side optional), by label.
std::optional<std::vector<BinId>> bin_range(const TemporalIndex& index,
                                            const std::string& from, const std::string& to) {
    if (from.empty() && to.empty()) return std::nullopt;
    const auto parse = [&](const std::string& label) {
        auto key = bin_timestamp(label, index.granularity());
        if (!key) throw std::invalid_argument("unparseable bin label \"" + label + "\"");
        return *key;
    };
    const std::int64_t lo = from.empty() ? INT64_MIN : parse(from);
    const std::int64_t hi = to.empty() ? INT64_MAX : parse(to);
    std::vector<BinId> bins;
    for (std::size_t b = 0; b < index.num_bins(); ++b) {
        const std::int64_t key = index.bin_key(static_cast<BinId>(b));
        if (key >= lo && key <= hi) bins.push_back(static_cast<BinId>(b));
    }
    if (bins.empty())
        throw std::invalid_argument("no bins in range [" + (from.empty() ? "*" : from) + ", " +
                                    (to.empty() ? "*" : to) + "]");
    return bins;
}

// Writes through `fn` to the chosen stream.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
    fn(out);
    if (!out) throw std::runtime_error("short write to \"" + path + "\"");
}

std::vector<ContextSpec> parse_contexts(const std::vector<std::string>& names) {
    std::vector<ContextSpec> specs;
    specs.reserve(names.size());
    for (const auto& name : names) {
        auto spec = context_from_string(name);
        if (!spec) throw std::invalid_argument("unrecognized context \"" + name + "\"");
        spec->validate();
        specs.push_back(*spec);
    }
    return specs;
}

int run(int argc, char** argv) {
    CLI::App app{"Temporal vector-space toolkit: diffusion-weighted word "
                 "neighborhoods over timestamped corpora"};
    app.require_subcommand(1);

    // --- build ---
    std::string build_input, build_output;
    std::string build_granularity = "year", build_tokenizer = "heuristic";
    std::size_t build_vocab_size = 10000;
    bool build_force = false;
    auto* build = app.add_subcommand("build", "Ingest a JSONL corpus into an index directory");
    build->add_option("input", build_input, "JSONL corpus (one record per line)")->required();
    build->add_option("-o,--output", build_output, "Index directory to create")->required();
    build->add_option("--granularity", build_granularity, "Timestamp binning")
        ->check(CLI::IsMember({"year", "month", "raw"}))
        ->capture_default_str();
    build->add_option("--vocab-size", build_vocab_size, "Keep the top-N phrases by frequency")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    build->add_option("--tokenizer", build_tokenizer, "Text tokenizer for \"text\" records")
        ->check(CLI::IsMember({"heuristic", "whitespace"}))
        ->capture_default_str();
    build->add_flag("--force", build_force, "Overwrite an index of a different format version");

    // --- track ---
    QueryOptions track_opt;
    std::string track_target, track_from, track_to, track_neighborhoods;
    auto* track = app.add_subcommand("track", "Export a target's neighbor-similarity series");
    add_query_flags(track, track_opt);
    track->add_option("--target", track_target, "Word to track")->required();
    track->add_option("--from", track_from, "First bin label to include");
    track->add_option("--to", track_to, "Last bin label to include");
    track->add_option("--neighborhoods", track_neighborhoods,
                      "Also write ranked per-bin neighborhoods to this file");
    track->add_flag("--paper-mode", track_opt.paper_mode,
                    "Track the top-k words by peak similarity instead of the per-bin union");

    // --- monotony ---
    QueryOptions mono_opt;
    std::vector<std::string> mono_targets;
    auto* mono = app.add_subcommand("monotony", "Monotony metrics for one parameter setting");
    add_query_flags(mono, mono_opt);
    mono->add_option("--targets", mono_targets, "Comma-separated words")
        ->required()
        ->delimiter(',');

    // --- sweep ---
    QueryOptions sweep_opt;
    std::vector<std::string> sweep_targets;
    std::vector<double> sweep_sigmas{0.5, 1.0, 2.0, 3.0, 5.0};
    std::vector<std::string> sweep_contexts{"document", "window1", "window2", "window3",
                                            "window4"};
    std::vector<std::uint32_t> sweep_ks{16};
    auto* sweep = app.add_subcommand("sweep", "Monotony across a sigma/context/k grid");
    add_query_flags(sweep, sweep_opt);
    sweep->add_option("--targets", sweep_targets, "Comma-separated words")
        ->required()
        ->delimiter(',');
    sweep->add_option("--sigmas", sweep_sigmas, "Sigma grid")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--contexts", sweep_contexts, "Context grid")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--ks", sweep_ks, "Neighborhood-size grid")
        ->delimiter(',')
        ->capture_default_str();

    // --- synth ---
    std::string synth_spec, synth_output;
    std::optional<std::uint64_t> synth_seed;
    auto* synth = app.add_subcommand("synth", "Generate a drift corpus from a spec file");
    synth->add_option("--spec", synth_spec, "Drift spec (JSON)")->required();
    synth->add_option("-o,--output", synth_output, "Output JSONL path")->required();
    synth->add_option("--seed", synth_seed, "Override the spec's seed");

    CLI11_PARSE(app, argc, argv);

    if (build->parsed()) {
        IngestConfig config;
        config.granularity = *granularity_from_string(build_granularity);
        config.vocab_size = build_vocab_size;
        config.tokenizer = *tokenizer_from_string(build_tokenizer);

        std::ifstream in(build_input, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open \"" + build_input + "\"");
        const TemporalIndex index = ingest_jsonl(in, config);
        save_index(index, build_output, build_force);

        const auto& stats = index.stats();
        std::cerr << "documents: " << index.num_docs() << "\nvocabulary: " << index.num_words()
                  << "\nbins: " << index.num_bins()
                  << "\nskipped (bad timestamp): " << stats.skipped_bad_timestamp
                  << "\ndropped (no vocabulary tokens): " << stats.dropped_empty_docs << '\n';
        return 0;
    }

    if (track->parsed()) {
        const TemporalIndex index = load_index(track_opt.index_dir);
        const DiffusionParams params = diffusion_params(track_opt);
        const ContextSpec spec = context_spec(track_opt);
        const WordId target = resolve_word(index, track_target);
        const auto bins = bin_range(index, track_from, track_to);
        const DocNormCache norms(index, params.literal_denominator);
        const ExportFormat format = *export_format_from_string(track_opt.format);

        const EvolutionResult evo = track_evolution(
            target, track_opt.k, spec, params, index, norms,
            track_opt.paper_mode ? TrackMode::PeakUnion : TrackMode::PerBinTopK,
            bins ? &*bins : nullptr);

        with_output(track_opt.output, [&](std::ostream& out) {
            write_series(evo, index, format, out);
        });
        if (!track_neighborhoods.empty()) {
            with_output(track_neighborhoods, [&](std::ostream& out) {
                write_neighborhoods(evo, index, format, out);
            });
        }
        return 0;
    }

    if (mono->parsed() || sweep->parsed()) {
        const bool is_sweep = sweep->parsed();
        const QueryOptions& opt = is_sweep ? sweep_opt : mono_opt;
        const TemporalIndex index = load_index(opt.index_dir);

        std::vector<double> sigmas{opt.sigma};
        std::vector<ContextSpec> specs{context_spec(opt)};
        std::vector<std::uint32_t> ks{opt.k};
        std::vector<std::string> target_names = is_sweep ? sweep_targets : mono_targets;
        if (is_sweep) {
            sigmas = sweep_sigmas;
            specs = parse_contexts(sweep_contexts);
            ks = sweep_ks;
        }

        const std::vector<WordId> targets = resolve_words(index, target_names);
        const SweepReport report =
            sensitivity_sweep(index, targets, sigmas, specs, ks, opt.literal_denominator);
        const ExportFormat format = *export_format_from_string(opt.format);
        with_output(opt.output, [&](std::ostream& out) {
            write_sweep(report, index, format, out);
        });
        return 0;
    }

    // synth
    DriftSpec spec = load_drift_spec(synth_spec);
    if (synth_seed) spec.seed = *synth_seed;
    const auto records = generate_drift_corpus(spec);
    write_jsonl(records, synth_output);
    std::cerr << "wrote " << records.size() << " records (" << spec.num_bins << " bins x "
              << spec.docs_per_bin << " docs) to " << synth_output << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
