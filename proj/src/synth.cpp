#include "tempovec/synth.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "tempovec/util.hpp"

namespace tempovec {

void DriftSpec::validate() const {
    std::vector<std::string> problems;
    if (num_bins < 2) problems.push_back("num_bins must be >= 2");
    if (docs_per_bin < 1) problems.push_back("docs_per_bin must be >= 1");
    if (vocab.empty()) problems.push_back("vocab must be nonempty");

    std::unordered_set<std::string> seen;
    for (const auto& phrase : vocab) {
        if (phrase.empty()) problems.push_back("vocab contains an empty phrase");
        if (!seen.insert(phrase).second) problems.push_back("vocab repeats \"" + phrase + "\"");
    }
    if (target.empty())
        problems.push_back("target must be nonempty");
    else if (!seen.count(target))
        problems.push_back("target \"" + target + "\" is not in vocab");

    if (schedule.size() != num_bins)
        problems.push_back("schedule must list exactly num_bins bins (got " +
                           std::to_string(schedule.size()) + " for " +
                           std::to_string(num_bins) + ")");
    for (std::size_t b = 0; b < schedule.size(); ++b) {
        std::unordered_set<std::string> bin_seen;
        for (const auto& entry : schedule[b]) {
            const std::string where = "\" in bin " + std::to_string(b);
            if (!seen.count(entry.collocate))
                problems.push_back("collocate \"" + entry.collocate + where +
                                   " is not in vocab");
            if (entry.collocate == target)
                problems.push_back("collocate \"" + entry.collocate + where +
                                   " is the target itself");
            if (!bin_seen.insert(entry.collocate).second)
                problems.push_back("collocate \"" + entry.collocate + where + " repeats");
            if (!(entry.probability >= 0.0 && entry.probability <= 1.0))
                problems.push_back("probability of \"" + entry.collocate + where +
                                   " must be in [0, 1]");
        }
    }
    if (!(background_noise >= 0.0 && background_noise <= 1.0))
        problems.push_back("background_noise must be in [0, 1]");

    if (problems.empty()) return;
    std::string message = "invalid drift spec:";
    for (const auto& p : problems) message += "\n  - " + p;
    throw std::invalid_argument(message);
}

std::vector<RawRecord> generate_drift_corpus(const DriftSpec& spec) {
    spec.validate();
    DetRng rng(spec.seed);

    // Per-bin schedule in phrase order, and the filler pool excluding the
    // target and that bin's collocates.
    std::vector<std::vector<ScheduleEntry>> schedule = spec.schedule;
    std::vector<std::vector<std::string>> fillers(spec.num_bins);
    for (std::uint32_t b = 0; b < spec.num_bins; ++b) {
        auto& entries = schedule[b];
        std::sort(entries.begin(), entries.end(),
                  [](const ScheduleEntry& x, const ScheduleEntry& y) {
                      return x.collocate < y.collocate;
                  });
        std::unordered_set<std::string> excluded{spec.target};
        for (const auto& e : entries) excluded.insert(e.collocate);
        for (const auto& phrase : spec.vocab)
            if (!excluded.count(phrase)) fillers[b].push_back(phrase);
    }

    std::vector<RawRecord> records;
    records.reserve(static_cast<std::size_t>(spec.num_bins) * spec.docs_per_bin);
    for (std::uint32_t b = 0; b < spec.num_bins; ++b) {
        for (std::uint32_t j = 0; j < spec.docs_per_bin; ++j) {
            const std::size_t length = 8 + rng.uniform(25);  // 8..32
            const bool has_target = (j % 2) == 0;

            // The target plus fired collocates, placed alternately right and
            // left so the earliest hits stay strictly adjacent.
            std::deque<std::string> cluster;
            if (has_target) {
                cluster.push_back(spec.target);
                bool place_right = true;
                for (const auto& entry : schedule[b]) {
                    if (!rng.bernoulli(entry.probability)) continue;
                    if (place_right)
                        cluster.push_back(entry.collocate);
                    else
                        cluster.push_front(entry.collocate);
                    place_right = !place_right;
                }
            }

            std::vector<std::string> filler_tokens;
            if (!fillers[b].empty() && length > cluster.size()) {
                const std::size_t slots = length - cluster.size();
                filler_tokens.reserve(slots);
                for (std::size_t s = 0; s < slots; ++s) {
                    if (!rng.bernoulli(spec.background_noise)) continue;
                    filler_tokens.push_back(fillers[b][rng.uniform(fillers[b].size())]);
                }
            }

            std::vector<std::string> tokens;
            tokens.reserve(cluster.size() + filler_tokens.size());
            const std::size_t offset =
                filler_tokens.empty() ? 0 : rng.uniform(filler_tokens.size() + 1);
            tokens.insert(tokens.end(), filler_tokens.begin(),
                          filler_tokens.begin() + offset);
            tokens.insert(tokens.end(), cluster.begin(), cluster.end());
            tokens.insert(tokens.end(), filler_tokens.begin() + offset, filler_tokens.end());

            RawRecord record;
            record.id = "b" + std::to_string(b) + "_d" + std::to_string(j);
            record.timestamp = std::to_string(b);
            record.tokens = std::move(tokens);
            records.push_back(std::move(record));
        }
    }
    return records;
}

void write_jsonl(const std::vector<RawRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot open \"" + path + "\" for writing");
    for (const auto& record : records) {
        nlohmann::json line;
        line["id"] = record.id;
        line["timestamp"] = record.timestamp;
        if (record.tokens)
            line["tokens"] = *record.tokens;
        else if (record.text)
            line["text"] = *record.text;
        out << line.dump() << '\n';
    }
    if (!out) throw CorpusError("short write to \"" + path + "\"");
}

DriftSpec load_drift_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open drift spec \"" + path + "\"");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("drift spec \"" + path + "\": " + e.what());
    }

    DriftSpec spec;
    try {
        spec.num_bins = doc.at("num_bins").get<std::uint32_t>();
        spec.docs_per_bin = doc.at("docs_per_bin").get<std::uint32_t>();
        spec.vocab = doc.at("vocab").get<std::vector<std::string>>();
        spec.target = doc.at("target").get<std::string>();
        if (doc.contains("background_noise"))
            spec.background_noise = doc.at("background_noise").get<double>();
        if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();

        spec.schedule.assign(spec.num_bins, {});
        for (const auto& item : doc.at("schedule")) {
            ScheduleEntry entry;
            entry.collocate = item.at("collocate").get<std::string>();
            entry.probability = item.at("probability").get<double>();
            std::uint32_t lo, hi;
            if (item.contains("bin")) {
                lo = hi = item.at("bin").get<std::uint32_t>();
            } else {
                const auto range = item.at("bins");
                if (!range.is_array() || range.size() != 2)
                    throw std::invalid_argument("\"bins\" must be [lo, hi]");
                lo = range[0].get<std::uint32_t>();
                hi = range[1].get<std::uint32_t>();
            }
            if (lo > hi || hi >= spec.num_bins)
                throw std::invalid_argument("schedule range [" + std::to_string(lo) + ", " +
                                            std::to_string(hi) + "] is outside the " +
                                            std::to_string(spec.num_bins) + " bins");
            for (std::uint32_t b = lo; b <= hi; ++b) spec.schedule[b].push_back(entry);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("drift spec \"" + path + "\": " + e.what());
    }

    spec.validate();
    return spec;
}

}  // namespace tempovec
