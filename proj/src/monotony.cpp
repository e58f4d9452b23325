#include "tempovec/monotony.hpp"

#include <algorithm>
#include <stdexcept>

#include "tempovec/util.hpp"

namespace tempovec {

double jaccard(const std::vector<WordId>& a, const std::vector<WordId>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t inter = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++inter;
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

MonotonyReport average_monotony(const std::vector<Neighborhood>& series) {
    if (series.size() < 2)
        throw std::invalid_argument("monotony needs at least two timestamps");

    MonotonyReport report;
    report.target = series.front().target;
    report.k = series.front().k;

    std::vector<std::vector<WordId>> members;
    members.reserve(series.size());
    for (const auto& hood : series) members.push_back(hood.member_set());

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        if (members[i].empty() || members[i + 1].empty()) {
            ++report.skipped_pairs;
            continue;
        }
        const double j = jaccard(members[i], members[i + 1]);
        if (!report.minimum || j < *report.minimum) {
            report.minimum = j;
            report.minimum_pair = report.pair_jaccards.size();
        }
        report.pair_jaccards.push_back(j);
        report.pair_bins.emplace_back(series[i].bin, series[i + 1].bin);
        sum += j;
    }
    if (!report.pair_jaccards.empty())
        report.average = sum / static_cast<double>(report.pair_jaccards.size());

    if (!members.front().empty() && !members.back().empty())
        report.absolute = jaccard(members.front(), members.back());
    return report;
}

std::optional<double> absolute_monotony(const std::vector<Neighborhood>& series) {
    if (series.size() < 2)
        throw std::invalid_argument("monotony needs at least two timestamps");
    const auto first = series.front().member_set();
    const auto last = series.back().member_set();
    if (first.empty() || last.empty()) return std::nullopt;
    return jaccard(first, last);
}

SweepReport sensitivity_sweep(const TemporalIndex& index,
                              const std::vector<WordId>& targets,
                              const std::vector<double>& sigmas,
                              const std::vector<ContextSpec>& specs,
                              const std::vector<std::uint32_t>& ks,
                              bool literal_denominator, TrackMode mode) {
    if (targets.empty() || sigmas.empty() || specs.empty() || ks.empty())
        throw std::invalid_argument("sweep requires nonempty targets, sigmas, contexts, and ks");

    const DocNormCache norms(index, literal_denominator);

    SweepReport report;
    report.cells.resize(targets.size() * sigmas.size() * specs.size() * ks.size());
    for (std::size_t ti = 0, c = 0; ti < targets.size(); ++ti)
        for (std::size_t si = 0; si < sigmas.size(); ++si)
            for (std::size_t ci = 0; ci < specs.size(); ++ci)
                for (std::size_t ki = 0; ki < ks.size(); ++ki, ++c) {
                    auto& cell = report.cells[c];
                    cell.target = targets[ti];
                    cell.sigma = sigmas[si];
                    cell.spec = specs[ci];
                    cell.k = ks[ki];
                }

    parallel_for(report.cells.size(), [&](std::size_t c) {
        auto& cell = report.cells[c];
        try {
            DiffusionParams params = DiffusionParams::with_sigma(cell.sigma);
            params.literal_denominator = literal_denominator;
            const EvolutionResult evo =
                track_evolution(cell.target, cell.k, cell.spec, params, index, norms, mode);
            cell.report = average_monotony(evo.per_bin);
        } catch (const std::exception& e) {
            cell.status = e.what();
            cell.report = MonotonyReport{};
            cell.report.target = cell.target;
            cell.report.k = cell.k;
        }
    });

    // Aggregate across targets; cell layout makes every (sigma, spec, k)
    // combination a fixed stride apart.
    const std::size_t combos = sigmas.size() * specs.size() * ks.size();
    report.aggregates.resize(combos);
    for (std::size_t g = 0; g < combos; ++g) {
        auto& agg = report.aggregates[g];
        const auto& proto = report.cells[g];
        agg.sigma = proto.sigma;
        agg.spec = proto.spec;
        agg.k = proto.k;

        double sum_avg = 0.0, sum_min = 0.0, sum_abs = 0.0;
        std::size_t n_avg = 0, n_min = 0, n_abs = 0;
        for (std::size_t ti = 0; ti < targets.size(); ++ti) {
            const auto& rep = report.cells[ti * combos + g].report;
            if (rep.average) {
                sum_avg += *rep.average;
                ++n_avg;
            }
            if (rep.minimum) {
                sum_min += *rep.minimum;
                ++n_min;
            }
            if (rep.absolute) {
                sum_abs += *rep.absolute;
                ++n_abs;
            }
        }
        agg.targets_counted = n_avg;
        if (n_avg) agg.mean_average = sum_avg / static_cast<double>(n_avg);
        if (n_min) agg.mean_minimum = sum_min / static_cast<double>(n_min);
        if (n_abs) agg.mean_absolute = sum_abs / static_cast<double>(n_abs);
    }
    return report;
}

}  // namespace tempovec
