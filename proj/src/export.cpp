#include "tempovec/export.hpp"

#include <cstdio>

#include "json.hpp"

namespace tempovec {

std::optional<ExportFormat> export_format_from_string(std::string_view s) {
    if (s == "csv") return ExportFormat::Csv;
    if (s == "json") return ExportFormat::Json;
    return std::nullopt;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_score(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

namespace {

std::string opt_score(const std::optional<double>& value) {
    return value ? format_score(*value) : std::string();
}

std::string context_kind(const ContextSpec& spec) {
    return spec.kind == ContextSpec::Kind::Document ? "document" : "window";
}

std::string window_size_field(const ContextSpec& spec) {
    return spec.kind == ContextSpec::Kind::Window ? std::to_string(spec.window_size)
                                                  : std::string();
}

nlohmann::json spec_json(const ContextSpec& spec) {
    nlohmann::json j;
    j["kind"] = context_kind(spec);
    if (spec.kind == ContextSpec::Kind::Window) j["window_size"] = spec.window_size;
    return j;
}

std::string pair_label(const TemporalIndex& index, const MonotonyReport& rep) {
    if (!rep.minimum_pair) return {};
    const auto& [first, second] = rep.pair_bins[*rep.minimum_pair];
    return index.bin_label(first) + ".." + index.bin_label(second);
}

}  // namespace

void write_series(const EvolutionResult& evo, const TemporalIndex& index,
                  ExportFormat format, std::ostream& out) {
    const std::string& target = index.phrase(evo.target);
    if (format == ExportFormat::Csv) {
        out << "target,neighbor,bin,score\n";
        for (std::size_t i = 0; i < evo.tracked.size(); ++i) {
            const std::string& neighbor = index.phrase(evo.tracked[i]);
            for (std::size_t j = 0; j < evo.bins.size(); ++j) {
                out << csv_escape(target) << ',' << csv_escape(neighbor) << ','
                    << csv_escape(index.bin_label(evo.bins[j])) << ','
                    << format_score(evo.series[i][j]) << '\n';
            }
        }
        return;
    }

    nlohmann::json doc;
    doc["target"] = target;
    doc["k"] = evo.k;
    auto& bins = doc["bins"] = nlohmann::json::array();
    for (BinId b : evo.bins) bins.push_back(index.bin_label(b));
    auto& series = doc["series"] = nlohmann::json::array();
    for (std::size_t i = 0; i < evo.tracked.size(); ++i) {
        nlohmann::json row;
        row["neighbor"] = index.phrase(evo.tracked[i]);
        row["scores"] = evo.series[i];
        series.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

void write_neighborhoods(const EvolutionResult& evo, const TemporalIndex& index,
                         ExportFormat format, std::ostream& out) {
    const std::string& target = index.phrase(evo.target);
    if (format == ExportFormat::Csv) {
        out << "target,bin,rank,neighbor,score\n";
        for (const auto& hood : evo.per_bin) {
            const std::string bin = index.bin_label(hood.bin);
            for (std::size_t r = 0; r < hood.members.size(); ++r) {
                out << csv_escape(target) << ',' << csv_escape(bin) << ',' << (r + 1) << ','
                    << csv_escape(index.phrase(hood.members[r].word)) << ','
                    << format_score(hood.members[r].score) << '\n';
            }
        }
        return;
    }

    nlohmann::json doc;
    doc["target"] = target;
    doc["k"] = evo.k;
    auto& hoods = doc["neighborhoods"] = nlohmann::json::array();
    for (const auto& hood : evo.per_bin) {
        nlohmann::json entry;
        entry["bin"] = index.bin_label(hood.bin);
        auto& members = entry["members"] = nlohmann::json::array();
        for (const auto& m : hood.members) {
            nlohmann::json member;
            member["neighbor"] = index.phrase(m.word);
            member["score"] = m.score;
            members.push_back(std::move(member));
        }
        hoods.push_back(std::move(entry));
    }
    out << doc.dump(2) << '\n';
}

void write_sweep(const SweepReport& report, const TemporalIndex& index,
                 ExportFormat format, std::ostream& out) {
    if (format == ExportFormat::Csv) {
        out << "target,sigma,context_kind,window_size,k,average,minimum,minimum_pair,"
               "absolute,skipped_pairs,status\n";
        for (const auto& cell : report.cells) {
            out << csv_escape(index.phrase(cell.target)) << ',' << format_score(cell.sigma)
                << ',' << context_kind(cell.spec) << ',' << window_size_field(cell.spec) << ','
                << cell.k << ',' << opt_score(cell.report.average) << ','
                << opt_score(cell.report.minimum) << ','
                << csv_escape(pair_label(index, cell.report)) << ','
                << opt_score(cell.report.absolute) << ',' << cell.report.skipped_pairs << ','
                << csv_escape(cell.status) << '\n';
        }
        for (const auto& agg : report.aggregates) {
            out << "*," << format_score(agg.sigma) << ',' << context_kind(agg.spec) << ','
                << window_size_field(agg.spec) << ',' << agg.k << ','
                << opt_score(agg.mean_average) << ',' << opt_score(agg.mean_minimum) << ",,"
                << opt_score(agg.mean_absolute) << ",," << '\n';
        }
        return;
    }

    nlohmann::json doc;
    auto& cells = doc["cells"] = nlohmann::json::array();
    for (const auto& cell : report.cells) {
        nlohmann::json j;
        j["target"] = index.phrase(cell.target);
        j["sigma"] = cell.sigma;
        j["context"] = spec_json(cell.spec);
        j["k"] = cell.k;
        j["status"] = cell.status;
        j["skipped_pairs"] = cell.report.skipped_pairs;
        if (cell.report.average) j["average"] = *cell.report.average;
        if (cell.report.minimum) j["minimum"] = *cell.report.minimum;
        if (cell.report.minimum_pair) j["minimum_pair"] = pair_label(index, cell.report);
        if (cell.report.absolute) j["absolute"] = *cell.report.absolute;
        auto& pairs = j["pair_jaccards"] = nlohmann::json::array();
        for (std::size_t i = 0; i < cell.report.pair_jaccards.size(); ++i) {
            nlohmann::json pair;
            pair["bins"] = index.bin_label(cell.report.pair_bins[i].first) + ".." +
                           index.bin_label(cell.report.pair_bins[i].second);
            pair["jaccard"] = cell.report.pair_jaccards[i];
            pairs.push_back(std::move(pair));
        }
        cells.push_back(std::move(j));
    }
    auto& aggs = doc["aggregates"] = nlohmann::json::array();
    for (const auto& agg : report.aggregates) {
        nlohmann::json j;
        j["sigma"] = agg.sigma;
        j["context"] = spec_json(agg.spec);
        j["k"] = agg.k;
        j["targets_counted"] = agg.targets_counted;
        if (agg.mean_average) j["mean_average"] = *agg.mean_average;
        if (agg.mean_minimum) j["mean_minimum"] = *agg.mean_minimum;
        if (agg.mean_absolute) j["mean_absolute"] = *agg.mean_absolute;
        aggs.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace tempovec
