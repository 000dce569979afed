#include "metarates/report.hpp"

#include <cstdio>
#include <sstream>
#include <utility>

namespace metarates {

namespace {

std::string format_ratio(const std::optional<std::uint64_t>& n_min, const Nat& bound,
                         std::uint64_t cap) {
    if (bound > Nat(cap)) return "bound>>cap";
    if (!n_min) return "-";
    const double value =
        (bound.convert_to<double>() + 1.0) / (static_cast<double>(*n_min) + 1.0);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

}  // namespace

ReportRow classify_row(std::string source, Rat eps, std::string g_label,
                       const WitnessSearchResult& search, Nat bound) {
    ReportRow row;
    row.source = std::move(source);
    row.eps = std::move(eps);
    row.g_label = std::move(g_label);
    row.n_min = search.found;
    row.scanned = search.scanned;
    row.bound = std::move(bound);
    if (search.found && Nat(*search.found) <= row.bound) {
        row.verdict = Verdict::pass;
    } else if (search.found || row.bound <= Nat(search.cap)) {
        // least witness above the bound, or the whole bound range scanned dry
        row.verdict = Verdict::fail;
    } else {
        row.verdict = Verdict::inconclusive;
    }
    row.ratio = format_ratio(row.n_min, row.bound, search.cap);
    return row;
}

std::string report_csv(std::span<const ReportRow> rows) {
    std::ostringstream out;
    out << "epsilon_num,epsilon_den,g_descriptor,n_min,bound,verdict,scanned\n";
    for (const ReportRow& row : rows) {
        out << numerator(row.eps).str() << ',' << denominator(row.eps).str() << ','
            << row.g_label << ',';
        if (row.n_min)
            out << *row.n_min;
        else
            out << '-';
        out << ',' << row.bound.str() << ',' << to_string(row.verdict) << ',' << row.scanned
            << '\n';
    }
    return out.str();
}

nlohmann::json report_json(std::span<const ReportRow> rows, nlohmann::json meta) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ReportRow& row : rows) {
        nlohmann::json r{{"source", row.source},
                         {"epsilon", rat_to_json(row.eps)},
                         {"g", row.g_label},
                         {"bound", row.bound.str()},
                         {"verdict", std::string(to_string(row.verdict))},
                         {"scanned", row.scanned},
                         {"ratio", row.ratio}};
        if (row.n_min)
            r["n_min"] = *row.n_min;
        else
            r["n_min"] = nullptr;
        if (!row.note.empty()) r["note"] = row.note;
        arr.push_back(std::move(r));
    }
    nlohmann::json out{{"rows", arr}};
    if (!meta.is_null()) out["meta"] = std::move(meta);
    return out;
}

std::vector<ReportRow> tightness_report(const SequenceSource& source,
                                        const MetastabilityRate& family,
                                        std::span<const Rat> eps_grid,
                                        std::span<const Counterfunction> g_grid,
                                        const OracleLimits& lim) {
    std::vector<ReportRow> rows;
    rows.reserve(eps_grid.size() * g_grid.size());
    for (const Rat& eps : eps_grid) {
        for (const Counterfunction& g : g_grid) {
            Nat bound = family(eps, g);
            WitnessSearchResult search = min_witness(source, eps, g, lim);
            rows.push_back(
                classify_row(source.label(), eps, g.label(), search, std::move(bound)));
        }
    }
    return rows;
}

std::vector<ReportRow> tightness_report_orbit(PicardOrbit& orbit,
                                              const MetastabilityRate& family,
                                              std::span<const Rat> eps_grid,
                                              std::span<const Counterfunction> g_grid,
                                              const OracleLimits& lim) {
    std::vector<ReportRow> rows;
    rows.reserve(eps_grid.size() * g_grid.size());
    const std::string label = "orbit(" + orbit.scenario().map.label() + ")";
    for (const Rat& eps : eps_grid) {
        for (const Counterfunction& g : g_grid) {
            Nat bound = family(eps, g);
            WitnessSearchResult search = min_witness_orbit(orbit, eps, g, lim);
            rows.push_back(classify_row(label, eps, g.label(), search, std::move(bound)));
        }
    }
    return rows;
}

}  // namespace metarates
