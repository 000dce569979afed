#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metarates/oracle.hpp"

namespace metarates {

// One grid cell of a bound-vs-witness table.
struct ReportRow {
    std::string source;
    Rat eps;
    std::string g_label;
    std::optional<std::uint64_t> n_min;
    Nat bound;
    Verdict verdict = Verdict::inconclusive;
    std::uint64_t scanned = 0;
    // (bound+1)/(n_min+1) rendered to 6 significant digits, "-" when no
    // witness, "bound>>cap" when the bound cannot be scanned at all.
    std::string ratio;
    // evaluation note (cap exceeded, ...); JSON report only
    std::string note;
};

// CSV columns: epsilon_num, epsilon_den, g_descriptor, n_min, bound,
// verdict, scanned. The JSON mirror carries source labels and ratios too.
std::string report_csv(std::span<const ReportRow> rows);
nlohmann::json report_json(std::span<const ReportRow> rows, nlohmann::json meta = nullptr);

// Scans every (eps, g) cell of a family against one source: the minimal
// witness up to the cap, the exact bound, the verdict, and the tightness
// ratio.
std::vector<ReportRow> tightness_report(const SequenceSource& source,
                                        const MetastabilityRate& family,
                                        std::span<const Rat> eps_grid,
                                        std::span<const Counterfunction> g_grid,
                                        const OracleLimits& lim);

// Same table with the witness search running on the orbit points
// themselves (window diameter), the statement the orbit rates actually
// bound.
std::vector<ReportRow> tightness_report_orbit(PicardOrbit& orbit,
                                              const MetastabilityRate& family,
                                              std::span<const Rat> eps_grid,
                                              std::span<const Counterfunction> g_grid,
                                              const OracleLimits& lim);

// Classification shared by the tables: pass when a witness lands at or
// under the bound, fail when the whole bound range was scanned without one
// (or the least witness exceeds the bound), inconclusive otherwise.
ReportRow classify_row(std::string source, Rat eps, std::string g_label,
                       const WitnessSearchResult& search, Nat bound);

}  // namespace metarates
