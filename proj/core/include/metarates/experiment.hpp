#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "metarates/report.hpp"

namespace metarates {

// One JSON file drives a run: sources or scenarios, a rate family, the
// (eps, g) grid, caps and seeds, and where the CSV/JSON reports go.
// Unknown keys anywhere in the file are rejected.
struct ExperimentConfig {
    std::string rate_family;  // monotone | theorem-2.5 | zero | omega |
                              // nonexpansive-omega | omega-decreasing-mu |
                              // lp-asymptotic-regularity
    nlohmann::json rate_params;
    std::vector<Rat> epsilons;
    std::vector<Counterfunction> g_presets;
    std::vector<nlohmann::json> scenarios;  // scenario or sequence descriptors
    std::uint64_t orbit_cap = 2'000'000;
    std::uint64_t scan_cap = 1'000'000;
    std::uint64_t sampler_seed = 1;
    std::filesystem::path csv_out;   // empty: don't write
    std::filesystem::path json_out;  // empty: don't write

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::filesystem::path& path);
    nlohmann::json to_json() const;
};

struct RunSummary {
    int exit_status = 0;  // nonzero iff any verdict is fail
    std::uint64_t cells = 0;
    std::uint64_t fails = 0;
    std::uint64_t inconclusive = 0;
    std::vector<ReportRow> rows;
};

// Evaluates every grid cell (cells may run in parallel; the merge is by
// grid order, not completion order), writes the reports, and returns the
// summary. Worker count: explicit argument, else METARATES_WORKERS, else
// hardware concurrency.
RunSummary run_experiment(const ExperimentConfig& config, unsigned workers = 0);

unsigned worker_count_from_env();

}  // namespace metarates
