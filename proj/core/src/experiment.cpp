#include "metarates/experiment.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <thread>
#include <utility>

#include "metarates/picard.hpp"

namespace metarates {

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    require_keys(j,
                 {"rate_family", "rate_params", "epsilons", "g_presets", "scenarios", "caps",
                  "seeds", "output"},
                 {"rate_family", "epsilons", "scenarios"}, "config");
    ExperimentConfig config;
    config.rate_family = j.at("rate_family").get<std::string>();
    config.rate_params = j.value("rate_params", nlohmann::json::object());
    for (const auto& e : j.at("epsilons")) {
        Rat eps = rat_from_json(e);
        if (eps <= 0) throw std::invalid_argument("config: epsilon must be positive");
        config.epsilons.push_back(std::move(eps));
    }
    if (config.epsilons.empty()) throw std::invalid_argument("config: empty epsilon grid");
    if (j.contains("g_presets"))
        for (const auto& g : j.at("g_presets"))
            config.g_presets.push_back(Counterfunction::from_json(g));
    for (const auto& s : j.at("scenarios")) config.scenarios.push_back(s);
    if (j.contains("caps")) {
        require_keys(j.at("caps"), {"orbit", "scan"}, {}, "config caps");
        config.orbit_cap = j.at("caps").value("orbit", config.orbit_cap);
        config.scan_cap = j.at("caps").value("scan", config.scan_cap);
        if (config.orbit_cap == 0 || config.scan_cap == 0)
            throw std::invalid_argument("config: caps must be positive");
    }
    if (j.contains("seeds")) {
        require_keys(j.at("seeds"), {"sampler"}, {}, "config seeds");
        config.sampler_seed = j.at("seeds").value("sampler", config.sampler_seed);
    }
    if (j.contains("output")) {
        require_keys(j.at("output"), {"csv", "json"}, {}, "config output");
        if (j.at("output").contains("csv"))
            config.csv_out = j.at("output").at("csv").get<std::string>();
        if (j.at("output").contains("json"))
            config.json_out = j.at("output").at("json").get<std::string>();
    }
    return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json eps = nlohmann::json::array();
    for (const Rat& e : epsilons) eps.push_back(rat_to_json(e));
    nlohmann::json gs = nlohmann::json::array();
    for (const Counterfunction& g : g_presets) {
        auto d = g.descriptor();
        if (!d) throw std::logic_error("config: non-serializable counterfunction");
        gs.push_back(*d);
    }
    nlohmann::json j{{"rate_family", rate_family},
                     {"rate_params", rate_params},
                     {"epsilons", eps},
                     {"g_presets", gs},
                     {"scenarios", scenarios},
                     {"caps", {{"orbit", orbit_cap}, {"scan", scan_cap}}},
                     {"seeds", {{"sampler", sampler_seed}}}};
    nlohmann::json out = nlohmann::json::object();
    if (!csv_out.empty()) out["csv"] = csv_out.string();
    if (!json_out.empty()) out["json"] = json_out.string();
    j["output"] = out;
    return j;
}

unsigned worker_count_from_env() {
    if (const char* env = std::getenv("METARATES_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace {

struct Cell {
    std::size_t row_index;
    std::function<ReportRow()> work;
};

void run_cells(std::vector<Cell>& cells, std::vector<ReportRow>& rows, unsigned workers) {
    rows.resize(cells.size());
    if (workers <= 1 || cells.size() <= 1) {
        for (Cell& cell : cells) rows[cell.row_index] = cell.work();
        return;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            rows[cells[i].row_index] = cells[i].work();
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(workers, cells.size());
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
}

bool is_scenario_descriptor(const nlohmann::json& j) { return j.is_object() && j.contains("space"); }

// Evaluation failures inside a cell (caps exceeded, non-finite orbit) must
// not take the run down; they surface as inconclusive rows with a note.
std::function<ReportRow()> guarded(std::string source, Rat eps, std::string g_label,
                                   std::function<ReportRow()> work) {
    return [source = std::move(source), eps = std::move(eps), g_label = std::move(g_label),
            work = std::move(work)]() -> ReportRow {
        try {
            return work();
        } catch (const std::exception& e) {
            ReportRow row;
            row.source = source;
            row.eps = eps;
            row.g_label = g_label;
            row.verdict = Verdict::inconclusive;
            row.ratio = "-";
            row.note = e.what();
            return row;
        }
    };
}

// Rate data shared by one run; scenario-backed families pull K and r from
// each certificate.
struct FamilyContext {
    std::string family;
    nlohmann::json params;
};

MetastabilityRate family_for_sequence(const FamilyContext& ctx) {
    const std::string& fam = ctx.family;
    if (fam == "monotone") {
        require_keys(ctx.params, {"K"}, {"K"}, "rate_params monotone");
        return monotone_metastability_rate(rat_from_json(ctx.params.at("K")));
    }
    if (fam == "theorem-2.5") {
        require_keys(ctx.params, {"K", "r", "gamma_offset"}, {"K", "gamma_offset"},
                     "rate_params theorem-2.5");
        const Rat K = rat_from_json(ctx.params.at("K"));
        const Rat r = ctx.params.contains("r") ? rat_from_json(ctx.params.at("r")) : Rat(1);
        const Nat k = nat_from_json(ctx.params.at("gamma_offset"));
        MetaDecRate gamma("offset:N+" + k.str(),
                          [k](const Rat&, const Rat&, const Rat&, const Counterfunction&,
                              const Nat& N) { return N + k; },
                          /*monotone_in_n=*/true);
        return metastability_from_gamma(std::move(gamma), K, r);
    }
    if (fam == "zero") {
        require_keys(ctx.params, {}, {}, "rate_params zero");
        return zero_metastability_rate();
    }
    if (fam == "nonexpansive-omega" || fam == "omega" || fam == "omega-decreasing-mu" ||
        fam == "lp-asymptotic-regularity") {
        throw std::invalid_argument("config: rate family '" + fam +
                                    "' needs scenario sources, not sequence sources");
    }
    throw std::invalid_argument("config: unknown rate family '" + fam + "'");
}

MetastabilityRate family_for_scenario(const FamilyContext& ctx, const Scenario& scenario) {
    const std::string& fam = ctx.family;
    const Rat K = scenario.certificate.K;
    const Rat r = scenario.certificate.r;
    if (fam == "monotone" || fam == "theorem-2.5" || fam == "zero")
        return family_for_sequence(ctx);
    if (fam == "nonexpansive-omega") {
        require_keys(ctx.params, {"modulus"}, {"modulus"}, "rate_params nonexpansive-omega");
        return nonexpansive_omega(modulus_from_json(ctx.params.at("modulus")), K, r);
    }
    if (fam == "omega") {
        require_keys(ctx.params, {"modulus", "gamma_offset"}, {"modulus"}, "rate_params omega");
        ConvexityModulus phi = modulus_from_json(ctx.params.at("modulus"));
        if (ctx.params.contains("gamma_offset")) {
            const Nat k = nat_from_json(ctx.params.at("gamma_offset"));
            MetaDecRate gamma("offset:N+" + k.str(),
                              [k](const Rat&, const Rat&, const Rat&, const Counterfunction&,
                                  const Nat& N) { return N + k; },
                              /*monotone_in_n=*/true);
            return omega_rate(std::move(phi), std::move(gamma), K, r);
        }
        if (scenario.gamma) return omega_rate(std::move(phi), *scenario.gamma, K, r);
        if (scenario.mu && scenario.mu->has_c)
            return omega_rate(std::move(phi), gamma_from_mu_rate(*scenario.mu, K, r), K, r);
        if (scenario.mu && scenario.mu->has_phi)
            return omega_rate(std::move(phi), gamma_from_metastable_mu(*scenario.mu, K, r), K, r);
        return omega_rate(std::move(phi), nonexpansive_gamma(), K, r);
    }
    if (fam == "omega-decreasing-mu") {
        require_keys(ctx.params, {"modulus", "mu"}, {"modulus"}, "rate_params omega-decreasing-mu");
        ConvexityModulus phi = modulus_from_json(ctx.params.at("modulus"));
        if (ctx.params.contains("mu"))
            return omega_decreasing_mu(std::move(phi), MuProfile::from_json(ctx.params.at("mu")),
                                       K, r);
        if (scenario.mu && scenario.mu->has_c)
            return omega_decreasing_mu(std::move(phi), *scenario.mu, K, r);
        throw std::invalid_argument("config: omega-decreasing-mu needs a mu profile");
    }
    throw std::invalid_argument("config: unknown rate family '" + fam + "'");
}

// Asymptotic-regularity cells are per-epsilon: bound f(eps), witness = first
// index whose step is small, then every step in [f, f+window] must be small.
ReportRow regularity_cell(const std::shared_ptr<PicardOrbit>& orbit, const Rat& eps,
                          std::uint64_t window, const OracleLimits& lim) {
    const Scenario& sc = orbit->scenario();
    Nat bound = lp_asymptotic_regularity_rate(sc.space.p, sc.certificate.K, sc.certificate.r, eps);
    const double cutoff = to_double(eps) + lim.tau;

    WitnessSearchResult search;
    search.cap = lim.scan_cap;
    for (std::uint64_t i = 0; i <= lim.scan_cap; ++i) {
        ++search.scanned;
        if (orbit->step(i) <= cutoff) {
            search.found = i;
            break;
        }
    }
    ReportRow row = classify_row("steps(" + sc.map.label() + ")", eps, "-", search, bound);
    if (row.verdict == Verdict::pass) {
        if (bound > Nat(orbit->cap() - window - 1)) {
            row.verdict = Verdict::inconclusive;  // window not verifiable under the orbit cap
            return row;
        }
        const std::uint64_t start = bound.convert_to<std::uint64_t>();
        double prev = orbit->step(start);
        for (std::uint64_t i = start; i <= start + window; ++i) {
            const double s = orbit->step(i);
            if (s > cutoff || s > prev + lim.tau) {
                row.verdict = Verdict::fail;
                break;
            }
            prev = s;
        }
        row.scanned += window;
    }
    return row;
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& config, unsigned workers) {
    if (workers == 0) workers = worker_count_from_env();
    const FamilyContext ctx{config.rate_family, config.rate_params};
    OracleLimits lim;
    lim.scan_cap = config.scan_cap;

    const bool regularity = config.rate_family == "lp-asymptotic-regularity";
    if (regularity) {
        require_keys(config.rate_params, {"window"}, {}, "rate_params lp-asymptotic-regularity");
        if (!config.g_presets.empty())
            throw std::invalid_argument("config: lp-asymptotic-regularity takes no g presets");
    } else if (config.g_presets.empty()) {
        throw std::invalid_argument("config: empty g_presets");
    }

    std::vector<Cell> cells;
    std::size_t row_index = 0;
    for (const nlohmann::json& descriptor : config.scenarios) {
        if (is_scenario_descriptor(descriptor)) {
            Scenario scenario = Scenario::from_json(descriptor);
            auto orbit = std::make_shared<PicardOrbit>(scenario, config.orbit_cap);
            if (regularity) {
                const std::uint64_t window = config.rate_params.value("window", 10'000);
                const std::string label = "steps(" + scenario.map.label() + ")";
                for (const Rat& eps : config.epsilons) {
                    cells.push_back(Cell{row_index++,
                                         guarded(label, eps, "-", [orbit, eps, window, lim] {
                                             return regularity_cell(orbit, eps, window, lim);
                                         })});
                }
                continue;
            }
            auto family =
                std::make_shared<MetastabilityRate>(family_for_scenario(ctx, scenario));
            const std::string label = "orbit(" + scenario.map.label() + ")";
            for (const Rat& eps : config.epsilons) {
                for (const Counterfunction& g : config.g_presets) {
                    cells.push_back(Cell{
                        row_index++,
                        guarded(label, eps, g.label(), [orbit, family, eps, g, label, lim] {
                            Nat bound = (*family)(eps, g);
                            OracleLimits scan = lim;
                            if (bound < Nat(scan.scan_cap))
                                scan.scan_cap = bound.convert_to<std::uint64_t>();
                            WitnessSearchResult search = min_witness_orbit(*orbit, eps, g, scan);
                            return classify_row(label, eps, g.label(), search, std::move(bound));
                        })});
                }
            }
            continue;
        }
        if (regularity)
            throw std::invalid_argument(
                "config: lp-asymptotic-regularity needs scenario sources");
        auto source = std::make_shared<SequenceSource>(SequenceSource::from_json(descriptor));
        auto family = std::make_shared<MetastabilityRate>(family_for_sequence(ctx));
        for (const Rat& eps : config.epsilons) {
            for (const Counterfunction& g : config.g_presets) {
                cells.push_back(
                    Cell{row_index++,
                         guarded(source->label(), eps, g.label(), [source, family, eps, g, lim] {
                             Nat bound = (*family)(eps, g);
                             OracleLimits scan = lim;
                             if (bound < Nat(scan.scan_cap))
                                 scan.scan_cap = bound.convert_to<std::uint64_t>();
                             WitnessSearchResult search = min_witness(*source, eps, g, scan);
                             return classify_row(source->label(), eps, g.label(), search,
                                                 std::move(bound));
                         })});
            }
        }
    }

    RunSummary summary;
    run_cells(cells, summary.rows, workers);
    summary.cells = summary.rows.size();
    for (const ReportRow& row : summary.rows) {
        if (row.verdict == Verdict::fail) ++summary.fails;
        if (row.verdict == Verdict::inconclusive) ++summary.inconclusive;
    }
    summary.exit_status = summary.fails > 0 ? 1 : 0;

    nlohmann::json meta{{"rate_family", config.rate_family},
                        {"cells", summary.cells},
                        {"fails", summary.fails},
                        {"inconclusive", summary.inconclusive}};
    if (!config.csv_out.empty()) {
        std::filesystem::create_directories(config.csv_out.parent_path().empty()
                                                ? "."
                                                : config.csv_out.parent_path());
        std::ofstream out(config.csv_out, std::ios::binary);
        out << report_csv(summary.rows);
    }
    if (!config.json_out.empty()) {
        std::filesystem::create_directories(config.json_out.parent_path().empty()
                                                ? "."
                                                : config.json_out.parent_path());
        std::ofstream out(config.json_out, std::ios::binary);
        out << report_json(summary.rows, meta).dump(2) << "\n";
    }
    return summary;
}

}  // namespace metarates
