#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "metarates/experiment.hpp"

using namespace metarates;
namespace fs = std::filesystem;

namespace {

nlohmann::json minimal_config() {
    return nlohmann::json::parse(R"({
      "rate_family": "monotone",
      "rate_params": {"K": "1"},
      "epsilons": ["1", "1/2"],
      "g_presets": [{"preset":"const","c":"1"}, {"preset":"affine","a":"1","b":"0"}],
      "scenarios": [
        {"kind":"table","values":[
          {"num":"9","den":"10"}, {"num":"1","den":"2"}, {"num":"1","den":"4"},
          {"num":"1","den":"8"}]}
      ],
      "caps": {"orbit": 10000, "scan": 10000},
      "seeds": {"sampler": 5}
    })");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path temp_dir(const char* tag) {
    auto dir = fs::temp_directory_path() / (std::string("metarates-test-") + tag);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config parsing is strict") {
    auto j = minimal_config();
    CHECK_NOTHROW(ExperimentConfig::from_json(j));

    auto bad = j;
    bad["typo"] = 1;
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);

    bad = j;
    bad["caps"]["foo"] = 1;
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);

    bad = j;
    bad["epsilons"] = nlohmann::json::array();
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);

    bad = j;
    bad["caps"]["scan"] = 0;
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);
}

TEST_CASE("config round-trips") {
    auto config = ExperimentConfig::from_json(minimal_config());
    auto j = config.to_json();
    auto back = ExperimentConfig::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.epsilons == config.epsilons);
    CHECK(back.scan_cap == 10000);
}

TEST_CASE("runner: all-pass grid, report files, reproducibility") {
    auto dir = temp_dir("run");
    auto config = ExperimentConfig::from_json(minimal_config());
    config.csv_out = dir / "a.csv";
    config.json_out = dir / "a.json";

    auto summary = run_experiment(config, 1);
    CHECK(summary.exit_status == 0);
    CHECK(summary.cells == 4);  // 2 eps x 2 g
    CHECK(summary.fails == 0);
    for (const auto& row : summary.rows) CHECK(row.verdict == Verdict::pass);

    const std::string csv = slurp(config.csv_out);
    CHECK(csv.rfind("epsilon_num,epsilon_den,g_descriptor,n_min,bound,verdict,scanned\n", 0) == 0);
    CHECK(csv.find("pass") != std::string::npos);

    // byte-identical on re-run, and independent of the worker count
    config.csv_out = dir / "b.csv";
    config.json_out = dir / "b.json";
    auto summary2 = run_experiment(config, 4);
    CHECK(summary2.exit_status == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("runner: empty scenario list is an empty pass") {
    auto j = minimal_config();
    j["scenarios"] = nlohmann::json::array();
    auto summary = run_experiment(ExperimentConfig::from_json(j), 1);
    CHECK(summary.exit_status == 0);
    CHECK(summary.cells == 0);
}

TEST_CASE("runner: the zero rate family is a failing negative control") {
    auto j = nlohmann::json::parse(R"({
      "rate_family": "zero",
      "rate_params": {},
      "epsilons": ["1/2"],
      "g_presets": [{"preset":"const","c":"1"}],
      "scenarios": [{"kind":"table","values":[
        {"num":"1","den":"1"}, {"num":"0","den":"1"}, {"num":"0","den":"1"}]}]
    })");
    auto summary = run_experiment(ExperimentConfig::from_json(j), 1);
    CHECK(summary.exit_status != 0);
    CHECK(summary.fails == 1);
}

TEST_CASE("bundled configs parse and behave") {
    const fs::path configs(METARATES_CONFIG_DIR);
    auto dir = temp_dir("bundled");

    auto mono = ExperimentConfig::load(configs / "monotone.json");
    mono.csv_out = dir / "monotone.csv";
    mono.json_out.clear();
    CHECK(run_experiment(mono).exit_status == 0);

    auto control = ExperimentConfig::load(configs / "negative-control.json");
    control.csv_out.clear();
    control.json_out.clear();
    CHECK(run_experiment(control).exit_status != 0);

    CHECK_NOTHROW(ExperimentConfig::load(configs / "omega-slowquad.json"));
    CHECK_NOTHROW(ExperimentConfig::load(configs / "lp-regularity.json"));
}

TEST_CASE("runner: lp regularity family on the slow quadratic line") {
    auto j = nlohmann::json::parse(R"({
      "rate_family": "lp-asymptotic-regularity",
      "rate_params": {"window": 500},
      "epsilons": ["1/4"],
      "scenarios": [{
        "space": {"d": 1, "p": 2},
        "map": {"kind": "slow_quadratic"},
        "certificate": {"p": [{"num":"0","den":"1"}], "r": {"num":"1","den":"2"},
                         "K": {"num":"1","den":"1"}, "x0": [0.99]}
      }],
      "caps": {"orbit": 20000, "scan": 20000}
    })");
    auto summary = run_experiment(ExperimentConfig::from_json(j), 1);
    CHECK(summary.exit_status == 0);
    REQUIRE(summary.cells == 1);
    CHECK(summary.rows[0].verdict == Verdict::pass);
    CHECK(summary.rows[0].bound == 16384);
}

TEST_CASE("tightness report rows") {
    auto source = SequenceSource::table({Rat(9, 10), Rat(1, 2), Rat(1, 4), Rat(1, 8)});
    auto rate = monotone_metastability_rate(1);
    std::vector<Rat> eps{1, Rat(1, 2)};
    std::vector<Counterfunction> gs{Counterfunction::constant(1)};
    OracleLimits lim;
    lim.scan_cap = 1000;
    auto rows = tightness_report(source, rate, eps, gs, lim);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.verdict == Verdict::pass);
        CHECK(row.n_min.has_value());
        CHECK(row.ratio != "-");
    }
}

TEST_CASE("tightness tables on orbits: the stock examples") {
    OracleLimits lim;
    lim.scan_cap = 100000;
    std::vector<Rat> eps{Rat(1, 2), Rat(1, 4), Rat(1, 8)};
    std::vector<Counterfunction> gs{Counterfunction::constant(0), Counterfunction::constant(1),
                                    Counterfunction::identity()};

    Scenario sq;
    sq.space = LpSpace{1, 2};
    sq.map = SelfMap::slow_quadratic();
    sq.certificate = FixedBallCertificate{{Rat(0)}, Rat(1, 2), Rat(1), Point{0.99}};
    PicardOrbit orbit(sq, 200000);
    auto rows = tightness_report_orbit(orbit, nonexpansive_omega(lp_modulus(2), 1, Rat(1, 2)),
                                       eps, gs, lim);
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) CHECK(row.verdict == Verdict::pass);

    Scenario ident = sq;
    ident.map = SelfMap::identity();
    PicardOrbit iorb(ident, 1000);
    auto irows = tightness_report_orbit(iorb, nonexpansive_omega(lp_modulus(2), 1, Rat(1, 2)),
                                        eps, gs, lim);
    for (const auto& row : irows) {
        REQUIRE(row.n_min.has_value());
        CHECK(*row.n_min == 0);
    }

    auto mono = SequenceSource::harmonic(Rat(1, 10), Rat(4, 5));
    auto mrows = tightness_report(mono, monotone_metastability_rate(1), eps, gs, lim);
    for (const auto& row : mrows) {
        CHECK(row.verdict == Verdict::pass);
        CHECK(row.ratio != "-");
        if (row.ratio != "bound>>cap") CHECK(std::stod(row.ratio) >= 1.0);
    }
}

TEST_CASE("runner: omega family with an offset gamma on the slow quadratic line") {
    auto j = nlohmann::json::parse(R"({
      "rate_family": "omega",
      "rate_params": {"modulus": {"kind": "lp", "p": 2}, "gamma_offset": "3"},
      "epsilons": ["1/2"],
      "g_presets": [{"preset":"const","c":"1"}],
      "scenarios": [{
        "space": {"d": 1, "p": 2},
        "map": {"kind": "slow_quadratic"},
        "certificate": {"p": [{"num":"0","den":"1"}], "r": {"num":"1","den":"2"},
                         "K": {"num":"1","den":"1"}, "x0": [0.99]}
      }],
      "caps": {"orbit": 100000, "scan": 100000}
    })");
    auto summary = run_experiment(ExperimentConfig::from_json(j), 1);
    CHECK(summary.exit_status == 0);
    REQUIRE(summary.cells == 1);
    CHECK(summary.rows[0].verdict == Verdict::pass);
}

TEST_CASE("runner: decreasing-mu omega family from a config mu profile") {
    auto j = nlohmann::json::parse(R"({
      "rate_family": "omega-decreasing-mu",
      "rate_params": {"modulus": {"kind": "lp", "p": 2},
                       "mu": {"L": "2", "rate": {"kind": "const", "k": "5"}}},
      "epsilons": ["1/2"],
      "g_presets": [{"preset":"const","c":"0"}, {"preset":"const","c":"1"}],
      "scenarios": [{
        "space": {"d": 1, "p": 2},
        "map": {"kind": "slow_quadratic"},
        "certificate": {"p": [{"num":"0","den":"1"}], "r": {"num":"1","den":"2"},
                         "K": {"num":"1","den":"1"}, "x0": [0.99]}
      }],
      "caps": {"orbit": 100000, "scan": 100000}
    })");
    auto summary = run_experiment(ExperimentConfig::from_json(j), 2);
    CHECK(summary.exit_status == 0);
    CHECK(summary.cells == 2);
    for (const auto& row : summary.rows) CHECK(row.verdict == Verdict::pass);
}

TEST_CASE("sequence descriptors round-trip") {
    auto s = SequenceSource::from_json(nlohmann::json::parse(
        R"({"kind":"head_tail","head":[{"num":"3","den":"4"}],"base":{"num":"1","den":"8"},
            "scale":{"num":"1","den":"4"}})"));
    CHECK(s.at_exact(0) == Rat(3, 4));
    CHECK(s.at_exact(1) == Rat(3, 8));
    auto back = SequenceSource::from_json(s.descriptor());
    for (std::uint64_t n = 0; n < 20; ++n) CHECK(back.at_exact(n) == s.at_exact(n));
    CHECK_THROWS_AS(
        SequenceSource::from_json(nlohmann::json{{"kind", "table"}, {"values", {}}, {"x", 1}}),
        std::invalid_argument);
}

TEST_CASE("runner: an unevaluable tower bound is an inconclusive cell, not a hang") {
    // eps = 1e-6 puts ceil(K/eta) near 2^51; the exact bound would need
    // roughly 2^51 bits, so evaluation trips the iteration guard and the
    // cell lands as inconclusive with a note
    auto j = nlohmann::json::parse(R"({
      "rate_family": "nonexpansive-omega",
      "rate_params": {"modulus": {"kind": "lp", "p": 2}},
      "epsilons": ["1/1000000"],
      "g_presets": [{"preset":"const","c":"10"}],
      "scenarios": [{
        "space": {"d": 1, "p": 2},
        "map": {"kind": "slow_quadratic"},
        "certificate": {"p": [{"num":"0","den":"1"}], "r": {"num":"1","den":"2"},
                         "K": {"num":"1","den":"1"}, "x0": [0.99]}
      }],
      "caps": {"orbit": 50, "scan": 100000}
    })");
    auto summary = run_experiment(ExperimentConfig::from_json(j), 2);
    CHECK(summary.exit_status == 0);
    REQUIRE(summary.cells == 1);
    CHECK(summary.rows[0].verdict == Verdict::inconclusive);
    CHECK(!summary.rows[0].note.empty());
}

TEST_CASE("runner: scenario-supplied mu profile drives the decreasing-mu family") {
    auto j = nlohmann::json::parse(R"({
      "rate_family": "omega-decreasing-mu",
      "rate_params": {"modulus": {"kind": "lp", "p": 2}},
      "epsilons": ["1/2"],
      "g_presets": [{"preset":"const","c":"1"}],
      "scenarios": [{
        "space": {"d": 1, "p": 2},
        "map": {"kind": "slow_quadratic"},
        "certificate": {"p": [{"num":"0","den":"1"}], "r": {"num":"1","den":"2"},
                         "K": {"num":"1","den":"1"}, "x0": [0.99]},
        "mu": {"L": "2", "rate": {"kind": "const", "k": "5"}}
      }],
      "caps": {"orbit": 100000, "scan": 100000}
    })");
    auto summary = run_experiment(ExperimentConfig::from_json(j), 1);
    CHECK(summary.exit_status == 0);
    REQUIRE(summary.cells == 1);
    CHECK(summary.rows[0].verdict == Verdict::pass);
}
