// Command-line runner: config-driven verification runs, one-shot exact rate
// evaluation, and preset listings.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "metarates/convexity.hpp"
#include "metarates/experiment.hpp"
#include "metarates/picard.hpp"

namespace {

using namespace metarates;

ConvexityModulus modulus_from_flags(const std::string& modulus, int p) {
    if (modulus == "lp") return lp_modulus(p);
    if (modulus == "surrogate") return hilbert_surrogate_modulus();
    throw CLI::ValidationError("--modulus must be 'lp' or 'surrogate'");
}

std::function<Nat(const Rat&)> c_preset(const std::string& text) {
    if (text == "ceil-inv")
        return [](const Rat& d) { return rat_ceil(1 / d); };
    if (text.rfind("const:", 0) == 0) {
        Nat k = parse_nat(text.substr(6));
        return [k](const Rat&) { return k; };
    }
    throw CLI::ValidationError("--c must be 'ceil-inv' or 'const:<k>'");
}

int run_eval(const std::string& rate, const std::string& modulus, int p, const Rat& K,
             const Rat& r, const Rat& eps, const std::string& g_text, const Rat& L,
             const std::string& c_text, const Nat& gamma_offset) {
    const Counterfunction g = Counterfunction::parse(g_text);
    if (rate == "lp-ar") {
        std::cout << lp_asymptotic_regularity_rate(p, K, r, eps).str() << "\n";
        return 0;
    }
    if (rate == "ar") {
        std::cout << asymptotic_regularity_rate(modulus_from_flags(modulus, p), K, r, eps).str()
                  << "\n";
        return 0;
    }
    if (rate == "eta") {
        std::cout << rat_str(eta(modulus_from_flags(modulus, p), K, r, eps)) << "\n";
        return 0;
    }
    if (rate == "psi") {
        // here r doubles as the h argument
        std::cout << rat_str(psi_transform(modulus_from_flags(modulus, p))(r, eps)) << "\n";
        return 0;
    }
    if (rate == "lp-modulus") {
        std::cout << rat_str(lp_modulus(p)(eps)) << "\n";
        return 0;
    }
    if (rate == "monotone") {
        std::cout << monotone_metastability_rate(K)(eps, g).str() << "\n";
        return 0;
    }
    if (rate == "theorem-2.5") {
        const Nat k = gamma_offset;
        MetaDecRate gamma("offset:N+" + k.str(),
                          [k](const Rat&, const Rat&, const Rat&, const Counterfunction&,
                              const Nat& N) { return N + k; },
                          true);
        std::cout << metastability_from_gamma(gamma, K, r)(eps, g).str() << "\n";
        return 0;
    }
    if (rate == "nonexp-omega") {
        std::cout << nonexpansive_omega(modulus_from_flags(modulus, p), K, r)(eps, g).str()
                  << "\n";
        return 0;
    }
    if (rate == "omega") {
        const Nat k = gamma_offset;
        MetaDecRate gamma("offset:N+" + k.str(),
                          [k](const Rat&, const Rat&, const Rat&, const Counterfunction&,
                              const Nat& N) { return N + k; },
                          true);
        std::cout << omega_rate(modulus_from_flags(modulus, p), gamma, K, r)(eps, g).str()
                  << "\n";
        return 0;
    }
    if (rate == "omega-dec-mu") {
        MuProfile profile = MuProfile::with_rate(L, c_preset(c_text));
        std::cout
            << omega_decreasing_mu(modulus_from_flags(modulus, p), profile, K, r)(eps, g).str()
            << "\n";
        return 0;
    }
    if (rate == "approx-fix") {
        std::cout
            << approx_fixed_point_bound(nonexpansive_omega(modulus_from_flags(modulus, p), K, r),
                                        eps)
                   .str()
            << "\n";
        return 0;
    }
    if (rate == "iwb") {
        std::cout << infimum_witness_bound(K, eps, g).str() << "\n";
        return 0;
    }
    std::cerr << "unknown rate '" << rate << "' (see list-presets)\n";
    return 2;
}

void list_presets() {
    std::cout << "rates (eval --rate ...):\n"
              << "  lp-ar ar eta psi lp-modulus monotone theorem-2.5 nonexp-omega omega\n"
              << "  omega-dec-mu approx-fix iwb\n"
              << "rate families (run config):\n"
              << "  monotone theorem-2.5 zero omega nonexpansive-omega omega-decreasing-mu\n"
              << "  lp-asymptotic-regularity\n"
              << "counterfunction presets:\n"
              << "  const:<c>  affine:<a>,<b>  quadratic  identity (alias n)\n"
              << "  JSON: {\"preset\":\"table\",\"values\":[...],\"tail\":{...}}\n"
              << "map kinds:\n"
              << "  identity  box_projection(lo,hi)  slow_quadratic\n"
              << "modulus kinds:\n"
              << "  {\"kind\":\"lp\",\"p\":<int>=2>}  {\"kind\":\"surrogate_hilbert\"}\n"
              << "sequence kinds:\n"
              << "  table harmonic oscillating head_tail (plus scenario orbits)\n"
              << "mu rate presets:\n"
              << "  ceil-inv  const:<k>  zero\n"
              << "env:\n"
              << "  METARATES_WORKERS  worker count for grid cells\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact metastability-rate functionals with brute-force verification"};
    app.require_subcommand(1);

    // run
    std::string config_path;
    std::uint64_t scan_cap_override = 0;
    std::uint64_t orbit_cap_override = 0;
    unsigned workers = 0;
    auto* run = app.add_subcommand("run", "run a verification config and write reports");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("--scan-cap", scan_cap_override, "override the config scan cap");
    run->add_option("--orbit-cap", orbit_cap_override, "override the config orbit cap");
    run->add_option("--workers", workers, "worker threads (default: METARATES_WORKERS or all)");

    // eval
    std::string rate, modulus = "lp", g_text = "const:0", c_text = "ceil-inv";
    int p = 2;
    std::string K_text = "1", r_text = "1/2", eps_text = "1", L_text = "2", offset_text = "0";
    auto* eval = app.add_subcommand("eval", "print one exact rate value");
    eval->add_option("--rate", rate, "which rate (see list-presets)")->required();
    eval->add_option("--modulus", modulus, "lp | surrogate");
    eval->add_option("--p", p, "l_p exponent (>= 2)");
    eval->add_option("--K", K_text, "start-distance bound, rational");
    eval->add_option("--r", r_text, "certificate radius (or h for --rate psi), rational");
    eval->add_option("--eps", eps_text, "epsilon, rational");
    eval->add_option("--g", g_text, "counterfunction preset");
    eval->add_option("--L", L_text, "mu upper bound, rational");
    eval->add_option("--c", c_text, "mu convergence rate preset");
    eval->add_option("--gamma-offset", offset_text, "offset k for the N+k rate");

    auto* list = app.add_subcommand("list-presets", "list presets and rate names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            list_presets();
            return 0;
        }
        if (eval->parsed()) {
            return run_eval(rate, modulus, p, metarates::parse_rational(K_text),
                            metarates::parse_rational(r_text),
                            metarates::parse_rational(eps_text), g_text,
                            metarates::parse_rational(L_text), c_text,
                            metarates::parse_nat(offset_text));
        }
        auto config = metarates::ExperimentConfig::load(config_path);
        if (scan_cap_override) config.scan_cap = scan_cap_override;
        if (orbit_cap_override) config.orbit_cap = orbit_cap_override;
        const auto summary = metarates::run_experiment(config, workers);
        std::cout << "cells=" << summary.cells << " fails=" << summary.fails
                  << " inconclusive=" << summary.inconclusive << "\n";
        return summary.exit_status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
