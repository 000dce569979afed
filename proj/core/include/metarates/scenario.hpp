#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "metarates/counterfunction.hpp"
#include "metarates/rates.hpp"
#include "metarates/selfmap.hpp"
#include "metarates/space.hpp"

namespace metarates {

// Witness data for "the fixed-point set has interior": a ball B_r[center]
// inside Fix(T), and a bound K on the start point's distance to the center.
struct FixedBallCertificate {
    std::vector<Rat> center;  // exact coordinates, serialized
    Rat r;
    Rat K;
    Point x0;  // start point, decimal coordinates

    Point center_point() const;

    nlohmann::json to_json() const;
    static FixedBallCertificate from_json(const nlohmann::json& j);
};

// Quantitative data about an asymptotically nonexpansive coefficient
// sequence mu_n -> 1: an upper bound L, and either a rate of convergence
// c(delta) (nonincreasing mu) or a rate of metastability phi(delta, h).
// A tabulated mu supports simulation and brute-force extraction.
struct MuProfile {
    Rat L = 1;
    bool decreasing = false;
    std::vector<Rat> mu;

    std::function<Nat(const Rat&)> c;
    std::function<Nat(const Rat&, const Counterfunction&)> phi;
    bool has_c = false;
    bool has_phi = false;

    nlohmann::json descriptor;  // null for hand-built profiles

    static MuProfile with_rate(Rat L, std::function<Nat(const Rat&)> c,
                               std::vector<Rat> mu_table = {});
    static MuProfile with_metastable_rate(Rat L, std::function<Nat(const Rat&, const Counterfunction&)> phi,
                                          std::vector<Rat> mu_table = {});

    // {"L":..., "rate":{"kind":"zero"|"const","k":...|"ceil-inv"}} or
    // {"L":..., "metastable":{"kind":"zero"|"ceil-inv"}}
    static MuProfile from_json(const nlohmann::json& j);
};

// Everything an end-to-end bound verification needs: the space, the map,
// the fixed-ball certificate, and whatever rate data the map class calls
// for.
struct Scenario {
    LpSpace space;
    SelfMap map = SelfMap::identity();
    FixedBallCertificate certificate;
    std::optional<MuProfile> mu;
    std::optional<MetaDecRate> gamma;  // externally supplied rate

    // Internal consistency: dimension agreement and the map-class /
    // rate-data pairing. Throws on violation.
    void validate() const;

    nlohmann::json to_json() const;
    static Scenario from_json(const nlohmann::json& j);
};

struct CertificateReport {
    bool start_in_range = false;  // ||x0 - center|| < K
    std::uint64_t sampled = 0;    // points drawn from B_r[center]
    std::uint64_t fixed_violations = 0;
    double max_defect = 0.0;  // max ||Tq - q|| over samples
};

// Spot check of the certificate: the start-distance bound, and sampled
// points of B_r[center] staying fixed under the map within tau. Full
// verification of the inclusion is impossible and not attempted.
CertificateReport validate_certificate(const Scenario& s, std::uint64_t samples,
                                       std::uint64_t seed, double tau);

}  // namespace metarates
