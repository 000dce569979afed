#include "metarates/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace metarates {

Point FixedBallCertificate::center_point() const {
    Point out(center.size());
    for (std::size_t i = 0; i < center.size(); ++i) out[i] = to_double(center[i]);
    return out;
}

nlohmann::json FixedBallCertificate::to_json() const {
    nlohmann::json c = nlohmann::json::array();
    for (const Rat& v : center) c.push_back(rat_to_json(v));
    return nlohmann::json{
        {"p", c}, {"r", rat_to_json(r)}, {"K", rat_to_json(K)}, {"x0", x0}};
}

FixedBallCertificate FixedBallCertificate::from_json(const nlohmann::json& j) {
    require_keys(j, {"p", "r", "K", "x0"}, {"p", "r", "K", "x0"}, "certificate");
    FixedBallCertificate cert;
    for (const auto& v : j.at("p")) cert.center.push_back(rat_from_json(v));
    cert.r = rat_from_json(j.at("r"));
    cert.K = rat_from_json(j.at("K"));
    cert.x0 = j.at("x0").get<Point>();
    if (cert.r <= 0) throw std::invalid_argument("certificate: r must be positive");
    if (cert.K <= 0) throw std::invalid_argument("certificate: K must be positive");
    if (cert.center.size() != cert.x0.size())
        throw std::invalid_argument("certificate: p and x0 dimension mismatch");
    return cert;
}

MuProfile MuProfile::with_rate(Rat L, std::function<Nat(const Rat&)> c, std::vector<Rat> mu_table) {
    MuProfile p;
    p.L = std::move(L);
    p.decreasing = true;
    p.c = std::move(c);
    p.has_c = true;
    p.mu = std::move(mu_table);
    return p;
}

MuProfile MuProfile::with_metastable_rate(Rat L,
                                          std::function<Nat(const Rat&, const Counterfunction&)> phi,
                                          std::vector<Rat> mu_table) {
    MuProfile p;
    p.L = std::move(L);
    p.phi = std::move(phi);
    p.has_phi = true;
    p.mu = std::move(mu_table);
    return p;
}

namespace {

std::function<Nat(const Rat&)> rate_preset_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") {
        require_keys(j, {"kind"}, {}, "mu rate zero");
        return [](const Rat&) { return Nat(0); };
    }
    if (kind == "const") {
        require_keys(j, {"kind", "k"}, {"k"}, "mu rate const");
        Nat k = nat_from_json(j.at("k"));
        return [k](const Rat&) { return k; };
    }
    if (kind == "ceil-inv") {
        require_keys(j, {"kind"}, {}, "mu rate ceil-inv");
        return [](const Rat& delta) {
            if (delta <= 0) throw std::invalid_argument("mu rate: delta must be positive");
            return rat_ceil(1 / delta);
        };
    }
    throw std::invalid_argument("mu rate: unknown kind '" + kind + "'");
}

}  // namespace

MuProfile MuProfile::from_json(const nlohmann::json& j) {
    require_keys(j, {"L", "rate", "metastable", "mu"}, {"L"}, "mu profile");
    MuProfile p;
    p.L = rat_from_json(j.at("L"));
    if (p.L <= 0) throw std::invalid_argument("mu profile: L must be positive");
    if (j.contains("mu"))
        for (const auto& v : j.at("mu")) p.mu.push_back(rat_from_json(v));
    if (j.contains("rate") == j.contains("metastable"))
        throw std::invalid_argument("mu profile: give exactly one of 'rate'/'metastable'");
    if (j.contains("rate")) {
        p.c = rate_preset_from_json(j.at("rate"));
        p.has_c = true;
        p.decreasing = true;
    } else {
        auto base = rate_preset_from_json(j.at("metastable"));
        p.phi = [base](const Rat& delta, const Counterfunction&) { return base(delta); };
        p.has_phi = true;
    }
    p.descriptor = j;
    for (const Rat& m : p.mu)
        if (m > p.L) throw std::invalid_argument("mu profile: tabulated mu exceeds L");
    return p;
}

void Scenario::validate() const {
    if (static_cast<int>(certificate.x0.size()) != space.dim)
        throw std::invalid_argument("scenario: x0 dimension != space dimension");
    if (static_cast<int>(certificate.center.size()) != space.dim)
        throw std::invalid_argument("scenario: certificate center dimension != space dimension");
    switch (map.cls()) {
        case MapClass::nonexpansive:
            break;
        case MapClass::asymptotically_nonexpansive:
            if (!mu)
                throw std::invalid_argument(
                    "scenario: asymptotically nonexpansive map needs a mu profile");
            break;
        case MapClass::generic:
            if (!gamma)
                throw std::invalid_argument("scenario: generic map needs an explicit rate");
            break;
    }
}

nlohmann::json Scenario::to_json() const {
    nlohmann::json j{{"space", space.to_json()},
                     {"map", map.descriptor()},
                     {"certificate", certificate.to_json()}};
    if (mu) {
        if (mu->descriptor.is_null())
            throw std::logic_error("scenario: hand-built mu profile is not serializable");
        j["mu"] = mu->descriptor;
    }
    return j;
}

Scenario Scenario::from_json(const nlohmann::json& j) {
    require_keys(j, {"space", "map", "certificate", "mu"}, {"space", "map", "certificate"},
                 "scenario");
    Scenario s;
    s.space = LpSpace::from_json(j.at("space"));
    s.map = SelfMap::from_json(j.at("map"));
    s.certificate = FixedBallCertificate::from_json(j.at("certificate"));
    if (j.contains("mu")) s.mu = MuProfile::from_json(j.at("mu"));
    s.validate();
    return s;
}

CertificateReport validate_certificate(const Scenario& s, std::uint64_t samples,
                                       std::uint64_t seed, double tau) {
    CertificateReport report;
    const Point center = s.certificate.center_point();
    const double K = to_double(s.certificate.K);
    const double r = to_double(s.certificate.r);

    report.start_in_range = s.space.distance(s.certificate.x0, center) < K + tau;

    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (std::uint64_t i = 0; i < samples; ++i) {
        // random direction (uniform cube, rejecting near-zero), random radius
        Point dir(center.size());
        double n = 0;
        do {
            for (double& d : dir) d = 2.0 * unit() - 1.0;
            n = s.space.norm(dir);
        } while (n < 1e-12);
        const double rho = (i == 0) ? 0.0 : (i == 1 ? r : r * unit());  // center and boundary first
        Point q = center;
        for (std::size_t k = 0; k < q.size(); ++k) q[k] += dir[k] / n * rho;
        Point tq = s.map(q);
        const double defect = s.space.distance(tq, q);
        report.max_defect = std::max(report.max_defect, defect);
        if (defect > tau) ++report.fixed_violations;
        ++report.sampled;
    }
    return report;
}

}  // namespace metarates
