#include <random>

#include "doctest.h"
#include "metarates/oracle.hpp"
#include "metarates/picard.hpp"
#include "metarates/sequence.hpp"

using namespace metarates;

namespace {

Scenario slow_quad_line() {
    Scenario s;
    s.space = LpSpace{1, 2};
    s.map = SelfMap::slow_quadratic();
    s.certificate = FixedBallCertificate{{Rat(0)}, Rat(1, 2), Rat(1), Point{0.99}};
    return s;
}

Nat mod_digest(const Nat& v) { return v % 1000000007; }

std::uint64_t digit_count(const Nat& v) { return v.str().size(); }

}  // namespace

TEST_CASE("picard orbits: identity, projection, slow quadratic") {
    Scenario ident = slow_quad_line();
    ident.map = SelfMap::identity();
    auto orbit = picard_orbit(ident, 10, 100);
    for (const auto& pt : orbit) CHECK(pt[0] == 0.99);

    Scenario proj = slow_quad_line();
    proj.map = SelfMap::box_projection(-0.5, 0.5);
    auto porb = picard_orbit(proj, 5, 100);
    CHECK(porb[0][0] == 0.99);
    for (int i = 1; i <= 5; ++i) CHECK(porb[i][0] == 0.5);

    PicardOrbit sq(slow_quad_line(), 100000);
    double prev = sq.at(0)[0];
    for (int i = 1; i <= 2000; ++i) {
        const double cur = sq.at(i)[0];
        CHECK(cur < prev);
        CHECK(cur > 0.5);
        prev = cur;
    }
    CHECK_THROWS_AS(sq.at(100001), std::length_error);
}

TEST_CASE("slow quadratic map is nonexpansive on sampled domain pairs") {
    auto map = SelfMap::slow_quadratic();
    LpSpace line{1, 2};
    std::mt19937_64 rng(3);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 5000; ++i) {
        Point x{-0.5 + 1.5 * unit()};
        Point y{-0.5 + 1.5 * unit()};
        CHECK(line.distance(map(x), map(y)) <= line.distance(x, y) + 1e-9);
    }
}

TEST_CASE("certificate validation on the slow quadratic scenario") {
    auto report = validate_certificate(slow_quad_line(), 500, 11, 1e-9);
    CHECK(report.start_in_range);
    CHECK(report.sampled == 500);
    CHECK(report.fixed_violations == 0);
    CHECK(report.max_defect <= 1e-12);
}

TEST_CASE("scenario serialization round-trips") {
    Scenario s = slow_quad_line();
    auto j = s.to_json();
    Scenario back = Scenario::from_json(j);
    CHECK(back.space.dim == 1);
    CHECK(back.certificate.K == 1);
    CHECK(back.to_json() == j);
    j["extra"] = 1;
    CHECK_THROWS_AS(Scenario::from_json(j), std::invalid_argument);
}

TEST_CASE("nonexpansive gamma") {
    auto gamma = nonexpansive_gamma();
    auto g = Counterfunction::constant(1);
    CHECK(gamma(1, 1, 1, g, 0) == 0);
    CHECK(gamma(1, 1, 1, g, 7) == 7);
    auto gs = gamma_star(gamma);
    for (unsigned n = 0; n < 30; ++n) CHECK(gs(1, 1, 1, g, n) == gamma(1, 1, 1, g, n));
}

TEST_CASE("orbit metastability rate: golden values") {
    auto p2 = lp_modulus(2);
    auto omega21 = nonexpansive_omega(p2, 2, 1);
    CHECK(omega21(1, Counterfunction::constant(1)) == Nat(1) << 8191);
    CHECK(omega21(1, Counterfunction::constant(0)) == 0);

    auto omega_half = nonexpansive_omega(p2, 1, Rat(1, 2));
    const Nat tower = omega_half(Rat(1, 4), Counterfunction::constant(1));
    CHECK(tower == Nat(1) << 32767);
    CHECK(digit_count(tower) == 9864);
    CHECK(mod_digest(tower) == 334578981);
}

TEST_CASE("orbit metastability rate with an offset gamma") {
    MetaDecRate gamma(
        "offset:N+8",
        [](const Rat&, const Rat&, const Rat&, const Counterfunction&, const Nat& N) {
            return N + 8;
        },
        true);
    auto omega = omega_rate(lp_modulus(2), gamma, 1, Rat(1, 2));
    const Nat v = omega(Rat(1, 4), Counterfunction::constant(0));
    CHECK(v == (Nat(1) << 32772) - 8);
    CHECK(digit_count(v) == 9866);
    CHECK(mod_digest(v) == 706527314);
}

TEST_CASE("nonexpansive omega equals the generic rate at the identity gamma") {
    auto p2 = lp_modulus(2);
    auto direct = nonexpansive_omega(p2, 2, 1);
    auto generic = omega_rate(p2, nonexpansive_gamma(), 2, 1);
    std::vector<Rat> eps_grid{1, Rat(1, 2)};
    std::vector<Counterfunction> gs{
        Counterfunction::constant(0), Counterfunction::constant(1), Counterfunction::constant(10),
        Counterfunction::identity()};
    for (const Rat& eps : eps_grid)
        for (const auto& g : gs) CHECK(direct(eps, g) == generic(eps, g));
}

TEST_CASE("asymptotic regularity rates") {
    auto p2 = lp_modulus(2);
    CHECK(asymptotic_regularity_rate(p2, 2, 1, 1) == 8192);
    CHECK(asymptotic_regularity_rate(p2, 1, Rat(1, 2), Rat(1, 2)) == 8192);
    CHECK(asymptotic_regularity_rate(p2, 1, Rat(1, 2), Rat(1, 4)) == 32768);
    CHECK(asymptotic_regularity_rate(p2, 1, Rat(1, 2), Rat(1, 8)) == 131072);
    // doubling eps never increases the rate when the modulus is nondecreasing
    for (int i = 1; i <= 16; ++i) {
        const Rat eps(i, 8);
        CHECK(asymptotic_regularity_rate(p2, 2, 1, 2 * eps) <=
              asymptotic_regularity_rate(p2, 2, 1, eps));
    }
}

TEST_CASE("closed-form l_p regularity rate") {
    CHECK(lp_asymptotic_regularity_rate(2, 1, 1, 1) == 256);
    CHECK(lp_asymptotic_regularity_rate(2, 1, 1, Rat(1, 2)) == 1024);
    CHECK(lp_asymptotic_regularity_rate(2, 1, Rat(1, 2), Rat(1, 4)) == 16384);
    CHECK(lp_asymptotic_regularity_rate(3, 2, 1, Rat(1, 2)) == 786432);
    CHECK_THROWS_AS(lp_asymptotic_regularity_rate(1, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(lp_asymptotic_regularity_rate(2, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("gamma from a metastable mu rate") {
    auto zero = MuProfile::with_metastable_rate(2, [](const Rat&, const Counterfunction&) {
        return Nat(0);
    });
    auto gz = gamma_from_metastable_mu(zero, 1, 1);
    auto g = Counterfunction::constant(1);
    for (unsigned n = 0; n < 20; ++n) CHECK(gz(1, 1, Rat(1, 2), g, n) == n);

    auto inv = MuProfile::with_metastable_rate(2, [](const Rat& delta, const Counterfunction&) {
        return rat_ceil(1 / delta);
    });
    auto gi = gamma_from_metastable_mu(inv, 1, 1);
    for (unsigned n = 0; n < 20; ++n) CHECK(gi(1, 1, Rat(1, 2), g, n) == n + 8);
    // offset independent of N when the mu rate ignores its counterfunction
    for (unsigned n = 0; n < 50; n += 7)
        CHECK(gi(1, 1, Rat(1, 4), g, n) - Nat(n) == gi(1, 1, Rat(1, 4), g, 0));

    MuProfile no_phi;
    CHECK_THROWS_AS(gamma_from_metastable_mu(no_phi, 1, 1), std::invalid_argument);
}

TEST_CASE("the shifted counterfunction really reaches the mu rate") {
    // phi reads g_N(0) = g(N); visible in the rate output
    auto probe = MuProfile::with_metastable_rate(2, [](const Rat&, const Counterfunction& h) {
        return h(0);
    });
    auto gp = gamma_from_metastable_mu(probe, 1, 1);
    auto g = Counterfunction::affine(1, 3);  // g(n) = n + 3
    for (unsigned n = 0; n < 10; ++n) CHECK(gp(1, 1, 1, g, n) == n + (n + 3));
}

TEST_CASE("gamma from a decreasing-mu convergence rate") {
    auto czero = MuProfile::with_rate(2, [](const Rat&) { return Nat(0); });
    auto g0 = gamma_from_mu_rate(czero, 1, 1);
    auto g = Counterfunction::constant(1);
    for (unsigned n = 0; n < 20; ++n) CHECK(g0(1, 1, Rat(1, 2), g, n) == n);

    auto cinv = MuProfile::with_rate(2, [](const Rat& d) { return rat_ceil(1 / d); });
    auto gi = gamma_from_mu_rate(cinv, 1, 1);
    for (unsigned n = 0; n <= 100; ++n) CHECK(gi(1, 1, Rat(1, 2), g, n) == n + 8);

    // star closure is the identity on this family
    auto gis = gamma_star(gi);
    for (unsigned n = 0; n < 40; ++n)
        for (int e = 1; e <= 4; ++e)
            CHECK(gis(1, 1, Rat(1, e), g, n) == gi(1, 1, Rat(1, e), g, n));
}

TEST_CASE("decreasing-mu omega: collapse and golden towers") {
    auto p2 = lp_modulus(2);
    auto czero = MuProfile::with_rate(2, [](const Rat&) { return Nat(0); });
    auto collapsed = omega_decreasing_mu(p2, czero, 2, 1);
    auto nonexp = nonexpansive_omega(p2, 2, 1);
    for (const Rat& eps : {Rat(1), Rat(1, 2)})
        for (const auto& g : {Counterfunction::constant(0), Counterfunction::constant(1),
                              Counterfunction::identity(), Counterfunction::constant(10)})
            CHECK(collapsed(eps, g) == nonexp(eps, g));

    auto cinv = MuProfile::with_rate(2, [](const Rat& d) { return rat_ceil(1 / d); });
    auto omega = omega_decreasing_mu(p2, cinv, 2, 1);
    const Nat v = omega(1, Counterfunction::constant(0));
    const Nat w = 24576;  // c(eta / (L(K+r))) = ceil(6/eta) at eta = 1/4096
    CHECK(v == 2 * w * ((Nat(1) << 8192) - 1) + w);
    CHECK(digit_count(v) == 2471);
    CHECK(mod_digest(v) == 96390262);

    auto c5 = MuProfile::with_rate(2, [](const Rat&) { return Nat(5); });
    auto omega5 = omega_decreasing_mu(p2, c5, 2, 1);
    const Nat v5 = omega5(1, Counterfunction::constant(0));
    CHECK(v5 == 10 * ((Nat(1) << 8192) - 1) + 5);
    CHECK(digit_count(v5) == 2468);
    CHECK(mod_digest(v5) == 127542398);
}

TEST_CASE("decreasing-mu omega and the generic instantiation are both bounds, not equal") {
    // same profile through the two routes; the relation is deliberately not
    // asserted as equality, both are validated as bounds elsewhere
    auto p2 = lp_modulus(2);
    auto cinv = MuProfile::with_rate(2, [](const Rat& d) { return rat_ceil(1 / d); });
    auto direct = omega_decreasing_mu(p2, cinv, 2, 1);
    auto generic = omega_rate(p2, gamma_from_mu_rate(cinv, 2, 1), 2, 1);
    auto g = Counterfunction::constant(1);
    const Nat a = direct(1, g);
    const Nat b = generic(1, g);
    CHECK(a > 0);
    CHECK(b > 0);
}

TEST_CASE("approximate fixed point bound") {
    CHECK(approx_fixed_point_bound(monotone_metastability_rate(1), Rat(1, 2)) == 15);
}

TEST_CASE("sequence-level mu extraction feeds a valid asymptotic-decreasingness rate") {
    // an oscillating profile standing for ||T^n x - q||: s_0 <= K + r and the
    // brute-forced mu table bounds every shift ratio
    auto s = SequenceSource::oscillating(1, Rat(1, 2), Rat(1, 2));
    const std::uint64_t n_max = 400;
    auto extraction = extract_mu_table(s, n_max, Rat(1, 1000));
    const auto& mu = extraction.mu;
    CHECK(extraction.excluded == 0);  // this profile never drops near zero
    for (std::size_t k = 0; k + 1 < mu.size(); ++k) CHECK(mu[k] >= mu[k + 1]);
    Rat L = mu[0] > 1 ? mu[0] : Rat(1);

    MuProfile profile = MuProfile::with_rate(L, mu_rate_from_table(mu), mu);
    auto gamma = gamma_from_mu_rate(profile, 1, 1);

    OracleLimits lim;
    lim.scan_cap = 10000;
    for (const Rat& eps : {Rat(1, 2), Rat(1, 4)}) {
        for (const auto& g : {Counterfunction::constant(0), Counterfunction::constant(3),
                              Counterfunction::identity()}) {
            for (std::uint64_t N : {0u, 3u, 17u, 60u}) {
                auto res = check_asym_dec(s, gamma, 1, 1, eps, g, N, lim);
                CHECK(res.verdict == Verdict::pass);
            }
        }
    }
}

TEST_CASE("approximate fixed points: oracle evidence") {
    OracleLimits lim;
    lim.scan_cap = 100000;
    auto g_fix = Counterfunction::affine(1, 1);  // g(k) = k+1 probes one extra step

    Scenario ident = slow_quad_line();
    ident.map = SelfMap::identity();
    PicardOrbit iorb(ident, 1000);
    auto r = min_witness_orbit(iorb, Rat(1, 100), g_fix, lim);
    REQUIRE(r.found.has_value());
    CHECK(*r.found == 0);

    PicardOrbit sq(slow_quad_line(), 100000);
    auto omega = nonexpansive_omega(lp_modulus(2), 1, Rat(1, 2));
    const Nat bound = approx_fixed_point_bound(omega, Rat(1, 4));
    auto witness = min_witness_orbit(sq, Rat(1, 4), g_fix, lim);
    REQUIRE(witness.found.has_value());
    CHECK(Nat(*witness.found) <= bound);
    CHECK(bound > Nat(1000000));  // witness sits far below the bound
    // the witness index really is an approximate fixed point
    CHECK(sq.step(*witness.found) <= 0.25 + 1e-9);
}

TEST_CASE("scenario class-tag consistency is enforced") {
    Scenario s = slow_quad_line();
    s.map = SelfMap::lambda("shift", [](const Point& x) { return x; },
                            MapClass::asymptotically_nonexpansive);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.mu = MuProfile::with_rate(2, [](const Rat&) { return Nat(0); });
    CHECK_NOTHROW(s.validate());

    Scenario gen = slow_quad_line();
    gen.map = SelfMap::lambda("opaque", [](const Point& x) { return x; }, MapClass::generic);
    CHECK_THROWS_AS(gen.validate(), std::invalid_argument);
    gen.gamma = nonexpansive_gamma();
    CHECK_NOTHROW(gen.validate());
}

TEST_CASE("unevaluable tower rates trip the iteration guard") {
    auto omega = nonexpansive_omega(lp_modulus(2), 1, Rat(1, 2));
    CHECK_THROWS_AS(omega(Rat(1, 1000000), Counterfunction::constant(1)), std::length_error);
    CHECK_THROWS_AS(monotone_metastability_rate(1)(Rat(1, 10000000),
                                                   Counterfunction::constant(1)),
                    std::length_error);
}
