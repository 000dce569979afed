#include <random>
#include <vector>

#include "doctest.h"
#include "metarates/rates.hpp"

using namespace metarates;

namespace {

Counterfunction g_const(unsigned c) { return Counterfunction::constant(c); }

MetaDecRate offset_rate(unsigned k) {
    Nat kk(k);
    return MetaDecRate(
        "offset:N+" + std::to_string(k),
        [kk](const Rat&, const Rat&, const Rat&, const Counterfunction&, const Nat& N) {
            return N + kk;
        },
        /*monotone_in_n=*/true);
}

const Rat kOne = 1;

}  // namespace

TEST_CASE("star closure on the stock examples") {
    auto id = Counterfunction::identity();
    auto ids = star_closure(id);
    for (unsigned n = 0; n < 40; ++n) CHECK(ids(n) == n);

    auto zs = star_closure(g_const(0));
    for (unsigned n = 0; n < 40; ++n) CHECK(zs(n) == n);

    // f(0)=5, f(n)=0 otherwise: the early spike dominates until n = 5
    auto spike = Counterfunction::table({5}, g_const(0));
    auto spikes = star_closure(spike);
    CHECK(spikes(3) == 5);
    CHECK(spikes(0) == 5);
    CHECK(spikes(7) == 7);
}

TEST_CASE("star closure: domination, monotonicity, idempotence") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Nat> values;
        for (int i = 0; i < 30; ++i) values.emplace_back(rng() % 50);
        // non-monotone by construction; forces the enumerating path
        auto f = Counterfunction::table(values, Counterfunction::affine(1, rng() % 5));
        auto fs = star_closure(f);
        Nat prev = 0;
        for (unsigned n = 0; n < 60; ++n) {
            Nat v = fs(n);
            CHECK(v >= n);
            CHECK(v >= f(n));
            CHECK(v >= prev);
            prev = v;
        }
        auto fss = star_closure(fs);
        for (unsigned n = 0; n < 60; ++n) CHECK(fss(n) == fs(n));
    }
}

TEST_CASE("star closure of a table equals brute enumeration") {
    auto f = Counterfunction::table({9, 0, 3, 17, 2}, Counterfunction::affine(2, 1));
    auto fs = star_closure(f);
    for (unsigned n = 0; n < 25; ++n) {
        Nat expect = n;
        for (unsigned i = 0; i <= n; ++i) expect = std::max(expect, f(i));
        CHECK(fs(n) == expect);
    }
}

TEST_CASE("iterate") {
    auto succ = Counterfunction::affine(1, 1);
    CHECK(iterate(succ, 5)(0) == 5);
    CHECK(iterate_apply(succ, 5, 0) == 5);

    auto f = Counterfunction::affine(2, 1);
    CHECK(iterate(f, 0)(123) == 123);
    CHECK(iterate(f, 3)(0) == 7);  // 0 -> 1 -> 3 -> 7
}

TEST_CASE("gamma_star") {
    auto g = g_const(1);
    auto id = MetaDecRate(
        "id", [](const Rat&, const Rat&, const Rat&, const Counterfunction&, const Nat& N) { return N; },
        true);
    auto ids = gamma_star(id);
    for (unsigned n = 0; n < 20; ++n) CHECK(ids(kOne, kOne, kOne, g, n) == n);

    auto c7 = MetaDecRate(
        "c7", [](const Rat&, const Rat&, const Rat&, const Counterfunction&, const Nat&) { return Nat(7); },
        false);  // constant is monotone, but exercise the enumerating path
    auto c7s = gamma_star(c7);
    for (unsigned n = 0; n < 20; ++n) CHECK(c7s(kOne, kOne, kOne, g, n) == std::max<Nat>(n, 7));

    auto off = gamma_star(offset_rate(8));
    for (unsigned n = 0; n < 20; ++n) CHECK(off(kOne, kOne, kOne, g, n) == n + 8);
    CHECK(off.monotone_in_n());
}

TEST_CASE("gamma_star of a non-monotone rate matches enumeration") {
    auto bumpy = MetaDecRate(
        "bumpy",
        [](const Rat&, const Rat&, const Rat&, const Counterfunction&, const Nat& N) {
            // dips at odd N
            return N % 2 == 1 ? Nat(0) : N * 2;
        },
        false);
    auto bs = gamma_star(bumpy);
    auto g = g_const(0);
    for (unsigned n = 0; n < 30; ++n) {
        Nat expect = n;
        for (unsigned i = 0; i <= n; ++i)
            expect = std::max(expect, bumpy(kOne, kOne, kOne, g, i));
        CHECK(bs(kOne, kOne, kOne, g, n) == expect);
    }
}

TEST_CASE("infimum_witness_bound") {
    CHECK(infimum_witness_bound(1, Rat(1, 2), Counterfunction::affine(1, 1)) == 2);
    CHECK(infimum_witness_bound(1, 2, Counterfunction::affine(3, 4)) == 4);  // one star step: f(0)
    CHECK(infimum_witness_bound(1, Rat(1, 2), g_const(0)) == 0);
    // exact ceiling: K/eps integral means no +1 padding
    CHECK(infimum_witness_bound(1, Rat(1, 3), g_const(0)) == 0);
    CHECK_THROWS_AS(infimum_witness_bound(0, 1, g_const(0)), std::invalid_argument);
}

TEST_CASE("monotone metastability rate golden values") {
    auto rate1 = monotone_metastability_rate(1);
    CHECK(rate1(Rat(1, 2), g_const(1)) == 8);
    CHECK(rate1(4, Counterfunction::identity()) == 0);
    auto rate2 = monotone_metastability_rate(2);
    CHECK(rate2(1, g_const(1)) == 8);
}

TEST_CASE("metastability_from_gamma") {
    auto rate = metastability_from_gamma(offset_rate(0), 1, 1);
    CHECK(rate(Rat(1, 2), g_const(1)) == 8);
    CHECK(rate(Rat(1, 2), g_const(0)) == 0);

    auto rate8 = metastability_from_gamma(offset_rate(8), 1, 1);
    CHECK(rate8(1, g_const(0)) == 56);
}

TEST_CASE("monotone rate is the identity-gamma instance") {
    auto mono = monotone_metastability_rate(Rat(3, 2));
    auto via_gamma = metastability_from_gamma(offset_rate(0), Rat(3, 2), 1);
    std::vector<Rat> eps_grid{1, Rat(1, 2), Rat(1, 3), Rat(2, 5)};
    std::vector<Counterfunction> gs{g_const(0), g_const(1), Counterfunction::identity(),
                                    Counterfunction::affine(2, 3), Counterfunction::quadratic()};
    for (const Rat& eps : eps_grid)
        for (const auto& g : gs) CHECK(mono(eps, g) == via_gamma(eps, g));
}

TEST_CASE("inner function of the gamma-to-metastability construction is its own star") {
    // f(j) = G*(j) + g*(G*(j)) is nondecreasing, so star closure is a no-op;
    // checked through the enumerating path on a few rates
    auto gs = gamma_star(offset_rate(5));
    for (const auto& g : {g_const(3), Counterfunction::identity(), Counterfunction::affine(2, 3)}) {
        auto gst = star_closure(g);
        auto f = Counterfunction::lambda(
            "f",
            [&](const Nat& j) {
                Nat t = gs(kOne, kOne, Rat(1, 2), g, j);
                return t + gst(t);
            },
            /*monotone=*/false);  // force enumeration
        auto fs = star_closure(f);
        for (unsigned n = 0; n < 50; ++n) CHECK(fs(n) == f(n));
    }
}

TEST_CASE("counterfunction memoized closures stay deterministic") {
    int calls = 0;
    auto f = Counterfunction::lambda(
        "probe", [&calls](const Nat& n) { ++calls; return n * 3 + 1; }, true, true);
    CHECK(f(10) == 31);
    CHECK(f(10) == 31);
    CHECK(calls == 1);
}

TEST_CASE("counterfunction descriptors round-trip") {
    std::vector<Counterfunction> cfs{
        g_const(0), g_const(9), Counterfunction::affine(2, 3), Counterfunction::quadratic(),
        Counterfunction::table({4, 1, 7}, Counterfunction::affine(1, 2))};
    for (const auto& f : cfs) {
        auto d = f.descriptor();
        REQUIRE(d.has_value());
        auto back = Counterfunction::from_json(*d);
        for (unsigned n = 0; n < 40; ++n) CHECK(back(n) == f(n));
        CHECK(back.descriptor() == d);
    }
    CHECK(!iterate(g_const(1), 3).descriptor().has_value());
}

TEST_CASE("counterfunction parsing") {
    CHECK(Counterfunction::parse("const:5")(0) == 5);
    CHECK(Counterfunction::parse("affine:2,3")(4) == 11);
    CHECK(Counterfunction::parse("quadratic")(7) == 49);
    CHECK(Counterfunction::parse("n")(7) == 7);
    CHECK_THROWS_AS(Counterfunction::parse("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(Counterfunction::from_json(nlohmann::json{{"preset", "const"}, {"c", "1"}, {"x", 1}}),
                    std::invalid_argument);
}

TEST_CASE("rationals: parsing, ceiling, wire form") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("7") == 7);
    CHECK(rat_ceil(Rat(7, 3)) == 3);
    CHECK(rat_ceil(Rat(6, 3)) == 2);
    CHECK(rat_ceil(Rat(0)) == 0);
    CHECK(rat_str(Rat(6, 8)) == "3/4");  // canonical lowest terms
    CHECK(rat_from_json(rat_to_json(Rat(22, 7))) == Rat(22, 7));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_nat("-3"), std::invalid_argument);
    // arbitrary-length decimal strings survive the wire
    const Nat big = Nat(1) << 400;
    CHECK(nat_from_json(nat_to_json(big)) == big);
}
