#include "metarates/rates.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace metarates {

namespace {
constexpr std::uint64_t kGammaEnumCap = std::uint64_t{1} << 24;
}

MetaDecRate::MetaDecRate(std::string label, Fn fn, bool monotone_in_n)
    : label_(std::move(label)), fn_(std::move(fn)), monotone_in_n_(monotone_in_n) {}

Nat MetaDecRate::operator()(const Rat& K, const Rat& r, const Rat& eps, const Counterfunction& g,
                            const Nat& N) const {
    if (N < 0) throw std::invalid_argument("MetaDecRate: negative N");
    return fn_(K, r, eps, g, N);
}

MetastabilityRate::MetastabilityRate(std::string label, Fn fn)
    : label_(std::move(label)), fn_(std::move(fn)) {}

Nat MetastabilityRate::operator()(const Rat& eps, const Counterfunction& g) const {
    if (eps <= 0) throw std::invalid_argument("MetastabilityRate: eps must be positive");
    return fn_(eps, g);
}

Nat checked_iteration_count(const Rat& q, const char* what) {
    Nat steps = rat_ceil(q);
    if (steps > Nat(kRateIterationGuard))
        throw std::length_error(std::string(what) + ": " + steps.str() +
                                " counterfunction iterations exceed the evaluation guard (" +
                                std::to_string(kRateIterationGuard) + ")");
    return steps;
}

MetaDecRate gamma_star(const MetaDecRate& gamma) {
    if (gamma.monotone_in_n()) {
        return MetaDecRate(
            gamma.label() + "*",
            [gamma](const Rat& K, const Rat& r, const Rat& eps, const Counterfunction& g,
                    const Nat& N) { return std::max(N, gamma(K, r, eps, g, N)); },
            /*monotone_in_n=*/true);
    }
    return MetaDecRate(
        gamma.label() + "*",
        [gamma](const Rat& K, const Rat& r, const Rat& eps, const Counterfunction& g,
                const Nat& N) {
            if (N > kGammaEnumCap)
                throw std::length_error("gamma_star: N " + N.str() +
                                        " exceeds enumeration cap for a non-monotone rate");
            Nat best = N;
            const auto end = N.convert_to<std::uint64_t>();
            for (std::uint64_t i = 0; i <= end; ++i) {
                best = std::max(best, gamma(K, r, eps, g, Nat(i)));
            }
            return best;
        },
        /*monotone_in_n=*/true);
}

Nat infimum_witness_bound(const Rat& K, const Rat& eps, const Counterfunction& f) {
    if (K <= 0) throw std::invalid_argument("infimum_witness_bound: K must be positive");
    if (eps <= 0) throw std::invalid_argument("infimum_witness_bound: eps must be positive");
    const Nat steps = checked_iteration_count(K / eps, "infimum_witness_bound");
    return iterate_apply(star_closure(f), steps, 0);
}

MetastabilityRate metastability_from_gamma(MetaDecRate gamma, Rat K, Rat r) {
    if (K <= 0) throw std::invalid_argument("metastability_from_gamma: K must be positive");
    MetaDecRate gs = gamma_star(gamma);
    return MetastabilityRate(
        "thm-meta(" + gamma.label() + ",K=" + rat_str(K) + ")",
        [gs, K, r](const Rat& eps, const Counterfunction& g) {
            const Rat half = eps / 2;
            Counterfunction gst = star_closure(g);
            // f(j) = G*(j) + g*(G*(j)); composition of nondecreasing maps,
            // so f* = f and the closed-form star applies downstream.
            Counterfunction f = Counterfunction::lambda(
                "f",
                [gs, gst, K, r, half, g](const Nat& j) {
                    Nat t = gs(K, r, half, g, j);
                    return t + gst(t);
                },
                /*monotone=*/true, /*memoize=*/false);
            const Nat steps = checked_iteration_count(2 * K / eps, "metastability_from_gamma");
            const Nat n0 = iterate_apply(f, steps, 0);
            return gs(K, r, half, g, n0);
        });
}

MetastabilityRate monotone_metastability_rate(Rat K) {
    if (K <= 0) throw std::invalid_argument("monotone_metastability_rate: K must be positive");
    return MetastabilityRate(
        "monotone(K=" + rat_str(K) + ")", [K](const Rat& eps, const Counterfunction& g) {
            Counterfunction gst = star_closure(g);
            Counterfunction f = Counterfunction::lambda(
                "f", [gst](const Nat& j) { return j + gst(j); }, /*monotone=*/true,
                /*memoize=*/false);
            return iterate_apply(
                f, checked_iteration_count(2 * K / eps, "monotone_metastability_rate"), 0);
        });
}

MetastabilityRate zero_metastability_rate() {
    return MetastabilityRate("zero", [](const Rat&, const Counterfunction&) { return Nat(0); });
}

}  // namespace metarates
