#include "metarates/picard.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace metarates {

PicardOrbit::PicardOrbit(Scenario scenario, std::uint64_t cap)
    : scenario_(std::move(scenario)), cap_(cap) {
    scenario_.validate();
    pts_.push_back(scenario_.certificate.x0);
}

void PicardOrbit::ensure(std::uint64_t n) {
    if (n > cap_)
        throw std::length_error("picard orbit: index " + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap_));
    while (pts_.size() <= n) {
        Point next = scenario_.map(pts_.back());
        for (double v : next) {
            if (!std::isfinite(v))
                throw std::runtime_error("picard orbit: non-finite coordinate at step " +
                                         std::to_string(pts_.size()));
        }
        pts_.push_back(std::move(next));
    }
}

Point PicardOrbit::at(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(m_);
    ensure(n);
    return pts_[n];
}

double PicardOrbit::distance_to(std::uint64_t n, const Point& q) {
    std::lock_guard<std::mutex> lock(m_);
    ensure(n);
    return scenario_.space.distance(pts_[n], q);
}

double PicardOrbit::step(std::uint64_t i) {
    std::lock_guard<std::mutex> lock(m_);
    ensure(i + 1);
    return scenario_.space.distance(pts_[i + 1], pts_[i]);
}

std::vector<Point> picard_orbit(const Scenario& s, std::uint64_t n, std::uint64_t cap) {
    PicardOrbit orbit(s, cap);
    orbit.at(n);
    std::vector<Point> out;
    out.reserve(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i) out.push_back(orbit.at(i));
    return out;
}

MetaDecRate nonexpansive_gamma() {
    return MetaDecRate(
        "nonexpansive",
        [](const Rat&, const Rat&, const Rat&, const Counterfunction&, const Nat& N) { return N; },
        /*monotone_in_n=*/true);
}

MetastabilityRate omega_rate(ConvexityModulus phi, MetaDecRate gamma, Rat K, Rat r) {
    if (!(r > 0) || !(K > r))
        throw std::invalid_argument("omega_rate: requires K > r > 0");
    MetaDecRate gs = gamma_star(gamma);
    return MetastabilityRate(
        "omega(" + gamma.label() + "," + phi.label() + ")",
        [phi, gs, K, r](const Rat& eps, const Counterfunction& g) {
            const Rat e = eta(phi, K, r, eps);
            Counterfunction gst = star_closure(g);
            Counterfunction f = Counterfunction::lambda(
                "f",
                [gs, gst, K, r, e, g](const Nat& j) {
                    Nat t = gs(K, r, e, g, j);
                    return t + gst(t);
                },
                /*monotone=*/true, /*memoize=*/false);
            const Nat n0 = iterate_apply(f, checked_iteration_count(K / e, "omega_rate"), 0);
            return gs(K, r, e, g, n0);
        });
}

MetastabilityRate nonexpansive_omega(ConvexityModulus phi, Rat K, Rat r) {
    if (!(r > 0) || !(K > r))
        throw std::invalid_argument("nonexpansive_omega: requires K > r > 0");
    return MetastabilityRate(
        "nonexp-omega(" + phi.label() + ")", [phi, K, r](const Rat& eps, const Counterfunction& g) {
            const Rat e = eta(phi, K, r, eps);
            Counterfunction gst = star_closure(g);
            Counterfunction gt = Counterfunction::lambda(
                "g~", [gst](const Nat& j) { return j + gst(j); }, /*monotone=*/true,
                /*memoize=*/false);
            return iterate_apply(gt, checked_iteration_count(K / e, "nonexpansive_omega"), 0);
        });
}

Nat asymptotic_regularity_rate(const ConvexityModulus& phi, const Rat& K, const Rat& r,
                               const Rat& eps) {
    return rat_ceil(K / eta(phi, K, r, eps));
}

Nat lp_asymptotic_regularity_rate(int p, const Rat& K, const Rat& r, const Rat& eps) {
    if (p < 2) throw std::invalid_argument("lp_asymptotic_regularity_rate: p must be >= 2");
    if (K <= 0 || r <= 0 || eps <= 0)
        throw std::invalid_argument("lp_asymptotic_regularity_rate: K, r, eps must be positive");
    const Rat num = Rat(p) * rat_pow(Rat(2), static_cast<unsigned>(3 * p + 1)) *
                    rat_pow(K, static_cast<unsigned>(p + 2));
    const Rat den = rat_pow(eps, static_cast<unsigned>(p)) * r * r;
    return rat_ceil(num / den);
}

MetaDecRate gamma_from_metastable_mu(const MuProfile& profile, const Rat& K, const Rat& r) {
    if (!profile.has_phi)
        throw std::invalid_argument("gamma_from_metastable_mu: profile lacks a metastable rate");
    if (K <= 0 || r <= 0)
        throw std::invalid_argument("gamma_from_metastable_mu: K, r must be positive");
    const Rat L = profile.L;
    auto mu_rate = profile.phi;
    return MetaDecRate(
        "gamma-mu-meta(L=" + rat_str(L) + ")",
        [L, mu_rate](const Rat& K_, const Rat& r_, const Rat& eps, const Counterfunction& g,
                     const Nat& N) {
            const Rat delta = eps / (L * (K_ + r_));
            Counterfunction shifted = Counterfunction::lambda(
                "g_N", [g, N](const Nat& k) { return g(N + k); }, g.monotone(),
                /*memoize=*/false);
            return N + mu_rate(delta, shifted);
        },
        /*monotone_in_n=*/false);  // the shifted counterfunction sees N
}

MetaDecRate gamma_from_mu_rate(const MuProfile& profile, const Rat& K, const Rat& r) {
    if (!profile.has_c)
        throw std::invalid_argument("gamma_from_mu_rate: profile lacks a convergence rate");
    if (!profile.decreasing)
        throw std::invalid_argument("gamma_from_mu_rate: profile is not flagged nonincreasing");
    if (K <= 0 || r <= 0)
        throw std::invalid_argument("gamma_from_mu_rate: K, r must be positive");
    const Rat L = profile.L;
    auto c = profile.c;
    return MetaDecRate(
        "gamma-mu-rate(L=" + rat_str(L) + ")",
        [L, c](const Rat& K_, const Rat& r_, const Rat& eps, const Counterfunction&, const Nat& N) {
            return N + c(eps / (L * (K_ + r_)));
        },
        /*monotone_in_n=*/true);
}

MetastabilityRate omega_decreasing_mu(ConvexityModulus phi, MuProfile profile, Rat K, Rat r) {
    if (!profile.has_c)
        throw std::invalid_argument("omega_decreasing_mu: profile lacks a convergence rate");
    if (!(r > 0) || !(K > r))
        throw std::invalid_argument("omega_decreasing_mu: requires K > r > 0");
    return MetastabilityRate(
        "omega-dec-mu(L=" + rat_str(profile.L) + "," + phi.label() + ")",
        [phi, profile, K, r](const Rat& eps, const Counterfunction& g) {
            const Rat e = eta(phi, K, r, eps);
            const Nat w = profile.c(e / (profile.L * (K + r)));
            Counterfunction gst = star_closure(g);
            Counterfunction gw = Counterfunction::lambda(
                "g_w", [gst, w](const Nat& j) { return j + w + gst(j + w); },
                /*monotone=*/true, /*memoize=*/false);
            return iterate_apply(gw, checked_iteration_count(K / e, "omega_decreasing_mu"), 0) +
                   w;
        });
}

Nat approx_fixed_point_bound(const MetastabilityRate& omega, const Rat& eps) {
    return omega(eps, Counterfunction::affine(1, 1));
}

}  // namespace metarates
