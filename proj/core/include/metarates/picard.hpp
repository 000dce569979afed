#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "metarates/convexity.hpp"
#include "metarates/rates.hpp"
#include "metarates/scenario.hpp"

namespace metarates {

// Materialized orbit x, Tx, T^2 x, ... of a scenario. Extension is lazy and
// incremental; access past the cap or a non-finite coordinate throws. Safe
// to share across threads.
class PicardOrbit {
public:
    PicardOrbit(Scenario scenario, std::uint64_t cap);

    const Scenario& scenario() const noexcept { return scenario_; }
    std::uint64_t cap() const noexcept { return cap_; }

    Point at(std::uint64_t n);
    double distance_to(std::uint64_t n, const Point& q);
    // ||T^{i+1}x - T^i x||
    double step(std::uint64_t i);

private:
    void ensure(std::uint64_t n);

    Scenario scenario_;
    std::uint64_t cap_;
    std::mutex m_;
    std::vector<Point> pts_;
};

// [x, Tx, ..., T^n x]
std::vector<Point> picard_orbit(const Scenario& s, std::uint64_t n, std::uint64_t cap);

// For nonexpansive T with the fixed-ball certificate, G(K,r,eps,g,N) = N
// already works: distances to fixed points never grow.
MetaDecRate nonexpansive_gamma();

// The main orbit rate of metastability:
//   Omega(eps,g) = G*(K, r, eta, g, f^(ceil(K/eta))(0))
//   f(j)         = G*(K, r, eta, g, j) + g*(G*(K, r, eta, g, j))
// with eta = eta(phi, K, r, eps). Valid for (T^n x) whenever phi is a
// modulus for the space, the certificate holds, and gamma satisfies the
// uniform asymptotic-decreasingness bound.
MetastabilityRate omega_rate(ConvexityModulus phi, MetaDecRate gamma, Rat K, Rat r);

// Nonexpansive special case, directly: Omega(eps,g) = gt^(ceil(K/eta))(0)
// with gt(j) = j + g*(j). Pointwise equal to
// omega_rate(phi, nonexpansive_gamma(), K, r).
MetastabilityRate nonexpansive_omega(ConvexityModulus phi, Rat K, Rat r);

// ceil(K/eta): past this index every step ||T^{i+1}x - T^i x|| is <= eps
// for nonexpansive T under the certificate.
Nat asymptotic_regularity_rate(const ConvexityModulus& phi, const Rat& K, const Rat& r,
                               const Rat& eps);

// Closed form of the same rate in L_p: ceil(p * 2^(3p+1) * K^(p+2) / (eps^p r^2)).
Nat lp_asymptotic_regularity_rate(int p, const Rat& K, const Rat& r, const Rat& eps);

// From a metastable rate phi for mu_n (bound L):
//   G(K,r,eps,g,N) = N + phi(eps / (L(K+r)), g_N),  g_N(k) = g(N+k).
MetaDecRate gamma_from_metastable_mu(const MuProfile& profile, const Rat& K, const Rat& r);

// Nonincreasing mu with a rate of convergence c:
//   G(K,r,eps,g,N) = N + c(eps / (L(K+r))).
// Monotone in N with constant offset, so G* = G.
MetaDecRate gamma_from_mu_rate(const MuProfile& profile, const Rat& K, const Rat& r);

// Closed-form orbit rate for the nonincreasing-mu case:
//   Omega(eps,g) = g_w^(ceil(K/eta))(0) + w,
//   g_w(j) = j + w + g*(j + w),  w = c(eta / (L(K+r))).
MetastabilityRate omega_decreasing_mu(ConvexityModulus phi, MuProfile profile, Rat K, Rat r);

// Bound on an index n with ||T(T^n x) - T^n x|| <= eps: evaluate the orbit
// rate at g(k) = k+1.
Nat approx_fixed_point_bound(const MetastabilityRate& omega, const Rat& eps);

}  // namespace metarates
