#pragma once

#include <functional>
#include <string>

#include "metarates/counterfunction.hpp"
#include "metarates/numeric.hpp"

namespace metarates {

// Metastable rate of asymptotic decreasingness: a bound G(K,r,eps,g,N) on
// some n with  x_i <= x_N + eps  for all i in [n, n+g(n)]. K and r are the
// uniformity parameters of the orbit-distance setting; plain scalar-sequence
// rates just ignore them.
class MetaDecRate {
public:
    using Fn = std::function<Nat(const Rat& K, const Rat& r, const Rat& eps,
                                 const Counterfunction& g, const Nat& N)>;

    MetaDecRate(std::string label, Fn fn, bool monotone_in_n);

    Nat operator()(const Rat& K, const Rat& r, const Rat& eps, const Counterfunction& g,
                   const Nat& N) const;

    // Known nondecreasing in N; enables the O(1) form of gamma_star.
    bool monotone_in_n() const noexcept { return monotone_in_n_; }
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
    Fn fn_;
    bool monotone_in_n_;
};

// Rate of metastability: a bound P(eps,g) on some n with |x_i - x_j| <= eps
// for all i,j in [n, n+g(n)].
class MetastabilityRate {
public:
    using Fn = std::function<Nat(const Rat& eps, const Counterfunction& g)>;

    MetastabilityRate(std::string label, Fn fn);

    Nat operator()(const Rat& eps, const Counterfunction& g) const;
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
    Fn fn_;
};

// G*(K,r,eps,g,N) = max_{i<=N} max(N, G(K,r,eps,g,i)). Nondecreasing in N
// and >= N. Non-monotone rates are enumerated (same 2^24 guard as the
// counterfunction star closure).
MetaDecRate gamma_star(const MetaDecRate& gamma);

// Iteration-count guard for rate evaluation. Rates iterate a counterfunction
// ceil(K/eta) (or ceil(2K/eps)) times, and the iterate typically doubles, so
// past ~2^19 steps the exact value would not even be materializable (it
// needs about 2^steps bits). Evaluations past the guard throw
// std::length_error instead of hanging; runners report such cells as
// inconclusive.
inline constexpr std::uint64_t kRateIterationGuard = std::uint64_t{1} << 19;

// rat_ceil with the guard applied; `what` names the offending rate.
Nat checked_iteration_count(const Rat& q, const char* what);

// Bound on a near-infimum index: (f*)^(ceil(K/eps))(0). Valid for any
// nonnegative sequence with x_0 < K: some N below it has
// x_N - eps <= x_i for all i <= f(N).
Nat infimum_witness_bound(const Rat& K, const Rat& eps, const Counterfunction& f);

// From a metastable rate of asymptotic decreasingness to a rate of
// metastability:
//   P(eps,g) = G*(K, r, eps/2, g, f^(ceil(2K/eps))(0))
//   f(j)     = G*(K, r, eps/2, g, j) + g*(G*(K, r, eps/2, g, j))
// Valid whenever gamma is a valid rate for the sequence and x_0 < K; the
// r parameter is carried through unchanged.
MetastabilityRate metastability_from_gamma(MetaDecRate gamma, Rat K, Rat r);

// The standard rate for nonincreasing sequences bounded by K:
//   P(eps,g) = f^(ceil(2K/eps))(0),  f(j) = j + g*(j).
// Identical to metastability_from_gamma with G(...,N) = N.
MetastabilityRate monotone_metastability_rate(Rat K);

// Deliberately invalid constant-zero rate; negative-control material for
// the oracle (a checker that never fails would prove nothing).
MetastabilityRate zero_metastability_rate();

}  // namespace metarates
