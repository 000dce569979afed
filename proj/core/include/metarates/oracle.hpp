#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "metarates/counterfunction.hpp"
#include "metarates/picard.hpp"
#include "metarates/rates.hpp"
#include "metarates/sequence.hpp"

namespace metarates {

// Bounds are upper bounds, not predictions: a tower value like 2^8191 can
// never be scanned, but a witness found below both the cap and the bound
// still certifies the bound. Hence three verdicts.
enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

struct OracleLimits {
    std::uint64_t scan_cap = 1'000'000;
    std::uint64_t window_cap = std::uint64_t{1} << 26;
    double tau = 1e-9;  // float sources only; exact sources compare exactly
};

struct WitnessSearchResult {
    std::optional<std::uint64_t> found;  // least witness; scan is from 0 up, no skipping
    std::uint64_t scanned = 0;
    std::uint64_t cap = 0;
};

// Least n <= cap with |x_i - x_j| <= eps (+tau) for all i,j in [n, n+g(n)].
WitnessSearchResult min_witness(const SequenceSource& s, const Rat& eps, const Counterfunction& g,
                                const OracleLimits& lim);

// Same search on the orbit points themselves: window diameter
// max ||T^i x - T^j x|| over i,j in [n, n+g(n)]. If some scanned orbit point
// enters the open certificate ball the orbit is fixed from there on and the
// search short-circuits to that index.
WitnessSearchResult min_witness_orbit(PicardOrbit& orbit, const Rat& eps, const Counterfunction& g,
                                      const OracleLimits& lim);

struct BoundCheckResult {
    Verdict verdict = Verdict::inconclusive;
    WitnessSearchResult search;
    Nat bound;
};

// pass: witness found with n <= bound (exact big-natural comparison).
// fail: every n <= bound was scanned and none works.
// inconclusive: bound exceeds the cap and no witness turned up below it.
BoundCheckResult check_metastability_bound(const SequenceSource& s, const MetastabilityRate& rate,
                                           const Rat& eps, const Counterfunction& g,
                                           const OracleLimits& lim);

BoundCheckResult check_metastability_bound_orbit(PicardOrbit& orbit, const MetastabilityRate& rate,
                                                 const Rat& eps, const Counterfunction& g,
                                                 const OracleLimits& lim);

// Window condition x_i <= x_N + eps for i in [n, n+g(n)], bound
// gamma(K,r,eps,g,N).
BoundCheckResult check_asym_dec(const SequenceSource& s, const MetaDecRate& gamma, const Rat& K,
                                const Rat& r, const Rat& eps, const Counterfunction& g,
                                const Nat& N, const OracleLimits& lim);

struct InfimumCheckResult {
    Verdict verdict = Verdict::fail;
    std::optional<std::uint64_t> witness;
    Nat bound;
};

// Scans N up to (f*)^(ceil(K/eps))(0) for x_N - eps <= x_i on all i <= f(N).
// Requires x_0 < K.
InfimumCheckResult check_infimum_lemma(const SequenceSource& s, const Rat& K, const Rat& eps,
                                       const Counterfunction& f, const OracleLimits& lim);

// Nonincreasing-mu extraction from a tabulated profile: the suffix maxima of
//   mu_k = max_{n <= n_max - k} s_{n+k} / s_n.
// Ratios whose denominator s_n is at or below `floor` are excluded and
// counted. The table is nonincreasing, suitable for a convergence-rate
// profile.
struct MuExtraction {
    std::vector<Rat> mu;
    std::uint64_t excluded = 0;
};
MuExtraction extract_mu_table(const SequenceSource& s, std::uint64_t n_max, const Rat& floor);

// Rate of convergence read off a nonincreasing mu table:
// c(delta) = least k with mu_k <= 1 + delta, or the table length if none.
std::function<Nat(const Rat&)> mu_rate_from_table(std::vector<Rat> mu);

}  // namespace metarates
