#pragma once

#include <cstdint>
#include <utility>

#include "metarates/convexity.hpp"
#include "metarates/space.hpp"

namespace metarates {

struct ViolationReport {
    std::uint64_t samples = 0;       // total draws
    std::uint64_t premise_hits = 0;  // draws satisfying every premise
    std::uint64_t violations = 0;    // premise hits breaking the conclusion beyond tau
    double max_excess = 0.0;         // worst (lhs - allowed), negative when comfortably inside

    nlohmann::json to_json() const;
};

// Deterministic uniform source; doubles are derived from the raw engine
// words so reports are reproducible for a given seed.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed);
    double unit();       // [0,1)
    double symmetric();  // [-1,1]
    std::uint64_t integer(std::uint64_t bound);  // [0, bound)

private:
    std::uint64_t state_[4];
    std::uint64_t next_word();
};

// Pairs in the closed unit ball biased toward the premise slab
//   ||x1+x2||/2 >= 1 - P(eps),
// which is thin (P(eps) is tiny for l_p moduli); naive uniform sampling
// would test nothing.
class UnitBallPairSampler {
public:
    UnitBallPairSampler(LpSpace space, double eps, double phi_eps, std::uint64_t seed);
    std::pair<Point, Point> next();
    const LpSpace& space() const noexcept { return space_; }

private:
    Point direction();
    LpSpace space_;
    double eps_;
    double phi_eps_;
    SampleRng rng_;
};

// (y, u) pairs with ||y|| <= 1, biased toward the annulus
//   ||u|| >= 1  and  ||u - h y|| <= 1 - h + Psi.
class TwoBallPairSampler {
public:
    TwoBallPairSampler(LpSpace space, double h, double psi, std::uint64_t seed);
    std::pair<Point, Point> next();  // (y, u)
    const LpSpace& space() const noexcept { return space_; }

private:
    Point direction();
    LpSpace space_;
    double h_;
    double psi_;
    SampleRng rng_;
};

// Counts premise-satisfying pairs until `count` of them have been checked
// (or the draw budget runs out — an empty premise set is reported, not an
// error). Violation: premise holds but ||x1-x2|| > eps + tau.
ViolationReport verify_modulus(UnitBallPairSampler& sampler, const ConvexityModulus& phi,
                               const Rat& eps, std::uint64_t count, double tau = 1e-12,
                               std::uint64_t draw_factor = 512);

// Violation: premises hold but ||u-y|| > eps + tau.
ViolationReport verify_two_ball(TwoBallPairSampler& sampler, const TwoBallModulus& psi,
                                const Rat& h, const Rat& eps, std::uint64_t count,
                                double tau = 1e-9, std::uint64_t draw_factor = 512);

// Sampled form of the scaled two-ball step: draws (d, u, y) with
//   0 < d <= K, ||y|| = d, ||u|| >= d, ||u - h y|| <= d (1 - h + delta)
// where h cycles over a grid in (0, 1/4] and delta = min{1, Psi(h, eps/(2K))},
// and checks ||u - y|| <= eps/2 + tau.
ViolationReport verify_scaling_lemma(const LpSpace& space, const ConvexityModulus& phi,
                                     const Rat& K, const Rat& eps, std::uint64_t count,
                                     std::uint64_t seed, double tau = 1e-9,
                                     std::uint64_t draw_factor = 512);

}  // namespace metarates
