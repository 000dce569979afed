#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "metarates/numeric.hpp"
#include "metarates/picard.hpp"

namespace metarates {

// A nonnegative sequence under test. Exact sources (rational tables,
// synthetic formulas) compare with no slack; orbit-backed sources are
// double-valued and downstream comparisons absorb float noise with tau.
class SequenceSource {
public:
    static constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

    bool exact() const noexcept;
    double at(std::uint64_t n) const;
    Rat at_exact(std::uint64_t n) const;  // throws std::logic_error when !exact()
    // Largest valid index (inclusive); orbit caps surface here.
    std::uint64_t limit() const noexcept;
    const std::string& label() const noexcept;
    nlohmann::json descriptor() const;

    // Explicit values; the last value holds forever past the end.
    static SequenceSource table(std::vector<Rat> values, std::string label = "table");
    // base + scale/(n+1), nonincreasing toward base.
    static SequenceSource harmonic(Rat base, Rat scale);
    // base * (1 + (amp + odd_boost * [n odd]) / (n+1)): decaying oscillation,
    // the stock example of an asymptotically decreasing non-monotone profile.
    static SequenceSource oscillating(Rat base, Rat amp, Rat odd_boost);
    // Explicit head, then base + scale/(n+1-len): arbitrary head over a
    // decreasing tail.
    static SequenceSource head_tail(std::vector<Rat> head, Rat base, Rat scale);
    // ||T^n x - q||; double-valued, within tau of the true distances.
    static SequenceSource orbit_distance(std::shared_ptr<PicardOrbit> orbit, std::vector<Rat> q);
    static SequenceSource lambda_exact(std::string label, std::function<Rat(std::uint64_t)> fn);

    // {"kind":"table","values":[...]} | {"kind":"harmonic","base":..,"scale":..}
    // | {"kind":"oscillating","base":..,"amp":..,"odd_boost":..}
    // | {"kind":"head_tail","head":[...],"base":..,"scale":..}
    static SequenceSource from_json(const nlohmann::json& j);

private:
    struct Impl;
    explicit SequenceSource(std::shared_ptr<Impl> impl);
    std::shared_ptr<Impl> impl_;
};

}  // namespace metarates
