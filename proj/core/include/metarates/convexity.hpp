#pragma once

#include <functional>
#include <string>

#include "metarates/numeric.hpp"

namespace metarates {

// A modulus of uniform convexity: any P: (0,2] -> (0,1] with
//   x1,x2 in the unit ball and ||x1+x2||/2 >= 1 - P(eps)  implies
//   ||x1-x2|| <= eps.
// Monotonicity is not assumed. Evaluation validates domain and range.
class ConvexityModulus {
public:
    ConvexityModulus(std::string label, std::function<Rat(const Rat&)> fn,
                     nlohmann::json descriptor = nullptr);

    Rat operator()(const Rat& eps) const;

    const std::string& label() const noexcept { return label_; }
    const nlohmann::json& descriptor() const noexcept { return descriptor_; }

private:
    std::string label_;
    std::function<Rat(const Rat&)> fn_;
    nlohmann::json descriptor_;
};

// eps^p / (p * 2^p): a valid modulus for L_p (and finite-dimensional
// l_p coordinate spaces), p >= 2. Smaller than the true modulus, which is
// fine: any lower bound of a valid modulus is valid.
ConvexityModulus lp_modulus(int p);

// eps^2 / 8: rational stand-in for inner-product norms, a lower bound of
// 1 - sqrt(1 - eps^2/4). Labelled "surrogate".
ConvexityModulus hilbert_surrogate_modulus();

// {"kind":"lp","p":int} | {"kind":"surrogate_hilbert"}
ConvexityModulus modulus_from_json(const nlohmann::json& j);

// Two-ball modulus on (0,1/2) x (0,4]: quantitative form of the
// Edelstein/Steckin ball-intersection property.
class TwoBallModulus {
public:
    TwoBallModulus(std::string label, std::function<Rat(const Rat&, const Rat&)> fn);

    Rat operator()(const Rat& h, const Rat& eps) const;
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
    std::function<Rat(const Rat&, const Rat&)> fn_;
};

// Psi(h, eps) = min{ eps/2, 2h * P(eps/2) }. Whenever P is a valid modulus,
//   ||y|| <= 1, ||u|| >= 1 and ||u - h y|| <= 1 - h + Psi(h, eps)
// force ||u - y|| <= eps. Domain endpoints are rejected, not extended.
TwoBallModulus psi_transform(const ConvexityModulus& phi);

// eta = (r/4) * min{ 1, Psi(min{1/4, r/K}, eps/(2K)) }, the contraction
// quantum that drives every orbit rate here. Requires 0 < r < K. When
// eps/(2K) > 4 the evaluation clamps eps to 8K (a bound valid for a smaller
// eps is valid for a larger one).
Rat eta(const ConvexityModulus& phi, const Rat& K, const Rat& r, const Rat& eps);

}  // namespace metarates
