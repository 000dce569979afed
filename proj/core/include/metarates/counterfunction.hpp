#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metarates/numeric.hpp"

namespace metarates {

// A total function N -> N, the adversary choosing window lengths in
// metastable statements. Serializable presets carry a descriptor; arbitrary
// closures may be wrapped in-library but do not serialize.
//
// Presets are closed forms, so evaluation is O(1); closures get a bounded
// memo because the star closure and iteration re-query small arguments
// heavily.
class Counterfunction {
public:
    Nat operator()(const Nat& n) const;

    // True when the function is known nondecreasing. Enables the closed
    // form f*(n) = max(n, f(n)) for the star closure, which is what keeps
    // tower-sized arguments evaluable.
    bool monotone() const noexcept;

    const std::string& label() const noexcept;

    // Serializable descriptor; nullopt for closures and derived functions.
    std::optional<nlohmann::json> descriptor() const;

    static Counterfunction constant(Nat c);
    static Counterfunction identity();
    static Counterfunction affine(Nat a, Nat b);  // n -> a*n + b
    static Counterfunction quadratic();           // n -> n^2
    // Explicit values for n < values.size(), then the tail rule.
    static Counterfunction table(std::vector<Nat> values, Counterfunction tail);
    // Tail defaults to holding the last value.
    static Counterfunction table(std::vector<Nat> values);
    static Counterfunction lambda(std::string label, std::function<Nat(const Nat&)> fn,
                                  bool monotone = false, bool memoize = true);

    // {"preset":"const","c":...} | {"preset":"affine","a":...,"b":...}
    // | {"preset":"quadratic"} | {"preset":"table","values":[...],"tail":{...}}
    static Counterfunction from_json(const nlohmann::json& j);
    // Shorthand accepted on the command line and in configs:
    //   "const:5", "affine:2,3", "quadratic", "identity" (alias "n")
    static Counterfunction parse(std::string_view text);

    struct Impl;

private:
    explicit Counterfunction(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;

    friend Counterfunction star_closure(const Counterfunction& f);
    friend Counterfunction iterate(const Counterfunction& f, const Nat& n);
};

// f*(n) = max_{i<=n} max(n, f(i)). Always nondecreasing, f*(n) >= n,
// f*(n) >= f(n). Non-monotone sources are enumerated with an incremental
// prefix-maximum cache; arguments past 2^24 throw std::length_error there.
Counterfunction star_closure(const Counterfunction& f);

// n-fold composition; iterate(f, 0) is the identity.
Counterfunction iterate(const Counterfunction& f, const Nat& n);

// Convenience: f^(n)(x0) without materializing the composite.
Nat iterate_apply(const Counterfunction& f, const Nat& n, Nat x0);

}  // namespace metarates
