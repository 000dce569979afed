#include "metarates/convexity.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace metarates {

ConvexityModulus::ConvexityModulus(std::string label, std::function<Rat(const Rat&)> fn,
                                   nlohmann::json descriptor)
    : label_(std::move(label)), fn_(std::move(fn)), descriptor_(std::move(descriptor)) {}

Rat ConvexityModulus::operator()(const Rat& eps) const {
    if (eps <= 0 || eps > 2)
        throw std::domain_error("convexity modulus: eps " + rat_str(eps) + " outside (0,2]");
    Rat v = fn_(eps);
    if (v <= 0 || v > 1)
        throw std::logic_error("convexity modulus '" + label_ + "': value " + rat_str(v) +
                               " outside (0,1]");
    return v;
}

ConvexityModulus lp_modulus(int p) {
    if (p < 2) throw std::invalid_argument("lp_modulus: p must be >= 2");
    const Rat denom = Rat(p) * rat_pow(Rat(2), static_cast<unsigned>(p));
    return ConvexityModulus(
        "lp(p=" + std::to_string(p) + ")",
        [p, denom](const Rat& eps) { return rat_pow(eps, static_cast<unsigned>(p)) / denom; },
        nlohmann::json{{"kind", "lp"}, {"p", p}});
}

ConvexityModulus hilbert_surrogate_modulus() {
    return ConvexityModulus(
        "surrogate", [](const Rat& eps) { return eps * eps / 8; },
        nlohmann::json{{"kind", "surrogate_hilbert"}});
}

ConvexityModulus modulus_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("modulus: expected {kind,...}");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lp") {
        require_keys(j, {"kind", "p"}, {"p"}, "modulus lp");
        return lp_modulus(j.at("p").get<int>());
    }
    if (kind == "surrogate_hilbert") {
        require_keys(j, {"kind"}, {}, "modulus surrogate_hilbert");
        return hilbert_surrogate_modulus();
    }
    throw std::invalid_argument("modulus: unknown kind '" + kind + "'");
}

TwoBallModulus::TwoBallModulus(std::string label, std::function<Rat(const Rat&, const Rat&)> fn)
    : label_(std::move(label)), fn_(std::move(fn)) {}

Rat TwoBallModulus::operator()(const Rat& h, const Rat& eps) const {
    if (h <= 0 || h >= Rat(1, 2))
        throw std::domain_error("two-ball modulus: h " + rat_str(h) + " outside (0,1/2)");
    if (eps <= 0 || eps > 4)
        throw std::domain_error("two-ball modulus: eps " + rat_str(eps) + " outside (0,4]");
    Rat v = fn_(h, eps);
    if (v <= 0 || v > 1)
        throw std::logic_error("two-ball modulus '" + label_ + "': value " + rat_str(v) +
                               " outside (0,1]");
    return v;
}

TwoBallModulus psi_transform(const ConvexityModulus& phi) {
    return TwoBallModulus("psi(" + phi.label() + ")", [phi](const Rat& h, const Rat& eps) {
        return std::min(eps / 2, 2 * h * phi(eps / 2));
    });
}

Rat eta(const ConvexityModulus& phi, const Rat& K, const Rat& r, const Rat& eps) {
    if (r <= 0) throw std::invalid_argument("eta: r must be positive");
    if (eps <= 0) throw std::invalid_argument("eta: eps must be positive");
    if (K <= r) throw std::invalid_argument("eta: requires K > r");
    const Rat eps_clamped = std::min(eps, 8 * K);
    const Rat h = std::min(Rat(1, 4), r / K);
    const TwoBallModulus psi = psi_transform(phi);
    return (r / 4) * std::min(Rat(1), psi(h, eps_clamped / (2 * K)));
}

}  // namespace metarates
