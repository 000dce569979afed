#include "metarates/selfmap.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace metarates {

std::string_view to_string(MapClass c) {
    switch (c) {
        case MapClass::nonexpansive: return "nonexpansive";
        case MapClass::asymptotically_nonexpansive: return "asymptotically-nonexpansive";
        case MapClass::generic: return "generic";
    }
    return "?";
}

struct SelfMap::Impl {
    std::string label;
    MapClass cls;
    std::function<Point(const Point&)> fn;
    nlohmann::json descriptor;
};

SelfMap::SelfMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Point SelfMap::operator()(const Point& x) const { return impl_->fn(x); }
MapClass SelfMap::cls() const noexcept { return impl_->cls; }
const std::string& SelfMap::label() const noexcept { return impl_->label; }
nlohmann::json SelfMap::descriptor() const { return impl_->descriptor; }

SelfMap SelfMap::identity() {
    return SelfMap(std::make_shared<Impl>(Impl{"identity", MapClass::nonexpansive,
                                               [](const Point& x) { return x; },
                                               nlohmann::json{{"kind", "identity"}}}));
}

SelfMap SelfMap::box_projection(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("box_projection: requires lo < hi");
    return SelfMap(std::make_shared<Impl>(
        Impl{"box_projection[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
             MapClass::nonexpansive,
             [lo, hi](const Point& x) {
                 Point out(x.size());
                 for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], lo, hi);
                 return out;
             },
             nlohmann::json{{"kind", "box_projection"}, {"lo", lo}, {"hi", hi}}}));
}

SelfMap SelfMap::slow_quadratic() {
    return SelfMap(std::make_shared<Impl>(
        Impl{"slow_quadratic", MapClass::nonexpansive,
             [](const Point& x) {
                 Point out(x.size());
                 for (std::size_t i = 0; i < x.size(); ++i) {
                     const double v = x[i];
                     if (v <= 0.5) {
                         out[i] = v;
                     } else {
                         const double t = v - 0.5;
                         out[i] = v - t * t;
                     }
                 }
                 return out;
             },
             nlohmann::json{{"kind", "slow_quadratic"}}}));
}

SelfMap SelfMap::lambda(std::string label, std::function<Point(const Point&)> fn, MapClass cls) {
    return SelfMap(
        std::make_shared<Impl>(Impl{std::move(label), cls, std::move(fn), nlohmann::json()}));
}

SelfMap SelfMap::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("map: expected {kind,...}");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") {
        require_keys(j, {"kind"}, {}, "map identity");
        return identity();
    }
    if (kind == "box_projection") {
        require_keys(j, {"kind", "lo", "hi"}, {"lo", "hi"}, "map box_projection");
        return box_projection(j.at("lo").get<double>(), j.at("hi").get<double>());
    }
    if (kind == "slow_quadratic") {
        require_keys(j, {"kind"}, {}, "map slow_quadratic");
        return slow_quadratic();
    }
    throw std::invalid_argument("map: unknown kind '" + kind + "'");
}

}  // namespace metarates
