#pragma once

#include <functional>
#include <memory>
#include <string>

#include "metarates/space.hpp"

namespace metarates {

enum class MapClass { nonexpansive, asymptotically_nonexpansive, generic };

std::string_view to_string(MapClass c);

// A self-map of a subset of an l_p space, applied coordinatewise for the
// built-in presets so they are nonexpansive in every l_p norm.
class SelfMap {
public:
    Point operator()(const Point& x) const;

    MapClass cls() const noexcept;
    const std::string& label() const noexcept;
    nlohmann::json descriptor() const;

    static SelfMap identity();
    // Coordinatewise clamp into [lo, hi]; fixed set is the box.
    static SelfMap box_projection(double lo, double hi);
    // Coordinatewise on [-1/2, 1]: fixed on [-1/2, 1/2], and
    // x - (x - 1/2)^2 above 1/2. Derivative in [0,1] there, so the map is
    // nonexpansive; the orbit from 0.99 creeps toward 1/2 at a ~1/n rate.
    static SelfMap slow_quadratic();
    static SelfMap lambda(std::string label, std::function<Point(const Point&)> fn, MapClass cls);

    // {"kind":"identity"} | {"kind":"box_projection","lo":..,"hi":..}
    // | {"kind":"slow_quadratic"}
    static SelfMap from_json(const nlohmann::json& j);

private:
    struct Impl;
    explicit SelfMap(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace metarates
