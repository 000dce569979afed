#include "metarates/space.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace metarates {

double LpSpace::norm(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument("LpSpace::norm: dimension mismatch");
    if (p == 2) {
        double s = 0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    double s = 0;
    for (double x : v) s += std::pow(std::fabs(x), p);
    return std::pow(s, 1.0 / p);
}

double LpSpace::distance(std::span<const double> a, std::span<const double> b) const {
    if (a.size() != b.size() || static_cast<int>(a.size()) != dim)
        throw std::invalid_argument("LpSpace::distance: dimension mismatch");
    if (p == 2) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::fabs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

nlohmann::json LpSpace::to_json() const { return nlohmann::json{{"d", dim}, {"p", p}}; }

LpSpace LpSpace::from_json(const nlohmann::json& j) {
    require_keys(j, {"d", "p"}, {"d", "p"}, "space");
    LpSpace s{j.at("d").get<int>(), j.at("p").get<int>()};
    if (s.dim < 1) throw std::invalid_argument("space: d must be >= 1");
    if (s.p < 2) throw std::invalid_argument("space: p must be >= 2");
    return s;
}

Point add(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Point scaled(const Point& a, double s) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

}  // namespace metarates
