#pragma once

#include <span>
#include <vector>

#include "metarates/numeric.hpp"

namespace metarates {

using Point = std::vector<double>;

// Finite-dimensional l_p coordinate space, p >= 2. Norms are evaluated in
// double precision; exactness lives in the rates, not the geometry.
struct LpSpace {
    int dim = 1;
    int p = 2;

    double norm(std::span<const double> v) const;
    double distance(std::span<const double> a, std::span<const double> b) const;

    nlohmann::json to_json() const;
    static LpSpace from_json(const nlohmann::json& j);
};

Point add(const Point& a, const Point& b);
Point scaled(const Point& a, double s);

}  // namespace metarates
