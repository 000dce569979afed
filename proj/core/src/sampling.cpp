#include "metarates/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace metarates {

nlohmann::json ViolationReport::to_json() const {
    return nlohmann::json{{"samples", samples},
                          {"premise_hits", premise_hits},
                          {"violations", violations},
                          {"max_excess", max_excess}};
}

// xoshiro256**: small, fast, stable across platforms (std distributions are
// implementation-defined, which would break byte-identical reports).
SampleRng::SampleRng(std::uint64_t seed) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL;
    for (auto& s : state_) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        s = x;
        x += 0x9e3779b97f4a7c15ULL;
    }
}

std::uint64_t SampleRng::next_word() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SampleRng::unit() { return static_cast<double>(next_word() >> 11) * 0x1.0p-53; }
double SampleRng::symmetric() { return 2.0 * unit() - 1.0; }
std::uint64_t SampleRng::integer(std::uint64_t bound) { return next_word() % bound; }

namespace {

Point random_direction(const LpSpace& space, SampleRng& rng) {
    Point dir(space.dim);
    double n = 0;
    do {
        for (double& d : dir) d = rng.symmetric();
        n = space.norm(dir);
    } while (n < 1e-9);
    for (double& d : dir) d /= n;
    return dir;
}

void clamp_into_ball(const LpSpace& space, Point& x) {
    const double n = space.norm(x);
    if (n > 1.0)
        for (double& v : x) v /= n;
}

}  // namespace

UnitBallPairSampler::UnitBallPairSampler(LpSpace space, double eps, double phi_eps,
                                         std::uint64_t seed)
    : space_(space), eps_(eps), phi_eps_(phi_eps), rng_(seed) {
    if (!(eps > 0) || !(phi_eps > 0))
        throw std::invalid_argument("UnitBallPairSampler: eps and phi_eps must be positive");
}

Point UnitBallPairSampler::direction() { return random_direction(space_, rng_); }

std::pair<Point, Point> UnitBallPairSampler::next() {
    const Point u = direction();
    const double mode = rng_.unit();
    if (mode < 0.30) {
        // radial pair on one ray; lands in the slab about half the time
        const double l1 = 1.0 - 2.0 * phi_eps_ * rng_.unit();
        const double l2 = 1.0 - 2.0 * phi_eps_ * rng_.unit();
        return {scaled(u, l1), scaled(u, l2)};
    }
    if (mode < 0.45) {
        // near-coincident pair close to the sphere
        Point x1 = scaled(u, 1.0 - phi_eps_ * rng_.unit());
        Point x2 = x1;
        const Point w = direction();
        const double t = eps_ * 1e-3 * rng_.unit();
        for (int i = 0; i < space_.dim; ++i) x2[i] += t * w[i];
        clamp_into_ball(space_, x2);
        return {std::move(x1), std::move(x2)};
    }
    // angular pair: separation concentrated below the admissible spread,
    // with a tail reaching past it so the slab boundary gets exercised
    const double t_scale = 4.0 * std::sqrt(phi_eps_);
    const double x = rng_.unit();
    const double t = std::min(t_scale * x * x, 2.0);
    const Point w = direction();
    Point x2(space_.dim);
    for (int i = 0; i < space_.dim; ++i) x2[i] = u[i] + t * w[i];
    const double n2 = space_.norm(x2);
    if (n2 > 1e-12)
        for (double& v : x2) v /= n2;
    Point x1 = scaled(u, 1.0 - phi_eps_ * rng_.unit());
    x2 = scaled(x2, 1.0 - phi_eps_ * rng_.unit());
    clamp_into_ball(space_, x1);
    clamp_into_ball(space_, x2);
    return {std::move(x1), std::move(x2)};
}

ViolationReport verify_modulus(UnitBallPairSampler& sampler, const ConvexityModulus& phi,
                               const Rat& eps, std::uint64_t count, double tau,
                               std::uint64_t draw_factor) {
    const LpSpace& space = sampler.space();
    const double eps_d = to_double(eps);
    const double threshold = 1.0 - to_double(phi(eps));
    ViolationReport report;
    const std::uint64_t budget = count * draw_factor;

    while (report.premise_hits < count && report.samples < budget) {
        auto [x1, x2] = sampler.next();
        ++report.samples;
        const double mid = 0.5 * space.norm(add(x1, x2));
        if (mid < threshold) continue;  // premise fails; pair skipped
        ++report.premise_hits;
        const double diff = space.distance(x1, x2);
        const double excess = diff - eps_d;
        report.max_excess = std::max(report.max_excess, excess);
        if (excess > tau) ++report.violations;
    }
    return report;
}

TwoBallPairSampler::TwoBallPairSampler(LpSpace space, double h, double psi, std::uint64_t seed)
    : space_(space), h_(h), psi_(psi), rng_(seed) {
    if (!(h > 0) || !(h < 0.5)) throw std::invalid_argument("TwoBallPairSampler: h outside (0,1/2)");
    if (!(psi > 0)) throw std::invalid_argument("TwoBallPairSampler: psi must be positive");
}

Point TwoBallPairSampler::direction() { return random_direction(space_, rng_); }

std::pair<Point, Point> TwoBallPairSampler::next() {
    // y sits on or just inside the sphere; the premise ||u-hy|| <= 1-h+psi
    // forces ||y|| >= 1 - psi/h anyway
    const Point dir = direction();
    const double y_scale = 1.0 - 0.4 * (psi_ / h_) * rng_.unit();
    Point y = scaled(dir, std::min(y_scale, 1.0));

    const double mode = rng_.unit();
    const double rho = psi_ * (1e-6 + 0.45 * rng_.unit());
    if (mode < 0.40) {
        // same-direction hit by construction: ||u-hy|| = 1+rho-h||y||
        return {std::move(y), scaled(dir, 1.0 + rho)};
    }
    // angular: admissible angle is about sqrt(2(1-h) psi / h); reach past it
    const double t_scale = 2.5 * std::sqrt(2.0 * (1.0 - h_) * psi_ / h_);
    const double x = rng_.unit();
    const double t = t_scale * x * x;
    const Point w = direction();
    Point u(space_.dim);
    for (int i = 0; i < space_.dim; ++i) u[i] = dir[i] + t * w[i];
    const double n = space_.norm(u);
    for (double& v : u) v = v / n * (1.0 + rho);
    return {std::move(y), std::move(u)};
}

ViolationReport verify_two_ball(TwoBallPairSampler& sampler, const TwoBallModulus& psi,
                                const Rat& h, const Rat& eps, std::uint64_t count, double tau,
                                std::uint64_t draw_factor) {
    const LpSpace& space = sampler.space();
    const double h_d = to_double(h);
    const double eps_d = to_double(eps);
    const double radius = 1.0 - h_d + to_double(psi(h, eps));
    ViolationReport report;
    const std::uint64_t budget = count * draw_factor;

    while (report.premise_hits < count && report.samples < budget) {
        auto [y, u] = sampler.next();
        ++report.samples;
        if (space.norm(y) > 1.0) continue;
        if (space.norm(u) < 1.0) continue;
        Point shifted = u;
        for (int i = 0; i < space.dim; ++i) shifted[i] -= h_d * y[i];
        if (space.norm(shifted) > radius) continue;
        ++report.premise_hits;
        const double excess = space.distance(u, y) - eps_d;
        report.max_excess = std::max(report.max_excess, excess);
        if (excess > tau) ++report.violations;
    }
    return report;
}

ViolationReport verify_scaling_lemma(const LpSpace& space, const ConvexityModulus& phi,
                                     const Rat& K, const Rat& eps, std::uint64_t count,
                                     std::uint64_t seed, double tau,
                                     std::uint64_t draw_factor) {
    if (K <= 0 || eps <= 0)
        throw std::invalid_argument("verify_scaling_lemma: K, eps must be positive");
    if (eps > 8 * K)
        throw std::invalid_argument("verify_scaling_lemma: eps/(2K) outside (0,4]");
    const TwoBallModulus psi = psi_transform(phi);

    // h ranges over (0, 1/4], the image of min{1/4, r/K}
    const std::array<Rat, 5> h_grid{Rat(1, 32), Rat(1, 16), Rat(1, 8), Rat(3, 16), Rat(1, 4)};
    struct Cell {
        double h, delta;
    };
    std::array<Cell, 5> cells{};
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        const Rat delta = std::min(Rat(1), psi(h_grid[i], eps / (2 * K)));
        cells[i] = {to_double(h_grid[i]), to_double(delta)};
    }

    SampleRng rng(seed);
    const double K_d = to_double(K);
    const double half_eps = 0.5 * to_double(eps);
    ViolationReport report;
    const std::uint64_t budget = count * draw_factor;

    while (report.premise_hits < count && report.samples < budget) {
        const Cell cell = cells[report.samples % cells.size()];
        ++report.samples;
        const double d = K_d * (0.3 + 0.7 * rng.unit());

        const Point dir = random_direction(space, rng);
        Point y = scaled(dir, d);
        const double d_exact = space.norm(y);  // ||y|| = d holds by definition

        Point u;
        const double rho = cell.delta * (1e-6 + 0.45 * rng.unit());
        if (rng.unit() < 0.4) {
            u = scaled(dir, d_exact * (1.0 + rho));
        } else {
            const double t_scale =
                2.5 * std::sqrt(2.0 * (1.0 - cell.h) * cell.delta / cell.h);
            const double x = rng.unit();
            const double t = t_scale * x * x;
            const Point w = random_direction(space, rng);
            u.resize(space.dim);
            for (int i = 0; i < space.dim; ++i) u[i] = dir[i] + t * w[i];
            const double n = space.norm(u);
            for (double& v : u) v = v / n * d_exact * (1.0 + rho);
        }

        if (!(d_exact > 0) || d_exact > K_d) continue;
        if (space.norm(u) < d_exact) continue;
        Point shifted = u;
        for (int i = 0; i < space.dim; ++i) shifted[i] -= cell.h * y[i];
        if (space.norm(shifted) > d_exact * (1.0 - cell.h + cell.delta)) continue;
        ++report.premise_hits;
        const double excess = space.distance(u, y) - half_eps;
        report.max_excess = std::max(report.max_excess, excess);
        if (excess > tau) ++report.violations;
    }
    return report;
}

}  // namespace metarates
