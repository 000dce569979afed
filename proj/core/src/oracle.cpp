#include "metarates/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace metarates {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

std::uint64_t window_extent(const Counterfunction& g, std::uint64_t n, const OracleLimits& lim) {
    const Nat w = g(Nat(n));
    if (w > Nat(lim.window_cap))
        throw std::length_error("oracle: window length " + w.str() + " at n=" +
                                std::to_string(n) + " exceeds window cap");
    return w.convert_to<std::uint64_t>();
}

// Window [n, n+w] is eps-stable when max - min <= eps (+tau for floats).
bool window_stable(const SequenceSource& s, std::uint64_t n, std::uint64_t w, const Rat& eps,
                   double tau) {
    if (s.exact()) {
        Rat lo = s.at_exact(n);
        Rat hi = lo;
        for (std::uint64_t i = 1; i <= w; ++i) {
            Rat v = s.at_exact(n + i);
            if (v < lo) lo = v;
            if (v > hi) hi = v;
            if (hi - lo > eps) return false;
        }
        return hi - lo <= eps;
    }
    const double e = to_double(eps) + tau;
    double lo = s.at(n);
    double hi = lo;
    for (std::uint64_t i = 1; i <= w; ++i) {
        const double v = s.at(n + i);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (hi - lo > e) return false;
    }
    return true;
}

}  // namespace

WitnessSearchResult min_witness(const SequenceSource& s, const Rat& eps, const Counterfunction& g,
                                const OracleLimits& lim) {
    if (eps <= 0) throw std::invalid_argument("min_witness: eps must be positive");
    WitnessSearchResult result;
    result.cap = lim.scan_cap;
    for (std::uint64_t n = 0; n <= lim.scan_cap; ++n) {
        ++result.scanned;
        if (window_stable(s, n, window_extent(g, n, lim), eps, lim.tau)) {
            result.found = n;
            return result;
        }
    }
    return result;
}

WitnessSearchResult min_witness_orbit(PicardOrbit& orbit, const Rat& eps, const Counterfunction& g,
                                      const OracleLimits& lim) {
    if (eps <= 0) throw std::invalid_argument("min_witness_orbit: eps must be positive");
    const auto& space = orbit.scenario().space;
    const Point center = orbit.scenario().certificate.center_point();
    const double r = to_double(orbit.scenario().certificate.r);
    const double e = to_double(eps) + lim.tau;

    WitnessSearchResult result;
    result.cap = lim.scan_cap;
    for (std::uint64_t n = 0; n <= lim.scan_cap; ++n) {
        ++result.scanned;
        // Inside the open certificate ball the point is fixed, so the orbit
        // is constant from here: n is a witness for any window.
        if (orbit.distance_to(n, center) < r - lim.tau) {
            result.found = n;
            return result;
        }
        const std::uint64_t w = window_extent(g, n, lim);
        bool ok = true;
        for (std::uint64_t i = 0; i <= w && ok; ++i) {
            const Point a = orbit.at(n + i);
            for (std::uint64_t j = i + 1; j <= w && ok; ++j) {
                if (space.distance(a, orbit.at(n + j)) > e) ok = false;
            }
        }
        if (ok) {
            result.found = n;
            return result;
        }
    }
    return result;
}

namespace {

BoundCheckResult classify(WitnessSearchResult search, Nat bound, std::uint64_t cap) {
    BoundCheckResult out;
    out.search = search;
    out.bound = std::move(bound);
    if (search.found && Nat(*search.found) <= out.bound) {
        out.verdict = Verdict::pass;
    } else if (out.bound <= Nat(cap)) {
        // scan went past the whole bound (minimality: every n below the
        // found witness, or below the cap, already failed)
        out.verdict = Verdict::fail;
    } else {
        out.verdict = Verdict::inconclusive;
    }
    return out;
}

}  // namespace

BoundCheckResult check_metastability_bound(const SequenceSource& s, const MetastabilityRate& rate,
                                           const Rat& eps, const Counterfunction& g,
                                           const OracleLimits& lim) {
    Nat bound = rate(eps, g);
    OracleLimits scan = lim;
    if (bound < Nat(scan.scan_cap)) {
        // no need to scan past the bound unless a caller wants n_min itself
        scan.scan_cap = bound.convert_to<std::uint64_t>();
    }
    WitnessSearchResult search = min_witness(s, eps, g, scan);
    return classify(search, std::move(bound), scan.scan_cap);
}

BoundCheckResult check_metastability_bound_orbit(PicardOrbit& orbit, const MetastabilityRate& rate,
                                                 const Rat& eps, const Counterfunction& g,
                                                 const OracleLimits& lim) {
    Nat bound = rate(eps, g);
    OracleLimits scan = lim;
    if (bound < Nat(scan.scan_cap)) scan.scan_cap = bound.convert_to<std::uint64_t>();
    WitnessSearchResult search = min_witness_orbit(orbit, eps, g, scan);
    return classify(search, std::move(bound), scan.scan_cap);
}

BoundCheckResult check_asym_dec(const SequenceSource& s, const MetaDecRate& gamma, const Rat& K,
                                const Rat& r, const Rat& eps, const Counterfunction& g,
                                const Nat& N, const OracleLimits& lim) {
    if (eps <= 0) throw std::invalid_argument("check_asym_dec: eps must be positive");
    if (N > Nat(lim.scan_cap)) throw std::length_error("check_asym_dec: N exceeds scan cap");
    const std::uint64_t base = N.convert_to<std::uint64_t>();

    Nat bound = gamma(K, r, eps, g, N);
    const std::uint64_t scan_to =
        bound < Nat(lim.scan_cap) ? bound.convert_to<std::uint64_t>() : lim.scan_cap;

    BoundCheckResult out;
    out.bound = bound;
    out.search.cap = scan_to;

    const bool exact = s.exact();
    Rat cutoff_exact;
    double cutoff_float = 0;
    if (exact) {
        cutoff_exact = s.at_exact(base) + eps;
    } else {
        cutoff_float = s.at(base) + to_double(eps) + lim.tau;
    }

    for (std::uint64_t n = 0; n <= scan_to; ++n) {
        ++out.search.scanned;
        const std::uint64_t w = window_extent(g, n, lim);
        bool ok = true;
        for (std::uint64_t i = 0; i <= w; ++i) {
            if (exact ? (s.at_exact(n + i) > cutoff_exact) : (s.at(n + i) > cutoff_float)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.search.found = n;
            out.verdict = Verdict::pass;
            return out;
        }
    }
    out.verdict = bound <= Nat(scan_to) ? Verdict::fail : Verdict::inconclusive;
    return out;
}

InfimumCheckResult check_infimum_lemma(const SequenceSource& s, const Rat& K, const Rat& eps,
                                       const Counterfunction& f, const OracleLimits& lim) {
    if (K <= 0 || eps <= 0)
        throw std::invalid_argument("check_infimum_lemma: K, eps must be positive");
    if (s.exact() ? (s.at_exact(0) >= K) : (s.at(0) >= to_double(K)))
        throw std::invalid_argument("check_infimum_lemma: requires x_0 < K");

    InfimumCheckResult out;
    out.bound = infimum_witness_bound(K, eps, f);
    if (out.bound > Nat(lim.scan_cap))
        throw std::length_error("check_infimum_lemma: bound " + out.bound.str() +
                                " exceeds scan cap");
    const std::uint64_t scan_to = out.bound.convert_to<std::uint64_t>();
    const bool exact = s.exact();

    for (std::uint64_t n = 0; n <= scan_to; ++n) {
        const std::uint64_t w = window_extent(f, n, lim);
        bool ok = true;
        if (exact) {
            const Rat floor = s.at_exact(n) - eps;
            for (std::uint64_t i = 0; i <= w; ++i) {
                if (s.at_exact(i) < floor) {
                    ok = false;
                    break;
                }
            }
        } else {
            const double floor = s.at(n) - to_double(eps) - lim.tau;
            for (std::uint64_t i = 0; i <= w; ++i) {
                if (s.at(i) < floor) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            out.witness = n;
            out.verdict = Verdict::pass;
            return out;
        }
    }
    out.verdict = Verdict::fail;
    return out;
}

MuExtraction extract_mu_table(const SequenceSource& s, std::uint64_t n_max, const Rat& floor) {
    if (!s.exact()) throw std::invalid_argument("extract_mu_table: needs an exact source");
    std::vector<Rat> values(n_max + 1);
    for (std::uint64_t i = 0; i <= n_max; ++i) values[i] = s.at_exact(i);

    MuExtraction out;
    std::vector<Rat>& mu = out.mu;
    mu.assign(n_max + 1, Rat(0));
    for (std::uint64_t k = 0; k <= n_max; ++k) {
        bool any = false;
        for (std::uint64_t n = 0; n + k <= n_max; ++n) {
            if (values[n] <= floor) {
                ++out.excluded;  // denominator too small for a trustworthy ratio
                continue;
            }
            Rat ratio = values[n + k] / values[n];
            if (!any || ratio > mu[k]) {
                mu[k] = ratio;
                any = true;
            }
        }
        if (!any) mu[k] = k > 0 ? mu[k - 1] : Rat(1);
    }
    // suffix maxima make the table nonincreasing, which is what a
    // convergence-rate profile requires; dominating mu keeps it valid
    for (std::uint64_t k = n_max; k-- > 0;) mu[k] = std::max(mu[k], mu[k + 1]);
    return out;
}

std::function<Nat(const Rat&)> mu_rate_from_table(std::vector<Rat> mu) {
    return [mu = std::move(mu)](const Rat& delta) {
        if (delta <= 0) throw std::invalid_argument("mu rate: delta must be positive");
        const Rat cutoff = 1 + delta;
        for (std::size_t k = 0; k < mu.size(); ++k)
            if (mu[k] <= cutoff) return Nat(k);
        return Nat(mu.size());
    };
}

}  // namespace metarates
