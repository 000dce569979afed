#include "metarates/sequence.hpp"

#include <stdexcept>
#include <utility>

namespace metarates {

struct SequenceSource::Impl {
    std::string label;
    bool exact = true;
    std::uint64_t limit = kUnbounded;
    nlohmann::json descriptor;

    std::function<Rat(std::uint64_t)> exact_fn;  // when exact
    std::function<double(std::uint64_t)> float_fn;

    Rat eval_exact(std::uint64_t n) const {
        Rat v = exact_fn(n);
        if (v < 0) throw std::runtime_error("sequence '" + label + "': negative value at " +
                                            std::to_string(n));
        return v;
    }
};

SequenceSource::SequenceSource(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

bool SequenceSource::exact() const noexcept { return impl_->exact; }

double SequenceSource::at(std::uint64_t n) const {
    if (n > impl_->limit)
        throw std::length_error("sequence '" + impl_->label + "': index " + std::to_string(n) +
                                " exceeds limit");
    if (impl_->exact) return to_double(impl_->eval_exact(n));
    return impl_->float_fn(n);
}

Rat SequenceSource::at_exact(std::uint64_t n) const {
    if (!impl_->exact)
        throw std::logic_error("sequence '" + impl_->label + "': no exact values");
    if (n > impl_->limit)
        throw std::length_error("sequence '" + impl_->label + "': index " + std::to_string(n) +
                                " exceeds limit");
    return impl_->eval_exact(n);
}

std::uint64_t SequenceSource::limit() const noexcept { return impl_->limit; }
const std::string& SequenceSource::label() const noexcept { return impl_->label; }
nlohmann::json SequenceSource::descriptor() const { return impl_->descriptor; }

SequenceSource SequenceSource::table(std::vector<Rat> values, std::string label) {
    if (values.empty()) throw std::invalid_argument("sequence table: empty");
    for (const Rat& v : values)
        if (v < 0) throw std::invalid_argument("sequence table: negative value");
    auto impl = std::make_shared<Impl>();
    impl->label = std::move(label);
    nlohmann::json vals = nlohmann::json::array();
    for (const Rat& v : values) vals.push_back(rat_to_json(v));
    impl->descriptor = nlohmann::json{{"kind", "table"}, {"values", vals}};
    impl->exact_fn = [values = std::move(values)](std::uint64_t n) {
        return n < values.size() ? values[n] : values.back();
    };
    return SequenceSource(std::move(impl));
}

SequenceSource SequenceSource::harmonic(Rat base, Rat scale) {
    if (base < 0 || scale < 0) throw std::invalid_argument("sequence harmonic: negative parameter");
    auto impl = std::make_shared<Impl>();
    impl->label = "harmonic(" + rat_str(base) + "+" + rat_str(scale) + "/(n+1))";
    impl->descriptor =
        nlohmann::json{{"kind", "harmonic"}, {"base", rat_to_json(base)}, {"scale", rat_to_json(scale)}};
    impl->exact_fn = [base, scale](std::uint64_t n) { return base + scale / Rat(Nat(n) + 1); };
    return SequenceSource(std::move(impl));
}

SequenceSource SequenceSource::oscillating(Rat base, Rat amp, Rat odd_boost) {
    if (base <= 0 || amp < 0 || odd_boost < 0)
        throw std::invalid_argument("sequence oscillating: bad parameters");
    auto impl = std::make_shared<Impl>();
    impl->label = "oscillating(" + rat_str(base) + "," + rat_str(amp) + "," + rat_str(odd_boost) + ")";
    impl->descriptor = nlohmann::json{{"kind", "oscillating"},
                                      {"base", rat_to_json(base)},
                                      {"amp", rat_to_json(amp)},
                                      {"odd_boost", rat_to_json(odd_boost)}};
    impl->exact_fn = [base, amp, odd_boost](std::uint64_t n) {
        Rat bump = amp;
        if (n % 2 == 1) bump += odd_boost;
        return base * (1 + bump / Rat(Nat(n) + 1));
    };
    return SequenceSource(std::move(impl));
}

SequenceSource SequenceSource::head_tail(std::vector<Rat> head, Rat base, Rat scale) {
    for (const Rat& v : head)
        if (v < 0) throw std::invalid_argument("sequence head_tail: negative head value");
    if (base < 0 || scale < 0) throw std::invalid_argument("sequence head_tail: negative parameter");
    auto impl = std::make_shared<Impl>();
    impl->label = "head_tail[" + std::to_string(head.size()) + "]";
    nlohmann::json hd = nlohmann::json::array();
    for (const Rat& v : head) hd.push_back(rat_to_json(v));
    impl->descriptor = nlohmann::json{{"kind", "head_tail"},
                                      {"head", hd},
                                      {"base", rat_to_json(base)},
                                      {"scale", rat_to_json(scale)}};
    const std::uint64_t len = head.size();
    impl->exact_fn = [head = std::move(head), base, scale, len](std::uint64_t n) {
        if (n < len) return head[n];
        return base + scale / Rat(Nat(n - len) + 1);
    };
    return SequenceSource(std::move(impl));
}

SequenceSource SequenceSource::orbit_distance(std::shared_ptr<PicardOrbit> orbit,
                                              std::vector<Rat> q) {
    if (!orbit) throw std::invalid_argument("sequence orbit_distance: null orbit");
    if (static_cast<int>(q.size()) != orbit->scenario().space.dim)
        throw std::invalid_argument("sequence orbit_distance: q dimension mismatch");
    auto impl = std::make_shared<Impl>();
    impl->label = "orbit-distance(" + orbit->scenario().map.label() + ")";
    impl->exact = false;
    impl->limit = orbit->cap();
    nlohmann::json qj = nlohmann::json::array();
    for (const Rat& v : q) qj.push_back(rat_to_json(v));
    impl->descriptor = nlohmann::json{{"kind", "orbit_distance"},
                                      {"scenario", orbit->scenario().to_json()},
                                      {"q", qj}};
    Point qp(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) qp[i] = to_double(q[i]);
    impl->float_fn = [orbit = std::move(orbit), qp = std::move(qp)](std::uint64_t n) {
        return orbit->distance_to(n, qp);
    };
    return SequenceSource(std::move(impl));
}

SequenceSource SequenceSource::lambda_exact(std::string label,
                                            std::function<Rat(std::uint64_t)> fn) {
    auto impl = std::make_shared<Impl>();
    impl->label = std::move(label);
    impl->exact_fn = std::move(fn);
    return SequenceSource(std::move(impl));
}

SequenceSource SequenceSource::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("sequence: expected {kind,...}");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "table") {
        require_keys(j, {"kind", "values"}, {"values"}, "sequence table");
        std::vector<Rat> values;
        for (const auto& v : j.at("values")) values.push_back(rat_from_json(v));
        return table(std::move(values));
    }
    if (kind == "harmonic") {
        require_keys(j, {"kind", "base", "scale"}, {"base", "scale"}, "sequence harmonic");
        return harmonic(rat_from_json(j.at("base")), rat_from_json(j.at("scale")));
    }
    if (kind == "oscillating") {
        require_keys(j, {"kind", "base", "amp", "odd_boost"}, {"base", "amp", "odd_boost"},
                     "sequence oscillating");
        return oscillating(rat_from_json(j.at("base")), rat_from_json(j.at("amp")),
                           rat_from_json(j.at("odd_boost")));
    }
    if (kind == "head_tail") {
        require_keys(j, {"kind", "head", "base", "scale"}, {"head", "base", "scale"},
                     "sequence head_tail");
        std::vector<Rat> head;
        for (const auto& v : j.at("head")) head.push_back(rat_from_json(v));
        return head_tail(std::move(head), rat_from_json(j.at("base")), rat_from_json(j.at("scale")));
    }
    throw std::invalid_argument("sequence: unknown kind '" + kind + "'");
}

}  // namespace metarates
