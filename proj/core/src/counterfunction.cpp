#include "metarates/counterfunction.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace metarates {

namespace {
constexpr std::uint64_t kStarEnumCap = std::uint64_t{1} << 24;
constexpr std::uint64_t kMemoArgCap = std::uint64_t{1} << 20;

std::uint64_t to_index(const Nat& n, std::uint64_t cap, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + ": negative argument");
    if (n > cap)
        throw std::length_error(std::string(what) + ": argument " + n.str() +
                                " exceeds enumeration cap " + std::to_string(cap));
    return n.convert_to<std::uint64_t>();
}
}  // namespace

struct Counterfunction::Impl {
    std::string label;
    bool monotone = false;

    Impl(std::string lbl, bool mono) : label(std::move(lbl)), monotone(mono) {}
    virtual ~Impl() = default;
    virtual Nat eval(const Nat& n) const = 0;
    virtual std::optional<nlohmann::json> descriptor() const { return std::nullopt; }
};

namespace {

struct ConstImpl final : Counterfunction::Impl {
    Nat c;
    explicit ConstImpl(Nat v) : Impl("const:" + v.str(), true), c(std::move(v)) {}
    Nat eval(const Nat&) const override { return c; }
    std::optional<nlohmann::json> descriptor() const override {
        return nlohmann::json{{"preset", "const"}, {"c", c.str()}};
    }
};

struct AffineImpl final : Counterfunction::Impl {
    Nat a, b;
    AffineImpl(Nat a_, Nat b_)
        : Impl("affine:" + a_.str() + "," + b_.str(), true), a(std::move(a_)), b(std::move(b_)) {}
    Nat eval(const Nat& n) const override { return a * n + b; }
    std::optional<nlohmann::json> descriptor() const override {
        return nlohmann::json{{"preset", "affine"}, {"a", a.str()}, {"b", b.str()}};
    }
};

struct QuadraticImpl final : Counterfunction::Impl {
    QuadraticImpl() : Impl("quadratic", true) {}
    Nat eval(const Nat& n) const override { return n * n; }
    std::optional<nlohmann::json> descriptor() const override {
        return nlohmann::json{{"preset", "quadratic"}};
    }
};

struct TableImpl final : Counterfunction::Impl {
    std::vector<Nat> values;
    Counterfunction tail;  // applies for n >= values.size()

    TableImpl(std::vector<Nat> v, Counterfunction t)
        : Impl("table[" + std::to_string(v.size()) + "]+" + t.label(), false),
          values(std::move(v)),
          tail(std::move(t)) {}

    Nat eval(const Nat& n) const override {
        if (n < Nat(values.size())) return values[n.convert_to<std::size_t>()];
        return tail(n);
    }
    std::optional<nlohmann::json> descriptor() const override {
        auto td = tail.descriptor();
        if (!td) return std::nullopt;
        nlohmann::json vals = nlohmann::json::array();
        for (const Nat& v : values) vals.push_back(v.str());
        return nlohmann::json{{"preset", "table"}, {"values", vals}, {"tail", *td}};
    }
};

struct LambdaImpl final : Counterfunction::Impl {
    std::function<Nat(const Nat&)> fn;
    bool memoize;
    mutable std::mutex m;
    mutable std::unordered_map<std::uint64_t, Nat> memo;

    LambdaImpl(std::string lbl, std::function<Nat(const Nat&)> f, bool mono, bool memo_on)
        : Impl(std::move(lbl), mono), fn(std::move(f)), memoize(memo_on) {}

    Nat eval(const Nat& n) const override {
        if (memoize && n >= 0 && n <= kMemoArgCap) {
            const auto key = n.convert_to<std::uint64_t>();
            {
                std::lock_guard<std::mutex> lock(m);
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;
            }
            Nat v = fn(n);
            std::lock_guard<std::mutex> lock(m);
            return memo.emplace(key, std::move(v)).first->second;
        }
        return fn(n);
    }
};

// Star closure of a table: prefix maxima handle the explicit part, the
// monotone tail handles the rest, so evaluation stays O(1) at any argument.
struct TableStarImpl final : Counterfunction::Impl {
    std::vector<Nat> prefix_max;
    Nat table_max;
    Counterfunction tail;
    std::size_t len;

    TableStarImpl(const TableImpl& t)
        : Impl(t.label + "*", true), tail(t.tail), len(t.values.size()) {
        prefix_max.reserve(len);
        Nat run = 0;
        for (const Nat& v : t.values) {
            run = std::max(run, v);
            prefix_max.push_back(run);
        }
        table_max = run;
    }

    Nat eval(const Nat& n) const override {
        if (n < Nat(len)) {
            return std::max(n, prefix_max[n.convert_to<std::size_t>()]);
        }
        Nat best = std::max(n, table_max);
        return std::max(best, tail(n));  // tail monotone: sup over [len, n] is tail(n)
    }
};

// Star closure by enumeration (non-monotone source). Keeps an incremental
// prefix-maximum so repeated queries share work; confined behind a mutex.
struct StarEnumImpl final : Counterfunction::Impl {
    Counterfunction f;
    mutable std::mutex m;
    mutable std::vector<Nat> prefix;  // prefix[i] = max_{j<=i} f(j)

    explicit StarEnumImpl(Counterfunction src) : Impl(src.label() + "*", true), f(std::move(src)) {}

    Nat eval(const Nat& n) const override {
        const auto idx = to_index(n, kStarEnumCap, "star_closure");
        std::lock_guard<std::mutex> lock(m);
        while (prefix.size() <= idx) {
            Nat v = f(Nat(prefix.size()));
            if (!prefix.empty() && prefix.back() > v) v = prefix.back();
            prefix.push_back(std::move(v));
        }
        return std::max(n, prefix[idx]);
    }
};

struct MonotoneStarImpl final : Counterfunction::Impl {
    Counterfunction f;
    explicit MonotoneStarImpl(Counterfunction src)
        : Impl(src.label() + "*", true), f(std::move(src)) {}
    Nat eval(const Nat& n) const override { return std::max(n, f(n)); }
};

struct IterateImpl final : Counterfunction::Impl {
    Counterfunction f;
    Nat times;
    IterateImpl(Counterfunction src, Nat n)
        : Impl(src.label() + "^(" + n.str() + ")", src.monotone()),
          f(std::move(src)),
          times(std::move(n)) {}
    Nat eval(const Nat& x) const override {
        Nat cur = x;
        for (Nat i = 0; i < times; ++i) cur = f(cur);
        return cur;
    }
};

}  // namespace

Counterfunction::Counterfunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Nat Counterfunction::operator()(const Nat& n) const {
    if (n < 0) throw std::invalid_argument("counterfunction: negative argument");
    return impl_->eval(n);
}

bool Counterfunction::monotone() const noexcept { return impl_->monotone; }
const std::string& Counterfunction::label() const noexcept { return impl_->label; }
std::optional<nlohmann::json> Counterfunction::descriptor() const { return impl_->descriptor(); }

Counterfunction Counterfunction::constant(Nat c) {
    if (c < 0) throw std::invalid_argument("counterfunction const: negative value");
    return Counterfunction(std::make_shared<ConstImpl>(std::move(c)));
}

Counterfunction Counterfunction::identity() { return affine(1, 0); }

Counterfunction Counterfunction::affine(Nat a, Nat b) {
    if (a < 0 || b < 0) throw std::invalid_argument("counterfunction affine: negative coefficient");
    return Counterfunction(std::make_shared<AffineImpl>(std::move(a), std::move(b)));
}

Counterfunction Counterfunction::quadratic() {
    return Counterfunction(std::make_shared<QuadraticImpl>());
}

Counterfunction Counterfunction::table(std::vector<Nat> values, Counterfunction tail) {
    for (const Nat& v : values)
        if (v < 0) throw std::invalid_argument("counterfunction table: negative value");
    return Counterfunction(std::make_shared<TableImpl>(std::move(values), std::move(tail)));
}

Counterfunction Counterfunction::table(std::vector<Nat> values) {
    Nat last = values.empty() ? Nat(0) : values.back();
    return table(std::move(values), constant(std::move(last)));
}

Counterfunction Counterfunction::lambda(std::string label, std::function<Nat(const Nat&)> fn,
                                        bool monotone, bool memoize) {
    return Counterfunction(
        std::make_shared<LambdaImpl>(std::move(label), std::move(fn), monotone, memoize));
}

Counterfunction Counterfunction::from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse(j.get<std::string>());
    if (!j.is_object()) throw std::invalid_argument("counterfunction: expected object or shorthand");
    if (!j.contains("preset")) throw std::invalid_argument("counterfunction: missing 'preset'");
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "const") {
        require_keys(j, {"preset", "c"}, {"c"}, "counterfunction const");
        return constant(nat_from_json(j.at("c")));
    }
    if (preset == "affine") {
        require_keys(j, {"preset", "a", "b"}, {"a", "b"}, "counterfunction affine");
        return affine(nat_from_json(j.at("a")), nat_from_json(j.at("b")));
    }
    if (preset == "quadratic") {
        require_keys(j, {"preset"}, {}, "counterfunction quadratic");
        return quadratic();
    }
    if (preset == "table") {
        require_keys(j, {"preset", "values", "tail"}, {"values"}, "counterfunction table");
        std::vector<Nat> values;
        for (const auto& v : j.at("values")) values.push_back(nat_from_json(v));
        if (j.contains("tail")) return table(std::move(values), from_json(j.at("tail")));
        return table(std::move(values));
    }
    throw std::invalid_argument("counterfunction: unknown preset '" + preset + "'");
}

Counterfunction Counterfunction::parse(std::string_view text) {
    if (text == "quadratic") return quadratic();
    if (text == "identity" || text == "n" || text == "id") return identity();
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const auto head = text.substr(0, colon);
        const auto args = text.substr(colon + 1);
        if (head == "const") return constant(parse_nat(args));
        if (head == "affine") {
            const auto comma = args.find(',');
            if (comma == std::string_view::npos)
                throw std::invalid_argument("counterfunction: affine wants 'affine:a,b'");
            return affine(parse_nat(args.substr(0, comma)), parse_nat(args.substr(comma + 1)));
        }
    }
    throw std::invalid_argument("counterfunction: cannot parse '" + std::string(text) + "'");
}

Counterfunction star_closure(const Counterfunction& f) {
    if (f.monotone()) {
        return Counterfunction(std::make_shared<MonotoneStarImpl>(f));
    }
    if (const auto* t = dynamic_cast<const TableImpl*>(f.impl_.get()); t && t->tail.monotone()) {
        return Counterfunction(std::make_shared<TableStarImpl>(*t));
    }
    return Counterfunction(std::make_shared<StarEnumImpl>(f));
}

Counterfunction iterate(const Counterfunction& f, const Nat& n) {
    if (n < 0) throw std::invalid_argument("iterate: negative count");
    return Counterfunction(std::make_shared<IterateImpl>(f, n));
}

Nat iterate_apply(const Counterfunction& f, const Nat& n, Nat x0) {
    Nat cur = std::move(x0);
    for (Nat i = 0; i < n; ++i) cur = f(cur);
    return cur;
}

}  // namespace metarates
