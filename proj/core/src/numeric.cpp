#include "metarates/numeric.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace metarates {

Nat rat_ceil(const Rat& q) {
    Nat num = numerator(q);
    const Nat den = denominator(q);  // > 0 by canonical form
    if (num >= 0) {
        return (num + den - 1) / den;
    }
    return -((-num) / den);
}

Rat rat_pow(const Rat& base, unsigned exp) {
    Rat out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

double to_double(const Rat& q) { return q.convert_to<double>(); }

std::string nat_str(const Nat& n) { return n.str(); }

std::string rat_str(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

Nat int_from_digits(std::string_view text, const std::string& where) {
    if (text.empty()) throw std::invalid_argument(where + ": empty number");
    bool neg = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) throw std::invalid_argument(where + ": no digits in '" + std::string(text) + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9')
            throw std::invalid_argument(where + ": bad digit in '" + std::string(text) + "'");
    }
    Nat value(std::string(text.substr(i)));
    return neg ? Nat(-value) : value;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rat(int_from_digits(text, "rational"));
    }
    Nat num = int_from_digits(text.substr(0, slash), "rational numerator");
    Nat den = int_from_digits(text.substr(slash + 1), "rational denominator");
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rat(num, den);
}

Nat parse_nat(std::string_view text) {
    Nat v = int_from_digits(text, "natural");
    if (v < 0) throw std::invalid_argument("natural: negative value '" + std::string(text) + "'");
    return v;
}

nlohmann::json rat_to_json(const Rat& q) {
    return nlohmann::json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(Nat(j.get<long long>()));
    if (!j.is_object()) throw std::invalid_argument("rational: expected {num,den} or \"num/den\"");
    require_keys(j, {"num", "den"}, {"num", "den"}, "rational");
    Nat num = int_from_digits(j.at("num").get<std::string>(), "rational num");
    Nat den = int_from_digits(j.at("den").get<std::string>(), "rational den");
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rat(num, den);
}

nlohmann::json nat_to_json(const Nat& n) { return n.str(); }

Nat nat_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_nat(j.get<std::string>());
    if (j.is_number_unsigned()) return Nat(j.get<unsigned long long>());
    if (j.is_number_integer()) {
        const long long v = j.get<long long>();
        if (v < 0) throw std::invalid_argument("natural: negative value");
        return Nat(v);
    }
    throw std::invalid_argument("natural: expected decimal string or integer");
}

void require_keys(const nlohmann::json& j,
                  std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required,
                  const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : j.items()) {
        if (!ok.count(item.key()))
            throw std::invalid_argument(where + ": unknown key '" + item.key() + "'");
    }
    for (const char* key : required) {
        if (!j.contains(key))
            throw std::invalid_argument(where + ": missing key '" + std::string(key) + "'");
    }
}

}  // namespace metarates
