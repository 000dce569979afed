#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "json.hpp"

namespace metarates {

// All rate arithmetic is exact: arbitrary-precision naturals and rationals.
// Rationals are kept in lowest terms with positive denominator by the
// backend; Nat is used as a nonnegative integer (ops below validate where
// a sign could sneak in through parsing). Expression templates are off so
// the types behave like plain values in std::min/max and friends.
using Nat = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                          boost::multiprecision::et_off>;

// Exact ceiling. Works for any sign, exact for arbitrary magnitudes.
Nat rat_ceil(const Rat& q);

// base^exp by repeated multiplication; exp is small in practice.
Rat rat_pow(const Rat& base, unsigned exp);

double to_double(const Rat& q);

// "num" or "num/den" rendering with decimal strings of arbitrary length.
std::string rat_str(const Rat& q);
std::string nat_str(const Nat& n);

// Accepts "123", "-4" or "num/den"; throws std::invalid_argument on junk
// or a zero denominator.
Rat parse_rational(std::string_view text);
// Accepts decimal digit strings only (no sign); arbitrary length.
Nat parse_nat(std::string_view text);

// Wire form used everywhere rationals appear in files:
//   {"num": "<decimal>", "den": "<decimal>"}
// A bare "num/den" string is also accepted on input.
nlohmann::json rat_to_json(const Rat& q);
Rat rat_from_json(const nlohmann::json& j);

nlohmann::json nat_to_json(const Nat& n);
Nat nat_from_json(const nlohmann::json& j);

// Strict-schema helper: throws std::invalid_argument naming the offender
// when `j` holds a key outside `allowed` or misses one listed in `required`.
void require_keys(const nlohmann::json& j,
                  std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required,
                  const std::string& where);

}  // namespace metarates
