#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace loadbal {

/// Exact rational number. Every load, bound and grid value in the library is
/// one of these; no floating point participates in any decision.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "a", "-a" or "a/b" (b >= 1). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical text form: "a" for integers, "a/b" otherwise (lowest terms).
std::string to_string(const Rational& value);

BigInt floor_div(const Rational& value);
BigInt ceil_div(const Rational& value);

/// Converts to int64 or throws std::overflow_error.
std::int64_t to_int64(const BigInt& value);

}  // namespace loadbal
