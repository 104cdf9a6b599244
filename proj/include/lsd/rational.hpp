#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lsd {

// Exact arithmetic for all geometry and constraints.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// Serializes as "p/q" with q >= 1 (integers become "p/1").
std::string to_string(const Rational& value);

// Accepts "p/q" or a plain integer; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Fixed-precision decimal, presentation only.
std::string to_decimal(const Rational& value, int digits = 4);

double to_double(const Rational& value);

}  // namespace lsd
