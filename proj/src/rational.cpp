#include "lsd/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace lsd {

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw std::invalid_argument("empty rational component");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("malformed rational: " + std::string(text));
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw std::invalid_argument("malformed rational: " + std::string(text));
      }
    }
    return boost::multiprecision::cpp_int(std::string(part));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_decimal(const Rational& value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, to_double(value));
  std::string out(buf);
  if (out == "-0" || out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, out[0] == '-' ? 1 : 0);
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace lsd
