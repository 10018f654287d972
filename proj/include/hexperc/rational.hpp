#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace hexperc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline BigInt pow2(unsigned e) {
  BigInt out = 1;
  out <<= e;
  return out;
}

double to_double(const Rational& r);

/// {"num": "...", "den": "...", "decimal": 0.984375}; integers are emitted as
/// JSON numbers when they fit in 64 bits, strings otherwise.
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

std::string to_string(const Rational& r);

}  // namespace hexperc
