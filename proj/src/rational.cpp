#include "hexperc/rational.hpp"

#include <limits>

#include "hexperc/errors.hpp"

namespace hexperc {

namespace {

nlohmann::json int_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

BigInt int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw ParameterError("fraction component must be an integer or a decimal string");
}

}  // namespace

double to_double(const Rational& r) { return r.convert_to<double>(); }

nlohmann::json rational_to_json(const Rational& r) {
  return {{"num", int_to_json(numerator(r))}, {"den", int_to_json(denominator(r))}, {"decimal", to_double(r)}};
}

Rational rational_from_json(const nlohmann::json& j) {
  const BigInt den = int_from_json(j.at("den"));
  if (den == 0) throw ParameterError("zero denominator");
  return Rational(int_from_json(j.at("num")), den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace hexperc
