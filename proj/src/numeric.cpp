#include "mqsp/numeric.hpp"

#include <cctype>

namespace mqsp {

std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool is_integer_text(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  std::size_t i = from;
  if (s[i] == '-' || s[i] == '+') ++i;
  if (i >= to) return false;
  for (; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_text(text, 0, text.size()))
      throw std::invalid_argument("not a rational: '" + text + "'");
    return Rational(BigInt(text));
  }
  if (!is_integer_text(text, 0, slash) ||
      !is_integer_text(text, slash + 1, text.size()) ||
      text[slash + 1] == '-' || text[slash + 1] == '+')
    throw std::invalid_argument("not a rational: '" + text + "'");
  const BigInt num(text.substr(0, slash));
  const BigInt den(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(num, den);
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt sn = boost::multiprecision::sqrt(num);
  const BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace mqsp
