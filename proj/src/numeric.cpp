#include "billiard_knots/numeric.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bk {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

unsigned digits10_to_bits(unsigned digits10) {
  return static_cast<unsigned>(std::ceil(digits10 / 0.30102999566398120));
}

unsigned precision_bits() { return digits10_to_bits(Real::default_precision()); }

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  if (bits < 24) throw std::invalid_argument("precision must be at least 24 bits");
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Real pi_real() {
  Real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  return pi;
}

Real to_real(const Rational& q) { return Real(q); }

Vec2<Real> to_real(const Vec2<Rational>& v) { return {Real(v.x()), Real(v.y())}; }

Vec2<double> to_double(const Vec2<Real>& v) { return {to_double(v.x()), to_double(v.y())}; }

Integer floor_integer(const Real& x) {
  Real f = mp::floor(x);
  Integer out;
  mpfr_get_z(out.backend().data(), f.backend().data(), MPFR_RNDD);
  return out;
}

Real frac(const Real& x) { return x - mp::floor(x); }

std::string format_rational(const Rational& q) {
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Integer num(s.substr(0, slash));
      Integer den(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Integer(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t decimals = s.size() - dot - 1;
    Integer den(1);
    for (std::size_t i = 0; i < decimals; ++i) den *= 10;
    if (digits == "-" || digits.empty()) throw std::invalid_argument("bad decimal");
    return Rational(Integer(digits), den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

std::string format_real(const Real& x) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(static_cast<int>(x.precision()) + 2) << x;
  return out.str();
}

Real parse_real(std::string_view text) {
  try {
    return Real(std::string(text));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed real '" + std::string(text) + "'");
  }
}

}  // namespace bk
