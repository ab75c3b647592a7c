#ifndef BILLIARD_KNOTS_NUMERIC_HPP
#define BILLIARD_KNOTS_NUMERIC_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace bk {

namespace mp = boost::multiprecision;

/// Exact scalars for combinatorics, variable-precision binary floats for
/// everything that needs a square root.
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

inline constexpr unsigned kDefaultPrecisionBits = 128;

unsigned bits_to_digits10(unsigned bits);
unsigned digits10_to_bits(unsigned digits10);

/// Mantissa bits of newly created Real values.
unsigned precision_bits();

/// Sets the working precision of Real for its lifetime and restores the
/// previous one on exit. Not thread-safe: the precision is process-global.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

template <typename Scalar>
Scalar cross(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Mirror image of `d` across the hyperplane with unit normal `n`.
template <typename Scalar, int Dim>
Eigen::Matrix<Scalar, Dim, 1> reflect(const Eigen::Matrix<Scalar, Dim, 1>& d,
                                      const Eigen::Matrix<Scalar, Dim, 1>& n) {
  Scalar two(2);
  return d - n * (two * d.dot(n));
}

Real pi_real();
Real to_real(const Rational& q);
Vec2<Real> to_real(const Vec2<Rational>& v);
Vec2<double> to_double(const Vec2<Real>& v);
inline double to_double(const Real& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Greatest integer not above x.
Integer floor_integer(const Real& x);
Real frac(const Real& x);

/// "num/den", always with an explicit denominator.
std::string format_rational(const Rational& q);
/// Accepts "num/den", an integer, or a finite decimal such as "0.001".
Rational parse_rational(std::string_view text);

/// Scientific notation carrying every significant digit of the value.
std::string format_real(const Real& x);
Real parse_real(std::string_view text);

}  // namespace bk

#endif  // BILLIARD_KNOTS_NUMERIC_HPP
