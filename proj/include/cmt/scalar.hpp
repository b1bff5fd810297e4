#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace cmt {

/// Exact rational scalar. Expression templates are off so that the type
/// composes cleanly with Eigen's own expression templates.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Parses `p/q`, integers and finite decimals (`0.25`, `-1.5e-2`) exactly.
/// Throws Error(ParseError) on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long long numerator, long long denominator) {
  return Rational(numerator, denominator);
}

/// `p/q`, or `p` when the denominator is 1.
std::string to_string(const Rational& value);

/// `p/q (≈0.6667)`; reporting only.
std::string to_human(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }
inline double to_double(double value) { return value; }

inline Integer numerator_of(const Rational& value) { return boost::multiprecision::numerator(value); }
inline Integer denominator_of(const Rational& value) { return boost::multiprecision::denominator(value); }

/// Dimension and entry-wise equality with no tolerance.
template <class A, class B>
bool exactly_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace cmt
