/**
 * Exact rational scalars and the dense matrix aliases used throughout.
 *
 * Every matrix in the engine is an Eigen dense matrix over an exact field.
 * The default field is the rationals, backed by GMP through
 * Boost.Multiprecision (expression templates off, so Eigen expressions
 * evaluate cleanly).
 */

#ifndef ARRSTAB_RATIONAL_HPP
#define ARRSTAB_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace arrstab {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Mat<Rational>;

/// "p/q" in lowest terms with q > 0, or "p" when q = 1.
std::string to_string(const Rational& x);

/// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise or on q = 0.
Rational parse_rational(std::string_view text);

/// True when the rational has denominator 1.
inline bool is_integer(const Rational& x)
{
    return boost::multiprecision::denominator(x) == 1;
}

}  // namespace arrstab

#endif
