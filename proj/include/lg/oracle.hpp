#pragma once

// Arbitrary-precision reference values: I_nu(x), K_nu(x), ln Gamma(x).

#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "lg/rational_poly.hpp"

namespace lg {

using BigFloat = boost::multiprecision::mpfr_float;

/// Guard digits carried on top of the requested precision.
constexpr int kGuardDigits = 15;

/// 50, or the value of LG_PRECISION_DIGITS when set to a positive integer.
int default_digits();

/// Sets the working precision to exactly `digits` + guard for its lifetime and
/// restores the previous default afterwards.
class PrecisionScope {
public:
    explicit PrecisionScope(int digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    int working_digits() const { return working_; }

private:
    unsigned saved_;
    int working_;
};

/// Exact conversion of a rational into the current working precision.
BigFloat to_bigfloat(const BigRational& q);

/// sum_k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)), summed until the term falls below
/// 10^-(digits+10) of the partial sum. Throws std::invalid_argument unless x > 0 and nu >= 0.
BigFloat bessel_I(const BigFloat& nu, const BigFloat& x, int digits);

/// int_0^inf e^{-x cosh t} cosh(nu t) dt by the trapezoidal rule with step
/// halving, truncated where the integrand drops below 10^-(digits+15) of its peak.
BigFloat bessel_K(const BigFloat& nu, const BigFloat& x, int digits);

BigFloat ln_gamma(const BigFloat& x, int digits);

/// Scientific decimal string with `digits` significant digits.
std::string to_decimal(const BigFloat& v, int digits);

}  // namespace lg
