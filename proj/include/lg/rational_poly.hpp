#pragma once

// Exact big-rational arithmetic and univariate polynomials over Q.

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace lg {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Parses "num/den" or "num" (optionally signed). The result is canonical.
/// Throws std::invalid_argument on malformed input or a zero denominator.
BigRational parse_rational(std::string_view text);

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const BigRational& q);

double to_double(const BigRational& q);

/// Exact conversion of a finite binary64 value.
BigRational from_double(double x);

class RationalPoly {
public:
    /// Degree reported for the zero polynomial.
    static constexpr long kZeroDegree = std::numeric_limits<long>::min();

    RationalPoly() = default;
    explicit RationalPoly(std::string var) : var_(std::move(var)) {}
    RationalPoly(std::vector<BigRational> coeffs, std::string var = "p");

    static RationalPoly constant(const BigRational& c, std::string var = "p");
    static RationalPoly monomial(const BigRational& c, std::size_t power, std::string var = "p");
    static RationalPoly variable(std::string var = "p");

    const std::string& var() const { return var_; }
    const std::vector<BigRational>& coeffs() const { return coeffs_; }
    long degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of var^k; zero past the degree.
    BigRational coeff(std::size_t k) const;
    const BigRational& leading() const;

    RationalPoly operator-() const;
    RationalPoly& operator+=(const RationalPoly& rhs);
    RationalPoly& operator-=(const RationalPoly& rhs);
    RationalPoly& operator*=(const RationalPoly& rhs);
    RationalPoly& operator*=(const BigRational& c);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
    friend RationalPoly operator*(RationalPoly a, const BigRational& c) { return a *= c; }
    friend RationalPoly operator*(const BigRational& c, RationalPoly a) { return a *= c; }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b)
    {
        return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
    }

    RationalPoly derivative() const;
    /// Antiderivative with zero constant term.
    RationalPoly antiderivative() const;

    BigRational eval(const BigRational& x) const;
    double eval(double x) const;
    std::complex<double> eval(std::complex<double> x) const;

    /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
    std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& divisor) const;
    /// Quotient of an exact division; throws std::domain_error on a nonzero remainder.
    RationalPoly exact_div(const RationalPoly& divisor) const;

    /// Positive rescaling so the leading coefficient has absolute value 1.
    RationalPoly normalized_abs_leading() const;

    std::string to_string() const;

private:
    void canonicalize();
    void require_same_var(const RationalPoly& other) const;

    std::vector<BigRational> coeffs_;
    std::string var_ = "p";
};

RationalPoly gcd(RationalPoly a, RationalPoly b);
/// Square-free part P / gcd(P, P').
RationalPoly square_free_part(const RationalPoly& p);

void to_json(nlohmann::json& j, const RationalPoly& p);
void from_json(const nlohmann::json& j, RationalPoly& p);

// Differential-ring helpers used by the generic recurrences.
inline RationalPoly scale(const RationalPoly& a, const BigRational& c) { return a * c; }
inline RationalPoly zero_like(const RationalPoly& a) { return RationalPoly(a.var()); }
inline RationalPoly one_like(const RationalPoly& a) { return RationalPoly::constant(1, a.var()); }
inline bool is_zero(const RationalPoly& a) { return a.is_zero(); }

}  // namespace lg
