#include "lg/oracle.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <mpfr.h>

namespace lg {

int default_digits()
{
    if (const char* env = std::getenv("LG_PRECISION_DIGITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 100000)
            return static_cast<int>(v);
    }
    return 50;
}

PrecisionScope::PrecisionScope(int digits)
    : saved_(BigFloat::default_precision()), working_(digits + kGuardDigits)
{
    if (digits < 1)
        throw std::invalid_argument("precision must be at least one digit");
    BigFloat::default_precision(static_cast<unsigned>(working_));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_); }

BigFloat to_bigfloat(const BigRational& q)
{
    BigFloat r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigFloat ln_gamma(const BigFloat& x, int digits)
{
    if (!(x > 0))
        throw std::invalid_argument("ln_gamma requires x > 0");
    PrecisionScope scope(digits);
    BigFloat r;
    int sign = 0;
    mpfr_lgamma(r.backend().data(), &sign, BigFloat(x).backend().data(), MPFR_RNDN);
    return r;
}

BigFloat bessel_I(const BigFloat& nu, const BigFloat& x, int digits)
{
    if (!(x > 0))
        throw std::invalid_argument("bessel_I requires x > 0");
    if (nu < 0)
        throw std::invalid_argument("bessel_I requires nu >= 0");
    PrecisionScope scope(digits);
    const BigFloat n(nu);
    const BigFloat h(x / 2);
    const BigFloat h2 = h * h;
    BigFloat term = exp(n * log(h) - ln_gamma(n + 1, digits + kGuardDigits));
    BigFloat sum = term;
    const BigFloat stop = pow(BigFloat(10), -(digits + 10));
    for (long k = 1;; ++k) {
        term *= h2 / (BigFloat(k) * (n + k));
        sum += term;
        // Terms rise until k ~ x/2, then decay geometrically.
        if (term < sum * stop && BigFloat(k) > h)
            break;
        if (k > 10000000)
            throw std::runtime_error("bessel_I series failed to converge");
    }
    return sum;
}

BigFloat bessel_K(const BigFloat& nu, const BigFloat& x, int digits)
{
    if (!(x > 0))
        throw std::invalid_argument("bessel_K requires x > 0");
    PrecisionScope scope(digits);
    const BigFloat n(abs(nu));
    const BigFloat xx(x);
    auto log_f = [&](const BigFloat& t) {
        // ln cosh(nu t) = nu t + log1p(e^{-2 nu t}) - ln 2
        return -xx * cosh(t) + n * t + log1p(exp(-2 * n * t)) - log(BigFloat(2));
    };
    const BigFloat t_peak = asinh(n / xx);
    const BigFloat log_peak = log_f(t_peak);
    const BigFloat drop = (digits + 15) * log(BigFloat(10));
    // Past the peak log_f is concave and decreasing: step out, then bisect.
    BigFloat lo = t_peak;
    BigFloat hi = t_peak + 1;
    while (log_f(hi) > log_peak - drop) {
        lo = hi;
        hi = t_peak + 2 * (hi - t_peak);
    }
    for (int i = 0; i < 60; ++i) {
        BigFloat mid = (lo + hi) / 2;
        if (log_f(mid) > log_peak - drop)
            lo = mid;
        else
            hi = mid;
    }
    const BigFloat T = hi;

    // The integrand is even in t, so the trapezoidal sum on [0, T] with a half
    // weight at t = 0 converges geometrically in the number of points.
    auto f = [&](const BigFloat& t) { return exp(log_f(t)); };
    std::size_t m = 64;
    BigFloat step = T / m;
    BigFloat sum = f(BigFloat(0)) / 2;
    for (std::size_t i = 1; i <= m; ++i)
        sum += f(step * i);
    BigFloat value = sum * step;
    const BigFloat tol = pow(BigFloat(10), -(digits + 5));
    for (int level = 0; level < 24; ++level) {
        BigFloat added = 0;
        for (std::size_t i = 0; i < m; ++i)
            added += f(step * (2 * i + 1) / 2);
        sum += added;
        m *= 2;
        step /= 2;
        const BigFloat next = sum * step;
        const BigFloat change = abs(next - value);
        value = next;
        if (change <= tol * value && level >= 2)
            return value;
    }
    throw std::runtime_error("bessel_K quadrature did not converge");
}

std::string to_decimal(const BigFloat& v, int digits)
{
    std::ostringstream os;
    os.precision(digits - 1 < 0 ? 0 : digits - 1);
    os << std::scientific << v;
    return os.str();
}

}  // namespace lg
