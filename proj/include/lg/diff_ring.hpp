#pragma once

// Differential-ring contract shared by the coefficient recurrences.
//
// A ring type R supports +, -, * and the free functions scale(R, BigRational),
// zero_like(R), one_like(R) and is_zero(R), found by argument-dependent lookup.
// The derivation is a separate first-class value so one ring type can carry
// several derivations (d/dp versus d/dxi = -p^2(1-p^2) d/dp, say).

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lg/rational_poly.hpp"

namespace lg {

template <class R>
concept DiffRing = std::copyable<R> && requires(const R a, const R b, const BigRational q) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { scale(a, q) } -> std::convertible_to<R>;
    { zero_like(a) } -> std::convertible_to<R>;
    { one_like(a) } -> std::convertible_to<R>;
    { is_zero(a) } -> std::convertible_to<bool>;
};

template <class R>
using Derivation = std::function<R(const R&)>;

/// Partial inverse of a derivation. Returns nullopt where the ring has no closed form.
template <class R>
using Antiderivative = std::function<std::optional<R>(const R&)>;

/// d/dx on polynomials in their own variable.
inline Derivation<RationalPoly> plain_derivation()
{
    return [](const RationalPoly& a) { return a.derivative(); };
}

/// weight(x) * d/dx, the chain-rule form of a change of independent variable.
inline Derivation<RationalPoly> weighted_derivation(RationalPoly weight)
{
    return [w = std::move(weight)](const RationalPoly& a) { return w * a.derivative(); };
}

/// Antiderivative with respect to x anchored to vanish at `anchor`.
inline Antiderivative<RationalPoly> anchored_antiderivative(BigRational anchor)
{
    return [x0 = std::move(anchor)](const RationalPoly& a) -> std::optional<RationalPoly> {
        RationalPoly prim = a.antiderivative();
        return prim - RationalPoly::constant(prim.eval(x0), a.var());
    };
}

/// Truncated Taylor jet at a point: c[k] = f^(k)(x0) / k!.
///
/// Products truncate to the shorter operand and differentiation drops one
/// term, so a jet of length L supports L-1 derivatives.
class Jet {
public:
    Jet() = default;
    Jet(double point, std::vector<double> taylor) : point_(point), c_(std::move(taylor)) {}

    static Jet constant(double point, double value, std::size_t length);
    /// The identity function x at x0.
    static Jet variable(double point, std::size_t length);
    /// Builds from derivative values f(x0), f'(x0), f''(x0), ...
    static Jet from_derivatives(double point, const std::vector<double>& derivs);
    /// exp(lambda * x) expanded at x0.
    static Jet exponential(double point, double lambda, std::size_t length);

    double point() const { return point_; }
    std::size_t length() const { return c_.size(); }
    const std::vector<double>& taylor() const { return c_; }
    double value() const { return c_.empty() ? 0.0 : c_[0]; }
    /// k-th derivative at the point.
    double derivative_value(std::size_t k) const;

    Jet derivative() const;

    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, double s);

private:
    double point_ = 0.0;
    std::vector<double> c_;
};

Jet scale(const Jet& a, const BigRational& q);
inline Jet zero_like(const Jet& a) { return Jet::constant(a.point(), 0.0, a.length()); }
inline Jet one_like(const Jet& a) { return Jet::constant(a.point(), 1.0, a.length()); }
/// Absolute tolerance 1e-12 on every retained Taylor coefficient.
bool is_zero(const Jet& a);

inline Derivation<Jet> jet_derivation()
{
    return [](const Jet& a) { return a.derivative(); };
}

static_assert(DiffRing<RationalPoly>);
static_assert(DiffRing<Jet>);

}  // namespace lg
