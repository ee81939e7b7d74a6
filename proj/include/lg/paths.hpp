#pragma once

// Progressive integration paths and integrals of |w(t) dt| along them.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lg/rational_poly.hpp"

namespace lg {

using Complex = std::complex<double>;

/// One smooth piece of a path, parameterized over tau in [0, 1].
///
/// Straight segments are the default. An endpoint with an infinite real or
/// imaginary part makes the arc a ray: tau in (0, 1] is mapped to
/// finite_end + direction * (1 - tau) / tau (or the mirror image), so the
/// integration variable stays on a bounded interval.
class Arc {
public:
    using Map = std::function<Complex(double)>;

    static Arc segment(Complex from, Complex to);
    /// Ray arriving at `to` from infinity along `direction` (pointing away from `to`).
    static Arc ray_in(Complex direction, Complex to);
    /// Ray leaving `from` toward infinity along `direction`.
    static Arc ray_out(Complex from, Complex direction);
    /// Caller-supplied parameterization; the tangent is differentiated numerically if absent.
    static Arc custom(Map point, Map tangent = {});

    Complex at(double tau) const { return point_(tau); }
    Complex velocity(double tau) const;
    Complex from() const { return at(0.0); }
    Complex to() const { return at(1.0); }
    bool is_straight() const { return straight_; }

private:
    Map point_;
    Map tangent_;
    bool straight_ = false;
    Complex seg_from_{}, seg_to_{};
};

/// A chain of arcs traversed in order, for parameter u and branch j (1 or 2).
struct PathSpec {
    Complex u{1.0, 0.0};
    int j = 1;
    std::vector<Arc> arcs;

    /// {"u": [re, im], "j": 1|2, "arcs": [{"from": [re, im], "to": [re, im]}, ...]}.
    /// Non-finite coordinates may be written as the strings "inf" / "-inf".
    static PathSpec from_json(const nlohmann::json& j);
};

struct CertifyOptions {
    std::size_t samples_per_arc = 1024;
    /// Optional E_0(t); the certified quantity becomes Re((-1)^j u t - E_0(t)).
    std::function<Complex(Complex)> e0;
    /// Allowed increase between consecutive samples, relative to the local scale.
    double rel_tolerance = 1e-12;
};

struct CertificationReport {
    bool ok = true;
    std::size_t arc = 0;
    double tau = 0.0;
    Complex point{};
    std::string message;
};

/// Sampled check that Re((-1)^j u t) (minus Re E_0 when given) is nonincreasing
/// along the path, plus the sign of its tangential derivative at every sample.
/// A guard, not a proof: features between samples can be missed.
CertificationReport certify_progressive(const PathSpec& path, const CertifyOptions& opts = {});

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t subdivisions = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial)
    {
    }
    const QuadratureResult& partial() const { return partial_; }

private:
    QuadratureResult partial_;
};

struct QuadratureOptions {
    double rel_tolerance = 1e-10;
    /// Bisection depth limit for any single interval.
    unsigned max_depth = 60;
    /// Limit on the number of intervals per arc.
    std::size_t max_intervals = 5000;
};

/// Integral of |f(t)| |dt| over the path by globally adaptive Gauss-Kronrod
/// (7/15) on each arc: the interval with the largest error estimate is bisected
/// until the summed estimate meets the tolerance.
/// Throws QuadratureError when the error estimate misses the tolerance.
QuadratureResult integrate_abs(const PathSpec& path, const std::function<Complex(Complex)>& integrand,
                               const QuadratureOptions& opts = {});

/// Integral of |f(t)| |dt| over a single arc.
QuadratureResult integrate_abs_arc(const Arc& arc, const std::function<Complex(Complex)>& integrand,
                                   const QuadratureOptions& opts = {});

/// Sturm sequence of the square-free part of a polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const RationalPoly& p);

    /// Number of sign changes at x (zeros skipped).
    int sign_changes(const BigRational& x) const;
    /// Number of distinct real roots in (a, b].
    int count_roots(const BigRational& a, const BigRational& b) const;
    const RationalPoly& base() const { return seq_.front(); }

private:
    std::vector<RationalPoly> seq_;
};

/// Distinct real roots in the open interval (a, b), ascending, each within
/// `width` of the true root (exact when the root is a dyadic bisection point).
std::vector<BigRational> isolate_real_roots(const RationalPoly& p, const BigRational& a, const BigRational& b,
                                            const BigRational& width);

/// Default refinement width 2^-128.
BigRational default_root_width();

/// Integral of |poly(q)| dq over [a, b] (a > b allowed; the result is then the
/// same nonnegative value). Pieces between sign changes are integrated exactly;
/// root locations carry the 2^-128 refinement, so the error is O(2^-256)
/// at simple roots.
BigRational integrate_abs_poly_exact(const RationalPoly& poly, const BigRational& a, const BigRational& b);

/// integrate_abs_poly_exact with the root isolation done once on [lo, hi] and
/// reused for every sub-interval query.
class AbsPolyIntegrator {
public:
    AbsPolyIntegrator(RationalPoly poly, BigRational lo = 0, BigRational hi = 1);

    /// Integral of |poly| over [a, b], with a, b inside [lo, hi] (either order).
    BigRational integrate(const BigRational& a, const BigRational& b) const;
    double integrate(double a, double b) const;
    const RationalPoly& poly() const { return poly_; }
    const std::vector<BigRational>& roots() const { return roots_; }

private:
    RationalPoly poly_;
    RationalPoly prim_;
    BigRational lo_, hi_;
    std::vector<BigRational> roots_;
};

/// max |poly| over [a, b], via the roots of the derivative.
BigRational exact_max_abs(const RationalPoly& poly, const BigRational& a, const BigRational& b);

}  // namespace lg
