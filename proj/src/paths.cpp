#include "lg/paths.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lg {

Arc Arc::segment(Complex from, Complex to)
{
    Arc a;
    a.straight_ = true;
    a.seg_from_ = from;
    a.seg_to_ = to;
    a.point_ = [from, to](double tau) { return from + (to - from) * tau; };
    a.tangent_ = [from, to](double) { return to - from; };
    return a;
}

Arc Arc::ray_in(Complex direction, Complex to)
{
    Arc a;
    a.point_ = [direction, to](double tau) {
        if (tau <= 0.0)
            return Complex(direction.real() == 0 ? to.real() : direction.real() * HUGE_VAL,
                           direction.imag() == 0 ? to.imag() : direction.imag() * HUGE_VAL);
        return to + direction * ((1.0 - tau) / tau);
    };
    a.tangent_ = [direction](double tau) { return -direction / (tau * tau); };
    return a;
}

Arc Arc::ray_out(Complex from, Complex direction)
{
    Arc a;
    a.point_ = [from, direction](double tau) {
        if (tau >= 1.0)
            return Complex(direction.real() == 0 ? from.real() : direction.real() * HUGE_VAL,
                           direction.imag() == 0 ? from.imag() : direction.imag() * HUGE_VAL);
        return from + direction * (tau / (1.0 - tau));
    };
    a.tangent_ = [direction](double tau) { return direction / ((1.0 - tau) * (1.0 - tau)); };
    return a;
}

Arc Arc::custom(Map point, Map tangent)
{
    Arc a;
    a.point_ = std::move(point);
    a.tangent_ = std::move(tangent);
    return a;
}

Complex Arc::velocity(double tau) const
{
    if (tangent_)
        return tangent_(tau);
    const double h = 1e-6;
    const double lo = std::max(0.0, tau - h);
    const double hi = std::min(1.0, tau + h);
    return (point_(hi) - point_(lo)) / (hi - lo);
}

namespace {

double parse_coord(const nlohmann::json& v)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf")
            return HUGE_VAL;
        if (s == "-inf")
            return -HUGE_VAL;
    }
    throw std::invalid_argument("path coordinate must be a number or \"inf\"/\"-inf\"");
}

Complex parse_point(const nlohmann::json& v)
{
    if (!v.is_array() || v.size() != 2)
        throw std::invalid_argument("path point must be [re, im]");
    return {parse_coord(v[0]), parse_coord(v[1])};
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex infinite_direction(Complex z)
{
    auto part = [](double x) { return std::isinf(x) ? (x > 0 ? 1.0 : -1.0) : 0.0; };
    return {part(z.real()), part(z.imag())};
}

}  // namespace

PathSpec PathSpec::from_json(const nlohmann::json& j)
{
    PathSpec path;
    path.u = parse_point(j.at("u"));
    path.j = j.at("j").get<int>();
    if (path.j != 1 && path.j != 2)
        throw std::invalid_argument("path branch j must be 1 or 2");
    for (const auto& arc : j.at("arcs")) {
        const Complex from = parse_point(arc.at("from"));
        const Complex to = parse_point(arc.at("to"));
        if (!is_finite(from) && !is_finite(to))
            throw std::invalid_argument("arc with both endpoints at infinity");
        if (!is_finite(from))
            path.arcs.push_back(Arc::ray_in(infinite_direction(from), to));
        else if (!is_finite(to))
            path.arcs.push_back(Arc::ray_out(from, infinite_direction(to)));
        else
            path.arcs.push_back(Arc::segment(from, to));
    }
    if (path.arcs.empty())
        throw std::invalid_argument("path needs at least one arc");
    return path;
}

CertificationReport certify_progressive(const PathSpec& path, const CertifyOptions& opts)
{
    const std::size_t m = std::max<std::size_t>(opts.samples_per_arc, 2);
    const Complex su = (path.j == 1 ? -1.0 : 1.0) * path.u;
    auto level = [&](Complex t) {
        double g = (su * t).real();
        if (opts.e0)
            g -= opts.e0(t).real();
        return g;
    };
    auto fail = [](std::size_t arc, double tau, Complex t, std::string msg) {
        return CertificationReport{false, arc, tau, t, std::move(msg)};
    };

    std::optional<double> prev;
    std::optional<Complex> prev_end;
    for (std::size_t a = 0; a < path.arcs.size(); ++a) {
        const Arc& arc = path.arcs[a];
        if (prev_end) {
            const Complex start = arc.from();
            if (is_finite(*prev_end) && is_finite(start) &&
                std::abs(start - *prev_end) > 1e-9 * std::max(1.0, std::abs(start)))
                return fail(a, 0.0, start, "arc does not start where the previous one ends");
        }
        for (std::size_t k = 0; k < m; ++k) {
            const double tau = static_cast<double>(k) / static_cast<double>(m - 1);
            const Complex t = arc.at(tau);
            if (!is_finite(t))
                continue;
            const double g = level(t);
            if (!std::isfinite(g))
                continue;
            if (prev && g > *prev + opts.rel_tolerance * std::max(1.0, std::abs(*prev))) {
                std::ostringstream os;
                os << "Re((-1)^j u t) increases: " << *prev << " -> " << g;
                return fail(a, tau, t, os.str());
            }
            if (!opts.e0) {
                const Complex v = arc.velocity(tau);
                if (is_finite(v)) {
                    const double d = (su * v).real();
                    if (d > opts.rel_tolerance * std::abs(su * v))
                        return fail(a, tau, t, "tangential derivative of Re((-1)^j u t) is positive");
                }
            }
            prev = g;
        }
        prev_end = arc.to();
    }
    return {};
}

QuadratureResult integrate_abs_arc(const Arc& arc, const std::function<Complex(Complex)>& integrand,
                                   const QuadratureOptions& opts)
{
    using boost::math::quadrature::gauss_kronrod;
    auto g = [&](double tau) {
        const Complex v = arc.velocity(tau);
        if (v == Complex(0.0, 0.0))
            return Complex(0.0, 0.0);
        return integrand(arc.at(tau)) * std::abs(v);
    };
    struct Piece {
        double a, b, value, error;
        unsigned depth;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    // 7/15-point pair with the QUADPACK error estimate, which stays pessimistic
    // where |K - G| vanishes by accident (kinks of |f|).
    auto rule = [&](double a, double b, unsigned depth) {
        using GK = gauss_kronrod<double, 15>;
        const auto& x = GK::abscissa();
        const auto& wk = GK::weights();
        const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        // gv holds a, the nodes in increasing order, and b; fv the Kronrod layout.
        std::array<Complex, 17> gv{};
        std::array<double, 15> fv{};
        gv[8] = g(mid);
        fv[0] = std::abs(gv[8]);
        for (std::size_t i = 1; i < x.size(); ++i) {
            gv[8 - i] = g(mid - half * x[i]);
            gv[8 + i] = g(mid + half * x[i]);
            fv[2 * i - 1] = std::abs(gv[8 - i]);
            fv[2 * i] = std::abs(gv[8 + i]);
        }
        gv[0] = g(a);
        gv[16] = g(b);
        // |f| has a cusp wherever f crosses zero. A crossing next to an endpoint
        // can hide between the nodes and leave K and G in perfect agreement.
        double crossing = 0.0;
        for (std::size_t i = 0; i + 1 < gv.size(); ++i) {
            if (!is_finite(gv[i]) || !is_finite(gv[i + 1]))
                continue;
            if ((std::conj(gv[i]) * gv[i + 1]).real() < 0.0)
                crossing = std::max({crossing, std::abs(gv[i]), std::abs(gv[i + 1])});
        }
        double kron = fv[0] * wk[0];
        double gauss = fv[0] * wg[0];
        for (std::size_t i = 1; i < x.size(); ++i) {
            kron += (fv[2 * i - 1] + fv[2 * i]) * wk[i];
            if (i % 2 == 0)
                gauss += (fv[2 * i - 1] + fv[2 * i]) * wg[i / 2];
        }
        const double mean = 0.5 * kron;
        double asc = std::abs(fv[0] - mean) * wk[0];
        for (std::size_t i = 1; i < x.size(); ++i)
            asc += (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean)) * wk[i];
        asc *= half;
        double err = std::abs((kron - gauss) * half);
        if (asc != 0.0 && err != 0.0)
            err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
        const double value = kron * half;
        err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
        err = std::max(err, crossing * (b - a));
        return Piece{a, b, value, err, depth};
    };

    // Recursive tolerance splitting chases rounding noise at the kinks of |f|;
    // a global error budget does not.
    std::priority_queue<Piece> heap;
    heap.push(rule(0.0, 1.0, 0));
    double value = heap.top().value;
    double error = heap.top().error;
    std::size_t intervals = 1;
    auto result = [&] { return QuadratureResult{value, error, intervals}; };
    auto target = [&] { return opts.rel_tolerance * std::abs(value); };
    while (error > target() && error > 1e-300) {
        if (!std::isfinite(value) || !std::isfinite(error))
            throw QuadratureError("integral of |f| diverges or is not finite on the arc", result());
        const Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= opts.max_depth || intervals >= opts.max_intervals || !(worst.a < mid && mid < worst.b)) {
            std::ostringstream os;
            os << "adaptive quadrature did not reach relative tolerance " << opts.rel_tolerance << " (estimate "
               << error << " on value " << value << ")";
            throw QuadratureError(os.str(), result());
        }
        heap.pop();
        const Piece left = rule(worst.a, mid, worst.depth + 1);
        const Piece right = rule(mid, worst.b, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
        // Re-sum now and then so the running totals do not drift.
        if (intervals % 256 == 0) {
            auto copy = heap;
            value = error = 0.0;
            while (!copy.empty()) {
                value += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    if (!std::isfinite(value) || !std::isfinite(error))
        throw QuadratureError("integral of |f| diverges or is not finite on the arc", result());
    return result();
}

QuadratureResult integrate_abs(const PathSpec& path, const std::function<Complex(Complex)>& integrand,
                               const QuadratureOptions& opts)
{
    QuadratureResult total;
    for (const auto& arc : path.arcs) {
        QuadratureResult r;
        try {
            r = integrate_abs_arc(arc, integrand, opts);
        } catch (const QuadratureError& e) {
            QuadratureResult partial = total;
            partial.value += e.partial().value;
            partial.abs_error_estimate += e.partial().abs_error_estimate;
            partial.subdivisions += e.partial().subdivisions;
            throw QuadratureError(e.what(), partial);
        }
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.subdivisions += r.subdivisions;
    }
    return total;
}

// ---------------------------------------------------------------------------

SturmSequence::SturmSequence(const RationalPoly& p)
{
    RationalPoly base = square_free_part(p).normalized_abs_leading();
    seq_.push_back(base);
    if (base.degree() <= 0)
        return;
    seq_.push_back(base.derivative().normalized_abs_leading());
    while (seq_.back().degree() > 0) {
        RationalPoly r = seq_[seq_.size() - 2].divmod(seq_.back()).second;
        if (r.is_zero())
            break;
        seq_.push_back((-r).normalized_abs_leading());
    }
}

int SturmSequence::sign_changes(const BigRational& x) const
{
    int changes = 0;
    int last = 0;
    for (const auto& q : seq_) {
        const int s = sgn(q.eval(x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::count_roots(const BigRational& a, const BigRational& b) const
{
    if (seq_.front().degree() <= 0)
        return 0;
    return sign_changes(a) - sign_changes(b);
}

BigRational default_root_width()
{
    BigRational w(1);
    mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), 128);
    return w;
}

namespace {

BigRational midpoint(const BigRational& a, const BigRational& b)
{
    BigRational m = a + b;
    mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), 1);
    return m;
}

// Root of a square-free polynomial known to be the only one in (lo, hi].
BigRational refine(const RationalPoly& p, BigRational lo, BigRational hi, const BigRational& width)
{
    // Bracket on the sign at hi: lo may itself be a root (excluded by the count).
    const int s_hi = sgn(p.eval(hi));
    if (s_hi == 0)
        return hi;
    while (hi - lo > width) {
        BigRational mid = midpoint(lo, hi);
        const int s = sgn(p.eval(mid));
        if (s == 0)
            return mid;
        if (s == s_hi)
            hi = std::move(mid);
        else
            lo = std::move(mid);
    }
    return midpoint(lo, hi);
}

}  // namespace

std::vector<BigRational> isolate_real_roots(const RationalPoly& p, const BigRational& a, const BigRational& b,
                                            const BigRational& width)
{
    std::vector<BigRational> roots;
    if (p.is_zero() || p.degree() <= 0 || !(a < b))
        return roots;
    const SturmSequence sturm(p);
    const RationalPoly& base = sturm.base();

    struct Interval {
        BigRational lo, hi;
        int count;
    };
    std::vector<Interval> stack{{a, b, sturm.count_roots(a, b)}};
    while (!stack.empty()) {
        Interval iv = std::move(stack.back());
        stack.pop_back();
        if (iv.count == 0)
            continue;
        if (iv.count == 1) {
            BigRational r = refine(base, iv.lo, iv.hi, width);
            if (r < b)
                roots.push_back(std::move(r));
            continue;
        }
        BigRational mid = midpoint(iv.lo, iv.hi);
        const int left = sturm.count_roots(iv.lo, mid);
        stack.push_back({mid, iv.hi, iv.count - left});
        stack.push_back({iv.lo, std::move(mid), left});
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

BigRational sum_abs_pieces(const RationalPoly& prim, const std::vector<BigRational>& roots, const BigRational& a,
                           const BigRational& b)
{
    BigRational total = 0;
    BigRational ax = prim.eval(a);
    for (const auto& r : roots) {
        if (!(r > a && r < b))
            continue;
        BigRational ar = prim.eval(r);
        total += abs(ar - ax);
        ax = std::move(ar);
    }
    total += abs(prim.eval(b) - ax);
    return total;
}

}  // namespace

BigRational integrate_abs_poly_exact(const RationalPoly& poly, const BigRational& a, const BigRational& b)
{
    if (poly.is_zero() || a == b)
        return 0;
    const BigRational lo = a < b ? a : b;
    const BigRational hi = a < b ? b : a;
    const auto roots = isolate_real_roots(poly, lo, hi, default_root_width());
    return sum_abs_pieces(poly.antiderivative(), roots, lo, hi);
}

AbsPolyIntegrator::AbsPolyIntegrator(RationalPoly poly, BigRational lo, BigRational hi)
    : poly_(std::move(poly)), prim_(poly_.antiderivative()), lo_(std::move(lo)), hi_(std::move(hi))
{
    if (hi_ < lo_)
        std::swap(lo_, hi_);
    roots_ = isolate_real_roots(poly_, lo_, hi_, default_root_width());
}

BigRational AbsPolyIntegrator::integrate(const BigRational& a, const BigRational& b) const
{
    if (poly_.is_zero() || a == b)
        return 0;
    const BigRational& x = a < b ? a : b;
    const BigRational& y = a < b ? b : a;
    if (x < lo_ || y > hi_)
        throw std::out_of_range("AbsPolyIntegrator: interval outside the isolated range");
    return sum_abs_pieces(prim_, roots_, x, y);
}

double AbsPolyIntegrator::integrate(double a, double b) const
{
    return to_double(integrate(from_double(a), from_double(b)));
}

BigRational exact_max_abs(const RationalPoly& poly, const BigRational& a, const BigRational& b)
{
    const BigRational lo = a < b ? a : b;
    const BigRational hi = a < b ? b : a;
    BigRational best = std::max(abs(poly.eval(lo)), abs(poly.eval(hi)));
    for (const auto& r : isolate_real_roots(poly.derivative(), lo, hi, default_root_width()))
        best = std::max(best, BigRational(abs(poly.eval(r))));
    return best;
}

}  // namespace lg
