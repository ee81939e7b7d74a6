#include "lg/nonhomog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

namespace lg {

Complex eval_G_expansion(const std::vector<Complex>& G_at_xi, Complex u, int n)
{
    if (n < 0 || n > static_cast<int>(G_at_xi.size()))
        throw std::out_of_range("eval_G_expansion: not enough G values");
    const Complex y = 1.0 / (u * u);
    Complex acc = 0.0;
    Complex yp = y;
    for (int s = 0; s < n; ++s) {
        acc += G_at_xi[static_cast<std::size_t>(s)] * yp;
        yp *= y;
    }
    return acc;
}

double value_at(const Jet& a, double xi)
{
    if (a.point() != xi)
        throw std::invalid_argument("jet evaluated away from its expansion point");
    return a.value();
}

GEvaluator poly_G_evaluator(const NonhomogModel<RationalPoly>& model)
{
    std::vector<RationalPoly> G = model.G;
    std::vector<RationalPoly> Gp;
    for (const auto& g : G)
        Gp.push_back(model.D(g));
    GEvaluator ev;
    ev.order = model.order();
    ev.G = [G](int s, Complex t) { return G.at(static_cast<std::size_t>(s)).eval(t); };
    ev.G_prime = [Gp](int s, Complex t) { return Gp.at(static_cast<std::size_t>(s)).eval(t); };
    return ev;
}

GEvaluator jet_G_evaluator(std::function<Jet(double, std::size_t)> psi_jet,
                           std::function<Jet(double, std::size_t)> varpi_jet, int N)
{
    if (N < 0)
        throw std::invalid_argument("jet_G_evaluator: N >= 0 required");
    // Each step consumes two derivatives; keep one more for G_N'.
    const std::size_t len = static_cast<std::size_t>(2 * N + 2);
    auto sequence = [psi_jet, varpi_jet, len, N](Complex t) {
        if (t.imag() != 0.0)
            throw std::invalid_argument("jet-based G_s are only available on real paths");
        return build_G_sequence<Jet>(psi_jet(t.real(), len), varpi_jet(t.real(), len), jet_derivation(), N);
    };
    GEvaluator ev;
    ev.order = N;
    ev.G = [sequence](int s, Complex t) {
        return Complex(sequence(t).at(static_cast<std::size_t>(s)).value(), 0.0);
    };
    ev.G_prime = [sequence](int s, Complex t) {
        return Complex(sequence(t).at(static_cast<std::size_t>(s)).derivative_value(1), 0.0);
    };
    return ev;
}

nlohmann::json Thm4Report::to_json() const
{
    return nlohmann::json{
        {"formula", formula},
        {"n", n},
        {"r", r},
        {"head", head},
        {"abs_G_at_xi", abs_G_at_xi},
        {"int_abs_G_prime", int_abs_G_prime},
        {"sup_G", sup_G},
        {"sup_sampled", sup_sampled},
        {"L", L},
        {"int_abs_psi", int_abs_psi},
        {"bound", bound},
    };
}

Thm4Report bound_thm4(const Thm4Inputs& in)
{
    if (in.n < 0 || in.r < 0)
        throw std::invalid_argument("thm4 requires n >= 0 and r >= 0");
    const int m = in.n + in.r;
    if (m > in.G.order)
        throw std::invalid_argument("thm4 needs G_" + std::to_string(m) + " but the model stops at G_" +
                                    std::to_string(in.G.order));
    if (!in.psi)
        throw std::invalid_argument("thm4 needs a psi evaluator");

    // Re(u t) monotonic along the path: certify as branch 1 (Re(-u t) nonincreasing).
    PathSpec p = in.path;
    p.j = 1;
    const auto cert = certify_progressive(p, in.certify);
    if (!cert.ok)
        throw std::invalid_argument("path is not monotonic in Re(u t) (arc " + std::to_string(cert.arc) +
                                    "): " + cert.message);

    const Complex u = in.path.u;
    const double au = std::abs(u);
    Thm4Report rep;
    rep.n = in.n;
    rep.r = in.r;
    rep.formula = in.r == 0 ? "thm4_r0" : "thm4_shifted";

    rep.int_abs_psi = integrate_abs(in.path, in.psi, in.quadrature).value;
    if (!(rep.int_abs_psi < 2.0 * au)) {
        std::ostringstream os;
        os << "int|psi| = " << rep.int_abs_psi << " must be below 2|u| = " << 2.0 * au;
        throw std::domain_error(os.str());
    }
    rep.int_abs_G_prime =
        integrate_abs(in.path, [&](Complex t) { return in.G.G_prime(m, t); }, in.quadrature).value;
    rep.abs_G_at_xi = std::abs(in.G.G(m, in.xi));

    if (in.sup_G) {
        rep.sup_G = *in.sup_G;
        rep.sup_sampled = false;
    } else {
        const std::size_t k = std::max<std::size_t>(in.sup_samples, 2);
        for (const auto& arc : in.path.arcs)
            for (std::size_t i = 0; i < k; ++i) {
                const Complex t = arc.at(static_cast<double>(i) / static_cast<double>(k - 1));
                if (std::isfinite(t.real()) && std::isfinite(t.imag()))
                    rep.sup_G = std::max(rep.sup_G, std::abs(in.G.G(m, t)));
            }
        rep.sup_G = std::max(rep.sup_G, rep.abs_G_at_xi);
    }
    rep.L = rep.sup_G + 0.5 * rep.int_abs_G_prime;

    if (in.r > 0) {
        Complex sum = 0.0;
        double sum_abs = 0.0;
        for (int s = in.n; s < m; ++s) {
            const Complex term = in.G.G(s, in.xi) / std::pow(u, 2 * s + 2);
            sum += term;
            sum_abs += std::abs(term);
        }
        rep.head = in.head_mode == HeadMode::abs_of_sum ? std::abs(sum) : sum_abs;
    }

    const double core = std::pow(au, -(2 * m + 2)) * (rep.abs_G_at_xi + 0.5 * rep.int_abs_G_prime);
    const double feedback = rep.L / (2.0 * std::pow(au, 2 * m + 3)) * rep.int_abs_psi /
                            (1.0 - rep.int_abs_psi / (2.0 * au));
    rep.bound = rep.head + core + feedback;
    return rep;
}

std::vector<ExponentialForcingRow> exponential_forcing_demo(double lambda, double xi, const std::vector<double>& us,
                                                            int n_max, int r, double half_width)
{
    if (n_max < 1)
        throw std::invalid_argument("n_max >= 1 required");
    if (!(half_width > 0.0))
        throw std::invalid_argument("window half-width must be positive");
    const int N = n_max + std::max(r, 0);
    auto zero = [](double t, std::size_t len) { return Jet::constant(t, 0.0, len); };
    auto forcing = [lambda](double t, std::size_t len) { return Jet::exponential(t, lambda, len); };
    const GEvaluator ev = jet_G_evaluator(zero, forcing, N);
    const auto G_at_xi = build_G_sequence<Jet>(zero(xi, 2 * N + 2), forcing(xi, 2 * N + 2), jet_derivation(), N);

    std::vector<ExponentialForcingRow> rows;
    for (double u : us) {
        if (!(u > std::abs(lambda)))
            throw std::invalid_argument("u must exceed |lambda| for the bounded particular solution");
        // The remainder sits ~2n orders of magnitude below the solution, so the
        // difference is taken in 60-digit arithmetic on the (exactly converted)
        // double G_s values.
        using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;
        const Big bu(u);
        const Big exact = -exp(Big(lambda) * Big(xi)) / (bu * bu - Big(lambda) * Big(lambda));
        for (int n = 1; n <= n_max; ++n) {
            Big partial = 0;
            Big upow = 1 / (bu * bu);
            for (int s = 0; s < n; ++s) {
                partial += Big(G_at_xi[static_cast<std::size_t>(s)].value()) * upow;
                upow /= bu * bu;
            }
            const double exact_error = static_cast<double>(abs(exact - partial));

            Thm4Inputs in;
            in.G = ev;
            in.n = n;
            in.path.u = u;
            in.path.arcs = {Arc::segment(xi - half_width, xi + half_width)};
            in.xi = xi;
            in.psi = [](Complex) { return Complex(0.0, 0.0); };
            // sup |G_m| on the window is at the right end (|G_m| = lambda^{2m} e^{lambda t}).
            auto sup_at = [&](int m) {
                return std::max(std::abs(ev.G(m, xi - half_width)), std::abs(ev.G(m, xi + half_width)));
            };
            in.sup_G = sup_at(n);
            const double b0 = bound_thm4(in).bound;
            double b1 = b0;
            if (r > 0) {
                in.r = r;
                in.sup_G = sup_at(n + r);
                b1 = bound_thm4(in).bound;
            }
            rows.push_back({u, n, r, exact_error, b0, b1});
        }
    }
    return rows;
}

}  // namespace lg
