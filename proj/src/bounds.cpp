#include "lg/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lg {

std::string to_string(Formula f)
{
    switch (f) {
    case Formula::thm1_eps1: return "thm1_eps1";
    case Formula::thm1_eps2: return "thm1_eps2";
    case Formula::thm2_eps1: return "thm2_eps1";
    case Formula::thm2_eps2: return "thm2_eps2";
    case Formula::thm3: return "thm3";
    case Formula::kappa: return "kappa";
    case Formula::eta_deriv: return "eta_deriv";
    case Formula::delta_exp: return "delta_exp";
    case Formula::thm4_r0: return "thm4_r0";
    case Formula::thm4_shifted: return "thm4_shifted";
    }
    return "unknown";
}

nlohmann::json BoundReport::to_json() const
{
    return nlohmann::json{
        {"formula", to_string(formula)},
        {"n", n},
        {"r", r},
        {"int_abs_chi", int_abs_chi},
        {"int_abs_T", int_abs_T},
        {"int_abs_phi_prime", int_abs_phi_prime},
        {"tail_sum", tail_sum},
        {"tail_term", tail_term},
        {"log_prefactor", log_prefactor},
        {"bound", bound},
        {"warnings", warnings},
    };
}

std::string format_sci(double x, int digits)
{
    if (digits < 1)
        digits = 1;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return buf;
}

std::string bound_csv_header() { return "z,n,r,exact_error,bound,formula"; }

std::string bound_csv_row(double z, const BoundReport& rep, std::optional<double> exact_error, int digits)
{
    std::ostringstream os;
    os << format_sci(z, digits) << ',' << rep.n << ',' << rep.r << ',';
    if (exact_error)
        os << format_sci(*exact_error, digits);
    os << ',' << format_sci(rep.bound, digits) << ',' << to_string(rep.formula);
    return os.str();
}

double kappa_value(double abs_u, int n, double int_abs_chi, double int_abs_T)
{
    const double lead = std::pow(abs_u, -n) * int_abs_chi;
    return lead * std::exp(4.0 * int_abs_T / abs_u + lead);
}

namespace {

void require_finite_bound(BoundReport& rep)
{
    if (!std::isfinite(rep.bound))
        throw std::domain_error("bound is not finite (|u| too small for the integrals involved)");
}

}  // namespace

BoundReport assemble_thm1(double abs_u, int n, int j, double int_abs_chi, double int_abs_T)
{
    BoundReport rep;
    rep.formula = j == 1 ? Formula::thm1_eps1 : Formula::thm1_eps2;
    rep.n = n;
    rep.int_abs_chi = int_abs_chi;
    rep.int_abs_T = int_abs_T;
    rep.bound = kappa_value(abs_u, n, int_abs_chi, int_abs_T);
    require_finite_bound(rep);
    return rep;
}

BoundReport assemble_thm2(double abs_u, int n, int r, int j, double int_abs_chi, double int_abs_T, Complex tail,
                          TailMode mode)
{
    BoundReport rep;
    rep.formula = j == 1 ? Formula::thm2_eps1 : Formula::thm2_eps2;
    rep.n = n;
    rep.r = r;
    rep.int_abs_chi = int_abs_chi;
    rep.int_abs_T = int_abs_T;
    rep.tail_sum = tail.real();
    if (mode == TailMode::series) {
        rep.tail_term = std::expm1(std::abs(tail));
    } else {
        // Re(e^z - 1) = expm1(x) cos y - 2 sin^2(y/2), stable for small z.
        const double x = tail.real();
        const double y = tail.imag();
        const double s = std::sin(0.5 * y);
        const Complex em1(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
        rep.tail_term = std::abs(em1);
    }
    // The tail sum and e^z - 1 are each rounded once; step outward past both so
    // the bound survives when the remainder is below one ulp of the head.
    rep.tail_term *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    const double lead = std::pow(abs_u, -(n + r)) * int_abs_chi;
    rep.bound = rep.tail_term + lead * std::exp(4.0 * int_abs_T / abs_u + lead + tail.real());
    require_finite_bound(rep);
    return rep;
}

BoundReport assemble_thm3(double abs_u, int n, double int_abs_chi, double int_abs_T, double int_abs_phi_prime,
                          double kappa0, double kappa2)
{
    BoundReport rep;
    rep.formula = Formula::thm3;
    rep.n = n;
    rep.int_abs_chi = int_abs_chi;
    rep.int_abs_T = int_abs_T;
    rep.int_abs_phi_prime = int_abs_phi_prime;
    const double lead = kappa0 * std::pow(abs_u, -n) * int_abs_chi;
    const double expo = (2.0 + 2.0 * kappa0 + kappa0 * kappa2 / abs_u) * int_abs_T / abs_u +
                        kappa0 * int_abs_phi_prime / abs_u + lead;
    rep.bound = lead * std::exp(expo);
    require_finite_bound(rep);
    return rep;
}

double bound_delta_exponent(double kappa)
{
    if (!(kappa < 1.0))
        throw std::domain_error("kappa >= 1: |u| too small for the exponent-form bound");
    if (kappa < 0.0)
        throw std::invalid_argument("kappa must be nonnegative");
    return -std::log1p(-kappa);
}

double bound_eta_derivative(double kappa, Complex u, Complex T_at_xi, Branch branch, std::optional<Complex> sigma,
                            std::optional<Complex> sigma_prime)
{
    const Complex sg = sigma.value_or(Complex(1.0, 0.0));
    const Complex sgp = sigma_prime.value_or(Complex(0.0, 0.0));
    if (sg == Complex(0.0, 0.0))
        throw std::invalid_argument("sigma must not vanish");
    const double A = std::abs(u * u * sg);
    const double B = std::abs(branch_sign(branch) * u * sgp + sg * T_at_xi);
    if (!(A > B))
        throw std::domain_error("derivative bound requires |u^2 sigma| > |+-u sigma' + sigma T_n|");
    const double x = (A + B) * kappa / (A - B);
    if (!(x < 1.0))
        throw std::domain_error("derivative bound undefined: logarithm argument not positive");
    return -std::log1p(-x);
}

// ---------------------------------------------------------------------------

CoefficientEvaluator poly_evaluator(const CoefficientTable<RationalPoly>& table)
{
    return {table.order(), [F = table.F](Complex t) {
                std::vector<Complex> out;
                out.reserve(F.size());
                for (const auto& f : F)
                    out.push_back(f.eval(t));
                return out;
            }};
}

CoefficientEvaluator jet_evaluator(std::function<Jet(double, std::size_t)> psi_jet, int order)
{
    if (order < 1)
        throw std::invalid_argument("jet_evaluator: order >= 1 required");
    return {order, [psi_jet = std::move(psi_jet), order](Complex t) {
                if (t.imag() != 0.0)
                    throw std::invalid_argument("jet-based coefficients are only available on real paths");
                const Jet psi = psi_jet(t.real(), static_cast<std::size_t>(order + 2));
                const auto table = build_coefficients<Jet>(psi, jet_derivation(), order);
                std::vector<Complex> out;
                out.reserve(table.F.size());
                for (const auto& f : table.F)
                    out.emplace_back(f.value(), 0.0);
                return out;
            }};
}

Complex chi_value(const std::vector<Complex>& F, int n, Complex u)
{
    if (n < 1 || n > static_cast<int>(F.size()))
        throw std::out_of_range("chi_value: order outside the available coefficients");
    auto f = [&](int s) { return F[static_cast<std::size_t>(s - 1)]; };
    Complex acc = 2.0 * f(n);
    Complex upow = 1.0;
    for (int s = 1; s <= n - 1; ++s) {
        upow /= u;
        Complex g = 0.0;
        for (int k = s; k <= n - 1; ++k)
            g += f(k) * f(s + n - k - 1);
        acc -= g * upow;
    }
    return acc;
}

Complex T_value(const std::vector<Complex>& F, int n, Complex u)
{
    if (n - 1 > static_cast<int>(F.size()))
        throw std::out_of_range("T_value: order outside the available coefficients");
    Complex acc = 0.0;
    Complex upow = 1.0;
    for (int s = 0; s <= n - 2; ++s) {
        acc += F[static_cast<std::size_t>(s)] * upow;
        upow /= u;
    }
    return acc;
}

namespace {

void require_certified(const PathSpec& path, const CertifyOptions& opts)
{
    const auto rep = certify_progressive(path, opts);
    if (!rep.ok) {
        std::ostringstream os;
        os << "path is not progressive for branch j=" << path.j << " (arc " << rep.arc << ", tau " << rep.tau
           << "): " << rep.message;
        throw std::invalid_argument(os.str());
    }
}

struct Integrals {
    double chi = 0.0;
    double T = 0.0;
};

Integrals integrate_functionals(const BoundInputs& in, int order)
{
    if (order < 1 || order > in.coeffs.order)
        throw std::invalid_argument("order " + std::to_string(order) + " exceeds the coefficient model (" +
                                    std::to_string(in.coeffs.order) + ")");
    const Complex u = in.path.u;
    Integrals out;
    if (in.chi_mode == ChiMode::direct) {
        out.chi = integrate_abs(
                      in.path, [&](Complex t) { return chi_value(in.coeffs.values(t), order, u); }, in.quadrature)
                      .value;
    } else {
        out.chi = 2.0 * integrate_abs(
                            in.path,
                            [&](Complex t) { return in.coeffs.values(t)[static_cast<std::size_t>(order - 1)]; },
                            in.quadrature)
                            .value;
        for (int s = 1; s <= order - 1; ++s) {
            const double g = integrate_abs(
                                 in.path,
                                 [&](Complex t) {
                                     const auto F = in.coeffs.values(t);
                                     Complex acc = 0.0;
                                     for (int k = s; k <= order - 1; ++k)
                                         acc += F[static_cast<std::size_t>(k - 1)] *
                                                F[static_cast<std::size_t>(s + order - k - 2)];
                                     return acc;
                                 },
                                 in.quadrature)
                                 .value;
            out.chi += std::pow(std::abs(u), -s) * g;
        }
    }
    if (order >= 2)
        out.T = integrate_abs(
                    in.path, [&](Complex t) { return T_value(in.coeffs.values(t), order, u); }, in.quadrature)
                    .value;
    return out;
}

void check_common(const BoundInputs& in)
{
    if (in.n < 1)
        throw std::invalid_argument("n >= 1 required");
    if (in.r < 0)
        throw std::invalid_argument("r >= 0 required");
    if (in.path.u == Complex(0.0, 0.0))
        throw std::invalid_argument("u must be nonzero");
    require_certified(in.path, in.certify);
}

double log_prefactor(const PathSpec& path)
{
    if (path.arcs.empty())
        return 0.0;
    const double sign = path.j == 1 ? 1.0 : -1.0;
    return sign * (path.u * path.arcs.back().to()).real();
}

}  // namespace

BoundReport bound_thm1(const BoundInputs& in)
{
    check_common(in);
    const auto I = integrate_functionals(in, in.n);
    auto rep = assemble_thm1(std::abs(in.path.u), in.n, in.path.j, I.chi, I.T);
    rep.log_prefactor = log_prefactor(in.path);
    return rep;
}

BoundReport bound_thm2(const BoundInputs& in)
{
    if (in.r == 0)
        return bound_thm1(in);
    check_common(in);
    if (static_cast<int>(in.e_diff.size()) != in.r)
        throw std::invalid_argument("E-differences required for s = n .. n+r-1 (" + std::to_string(in.r) +
                                    " values), got " + std::to_string(in.e_diff.size()));
    const Complex u = in.path.u;
    const double sign = in.path.j == 1 ? 1.0 : -1.0;
    Complex tail = 0.0;
    for (int k = 0; k < in.r; ++k) {
        const int s = in.n + k;
        tail += std::pow(sign, s) * in.e_diff[static_cast<std::size_t>(k)] / std::pow(u, s);
    }
    const auto I = integrate_functionals(in, in.n + in.r);
    auto rep = assemble_thm2(std::abs(u), in.n, in.r, in.path.j, I.chi, I.T, tail, in.tail_mode);
    rep.log_prefactor = log_prefactor(in.path);
    const int n0 = in.n0.value_or(static_cast<int>(std::floor(std::abs(u))));
    if (in.n + in.r > n0)
        rep.warnings.push_back("n + r = " + std::to_string(in.n + in.r) + " exceeds n0 = " + std::to_string(n0) +
                               "; the shifted bound may be unreliable");
    return rep;
}

double bound_kappa(const BoundInputs& in)
{
    return bound_thm1(in).bound;
}

Thm3Inputs thm3_inputs_from_table(const SignedCoefficientTable<RationalPoly>& table, int n, PathSpec path)
{
    const auto chi = chi_series_general(table, n);
    if (!chi.positive_powers_vanish)
        throw std::logic_error("chi series has surviving positive powers of u");
    Thm3Inputs in;
    in.n = n;
    in.path = std::move(path);
    const Complex v = branch_sign(table.branch) * in.path.u;
    in.chi = [X = chi.coefficients, v](Complex t) {
        Complex acc = 0.0;
        Complex vp = 1.0;
        for (const auto& x : X) {
            acc += x.eval(t) * vp;
            vp /= v;
        }
        return acc;
    };
    std::vector<RationalPoly> Tc;
    for (int s = 0; s <= n - 2; ++s)
        Tc.push_back(table.f(s + 1));
    in.T = [Tc, v](Complex t) {
        Complex acc = 0.0;
        Complex vp = 1.0;
        for (const auto& x : Tc) {
            acc += x.eval(t) * vp;
            vp /= v;
        }
        return acc;
    };
    in.phi = [phi = table.phi](Complex t) { return phi.eval(t); };
    in.phi_prime = [d = table.derivation(table.phi)](Complex t) { return d.eval(t); };
    if (table.E)
        in.e0 = [e = table.e(0)](Complex t) { return e.eval(t); };
    return in;
}

BoundReport bound_thm3(const Thm3Inputs& in)
{
    if (in.n < 1)
        throw std::invalid_argument("n >= 1 required");
    if (!in.chi || !in.T || !in.phi || !in.phi_prime)
        throw std::invalid_argument("thm3 needs chi, T, phi and phi' evaluators");
    CertifyOptions copts = in.certify;
    if (in.e0 && !copts.e0)
        copts.e0 = in.e0;
    require_certified(in.path, copts);

    const Complex u = in.path.u;
    double kappa0 = 0.0;
    double kappa2 = 0.0;
    if (!in.kappa0 || !in.kappa2) {
        const std::size_t m = std::max<std::size_t>(in.sup_samples, 2);
        for (const auto& arc : in.path.arcs) {
            for (std::size_t k = 0; k < m; ++k) {
                const Complex t = arc.at(static_cast<double>(k) / static_cast<double>(m - 1));
                if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
                    continue;
                const Complex ph = in.phi(t);
                const double den = std::abs(1.0 + ph / (2.0 * u));
                if (den == 0.0)
                    throw std::domain_error("phi(t) = -2u on the path: kappa0 is infinite");
                kappa0 = std::max(kappa0, 1.0 / den);
                kappa2 = std::max(kappa2, std::abs(ph));
            }
        }
    }
    if (in.kappa0)
        kappa0 = *in.kappa0;
    if (in.kappa2)
        kappa2 = *in.kappa2;
    if (!std::isfinite(kappa0))
        throw std::domain_error("kappa0 is infinite");

    const double ichi = integrate_abs(in.path, in.chi, in.quadrature).value;
    const double iT = in.n >= 2 ? integrate_abs(in.path, in.T, in.quadrature).value : 0.0;
    const double iphi = integrate_abs(in.path, in.phi_prime, in.quadrature).value;
    return assemble_thm3(std::abs(u), in.n, ichi, iT, iphi, kappa0, kappa2);
}

}  // namespace lg
