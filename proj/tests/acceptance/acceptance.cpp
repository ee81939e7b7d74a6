// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "lg/bessel.hpp"
#include "lg/coefficients.hpp"
#include "lg/nonhomog.hpp"
#include "lg/oracle.hpp"

using lg::BigFloat;
using lg::BigRational;
using lg::BesselKind;
using lg::RationalPoly;

namespace {

struct Criterion {
    bool ok = true;
    std::ostringstream detail;

    void check(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail << "    mismatch: " << what << '\n';
        }
    }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Criterion&)>& body)
{
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "    exception: " << e.what() << '\n';
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  [" << id << "] " << title << '\n' << c.detail.str();
    std::cout.flush();
    if (!c.ok)
        ++failures;
}

// Printed values are compared after rounding ours to the printed number of
// significant digits.
bool matches_printed(double value, const std::string& printed)
{
    const auto mant = printed.substr(0, printed.find('e'));
    const int digits = static_cast<int>(mant.size()) - (mant.find('.') == std::string::npos ? 0 : 1);
    const double target = std::stod(printed);
    return lg::format_sci(value, digits) == lg::format_sci(target, digits);
}

std::string compare_line(const std::string& what, double z, double ours, const std::string& printed)
{
    std::ostringstream os;
    os << what << " z=" << z << ": computed " << lg::format_sci(ours, 7) << ", printed " << printed;
    return os.str();
}

const std::vector<double> kTableZ{0.01, 0.1, 1, 10, 100};

}  // namespace

int main()
{
    const auto model20 = lg::build_bessel_model(20.0, 12);

    run(1, "Table reproduction, shifted bound (nu=20, n=r=5)", [&](Criterion& c) {
        const std::vector<std::string> eta_printed{"7.418601e-12", "5.422462e-10", "6.1812e-9", "2.470e-10",
                                                   "2.476e-10"};
        const std::vector<std::string> bound_printed{"7.418606e-12", "5.422471e-10", "6.1822e-9", "2.493e-10",
                                                     "2.488e-10"};
        const auto rows = lg::reproduce_table(model20, 5, 5, kTableZ);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            c.check(matches_printed(rows[i].eta_abs, eta_printed[i]),
                    compare_line("|eta|", rows[i].z, rows[i].eta_abs, eta_printed[i]));
            c.check(matches_printed(rows[i].report.bound, bound_printed[i]),
                    compare_line("bound", rows[i].z, rows[i].report.bound, bound_printed[i]));
        }
    });

    run(2, "Table reproduction, unshifted bound (nu=20, n=5, r=0)", [&](Criterion& c) {
        const std::vector<std::string> printed{"1.56e-11", "1.12e-9", "4.15e-8", "5.75e-8", "5.76e-8"};
        for (std::size_t i = 0; i < kTableZ.size(); ++i) {
            const double b = lg::bound_I(model20, kTableZ[i], 5, 0).bound;
            c.check(matches_printed(b, printed[i]), compare_line("bound", kTableZ[i], b, printed[i]));
        }
    });

    run(3, "Exact symbolic identities", [&](Criterion& c) {
        const auto& k = *model20.coeffs;
        auto P = [](std::initializer_list<BigRational> cs) { return RationalPoly(std::vector<BigRational>(cs), "p"); };
        c.check(k.F(1) == BigRational(1, 8) * P({0, 0, 1}) * P({1, 0, -1}) * P({-1, 0, 5}), "F~_1");
        c.check(k.F(2) == BigRational(1, 8) * P({0, 0, 0, 1}) * P({1, 0, -1}) * P({-1, 0, 12, 0, -15}), "F~_2");
        c.check(k.E(1) == BigRational(1, 24) * P({0, 1}) * P({3, 0, -5}), "E~_1");
        c.check(k.E(2) == BigRational(1, 16) * P({0, 0, 1}) * P({1, 0, -1}) * P({1, 0, -5}), "E~_2");
        c.check(k.k(1) == BigRational(-1, 12), "k_1");
        c.check(k.k(3) == BigRational(1, 360), "k_3");
        c.check(k.k(5) == BigRational(-1, 1260), "k_5");
        c.check(k.k(2) == 0 && k.k(4) == 0, "k_2 = k_4 = 0");
        c.check(k.E(2) == BigRational(-1, 2) * k.F(1), "E_2 = -F_1/2");
        c.check(k.E(4) == BigRational(1, 4) * (k.F(1) * k.F(1)) - BigRational(1, 2) * k.F(3), "E_4");
        const auto abel = lg::even_E_via_abel<RationalPoly>({k.F(1), k.F(3)}, 2);
        c.check(abel[0] == k.E(2) && abel[1] == k.E(4), "Wronskian-route even coefficients");
    });

    run(4, "Structural identities", [&](Criterion& c) {
        for (int n = 1; n <= 6; ++n)
            c.check(lg::verify_chi_identity(model20.coeffs->table(), n), "chi identity, Bessel n=" + std::to_string(n));
        std::mt19937 rng(4242);
        std::uniform_int_distribution<int> deg(0, 4), num(-9, 9), den(1, 7);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<BigRational> cs(static_cast<std::size_t>(deg(rng)) + 1);
            for (auto& x : cs)
                x = BigRational(num(rng), den(rng));
            const auto t = lg::build_coefficients<RationalPoly>(RationalPoly(cs, "xi"), lg::plain_derivation(), 6);
            for (int n = 1; n <= 6; ++n)
                c.check(lg::verify_chi_identity(t, n), "chi identity, random psi #" + std::to_string(trial));
        }
        const RationalPoly w({0, 0, 1, 0, -1}, "p");
        for (int s = 1; s <= 12; ++s) {
            const auto [q, r] = model20.coeffs->F(s).divmod(w);
            c.check(r.is_zero(), "p^2(1-p^2) divides F~_" + std::to_string(s));
        }
        for (int n = 1; n <= 6; ++n) {
            c.check(lg::phi_diag(model20, n, 1.0) == 0.0, "Phi_n(nu,1) = 0");
            c.check(lg::omega_diag(model20, n, 1.0) == 0.0, "Omega_n(nu,1) = 0");
        }
    });

    run(5, "Dominance |eta| <= bound on the full grid", [&](Criterion& c) {
        const std::vector<double> zs{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1, 2, 5, 10, 100};
        int checked = 0, violations = 0;
        double tightest = 0.0;
        for (double nu : {10.0, 20.0, 40.0}) {
            const auto m = lg::with_nu(model20, nu);
            for (int n = 2; n <= 6; ++n)
                for (auto kind : {BesselKind::I, BesselKind::K})
                    for (double z : zs) {
                        const double eta = std::abs(static_cast<double>(lg::eta_exact(m, z, n, kind).eta));
                        for (int r : {0, n}) {
                            const double b = lg::bessel_bound(m, z, n, r, kind).bound;
                            ++checked;
                            tightest = std::max(tightest, eta / b);
                            if (!(eta <= b)) {
                                ++violations;
                                std::ostringstream os;
                                os << (kind == BesselKind::I ? "I" : "K") << " nu=" << nu << " n=" << n << " r=" << r
                                   << " z=" << z << ": |eta|=" << lg::format_sci(eta, 10)
                                   << " bound=" << lg::format_sci(b, 10);
                                c.check(false, os.str());
                            }
                        }
                    }
        }
        c.detail << "    " << checked << " points, " << violations << " violations, max |eta|/bound = "
                 << lg::format_sci(tightest, 6) << '\n';
    });

    run(6, "Nonhomogeneous expansion against the exact particular solution", [&](Criterion& c) {
        const std::vector<double> us{5, 10, 20};
        const auto rows = lg::exponential_forcing_demo(0.5, 0.0, us, 5, 0);
        auto err = [&](double u, int n) {
            for (const auto& r : rows)
                if (r.u == u && r.n == n)
                    return r.exact_error;
            return std::nan("");
        };
        for (const auto& r : rows) {
            std::ostringstream os;
            os << "u=" << r.u << " n=" << r.n << ": remainder " << lg::format_sci(r.exact_error, 6) << " bound "
               << lg::format_sci(r.bound_r0, 6);
            c.check(r.exact_error <= r.bound_r0, os.str());
        }
        for (double u : us)
            for (int n = 1; n < 5; ++n)
                c.check(err(u, n + 1) < err(u, n), "partial sums converge at u=" + std::to_string(u));
        for (int n = 1; n <= 5; ++n)
            for (double u : {5.0, 10.0}) {
                const double ratio = err(u, n) / err(2 * u, n);
                const double target = std::pow(2.0, 2 * n + 2);
                std::ostringstream os;
                os << "doubling u=" << u << " n=" << n << ": ratio " << ratio << " vs " << target;
                c.check(ratio >= target / 4 && ratio <= target * 4, os.str());
            }
    });

    run(7, "Diagnostic shape (nu=20, n=5)", [&](Criterion& c) {
        double worst = 0.0, lo = 0.0, hi = 0.0;
        for (int i = 1; i <= 512; ++i) {
            const double p = i / 513.0;
            const double phi = lg::phi_diag(model20, 5, p);
            worst = std::max(worst, phi / lg::omega_diag(model20, 5, p));
            (p < 0.6 ? lo : hi) = std::max(p < 0.6 ? lo : hi, phi);
        }
        c.check(worst <= 1.0, "max Phi/Omega = " + lg::format_sci(worst, 6));
        c.detail << "    max Phi/Omega = " << lg::format_sci(worst, 6) << "; max_{p<0.6} Phi = " << lg::format_sci(lo, 6)
                 << ", max_{p>=0.6} Phi = " << lg::format_sci(hi, 6) << " (ratio " << lg::format_sci(lo / hi, 4)
                 << ")\n";
        c.check(lo < 0.1 * hi, "max_{p<0.6} Phi_5 is not below a tenth of max_{p>=0.6} Phi_5");
    });

    run(8, "Oracle self-validation at 40+ digits", [&](Criterion& c) {
        const int d = 45;
        lg::PrecisionScope scope(d + 5);
        const BigFloat pi = boost::math::constants::pi<BigFloat>();
        const BigFloat tol = pow(BigFloat(10), -40);
        for (double xd : {0.5, 2.0, 30.0}) {
            const BigFloat x(xd);
            const BigFloat i_half = sqrt(2 / (pi * x)) * sinh(x);
            const BigFloat k_half = sqrt(pi / (2 * x)) * exp(-x);
            c.check(abs(lg::bessel_I(BigFloat(0.5), x, d) / i_half - 1) < tol, "I_{1/2} closed form");
            c.check(abs(lg::bessel_K(BigFloat(0.5), x, d) / k_half - 1) < tol, "K_{1/2} closed form");
            const BigFloat i_3half = sqrt(2 / (pi * x)) * (cosh(x) - sinh(x) / x);
            c.check(abs(lg::bessel_I(BigFloat(1.5), x, d) / i_3half - 1) < tol, "I_{3/2} closed form");
        }
        const BigFloat nu(20.5), x(10);
        auto I = [&](const BigFloat& n) { return lg::bessel_I(n, x, d); };
        auto K = [&](const BigFloat& n) { return lg::bessel_K(n, x, d); };
        const BigFloat W = I(nu) * (-(K(nu - 1) + K(nu + 1)) / 2) - (I(nu - 1) + I(nu + 1)) / 2 * K(nu);
        c.check(abs(W * x + 1) < tol, "Wronskian I K' - I' K = -1/x");
        c.check(abs((I(nu - 1) - I(nu + 1)) / (2 * nu / x * I(nu)) - 1) < tol, "I recurrence");
        c.check(abs((K(nu + 1) - K(nu - 1)) / (2 * nu / x * K(nu)) - 1) < tol, "K recurrence");
        c.check(abs(exp(lg::ln_gamma(BigFloat(0.5), d)) - sqrt(pi)) < tol, "Gamma(1/2) = sqrt(pi)");
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures;
}
