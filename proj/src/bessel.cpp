#include "lg/bessel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

namespace lg {

RationalPoly BesselCoefficients::psi()
{
    // p^2 (1 - p^2)(5p^2 - 1) / 4
    return RationalPoly({0, 0, BigRational(-1, 4), 0, BigRational(6, 4), 0, BigRational(-5, 4)}, "p");
}

RationalPoly BesselCoefficients::xi_weight()
{
    // -p^2 (1 - p^2)
    return RationalPoly({0, 0, -1, 0, 1}, "p");
}

namespace {

RationalPoly q2_one_minus_q2() { return RationalPoly({0, 0, 1, 0, -1}, "p"); }

}  // namespace

BesselCoefficients::BesselCoefficients(int N)
{
    if (N < 1)
        throw std::invalid_argument("Bessel model needs N >= 1");
    const RationalPoly factor = q2_one_minus_q2();
    // dxi/dp = -1/(p^2(1-p^2)), so E~_s = -int_0^p F~_s / (q^2(1-q^2)) dq.
    Antiderivative<RationalPoly> integrate_in_xi = [factor](const RationalPoly& f) -> std::optional<RationalPoly> {
        return (-f.exact_div(factor)).antiderivative();
    };
    table_ = build_coefficients<RationalPoly>(psi(), weighted_derivation(xi_weight()), N, integrate_in_xi, "bessel",
                                              "p=0");
    for (int s = 1; s <= N; ++s) {
        reduced_.push_back(table_.f(s).exact_div(factor));
        k_.push_back(table_.e(s).eval(BigRational(1)));
    }
}

const BigRational& BesselCoefficients::k(int s) const
{
    if (s < 1 || s > order())
        throw std::out_of_range("k_s outside the model order");
    return k_[static_cast<std::size_t>(s - 1)];
}

const RationalPoly& BesselCoefficients::reduced_F(int s) const
{
    if (s < 1 || s > order())
        throw std::out_of_range("F_s outside the model order");
    return reduced_[static_cast<std::size_t>(s - 1)];
}

RationalPoly BesselCoefficients::reduced_G(int n, int s) const
{
    const RationalPoly G = g_functional(table_, n, s);
    return G.exact_div(q2_one_minus_q2());
}

const AbsPolyIntegrator& BesselCoefficients::integrator(int n, int s) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = integrators_[{n, s}];
    if (!slot)
        slot = std::make_unique<AbsPolyIntegrator>(s == 0 ? reduced_F(n) : reduced_G(n, s), 0, 1);
    return *slot;
}

double BesselCoefficients::int_abs_F(int s, const BigRational& from, const BigRational& to) const
{
    return to_double(integrator(s, 0).integrate(from, to));
}

double BesselCoefficients::int_abs_G(int n, int s, const BigRational& from, const BigRational& to) const
{
    return to_double(integrator(n, s).integrate(from, to));
}

BesselModel build_bessel_model(double nu, int N)
{
    if (!(nu > 0.0))
        throw std::invalid_argument("nu must be real and positive");
    return {nu, std::make_shared<const BesselCoefficients>(N)};
}

BesselModel with_nu(const BesselModel& model, double nu)
{
    if (!(nu > 0.0))
        throw std::invalid_argument("nu must be real and positive");
    return {nu, model.coeffs};
}

double xi_of_z(double z)
{
    if (!(z > 0.0))
        throw std::invalid_argument("z must be positive");
    const double r = std::sqrt(1.0 + z * z);
    // ln(z / (1 + r)) = -log1p((1 + r - z) / z), with 1 + r - z = 1 + 1/(r + z).
    return r - std::log1p((1.0 + 1.0 / (r + z)) / z);
}

BigFloat xi_of_z(const BigFloat& z)
{
    if (!(z > 0))
        throw std::invalid_argument("z must be positive");
    const BigFloat r = sqrt(1 + z * z);
    return r - log1p((1 + 1 / (r + z)) / z);
}

double p_of_z(double z)
{
    if (!(z > 0.0))
        throw std::invalid_argument("z must be positive");
    return 1.0 / std::sqrt(1.0 + z * z);
}

namespace {

BigFloat eval_poly(const RationalPoly& a, const BigFloat& x)
{
    BigFloat acc = 0;
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
        acc = acc * x + to_bigfloat(*it);
    return acc;
}

void check_order(const BesselModel& model, int n)
{
    if (n < 1 || n > model.order())
        throw std::invalid_argument("order n must satisfy 1 <= n <= " + std::to_string(model.order()));
}

}  // namespace

BigFloat log_I_expansion(const BesselModel& model, const BigFloat& z, int n, int digits)
{
    check_order(model, n);
    PrecisionScope scope(digits);
    const BigFloat nu(model.nu);
    const BigFloat zz(z);
    const BigFloat one_z2 = 1 + zz * zz;
    const BigFloat p = 1 / sqrt(one_z2);
    BigFloat acc = nu * log(nu) - nu - ln_gamma(nu + 1, digits) - log(one_z2) / 4 + nu * xi_of_z(zz);
    BigFloat nupow = 1;
    for (int s = 1; s <= n - 1; ++s) {
        nupow *= nu;
        acc += (eval_poly(model.coeffs->E(s), p) - to_bigfloat(model.coeffs->k(s))) / nupow;
    }
    return acc;
}

BigFloat log_K_expansion(const BesselModel& model, const BigFloat& z, int n, int digits)
{
    check_order(model, n);
    PrecisionScope scope(digits);
    const BigFloat nu(model.nu);
    const BigFloat zz(z);
    const BigFloat one_z2 = 1 + zz * zz;
    const BigFloat p = 1 / sqrt(one_z2);
    const BigFloat pi = boost::math::constants::pi<BigFloat>();
    BigFloat acc = log(pi / (2 * nu)) / 2 - log(one_z2) / 4 - nu * xi_of_z(zz);
    BigFloat nupow = 1;
    for (int s = 1; s <= n - 1; ++s) {
        nupow *= -nu;
        acc += eval_poly(model.coeffs->E(s), p) / nupow;
    }
    return acc;
}

BigFloat eval_I_expansion(const BesselModel& model, const BigFloat& z, int n, int digits)
{
    PrecisionScope scope(digits);
    return exp(log_I_expansion(model, z, n, digits));
}

BigFloat eval_K_expansion(const BesselModel& model, const BigFloat& z, int n, int digits)
{
    PrecisionScope scope(digits);
    return exp(log_K_expansion(model, z, n, digits));
}

namespace {

BigFloat eta_at(const BesselModel& model, double z, int n, BesselKind kind, int digits)
{
    PrecisionScope scope(digits);
    const BigFloat zz(z);
    const BigFloat nu(model.nu);
    const BigFloat x = nu * zz;
    BigFloat diff;
    if (kind == BesselKind::I)
        diff = log(bessel_I(nu, x, digits)) - log_I_expansion(model, zz, n, digits);
    else
        diff = log(bessel_K(nu, x, digits)) - log_K_expansion(model, zz, n, digits);
    return expm1(diff);
}

}  // namespace

EtaResult eta_exact(const BesselModel& model, double z, int n, BesselKind kind, int digits)
{
    if (!(z > 0.0))
        throw std::invalid_argument("z must be positive");
    check_order(model, n);
    if (digits < 20)
        throw std::invalid_argument("eta needs at least 20 working digits");
    const BigFloat a = eta_at(model, z, n, kind, digits);
    const BigFloat b = eta_at(model, z, n, kind, digits + 10);
    PrecisionScope scope(digits + 10);
    EtaResult out;
    out.eta = b;
    out.digits = digits;
    if (b == 0) {
        out.agreement_digits = a == 0 ? digits : 0.0;
    } else {
        const BigFloat rel = abs((a - b) / b);
        out.agreement_digits = rel == 0 ? static_cast<double>(digits) : -static_cast<double>(log10(rel));
    }
    if (out.agreement_digits < 7.0) {
        std::ostringstream os;
        os << "oracle precision insufficient: eta agrees to only " << out.agreement_digits
           << " digits between " << digits << " and " << digits + 10 << " working digits";
        throw std::runtime_error(os.str());
    }
    return out;
}

BoundReport bessel_bound(const BesselModel& model, double z, int n, int r, BesselKind kind)
{
    if (!(z > 0.0))
        throw std::invalid_argument("z must be positive");
    if (n < 1 || r < 0)
        throw std::invalid_argument("bound needs n >= 1 and r >= 0");
    const int m = n + r;
    check_order(model, m);
    const auto& c = *model.coeffs;
    const double nu = model.nu;
    const BigRational p = from_double(p_of_z(z));
    const BigRational end = kind == BesselKind::I ? BigRational(1) : BigRational(0);

    double omega = 2.0 * c.int_abs_F(m, p, end);
    for (int s = 1; s <= m - 1; ++s)
        omega += std::pow(nu, -s) * c.int_abs_G(m, s, p, end);
    double int_T = 0.0;
    for (int s = 0; s <= m - 2; ++s)
        int_T += std::pow(nu, -s) * c.int_abs_F(s + 1, p, end);

    const int j = kind == BesselKind::I ? 1 : 2;
    if (r == 0)
        return assemble_thm1(nu, n, j, omega, int_T);
    BigRational tail = 0;
    BigRational nupow = 1;
    const BigRational bnu = from_double(nu);
    for (int s = 1; s < m; ++s) {
        nupow *= kind == BesselKind::I ? bnu : BigRational(-bnu);
        if (s < n)
            continue;
        const BigRational e = c.E(s).eval(p) - (kind == BesselKind::I ? c.k(s) : BigRational(0));
        tail += e / nupow;
    }
    auto rep = assemble_thm2(nu, n, r, j, omega, int_T, Complex(to_double(tail), 0.0));
    if (m > static_cast<int>(std::floor(nu)))
        rep.warnings.push_back("n + r exceeds floor(nu)");
    return rep;
}

BoundReport bound_I(const BesselModel& model, double z, int n, int r)
{
    return bessel_bound(model, z, n, r, BesselKind::I);
}

BoundReport bound_K(const BesselModel& model, double z, int n, int r)
{
    return bessel_bound(model, z, n, r, BesselKind::K);
}

double phi_diag(const BesselModel& model, int n, double p)
{
    check_order(model, n);
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    const BigRational q = from_double(p);
    const BigRational d = abs(model.coeffs->E(n).eval(q) - model.coeffs->k(n));
    return to_double(d) / std::pow(model.nu, n);
}

double omega_diag(const BesselModel& model, int n, double p)
{
    check_order(model, n);
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    return 2.0 * model.coeffs->int_abs_F(n, from_double(p), 1) / std::pow(model.nu, n);
}

std::vector<TableRow> reproduce_table(const BesselModel& model, int n, int r, const std::vector<double>& zs,
                                      BesselKind kind, int digits)
{
    std::vector<TableRow> rows;
    rows.reserve(zs.size());
    for (double z : zs) {
        TableRow row;
        row.z = z;
        row.eta_abs = static_cast<double>(abs(eta_exact(model, z, n, kind, digits).eta));
        row.report = bessel_bound(model, z, n, r, kind);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow>& rows, int digits)
{
    std::ostringstream os;
    os << "z,eta_abs,bound,formula\n";
    for (const auto& row : rows) {
        os << format_sci(row.z, digits) << ',' << format_sci(row.eta_abs, digits) << ',' << format_sci(row.report.bound, digits) << ','
           << to_string(row.report.formula) << '\n';
    }
    return os.str();
}

bool check_convergence_conditions(double m, double p_exp, double g0, SingularPoint at)
{
    if (at == SingularPoint::infinity)
        return (m > -2.0 && p_exp < m / 2.0 - 1.0) || (m == -2.0 && p_exp == -2.0 && g0 == -0.25);
    return (m > 2.0 && p_exp >= 0.0 && p_exp < m / 2.0 + 1.0) || (m == 2.0 && p_exp == 2.0 && g0 == -0.25);
}

PathSpec bessel_path(double nu, double p, BesselKind kind)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("p must lie in (0, 1)");
    const double q0 = kind == BesselKind::I ? 1.0 : 0.0;
    PathSpec path;
    path.u = nu;
    path.j = kind == BesselKind::I ? 1 : 2;
    auto q_of = [q0, p](double tau) { return q0 + (p - q0) * tau; };
    path.arcs.push_back(Arc::custom(
        [q_of](double tau) {
            const double q = q_of(tau);
            if (q <= 0.0)
                return Complex(HUGE_VAL, 0.0);
            if (q >= 1.0)
                return Complex(-HUGE_VAL, 0.0);
            return Complex(1.0 / q - std::atanh(q), 0.0);
        },
        [q_of, q0, p](double tau) {
            const double q = q_of(tau);
            return Complex(-(p - q0) / (q * q * (1.0 - q * q)), 0.0);
        }));
    return path;
}

}  // namespace lg
