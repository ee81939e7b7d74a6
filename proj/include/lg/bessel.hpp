#pragma once

// Modified Bessel functions I_nu(nu z), K_nu(nu z) for large nu:
//   f = (1+z^2)/z^2, g = -1/(4z^2), xi = sqrt(1+z^2) + ln(z/(1+sqrt(1+z^2))),
// with every coefficient an exact polynomial in p = (1+z^2)^{-1/2}.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lg/bounds.hpp"
#include "lg/coefficients.hpp"
#include "lg/oracle.hpp"
#include "lg/paths.hpp"

namespace lg {

/// nu-independent part of the model: F~_s, E~_s, k_s and the cached exact
/// integrators for the bound integrands on [0, 1].
class BesselCoefficients {
public:
    explicit BesselCoefficients(int N);

    int order() const { return table_.order(); }
    const CoefficientTable<RationalPoly>& table() const { return table_; }
    /// F~_s(p).
    const RationalPoly& F(int s) const { return table_.f(s); }
    /// E~_s(p), vanishing at p = 0.
    const RationalPoly& E(int s) const { return table_.e(s); }
    /// k_s = E~_s(1).
    const BigRational& k(int s) const;
    /// F~_s(q) / (q^2 (1 - q^2)) as a polynomial.
    const RationalPoly& reduced_F(int s) const;
    /// G~_{n,s}(q) / (q^2 (1 - q^2)) as a polynomial.
    RationalPoly reduced_G(int n, int s) const;

    /// Exact int |F~_s/(q^2(1-q^2))| dq between p and the endpoint (1 or 0).
    double int_abs_F(int s, const BigRational& from, const BigRational& to) const;
    double int_abs_G(int n, int s, const BigRational& from, const BigRational& to) const;

    /// psi(p) = p^2 (1 - p^2)(5p^2 - 1)/4 and d/dxi = -p^2(1-p^2) d/dp.
    static RationalPoly psi();
    static RationalPoly xi_weight();

private:
    const AbsPolyIntegrator& integrator(int n, int s) const;

    CoefficientTable<RationalPoly> table_;
    std::vector<RationalPoly> reduced_;
    std::vector<BigRational> k_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<AbsPolyIntegrator>> integrators_;
};

struct BesselModel {
    double nu = 0.0;
    std::shared_ptr<const BesselCoefficients> coeffs;

    int order() const { return coeffs->order(); }
};

/// Throws std::invalid_argument unless nu > 0 and N >= 1.
BesselModel build_bessel_model(double nu, int N);
/// Shares the nu-independent coefficients with an existing model.
BesselModel with_nu(const BesselModel& model, double nu);

enum class BesselKind { I, K };

/// Throws std::invalid_argument unless z > 0.
double xi_of_z(double z);
BigFloat xi_of_z(const BigFloat& z);
double p_of_z(double z);

/// ln of the truncated expansion (terms s = 1..n-1 in the exponent).
BigFloat log_I_expansion(const BesselModel& model, const BigFloat& z, int n, int digits);
BigFloat log_K_expansion(const BesselModel& model, const BigFloat& z, int n, int digits);
BigFloat eval_I_expansion(const BesselModel& model, const BigFloat& z, int n, int digits);
BigFloat eval_K_expansion(const BesselModel& model, const BigFloat& z, int n, int digits);

struct EtaResult {
    BigFloat eta;
    int digits = 0;
    /// Agreement (in digits) between the working and the escalated precision.
    double agreement_digits = 0.0;
};

/// oracle / expansion - 1 in log form. The computation is repeated with 10 more
/// digits; std::runtime_error is thrown when the two disagree in the leading 7
/// significant digits of eta.
EtaResult eta_exact(const BesselModel& model, double z, int n, BesselKind kind, int digits = default_digits());

/// Bound on |eta_{n,j}| with r shifted terms (r = 0: no tail).
BoundReport bound_I(const BesselModel& model, double z, int n, int r);
BoundReport bound_K(const BesselModel& model, double z, int n, int r);
BoundReport bessel_bound(const BesselModel& model, double z, int n, int r, BesselKind kind);

/// Phi_n(nu, p) = |E~_n(p) - k_n| / nu^n.
double phi_diag(const BesselModel& model, int n, double p);
/// Omega_n(nu, p) = (2/nu^n) int_p^1 |F~_n(q)| dq / (q^2(1-q^2)).
double omega_diag(const BesselModel& model, int n, double p);

struct TableRow {
    double z = 0.0;
    double eta_abs = 0.0;
    BoundReport report;
};

std::vector<TableRow> reproduce_table(const BesselModel& model, int n, int r, const std::vector<double>& zs,
                                      BesselKind kind = BesselKind::I, int digits = default_digits());

/// "z,eta_abs,bound,formula" plus one line per row.
std::string table_csv(const std::vector<TableRow>& rows, int digits = 7);

enum class SingularPoint { infinity, pole };

/// Convergence of the error-control integrals for f ~ z^m, g ~ g0 z^{p_exp}
/// at infinity (f ~ z^m, g ~ z^{p_exp}) or at a pole (f ~ z^{-m}, g ~ g0 z^{-p_exp}).
bool check_convergence_conditions(double m, double p_exp, double g0, SingularPoint at);

/// Progressive path in the q = p variable: t = xi(q) for q from 1 (I) or 0 (K) to p.
PathSpec bessel_path(double nu, double p, BesselKind kind);

}  // namespace lg
