#pragma once

// Error bounds for the exponential-form LG expansion:
//   relative bounds for the two branches (order n, optionally shifted by r),
//   the exponent-form and derivative bounds, and the u-dependent variant.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lg/coefficients.hpp"
#include "lg/paths.hpp"

namespace lg {

enum class Formula {
    thm1_eps1,
    thm1_eps2,
    thm2_eps1,
    thm2_eps2,
    thm3,
    kappa,
    eta_deriv,
    delta_exp,
    thm4_r0,
    thm4_shifted,
};

std::string to_string(Formula f);

struct BoundReport {
    Formula formula = Formula::thm1_eps1;
    int n = 0;
    int r = 0;
    double int_abs_chi = 0.0;
    double int_abs_T = 0.0;
    double int_abs_phi_prime = 0.0;
    /// Shifted form: Re of the E-difference sum inside the exponent.
    double tail_sum = 0.0;
    /// Shifted form: head term |e^z - 1| (or its series majorant).
    double tail_term = 0.0;
    /// ln|e^{+-u xi}|; multiply the relative bound by exp(log_prefactor) for the absolute one.
    double log_prefactor = 0.0;
    double bound = 0.0;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const;
};

/// "%.*e" with `digits` significant digits.
std::string format_sci(double x, int digits = 7);

std::string bound_csv_header();
/// z, n, r, exact_error (empty when absent), bound, formula.
std::string bound_csv_row(double z, const BoundReport& rep, std::optional<double> exact_error, int digits = 7);

// ---------------------------------------------------------------------------
// Assembly from precomputed integrals.

/// |u|^{-n} I_chi exp{4 I_T / |u| + |u|^{-n} I_chi}.
double kappa_value(double abs_u, int n, double int_abs_chi, double int_abs_T);

BoundReport assemble_thm1(double abs_u, int n, int j, double int_abs_chi, double int_abs_T);

enum class TailMode {
    exact,   // |e^z - 1|
    series,  // sum_{k>=1} |z|^k / k! = e^{|z|} - 1
};

/// |e^z - 1| + |u|^{-(n+r)} I_chi exp{4 I_T/|u| + |u|^{-(n+r)} I_chi + Re z},
/// with I_chi and I_T taken at order n + r.
BoundReport assemble_thm2(double abs_u, int n, int r, int j, double int_abs_chi, double int_abs_T, Complex tail,
                          TailMode mode = TailMode::exact);

/// kappa0 |u|^{-n} I_chi exp{(2 + 2 kappa0 + kappa0 kappa2/|u|) I_T/|u| + kappa0 I_phi'/|u| + kappa0 I_chi/|u|^n}.
BoundReport assemble_thm3(double abs_u, int n, double int_abs_chi, double int_abs_T, double int_abs_phi_prime,
                          double kappa0, double kappa2);

/// -ln(1 - kappa). Throws std::domain_error when kappa >= 1.
double bound_delta_exponent(double kappa);

/// Derivative bound -ln[1 - (A + B) kappa / (A - B)] with A = |u^2 sigma| and
/// B = |+-u sigma' + sigma T_n(u, xi)|; sigma = 1, sigma' = 0 by default.
/// Throws std::domain_error when A <= B or the logarithm's argument is not positive.
double bound_eta_derivative(double kappa, Complex u, Complex T_at_xi, Branch branch = Branch::plus,
                            std::optional<Complex> sigma = std::nullopt,
                            std::optional<Complex> sigma_prime = std::nullopt);

// ---------------------------------------------------------------------------
// Front ends over a coefficient model and a progressive path.

/// Values F_1(t) .. F_order(t) at a point of the path.
struct CoefficientEvaluator {
    int order = 0;
    std::function<std::vector<Complex>(Complex)> values;
};

/// Evaluates the polynomials of a table whose variable is xi itself.
CoefficientEvaluator poly_evaluator(const CoefficientTable<RationalPoly>& table);

/// Rebuilds the coefficients from a Taylor jet of psi at every (real) point.
/// `psi_jet(t, length)` must return a jet of psi at t with the given length.
/// Complex points are rejected.
CoefficientEvaluator jet_evaluator(std::function<Jet(double, std::size_t)> psi_jet, int order);

/// chi_n(u, t) = 2F_n - sum_s G_{n,s} u^{-s} from coefficient values.
Complex chi_value(const std::vector<Complex>& F, int n, Complex u);
/// T_n(u, t) = sum_{s=0}^{n-2} F_{s+1} u^{-s}.
Complex T_value(const std::vector<Complex>& F, int n, Complex u);

enum class ChiMode {
    direct,    // integrate |chi_n| itself
    majorant,  // 2 int|F_n| + sum_s |u|^{-s} int|G_{n,s}|
};

struct BoundInputs {
    CoefficientEvaluator coeffs;
    int n = 1;
    int r = 0;
    PathSpec path;
    /// E_s(xi) - E_s(alpha_j) for s = n .. n+r-1.
    std::vector<Complex> e_diff;
    ChiMode chi_mode = ChiMode::direct;
    TailMode tail_mode = TailMode::exact;
    /// Soft limit for n + r; defaults to floor|u|.
    std::optional<int> n0;
    CertifyOptions certify;
    QuadratureOptions quadrature;
};

/// Throws std::invalid_argument for an uncertified path or out-of-range orders;
/// QuadratureError for divergent integrals.
BoundReport bound_thm1(const BoundInputs& in);
/// r = 0 gives exactly bound_thm1.
BoundReport bound_thm2(const BoundInputs& in);
double bound_kappa(const BoundInputs& in);

struct Thm3Inputs {
    int n = 1;
    PathSpec path;
    /// chi_n^{+-}(u, t), T_n^{+-}(u, t), phi(t), phi'(t) along the path.
    std::function<Complex(Complex)> chi;
    std::function<Complex(Complex)> T;
    std::function<Complex(Complex)> phi;
    std::function<Complex(Complex)> phi_prime;
    /// Optional E_0^{+-}(t) for the monotonicity certificate.
    std::function<Complex(Complex)> e0;
    /// Sampled on the path (4096 points per arc) when absent.
    std::optional<double> kappa0;
    std::optional<double> kappa2;
    std::size_t sup_samples = 4096;
    CertifyOptions certify;
    QuadratureOptions quadrature;
};

/// Builds the phi-form evaluators from an exact table in the variable xi.
Thm3Inputs thm3_inputs_from_table(const SignedCoefficientTable<RationalPoly>& table, int n, PathSpec path);

BoundReport bound_thm3(const Thm3Inputs& in);

}  // namespace lg
