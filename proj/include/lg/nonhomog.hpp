#pragma once

// Particular solution of W'' - {u^2 + psi} W = varpi:
//   G(u, xi) ~ u^{-2} sum_s G_s(xi) u^{-2s},  G_0 = -varpi,  G_{s+1} = G_s'' - psi G_s,
// with the error bound for the truncated sum.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lg/diff_ring.hpp"
#include "lg/paths.hpp"

namespace lg {

template <DiffRing R>
std::vector<R> build_G_sequence(const R& psi, const R& varpi, const Derivation<R>& D, int N)
{
    if (N < 0)
        throw std::invalid_argument("build_G_sequence: N >= 0 required");
    std::vector<R> G{scale(varpi, BigRational(-1))};
    G.reserve(static_cast<std::size_t>(N) + 1);
    for (int s = 0; s < N; ++s)
        G.push_back(D(D(G.back())) - psi * G.back());
    return G;
}

template <DiffRing R>
struct NonhomogModel {
    R psi;
    R varpi;
    Derivation<R> D;
    std::vector<R> G;  // G_0 .. G_N

    int order() const { return static_cast<int>(G.size()) - 1; }
};

template <DiffRing R>
NonhomogModel<R> make_nonhomog_model(R psi, R varpi, Derivation<R> D, int N)
{
    auto G = build_G_sequence(psi, varpi, D, N);
    return {std::move(psi), std::move(varpi), std::move(D), std::move(G)};
}

/// u^{-2} sum_{s=0}^{n-1} G_s u^{-2s} from the values G_0(xi) .. G_{n-1}(xi).
Complex eval_G_expansion(const std::vector<Complex>& G_at_xi, Complex u, int n);

inline double value_at(const RationalPoly& a, double xi) { return a.eval(xi); }
/// Value of a jet; xi must be its expansion point.
double value_at(const Jet& a, double xi);

template <DiffRing R>
Complex eval_G_expansion(const NonhomogModel<R>& model, Complex u, double xi, int n)
{
    if (n < 0 || n > model.order() + 1)
        throw std::out_of_range("eval_G_expansion: n exceeds the model order");
    std::vector<Complex> vals;
    for (int s = 0; s < n; ++s)
        vals.emplace_back(value_at(model.G[static_cast<std::size_t>(s)], xi), 0.0);
    return eval_G_expansion(vals, u, n);
}

/// G_s(t) and G_s'(t) along a path.
struct GEvaluator {
    int order = 0;
    std::function<Complex(int, Complex)> G;
    std::function<Complex(int, Complex)> G_prime;
};

/// Polynomial model in the variable xi.
GEvaluator poly_G_evaluator(const NonhomogModel<RationalPoly>& model);

/// Rebuilds G_0..G_N from Taylor jets of psi and varpi at each real point.
GEvaluator jet_G_evaluator(std::function<Jet(double, std::size_t)> psi_jet,
                           std::function<Jet(double, std::size_t)> varpi_jet, int N);

enum class HeadMode {
    abs_of_sum,  // |sum_s G_s(xi) / u^{2s+2}|
    sum_of_abs,  // sum_s |G_s(xi) / u^{2s+2}|
};

struct Thm4Inputs {
    GEvaluator G;
    int n = 0;
    int r = 0;
    /// Path from alpha_1 to alpha_2 through xi; Re(u t) must be monotonic along it.
    PathSpec path;
    Complex xi{};
    std::function<Complex(Complex)> psi;
    HeadMode head_mode = HeadMode::abs_of_sum;
    /// Exact sup of |G_{n+r}| on the path, when the caller has one.
    std::optional<double> sup_G;
    std::size_t sup_samples = 4096;
    CertifyOptions certify;
    QuadratureOptions quadrature;
};

struct Thm4Report {
    int n = 0;
    int r = 0;
    double head = 0.0;            // shifted form only
    double abs_G_at_xi = 0.0;     // |G_{n+r}(xi)|
    double int_abs_G_prime = 0.0;
    double sup_G = 0.0;
    bool sup_sampled = true;      // false when the supremum is exact
    double L = 0.0;               // sup|G| + (1/2) int|G'|
    double int_abs_psi = 0.0;
    double bound = 0.0;
    std::string formula;          // "thm4_r0" or "thm4_shifted"

    nlohmann::json to_json() const;
};

/// r = 0: |u|^{-2n-2}{|G_n(xi)| + (1/2) int|G_n'|} + L_n int|psi| / (2|u|^{2n+3} (1 - int|psi|/(2|u|))).
/// r >= 1: the head sum over s = n..n+r-1 plus the r = 0 form at order n + r.
/// Throws std::domain_error unless int|psi| < 2|u|.
Thm4Report bound_thm4(const Thm4Inputs& in);

/// psi = 0, varpi = e^{lambda xi}: exact particular solution -e^{lambda xi}/(u^2 - lambda^2).
struct ExponentialForcingRow {
    double u = 0.0;
    int n = 0;
    int r = 0;
    double exact_error = 0.0;
    double bound_r0 = 0.0;
    double bound_shifted = 0.0;
};

/// Bounds on the real window [xi - half_width, xi + half_width] for every
/// u in `us` and n = 1..n_max.
std::vector<ExponentialForcingRow> exponential_forcing_demo(double lambda, double xi, const std::vector<double>& us,
                                                            int n_max, int r, double half_width = 1.0);

}  // namespace lg
