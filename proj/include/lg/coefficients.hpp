#pragma once

// Coefficients of the exponential-form Liouville-Green expansion
//
//     W ~ exp{ +-u xi + sum_s (+-1)^s E_s(xi) / u^s },   E_s' = F_s,
//
// for W'' = (u^2 + psi) W, together with the functionals T_n, chi_n, G_{n,s}
// that enter the error bounds. Everything is generic over a differential ring
// so the same code runs on exact polynomials and on numeric Taylor jets.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lg/diff_ring.hpp"

namespace lg {

/// Branch of the expansion: plus is exp(+u xi) (j = 1), minus is exp(-u xi) (j = 2).
enum class Branch { plus = 1, minus = 2 };

inline int branch_index(Branch b) { return static_cast<int>(b); }
inline double branch_sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

template <DiffRing R>
struct CoefficientTable {
    R psi;
    std::vector<R> F;                 // F[s-1] holds F_s
    std::optional<std::vector<R>> E;  // E[s-1] holds E_s, when the ring integrates
    std::string model_tag;
    std::string reference_point;
    Derivation<R> derivation;

    int order() const { return static_cast<int>(F.size()); }
    bool has_E() const { return E.has_value(); }

    const R& f(int s) const
    {
        if (s < 1 || s > order())
            throw std::out_of_range("F_" + std::to_string(s) + " outside table of order " + std::to_string(order()));
        return F[static_cast<std::size_t>(s - 1)];
    }

    const R& e(int s) const
    {
        if (!E)
            throw std::logic_error("E coefficients unavailable: ring has no antiderivative");
        if (s < 1 || s > order())
            throw std::out_of_range("E_" + std::to_string(s) + " outside table of order " + std::to_string(order()));
        return (*E)[static_cast<std::size_t>(s - 1)];
    }
};

/// F_1 = psi/2, F_2 = -D psi / 4,
/// F_{s+1} = -D F_s / 2 - (1/2) sum_{j=1}^{s-1} F_j F_{s-j}   (s >= 2),
/// and E_s = antiderivative(F_s) when one is supplied.
template <DiffRing R>
CoefficientTable<R> build_coefficients(const R& psi, Derivation<R> D, int N, Antiderivative<R> antiderivative = {},
                                       std::string model_tag = "user", std::string reference_point = "")
{
    if (N < 1)
        throw std::invalid_argument("build_coefficients: N >= 1 required, got " + std::to_string(N));
    if (!D)
        throw std::invalid_argument("build_coefficients: derivation required");

    const BigRational half(1, 2);
    CoefficientTable<R> table{psi, {}, std::nullopt, std::move(model_tag), std::move(reference_point), D};
    table.F.reserve(static_cast<std::size_t>(N));
    table.F.push_back(scale(psi, half));
    if (N >= 2)
        table.F.push_back(scale(D(psi), BigRational(-1, 4)));
    for (int s = 2; s < N; ++s) {
        R next = scale(D(table.F[s - 1]), -half);
        for (int j = 1; j <= s - 1; ++j)
            next = next - scale(table.F[j - 1] * table.F[s - j - 1], half);
        table.F.push_back(std::move(next));
    }

    if (antiderivative) {
        std::vector<R> E;
        E.reserve(table.F.size());
        for (const auto& f : table.F) {
            auto e = antiderivative(f);
            if (!e) {
                E.clear();
                break;
            }
            E.push_back(std::move(*e));
        }
        if (E.size() == table.F.size())
            table.E = std::move(E);
    }
    return table;
}

/// Even coefficients from the Wronskian relation
///     {u + sum_j F_{2j+1} u^{-2j-1}} exp{2 sum_j E_{2j} u^{-2j}} ~ C,
/// expanded in y = u^{-2} with every y^m coefficient (m >= 1) set to zero.
/// `f_odd` supplies F_1, F_3, ..., F_{2J-1}. The optional `anchor` removes the
/// additive constant (for polynomials: subtract the value at the reference point).
template <DiffRing R>
std::vector<R> even_E_via_abel(const std::vector<R>& f_odd, int J, const std::function<R(const R&)>& anchor = {})
{
    if (J < 1)
        throw std::invalid_argument("even_E_via_abel: J >= 1 required");
    if (static_cast<int>(f_odd.size()) < J)
        throw std::invalid_argument("even_E_via_abel: need " + std::to_string(J) + " odd coefficients, got " +
                                    std::to_string(f_odd.size()));

    // g = exp(h), h = 2 sum_m E_{2m} y^m; coefficients of y^0..y^J.
    std::vector<R> g{one_like(f_odd[0])};
    std::vector<R> h{zero_like(f_odd[0])};
    std::vector<R> out;
    for (int m = 1; m <= J; ++m) {
        // (1 + sum_j F_{2j-1} y^j) * g has vanishing y^m coefficient.
        R gm = zero_like(f_odd[0]);
        for (int j = 1; j <= m; ++j)
            gm = gm - f_odd[static_cast<std::size_t>(j - 1)] * g[static_cast<std::size_t>(m - j)];
        // m g_m = sum_{k=1}^m k h_k g_{m-k}
        R acc = zero_like(f_odd[0]);
        for (int k = 1; k < m; ++k)
            acc = acc + scale(h[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(m - k)], BigRational(k));
        R hm = gm - scale(acc, BigRational(1, m));
        g.push_back(gm);
        h.push_back(hm);
        R e = scale(hm, BigRational(1, 2));
        out.push_back(anchor ? anchor(e) : e);
    }
    return out;
}

template <DiffRing R>
struct ChiDecomposition {
    R leading;                 // 2 F_n
    std::vector<R> correction; // correction[s-1] holds G_{n,s}, s = 1..n-1
};

/// G_{n,s} = sum_{k=s}^{n-1} F_k F_{s+n-k-1}.
template <DiffRing R>
R g_functional(const CoefficientTable<R>& table, int n, int s)
{
    if (n < 2 || s < 1 || s > n - 1)
        throw std::out_of_range("G_{n,s} requires 1 <= s <= n-1");
    R acc = zero_like(table.f(1));
    for (int k = s; k <= n - 1; ++k)
        acc = acc + table.f(k) * table.f(s + n - k - 1);
    return acc;
}

/// chi_n = 2 F_n - sum_{s=1}^{n-1} G_{n,s} u^{-s}.
template <DiffRing R>
ChiDecomposition<R> chi_decomposition(const CoefficientTable<R>& table, int n)
{
    if (n < 1 || n > table.order())
        throw std::out_of_range("chi_decomposition: order " + std::to_string(n) + " outside 1.." +
                                std::to_string(table.order()));
    ChiDecomposition<R> out{scale(table.f(n), BigRational(2)), {}};
    for (int s = 1; s <= n - 1; ++s)
        out.correction.push_back(g_functional(table, n, s));
    return out;
}

/// Expands u^{n-1}{psi - 2T - (1/u) dT/dxi - T^2/u^2}, T = sum_{s=0}^{n-2} F_{s+1} u^{-s},
/// directly as a polynomial in 1/u and checks that it equals the
/// decomposition 2F_n - sum G_{n,s} u^{-s} coefficient by coefficient.
template <DiffRing R>
bool verify_chi_identity(const CoefficientTable<R>& table, int n)
{
    if (n < 1 || n > table.order())
        return false;
    const auto& D = table.derivation;
    const std::size_t len = static_cast<std::size_t>(2 * n - 1);  // powers u^0 .. u^{-(2n-2)}
    std::vector<R> brace(len, zero_like(table.psi));
    brace[0] = table.psi;
    for (int s = 0; s <= n - 2; ++s) {
        const R& Fs1 = table.f(s + 1);
        brace[static_cast<std::size_t>(s)] = brace[static_cast<std::size_t>(s)] - scale(Fs1, BigRational(2));
        brace[static_cast<std::size_t>(s + 1)] = brace[static_cast<std::size_t>(s + 1)] - D(Fs1);
        for (int t = 0; t <= n - 2; ++t)
            brace[static_cast<std::size_t>(s + t + 2)] = brace[static_cast<std::size_t>(s + t + 2)] - Fs1 * table.f(t + 1);
    }
    // Multiplying by u^{n-1} must leave no positive powers of u.
    for (int m = 0; m < n - 1; ++m)
        if (!is_zero(brace[static_cast<std::size_t>(m)]))
            return false;
    const auto chi = chi_decomposition(table, n);
    if (!is_zero(brace[static_cast<std::size_t>(n - 1)] - chi.leading))
        return false;
    for (int s = 1; s <= n - 1; ++s)
        if (!is_zero(brace[static_cast<std::size_t>(n - 1 + s)] + chi.correction[static_cast<std::size_t>(s - 1)]))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// u-dependent f: W'' = {u^2 + u phi + psi(u, xi)} W with psi = sum_s psi_s u^{-s}.

template <DiffRing R>
struct SignedCoefficientTable {
    Branch branch;
    R phi;
    std::vector<R> psi_series;        // psi_0 .. psi_{N-1}
    std::vector<R> F;                 // F[s] holds F_s^{+-}, s = 0..N
    std::optional<std::vector<R>> E;  // E[s] holds E_s^{+-}, s = 0..N
    Derivation<R> derivation;

    int order() const { return static_cast<int>(F.size()) - 1; }
    const R& f(int s) const
    {
        if (s < 0 || s > order())
            throw std::out_of_range("F_" + std::to_string(s) + " outside signed table");
        return F[static_cast<std::size_t>(s)];
    }
    const R& e(int s) const
    {
        if (!E)
            throw std::logic_error("E coefficients unavailable: ring has no antiderivative");
        if (s < 0 || s > order())
            throw std::out_of_range("E_" + std::to_string(s) + " outside signed table");
        return (*E)[static_cast<std::size_t>(s)];
    }
    /// psi_s as seen by the branch variable v = +-u, i.e. (+-1)^s psi_s; zero past the series.
    R psi_v(int s) const
    {
        if (s < 0 || s >= static_cast<int>(psi_series.size()))
            return zero_like(phi);
        const R& p = psi_series[static_cast<std::size_t>(s)];
        return (branch == Branch::minus && s % 2 == 1) ? scale(p, BigRational(-1)) : p;
    }
    R phi_v() const { return branch == Branch::minus ? scale(phi, BigRational(-1)) : phi; }
};

/// F_0 = +-phi/2, F_1 = psi_0/2 - phi^2/8 -+ phi'/4,
/// F_{s+1} = (+-1)^s psi_s/2 - D F_s / 2 - (1/2) sum_{j=0}^{s} F_j F_{s-j}.
///
/// The (+-1)^s factor on psi_s makes the minus branch the formal solution in
/// the variable v = -u; it is invisible when psi_s = 0 for s >= 1.
template <DiffRing R>
SignedCoefficientTable<R> build_coefficients_general(const R& phi, std::vector<R> psi_series, Derivation<R> D, int N,
                                                     Branch branch, Antiderivative<R> antiderivative = {})
{
    if (N < 1)
        throw std::invalid_argument("build_coefficients_general: N >= 1 required");
    if (psi_series.empty())
        throw std::invalid_argument("build_coefficients_general: psi_0 required");
    const BigRational half(1, 2);
    SignedCoefficientTable<R> t{branch, phi, std::move(psi_series), {}, std::nullopt, D};
    const R phi_v = t.phi_v();
    t.F.push_back(scale(phi_v, half));
    t.F.push_back(scale(t.psi_v(0), half) - scale(phi_v * phi_v, BigRational(1, 8)) - scale(D(phi_v), BigRational(1, 4)));
    for (int s = 1; s < N; ++s) {
        R next = scale(t.psi_v(s), half) - scale(D(t.F[static_cast<std::size_t>(s)]), half);
        for (int j = 0; j <= s; ++j)
            next = next - scale(t.F[static_cast<std::size_t>(j)] * t.F[static_cast<std::size_t>(s - j)], half);
        t.F.push_back(std::move(next));
    }
    if (antiderivative) {
        std::vector<R> E;
        for (const auto& f : t.F) {
            auto e = antiderivative(f);
            if (!e)
                return t;
            E.push_back(std::move(*e));
        }
        t.E = std::move(E);
    }
    return t;
}

/// Index convention for S_n^{+-} = sum_{s=1}^{n-1} (+-1)^s E_?/u^s.
///
/// `as_printed` pairs u^{-s} with E_{s+1}, the literal form of the u-dependent
/// statement; `unshifted` pairs it with E_s as in the u-independent case, which
/// is what the formal solution requires. Both are offered because the two
/// printed definitions disagree.
enum class ExponentIndexing { unshifted, as_printed };

/// Terms (s, coefficient) of S_n^{+-} so that S = sum coefficient * u^{-s}.
template <DiffRing R>
std::vector<std::pair<int, R>> exponent_sum_terms(const SignedCoefficientTable<R>& t, int n,
                                                  ExponentIndexing indexing = ExponentIndexing::unshifted)
{
    std::vector<std::pair<int, R>> out;
    const BigRational sign = t.branch == Branch::minus ? BigRational(-1) : BigRational(1);
    BigRational w = 1;
    for (int s = 1; s <= n - 1; ++s) {
        w *= sign;
        const R& e = indexing == ExponentIndexing::unshifted ? t.e(s) : t.e(s + 1);
        out.emplace_back(s, scale(e, w));
    }
    return out;
}

/// chi_n^{+-} as a polynomial in 1/v (v = +-u): returns X_0..X_{n-1} with
/// chi = sum_k X_k v^{-k}, plus the vanishing-check of all positive powers.
template <DiffRing R>
struct GeneralChi {
    std::vector<R> coefficients;
    bool positive_powers_vanish = false;
};

template <DiffRing R>
GeneralChi<R> chi_series_general(const SignedCoefficientTable<R>& t, int n)
{
    if (n < 1 || n > t.order())
        throw std::out_of_range("chi_series_general: order outside table");
    const auto& D = t.derivation;
    const R phi_v = t.phi_v();
    const R zero = zero_like(phi_v);
    const std::size_t len = static_cast<std::size_t>(2 * n - 1);
    std::vector<R> b(len, zero);
    for (std::size_t m = 0; m < len; ++m)
        b[m] = t.psi_v(static_cast<int>(m));
    b[0] = b[0] - scale(D(phi_v), BigRational(1, 2)) - scale(phi_v * phi_v, BigRational(1, 4));
    for (int s = 0; s <= n - 2; ++s) {
        const R& Fs1 = t.f(s + 1);  // T = sum_s F_{s+1} v^{-s}
        b[static_cast<std::size_t>(s)] = b[static_cast<std::size_t>(s)] - scale(Fs1, BigRational(2));
        b[static_cast<std::size_t>(s + 1)] = b[static_cast<std::size_t>(s + 1)] - phi_v * Fs1 - D(Fs1);
        for (int r = 0; r <= n - 2; ++r)
            b[static_cast<std::size_t>(s + r + 2)] = b[static_cast<std::size_t>(s + r + 2)] - Fs1 * t.f(r + 1);
    }
    GeneralChi<R> out;
    out.positive_powers_vanish = true;
    for (int m = 0; m < n - 1; ++m)
        if (!is_zero(b[static_cast<std::size_t>(m)]))
            out.positive_powers_vanish = false;
    for (int k = 0; k <= n - 1; ++k)
        out.coefficients.push_back(b[static_cast<std::size_t>(n - 1 + k)]);
    return out;
}

}  // namespace lg

namespace lg {

/// {"model", "N", "reference_point", "var", "F": [...], "E": [...] or null}.
inline nlohmann::json to_json(const CoefficientTable<RationalPoly>& table)
{
    nlohmann::json F = nlohmann::json::array();
    for (const auto& f : table.F)
        F.push_back(f);
    nlohmann::json E = nullptr;
    if (table.E) {
        E = nlohmann::json::array();
        for (const auto& e : *table.E)
            E.push_back(e);
    }
    return nlohmann::json{{"model", table.model_tag},
                          {"N", table.order()},
                          {"reference_point", table.reference_point},
                          {"var", table.psi.var()},
                          {"F", F},
                          {"E", E}};
}

}  // namespace lg
