#include <cmath>

#include <gtest/gtest.h>

#include "lg/bounds.hpp"

using lg::BigRational;
using lg::Complex;
using lg::RationalPoly;

namespace {

RationalPoly xi_poly(std::initializer_list<BigRational> cs) { return RationalPoly(std::vector<BigRational>(cs), "xi"); }

lg::CoefficientTable<RationalPoly> table_for(const RationalPoly& psi, int N)
{
    return lg::build_coefficients<RationalPoly>(psi, lg::plain_derivation(), N, lg::anchored_antiderivative(0),
                                                "poly", "0");
}

lg::BoundInputs inputs(const RationalPoly& psi, int n, double u, double a, double b, int N = 8)
{
    lg::BoundInputs in;
    in.coeffs = lg::poly_evaluator(table_for(psi, N));
    in.n = n;
    in.path = lg::PathSpec{Complex(u, 0), a < b ? 1 : 2, {lg::Arc::segment(a, b)}};
    return in;
}

}  // namespace

TEST(Thm1, ZeroPotentialGivesZero)
{
    for (int n = 1; n <= 4; ++n) {
        const auto rep = lg::bound_thm1(inputs(RationalPoly("xi"), n, 10, 0, 1));
        EXPECT_EQ(rep.bound, 0.0);
        EXPECT_EQ(lg::bound_kappa(inputs(RationalPoly("xi"), n, 10, 0, 1)), 0.0);
    }
}

TEST(Thm1, FirstOrderClosedForm)
{
    // chi_1 = psi = 1 + xi on [0, 1]: int |psi| = 3/2, no T term.
    const auto rep = lg::bound_thm1(inputs(xi_poly({1, 1}), 1, 10, 0, 1));
    EXPECT_NEAR(rep.int_abs_chi, 1.5, 1e-13);
    EXPECT_EQ(rep.int_abs_T, 0.0);
    EXPECT_NEAR(rep.bound, 0.15 * std::exp(0.15), 1e-14);
    EXPECT_EQ(rep.formula, lg::Formula::thm1_eps1);
    EXPECT_NEAR(rep.log_prefactor, 10.0, 1e-14);
}

TEST(Thm1, SecondBranchAndCertification)
{
    auto in = inputs(xi_poly({1, 1}), 2, 10, 1, 0);
    const auto rep = lg::bound_thm1(in);
    EXPECT_EQ(rep.formula, lg::Formula::thm1_eps2);
    EXPECT_GT(rep.bound, 0.0);
    in.path.j = 1;
    try {
        lg::bound_thm1(in);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("progressive"), std::string::npos);
    }
}

TEST(Thm1, OrderBeyondModelIsRejected)
{
    auto in = inputs(xi_poly({1, 1}), 9, 10, 0, 1, 8);
    EXPECT_THROW(lg::bound_thm1(in), std::invalid_argument);
}

TEST(Thm1, KappaIsTheStrippedBound)
{
    auto in = inputs(xi_poly({0, 1, 1}), 3, 7, 0, 2);
    const auto rep = lg::bound_thm1(in);
    EXPECT_EQ(lg::bound_kappa(in), rep.bound);
    EXPECT_EQ(rep.bound, lg::kappa_value(7, 3, rep.int_abs_chi, rep.int_abs_T));
}

TEST(Thm1Property, MajorantDominatesDirect)
{
    for (int n = 1; n <= 6; ++n) {
        auto in = inputs(xi_poly({1, -3, 0, 2}), n, 6, -1, 1.5);
        const double direct = lg::bound_thm1(in).bound;
        in.chi_mode = lg::ChiMode::majorant;
        const double major = lg::bound_thm1(in).bound;
        EXPECT_TRUE(std::isfinite(direct));
        EXPECT_TRUE(std::isfinite(major));
        EXPECT_GE(major, direct * (1 - 1e-12));
    }
}

TEST(Thm1Property, MonotoneUnderPathExtension)
{
    auto in = inputs(xi_poly({2, 0, -1}), 3, 8, 0, 1);
    const double b1 = lg::bound_thm1(in).bound;
    in.path.arcs.push_back(lg::Arc::segment(1.0, 2.0));
    const double b2 = lg::bound_thm1(in).bound;
    in.path.arcs.push_back(lg::Arc::segment(2.0, 3.5));
    const double b3 = lg::bound_thm1(in).bound;
    EXPECT_LE(b1, b2);
    EXPECT_LE(b2, b3);
}

TEST(Thm2, ReducesToThm1AtZeroShift)
{
    auto in = inputs(xi_poly({1, 2}), 3, 9, 0, 1);
    in.r = 0;
    const auto a = lg::bound_thm1(in);
    const auto b = lg::bound_thm2(in);
    EXPECT_EQ(a.bound, b.bound);
    EXPECT_EQ(a.formula, b.formula);
}

TEST(Thm2, ZeroInputsGiveZero)
{
    auto in = inputs(RationalPoly("xi"), 2, 9, 0, 1);
    in.r = 2;
    in.e_diff = {0.0, 0.0};
    EXPECT_EQ(lg::bound_thm2(in).bound, 0.0);
    in.e_diff = {0.0};
    EXPECT_THROW(lg::bound_thm2(in), std::invalid_argument);
}

TEST(Thm2, HandAssembled)
{
    const RationalPoly psi = xi_poly({1, 1});
    const auto t = table_for(psi, 8);
    auto in = inputs(psi, 2, 12, 0, 1);
    in.r = 2;
    for (int s = 2; s <= 3; ++s)
        in.e_diff.push_back(lg::to_double(t.e(s).eval(BigRational(1)) - t.e(s).eval(BigRational(0))));
    const auto rep = lg::bound_thm2(in);
    const auto ref = lg::bound_thm1(inputs(psi, 4, 12, 0, 1));
    const double z = in.e_diff[0].real() / 144.0 + in.e_diff[1].real() / 1728.0;
    const double expected = std::abs(std::expm1(z)) + ref.bound * std::exp(z);
    EXPECT_NEAR(rep.bound, expected, 1e-14 * expected);
    EXPECT_NEAR(rep.tail_sum, z, 1e-18);
    EXPECT_EQ(rep.formula, lg::Formula::thm2_eps1);
    // Series head majorant is never smaller.
    in.tail_mode = lg::TailMode::series;
    EXPECT_GE(lg::bound_thm2(in).bound, rep.bound);
}

TEST(Thm2, WarnsPastSoftLimit)
{
    auto in = inputs(xi_poly({1, 1}), 3, 4, 0, 1);
    in.r = 3;
    in.e_diff = {0.0, 0.0, 0.0};
    EXPECT_FALSE(lg::bound_thm2(in).warnings.empty());
    in.n0 = 10;
    EXPECT_TRUE(lg::bound_thm2(in).warnings.empty());
}

TEST(Thm2, StableHeadTerm)
{
    const auto rep = lg::assemble_thm2(10, 1, 1, 1, 0.0, 0.0, Complex(1e-20, 0.0));
    // Accurate to rounding, and never below the true head.
    EXPECT_NEAR(rep.tail_term, 1e-20, 1e-34);
    EXPECT_GE(rep.tail_term, 1e-20);
    const auto rot = lg::assemble_thm2(10, 1, 1, 1, 0.0, 0.0, Complex(0.0, 1e-18));
    EXPECT_NEAR(rot.tail_term, 1e-18, 1e-33);
}

TEST(DeltaExponent, Values)
{
    EXPECT_EQ(lg::bound_delta_exponent(0.0), 0.0);
    EXPECT_NEAR(lg::bound_delta_exponent(1.0 - std::exp(-1.0)), 1.0, 1e-15);
    const double k = 4.15e-8;
    EXPECT_NEAR(lg::bound_delta_exponent(k), k + k * k / 2, 1e-22);
    EXPECT_NEAR(lg::bound_delta_exponent(k), 4.1500001e-8, 1e-15);
    EXPECT_THROW(lg::bound_delta_exponent(1.0), std::domain_error);
}

TEST(EtaDerivative, Values)
{
    EXPECT_EQ(lg::bound_eta_derivative(0.0, 20.0, 0.1), 0.0);
    const double expect = -std::log1p(-(400.1 / 399.9) * 1e-8);
    EXPECT_NEAR(lg::bound_eta_derivative(1e-8, 20.0, 0.1), expect, 1e-22);
    EXPECT_EQ(lg::bound_eta_derivative(1e-8, 20.0, 0.1, lg::Branch::plus, Complex(1.0), Complex(0.0)),
              lg::bound_eta_derivative(1e-8, 20.0, 0.1));
    // sigma = 2, sigma' = 1 on the minus branch: B = |-20 + 0.2|.
    const double A = 800.0, B = 19.8;
    EXPECT_NEAR(lg::bound_eta_derivative(1e-6, 20.0, 0.1, lg::Branch::minus, Complex(2.0), Complex(1.0)),
                -std::log1p(-(A + B) * 1e-6 / (A - B)), 1e-20);
    EXPECT_THROW(lg::bound_eta_derivative(1e-3, 1.0, 2.0), std::domain_error);
    EXPECT_THROW(lg::bound_eta_derivative(0.9, 2.0, 1.0), std::domain_error);
}

TEST(Thm3, ZeroPhiReducesToThm1)
{
    const RationalPoly psi = xi_poly({1, -1, 3});
    const lg::PathSpec path{Complex(9, 0), 1, {lg::Arc::segment(0.0, 1.0)}};
    for (int n = 1; n <= 4; ++n) {
        const auto g = lg::build_coefficients_general<RationalPoly>(RationalPoly("xi"), {psi}, lg::plain_derivation(),
                                                                    6, lg::Branch::plus, lg::anchored_antiderivative(0));
        const auto rep3 = lg::bound_thm3(lg::thm3_inputs_from_table(g, n, path));
        const auto rep1 = lg::bound_thm1(inputs(psi, n, 9, 0, 1));
        EXPECT_NEAR(rep3.bound, rep1.bound, 1e-12 * rep1.bound) << "n=" << n;
        EXPECT_EQ(rep3.formula, lg::Formula::thm3);
    }
}

TEST(Thm3, ConstantPhi)
{
    const RationalPoly phi = RationalPoly::constant(2, "xi");
    const RationalPoly psi = xi_poly({0, 1});
    const lg::PathSpec path{Complex(10, 0), 1, {lg::Arc::segment(0.0, 1.0)}};
    const auto g = lg::build_coefficients_general<RationalPoly>(phi, {psi}, lg::plain_derivation(), 4,
                                                                lg::Branch::plus, lg::anchored_antiderivative(0));
    auto in = lg::thm3_inputs_from_table(g, 3, path);
    const auto sampled = lg::bound_thm3(in);
    in.kappa0 = 1.0 / 1.1;
    in.kappa2 = 2.0;
    const auto given = lg::bound_thm3(in);
    EXPECT_NEAR(sampled.bound, given.bound, 1e-15 * given.bound);
    const double k0 = 1.0 / 1.1;
    const double lead = k0 * std::pow(10.0, -3) * given.int_abs_chi;
    const double hand =
        lead * std::exp((2 + 2 * k0 + k0 * 2.0 / 10) * given.int_abs_T / 10 + k0 * given.int_abs_phi_prime / 10 + lead);
    EXPECT_NEAR(given.bound, hand, 1e-15 * hand);
    EXPECT_EQ(given.int_abs_phi_prime, 0.0);
}

TEST(Thm3, ZeroChiAndInfiniteKappa0)
{
    lg::Thm3Inputs in;
    in.n = 2;
    in.path = lg::PathSpec{Complex(10, 0), 1, {lg::Arc::segment(0.0, 1.0)}};
    in.chi = [](Complex) { return Complex(0); };
    in.T = [](Complex) { return Complex(1); };
    in.phi = [](Complex) { return Complex(0); };
    in.phi_prime = [](Complex) { return Complex(0); };
    EXPECT_EQ(lg::bound_thm3(in).bound, 0.0);
    in.phi = [](Complex) { return Complex(-20); };
    EXPECT_THROW(lg::bound_thm3(in), std::domain_error);
}

TEST(Evaluators, JetMatchesPolynomial)
{
    const RationalPoly psi = xi_poly({1, -2, 0, BigRational(1, 3)});
    const auto pe = lg::poly_evaluator(table_for(psi, 5));
    const auto je = lg::jet_evaluator(
        [psi](double t, std::size_t len) {
            std::vector<double> d;
            RationalPoly p = psi;
            for (std::size_t k = 0; k < len; ++k) {
                d.push_back(p.eval(t));
                p = p.derivative();
            }
            return lg::Jet::from_derivatives(t, d);
        },
        5);
    for (double t : {-0.7, 0.0, 0.4, 1.3}) {
        const auto a = pe.values(t);
        const auto b = je.values(t);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-10 * (1 + std::abs(a[k])));
    }
    EXPECT_THROW(je.values(Complex(0.1, 0.2)), std::invalid_argument);
}

TEST(Evaluators, ChiAndT)
{
    const std::vector<Complex> F{1.0, 2.0, 3.0};
    EXPECT_EQ(lg::chi_value(F, 1, 10.0), Complex(2.0));
    EXPECT_EQ(lg::T_value(F, 1, 10.0), Complex(0.0));
    // chi_3 = 2F_3 - G_{3,1}/u - G_{3,2}/u^2; G_{3,1} = 2F_1F_2, G_{3,2} = F_2^2.
    EXPECT_NEAR(std::abs(lg::chi_value(F, 3, 10.0) - Complex(6.0 - 0.4 - 0.04)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(lg::T_value(F, 3, 10.0) - Complex(1.2)), 0.0, 1e-15);
}

TEST(Report, CsvAndJson)
{
    EXPECT_EQ(lg::format_sci(4.152548e-08, 3), "4.15e-08");
    EXPECT_EQ(lg::format_sci(1234.5, 7), "1.234500e+03");
    EXPECT_EQ(lg::bound_csv_header(), "z,n,r,exact_error,bound,formula");
    lg::BoundReport rep;
    rep.n = 5;
    rep.r = 5;
    rep.bound = 7.418606e-12;
    rep.formula = lg::Formula::thm2_eps1;
    EXPECT_EQ(lg::bound_csv_row(0.01, rep, std::nullopt), "1.000000e-02,5,5,,7.418606e-12,thm2_eps1");
    EXPECT_EQ(lg::bound_csv_row(0.01, rep, 7.4186e-12, 3), "1.00e-02,5,5,7.42e-12,7.42e-12,thm2_eps1");
    const auto j = rep.to_json();
    EXPECT_EQ(j.at("formula"), "thm2_eps1");
    EXPECT_EQ(j.at("n"), 5);
}
