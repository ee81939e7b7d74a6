// lgx: coefficient tables, error bounds, Bessel tables/figures, the
// nonhomogeneous demo and oracle queries from the command line.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lg/bessel.hpp"
#include "lg/bounds.hpp"
#include "lg/coefficients.hpp"
#include "lg/nonhomog.hpp"
#include "lg/oracle.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& what)
{
    std::vector<double> out;
    for (const auto& item : split(s, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            throw std::invalid_argument(what + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument(what + ": empty list");
    return out;
}

lg::RationalPoly parse_poly(const std::string& s, const std::string& var)
{
    std::vector<lg::BigRational> cs;
    for (const auto& item : split(s, ','))
        cs.push_back(lg::parse_rational(item));
    return lg::RationalPoly(std::move(cs), var);
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void require(bool ok, const std::string& condition)
{
    if (!ok)
        throw std::invalid_argument("precondition violated: " + condition);
}

lg::BesselKind parse_kind(const std::string& s)
{
    if (s == "I")
        return lg::BesselKind::I;
    if (s == "K")
        return lg::BesselKind::K;
    throw std::invalid_argument("--kind must be I or K");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exponential-form Liouville-Green expansions with computable error bounds"};
    app.require_subcommand(1);
    // Let --output and --digits-out follow the subcommand too.
    app.fallthrough();
    std::string out_path;
    int sig = 7;
    app.add_option("--output", out_path, "Write to a file instead of stdout");
    app.add_option("--digits-out", sig, "Significant digits in CSV output")->check(CLI::Range(1, 30));

    // coeffs ----------------------------------------------------------------
    auto* coeffs = app.add_subcommand("coeffs", "Coefficient table for W'' = (u^2 + psi) W");
    std::string c_model = "poly";
    std::string c_psi;
    std::string c_var = "xi";
    std::string c_anchor = "0";
    double c_at = 0.0;
    int c_N = 4;
    coeffs->add_option("--model", c_model, "poly (psi polynomial in xi) or jet (psi derivatives at a point)")
        ->check(CLI::IsMember({"poly", "jet"}));
    coeffs->add_option("--psi", c_psi, "poly: ascending rational coefficients; jet: psi, psi', psi'', ... at --at")
        ->required();
    coeffs->add_option("--var", c_var, "Variable name for poly output");
    coeffs->add_option("--anchor", c_anchor, "Reference point where every E_s vanishes (poly)");
    coeffs->add_option("--at", c_at, "Expansion point (jet)");
    coeffs->add_option("--N", c_N, "Number of coefficients")->check(CLI::Range(1, 64));

    // bound -----------------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "Error bound for a polynomial psi(xi) along a progressive path");
    std::string b_psi;
    std::string b_path;
    std::string b_chi = "direct";
    std::string b_tail = "exact";
    int b_n = 2;
    int b_r = 0;
    bound->add_option("--psi", b_psi, "Ascending rational coefficients of psi(xi)")->required();
    bound->add_option("--path", b_path, "PathSpec JSON file")->required();
    bound->add_option("--n", b_n, "Truncation order")->check(CLI::Range(1, 40));
    bound->add_option("--r", b_r, "Shift order")->check(CLI::Range(0, 40));
    bound->add_option("--chi-mode", b_chi, "direct or majorant")->check(CLI::IsMember({"direct", "majorant"}));
    bound->add_option("--tail-mode", b_tail, "exact or series")->check(CLI::IsMember({"exact", "series"}));

    // bessel ----------------------------------------------------------------
    auto* bessel = app.add_subcommand("bessel", "Modified Bessel functions of large order");
    bessel->require_subcommand(1);
    auto* btable = bessel->add_subcommand("table", "Relative error and bound on a z grid");
    double t_nu = 20;
    int t_n = 5;
    int t_r = 5;
    std::string t_z = "0.01,0.1,1,10,100";
    std::string t_kind = "I";
    std::string t_out = "csv";
    btable->add_option("--nu", t_nu, "Order nu > 0");
    btable->add_option("--n", t_n, "Truncation order")->check(CLI::Range(1, 40));
    btable->add_option("--r", t_r, "Shift order")->check(CLI::Range(0, 40));
    btable->add_option("--z", t_z, "Comma-separated z values");
    btable->add_option("--kind", t_kind, "I or K")->check(CLI::IsMember({"I", "K"}));
    btable->add_option("--out", t_out, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* bfig = bessel->add_subcommand("figure", "Phi/Omega diagnostics sampled on (0,1)");
    std::string f_diag = "phi";
    double f_nu = 20;
    int f_n = 5;
    int f_samples = 512;
    bfig->add_option("--diag", f_diag, "phi, omega or ratio")->check(CLI::IsMember({"phi", "omega", "ratio"}));
    bfig->add_option("--nu", f_nu, "Order nu > 0");
    bfig->add_option("--n", f_n, "Order n")->check(CLI::Range(1, 40));
    bfig->add_option("--samples", f_samples, "Number of p samples")->check(CLI::Range(1, 1000000));
    std::string f_out = "csv";
    bfig->add_option("--out", f_out, "csv")->check(CLI::IsMember({"csv"}));

    auto* bcoeffs = bessel->add_subcommand("coeffs", "Exact F~_s, E~_s, k_s");
    int bc_N = 8;
    std::string bc_out = "json";
    bcoeffs->add_option("--N", bc_N, "Number of coefficients")->check(CLI::Range(1, 40));
    bcoeffs->add_option("--out", bc_out, "json")->check(CLI::IsMember({"json"}));

    // nonhomog --------------------------------------------------------------
    auto* nonhomog = app.add_subcommand("nonhomog", "Particular-solution expansion");
    nonhomog->require_subcommand(1);
    auto* demo = nonhomog->add_subcommand("demo", "psi = 0, forcing e^{lambda xi}: remainder against the bounds");
    double d_lambda = 0.5;
    double d_xi = 0.0;
    double d_half = 1.0;
    std::string d_u = "5,10,20";
    int d_nmax = 5;
    int d_r = 1;
    demo->add_option("--lambda", d_lambda, "Forcing exponent");
    demo->add_option("--xi", d_xi, "Evaluation point");
    demo->add_option("--half-width", d_half, "Half-width of the real window around xi");
    demo->add_option("--u", d_u, "Comma-separated u values");
    demo->add_option("--n-max", d_nmax, "Largest truncation order")->check(CLI::Range(1, 30));
    demo->add_option("--r", d_r, "Shift for the shifted bound")->check(CLI::Range(0, 30));

    // oracle ----------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "Arbitrary-precision reference values");
    oracle->require_subcommand(1);
    std::string o_nu = "20";
    std::string o_x = "20";
    int o_digits = lg::default_digits();
    auto* obi = oracle->add_subcommand("besseli", "I_nu(x)");
    auto* obk = oracle->add_subcommand("besselk", "K_nu(x)");
    auto* olg = oracle->add_subcommand("lngamma", "ln Gamma(x)");
    for (auto* sub : {obi, obk, olg}) {
        if (sub != olg)
            sub->add_option("--nu", o_nu, "Order (decimal string)");
        sub->add_option("--x", o_x, "Argument (decimal string)");
        sub->add_option("--digits", o_digits, "Significant digits")->check(CLI::Range(5, 10000));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        Output out(out_path);
        std::ostream& os = out.os();

        if (*coeffs) {
            if (c_model == "poly") {
                const auto psi = parse_poly(c_psi, c_var);
                const auto anchor = lg::parse_rational(c_anchor);
                const auto table = lg::build_coefficients<lg::RationalPoly>(
                    psi, lg::plain_derivation(), c_N, lg::anchored_antiderivative(anchor), "poly",
                    c_var + "=" + lg::to_string(anchor));
                os << lg::to_json(table).dump(2) << '\n';
            } else {
                const auto d = parse_doubles(c_psi, "--psi");
                require(static_cast<int>(d.size()) >= c_N, "jet model needs at least N derivative values of psi");
                const auto psi = lg::Jet::from_derivatives(c_at, d);
                const auto table = lg::build_coefficients<lg::Jet>(psi, lg::jet_derivation(), c_N);
                nlohmann::json F = nlohmann::json::array();
                for (const auto& f : table.F) {
                    nlohmann::json derivs = nlohmann::json::array();
                    for (std::size_t k = 0; k < f.length(); ++k)
                        derivs.push_back(f.derivative_value(k));
                    F.push_back(derivs);
                }
                os << nlohmann::json{{"model", "jet"}, {"N", c_N}, {"at", c_at}, {"F_derivatives", F}, {"E", nullptr}}
                          .dump(2)
                   << '\n';
            }
            return 0;
        }

        if (*bound) {
            std::ifstream pf(b_path);
            require(static_cast<bool>(pf), "path file '" + b_path + "' readable");
            nlohmann::json pj;
            try {
                pf >> pj;
            } catch (const nlohmann::json::exception& e) {
                throw std::invalid_argument(std::string("path file is not valid JSON: ") + e.what());
            }
            lg::BoundInputs in;
            in.path = lg::PathSpec::from_json(pj);
            const auto psi = parse_poly(b_psi, "xi");
            const auto table = lg::build_coefficients<lg::RationalPoly>(psi, lg::plain_derivation(), b_n + b_r,
                                                                        lg::anchored_antiderivative(0));
            in.coeffs = lg::poly_evaluator(table);
            in.n = b_n;
            in.r = b_r;
            in.chi_mode = b_chi == "direct" ? lg::ChiMode::direct : lg::ChiMode::majorant;
            in.tail_mode = b_tail == "exact" ? lg::TailMode::exact : lg::TailMode::series;
            if (b_r > 0) {
                const lg::Complex a = in.path.arcs.front().from();
                const lg::Complex x = in.path.arcs.back().to();
                require(std::isfinite(a.real()) && std::isfinite(a.imag()),
                        "shifted bound needs a finite path start to form E_s(xi) - E_s(alpha)");
                for (int s = b_n; s < b_n + b_r; ++s)
                    in.e_diff.push_back(table.e(s).eval(x) - table.e(s).eval(a));
            }
            const auto rep = lg::bound_thm2(in);
            os << rep.to_json().dump(2) << '\n';
            return 0;
        }

        if (*btable) {
            require(t_nu > 0, "nu > 0");
            const auto zs = parse_doubles(t_z, "--z");
            for (double z : zs)
                require(z > 0, "z > 0");
            require(t_n + t_r <= 40, "n + r <= 40");
            const auto model = lg::build_bessel_model(t_nu, t_n + t_r);
            const auto kind = parse_kind(t_kind);
            const int digits = lg::default_digits();
            const auto rows = lg::reproduce_table(model, t_n, t_r, zs, kind, digits);
            if (t_out == "csv") {
                os << "# nu=" << t_nu << " n=" << t_n << " r=" << t_r << " kind=" << t_kind << " digits=" << digits
                   << " nu^-n=" << lg::format_sci(std::pow(t_nu, -t_n), sig) << '\n';
                os << lg::table_csv(rows, sig);
            } else {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& row : rows)
                    arr.push_back({{"z", row.z}, {"eta_abs", row.eta_abs}, {"report", row.report.to_json()}});
                os << nlohmann::json{{"nu", t_nu}, {"n", t_n}, {"r", t_r}, {"kind", t_kind}, {"rows", arr}}.dump(2)
                   << '\n';
            }
            return 0;
        }

        if (*bfig) {
            require(f_nu > 0, "nu > 0");
            const auto model = lg::build_bessel_model(f_nu, f_n);
            os << "# diag=" << f_diag << " nu=" << f_nu << " n=" << f_n << " samples=" << f_samples << '\n';
            os << "p," << f_diag << '\n';
            for (int i = 1; i <= f_samples; ++i) {
                const double p = static_cast<double>(i) / static_cast<double>(f_samples + 1);
                double v = 0.0;
                if (f_diag == "phi")
                    v = lg::phi_diag(model, f_n, p);
                else if (f_diag == "omega")
                    v = lg::omega_diag(model, f_n, p);
                else
                    v = lg::phi_diag(model, f_n, p) / lg::omega_diag(model, f_n, p);
                os << lg::format_sci(p, sig) << ',' << lg::format_sci(v, sig) << '\n';
            }
            return 0;
        }

        if (*bcoeffs) {
            const lg::BesselCoefficients c(bc_N);
            nlohmann::json j = lg::to_json(c.table());
            nlohmann::json k = nlohmann::json::array();
            for (int s = 1; s <= bc_N; ++s)
                k.push_back(lg::to_string(c.k(s)));
            j["k"] = k;
            j["derivation"] = "-p^2(1-p^2) d/dp";
            os << j.dump(2) << '\n';
            return 0;
        }

        if (*demo) {
            const auto us = parse_doubles(d_u, "--u");
            const auto rows = lg::exponential_forcing_demo(d_lambda, d_xi, us, d_nmax, d_r, d_half);
            os << "# lambda=" << d_lambda << " xi=" << d_xi << " window=[" << d_xi - d_half << "," << d_xi + d_half
               << "]\n";
            os << "u,n,r,exact_error,bound_r0,bound_shifted\n";
            for (const auto& row : rows)
                os << lg::format_sci(row.u, sig) << ',' << row.n << ',' << row.r << ',' << lg::format_sci(row.exact_error, sig) << ','
                   << lg::format_sci(row.bound_r0, sig) << ',' << lg::format_sci(row.bound_shifted, sig) << '\n';
            return 0;
        }

        if (*obi || *obk || *olg) {
            lg::PrecisionScope scope(o_digits);
            lg::BigFloat x;
            lg::BigFloat nu;
            try {
                x = lg::BigFloat(o_x);
                nu = lg::BigFloat(o_nu);
            } catch (const std::exception&) {
                throw std::invalid_argument("--nu/--x must be decimal numbers");
            }
            require(x > 0, "x > 0");
            lg::BigFloat v;
            if (*obi) {
                require(nu >= 0, "nu >= 0");
                v = lg::bessel_I(nu, x, o_digits);
            } else if (*obk) {
                v = lg::bessel_K(nu, x, o_digits);
            } else {
                v = lg::ln_gamma(x, o_digits);
            }
            os << lg::to_decimal(v, o_digits) << '\n';
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}
