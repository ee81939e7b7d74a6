#include "lg/rational_poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lg {

BigRational parse_rational(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto valid_int = [](std::string_view t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size())
            return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    if (den[0] == '+')
        den.erase(0, 1);
    BigRational q;
    q.get_num() = BigInt(num);
    q.get_den() = BigInt(den);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const BigRational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const BigRational& q)
{
    // Truncates toward zero (at most one ulp low).
    return q.get_d();
}

BigRational from_double(double x)
{
    if (!std::isfinite(x))
        throw std::invalid_argument("cannot convert non-finite double to a rational");
    BigRational q(x);
    q.canonicalize();
    return q;
}

RationalPoly::RationalPoly(std::vector<BigRational> coeffs, std::string var)
    : coeffs_(std::move(coeffs)), var_(std::move(var))
{
    for (auto& c : coeffs_)
        c.canonicalize();
    canonicalize();
}

RationalPoly RationalPoly::constant(const BigRational& c, std::string var)
{
    return RationalPoly(std::vector<BigRational>{c}, std::move(var));
}

RationalPoly RationalPoly::monomial(const BigRational& c, std::size_t power, std::string var)
{
    std::vector<BigRational> cs(power + 1);
    cs[power] = c;
    return RationalPoly(std::move(cs), std::move(var));
}

RationalPoly RationalPoly::variable(std::string var)
{
    return monomial(1, 1, std::move(var));
}

BigRational RationalPoly::coeff(std::size_t k) const
{
    return k < coeffs_.size() ? coeffs_[k] : BigRational(0);
}

const BigRational& RationalPoly::leading() const
{
    if (coeffs_.empty())
        throw std::domain_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

void RationalPoly::canonicalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

void RationalPoly::require_same_var(const RationalPoly& other) const
{
    if (var_ != other.var_)
        throw std::invalid_argument("variable mismatch: '" + var_ + "' vs '" + other.var_ + "'");
}

RationalPoly RationalPoly::operator-() const
{
    RationalPoly r(*this);
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs)
{
    require_same_var(rhs);
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] += rhs.coeffs_[i];
    canonicalize();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs)
{
    require_same_var(rhs);
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] -= rhs.coeffs_[i];
    canonicalize();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs)
{
    require_same_var(rhs);
    if (coeffs_.empty() || rhs.coeffs_.empty()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<BigRational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
    BigRational tmp;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            mpq_mul(tmp.get_mpq_t(), coeffs_[i].get_mpq_t(), rhs.coeffs_[j].get_mpq_t());
            out[i + j] += tmp;
        }
    }
    coeffs_ = std::move(out);
    canonicalize();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const BigRational& c)
{
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& x : coeffs_)
        x *= c;
    return *this;
}

RationalPoly RationalPoly::derivative() const
{
    std::vector<BigRational> out;
    if (coeffs_.size() > 1) {
        out.resize(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            out[k - 1] = coeffs_[k] * BigRational(static_cast<long>(k));
    }
    return RationalPoly(std::move(out), var_);
}

RationalPoly RationalPoly::antiderivative() const
{
    if (coeffs_.empty())
        return RationalPoly(var_);
    std::vector<BigRational> out(coeffs_.size() + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        out[k + 1] = coeffs_[k] / BigRational(static_cast<long>(k + 1));
    return RationalPoly(std::move(out), var_);
}

BigRational RationalPoly::eval(const BigRational& x) const
{
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

double RationalPoly::eval(double x) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + it->get_d();
    return acc;
}

std::complex<double> RationalPoly::eval(std::complex<double> x) const
{
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + it->get_d();
    return acc;
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& divisor) const
{
    require_same_var(divisor);
    if (divisor.is_zero())
        throw std::domain_error("polynomial division by zero");
    std::vector<BigRational> rem = coeffs_;
    const std::size_t dn = divisor.coeffs_.size();
    if (rem.size() < dn)
        return {RationalPoly(var_), *this};
    std::vector<BigRational> quot(rem.size() - dn + 1);
    const BigRational& lead = divisor.coeffs_.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        BigRational c = rem[k + dn - 1] / lead;
        quot[k] = c;
        if (c == 0)
            continue;
        for (std::size_t i = 0; i < dn; ++i)
            rem[k + i] -= c * divisor.coeffs_[i];
    }
    rem.resize(dn - 1);
    return {RationalPoly(std::move(quot), var_), RationalPoly(std::move(rem), var_)};
}

RationalPoly RationalPoly::exact_div(const RationalPoly& divisor) const
{
    auto [q, r] = divmod(divisor);
    if (!r.is_zero())
        throw std::domain_error("inexact polynomial division: remainder " + r.to_string());
    return q;
}

RationalPoly RationalPoly::normalized_abs_leading() const
{
    if (is_zero())
        return *this;
    BigRational s = abs(leading());
    return *this * BigRational(1 / s);
}

std::string RationalPoly::to_string() const
{
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const auto& c = coeffs_[k];
        if (c == 0)
            continue;
        if (!first)
            os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0)
            os << "-";
        BigRational a = abs(c);
        if (k == 0 || a != 1)
            os << lg::to_string(a);
        if (k > 0) {
            if (a != 1)
                os << "*";
            os << var_;
            if (k > 1)
                os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

RationalPoly gcd(RationalPoly a, RationalPoly b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = r.normalized_abs_leading();
    }
    if (a.is_zero())
        return a;
    return a * BigRational(1 / a.leading());
}

RationalPoly square_free_part(const RationalPoly& p)
{
    if (p.degree() <= 0)
        return p;
    auto g = gcd(p, p.derivative());
    return p.exact_div(g);
}

void to_json(nlohmann::json& j, const RationalPoly& p)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : p.coeffs())
        coeffs.push_back(to_string(c));
    j = nlohmann::json{{"var", p.var()}, {"coeffs", coeffs}};
}

void from_json(const nlohmann::json& j, RationalPoly& p)
{
    std::vector<BigRational> cs;
    for (const auto& c : j.at("coeffs"))
        cs.push_back(parse_rational(c.get<std::string>()));
    p = RationalPoly(std::move(cs), j.at("var").get<std::string>());
}

}  // namespace lg
