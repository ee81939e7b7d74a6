#include "lg/diff_ring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lg {

Jet Jet::constant(double point, double value, std::size_t length)
{
    std::vector<double> c(length, 0.0);
    if (length > 0)
        c[0] = value;
    return Jet(point, std::move(c));
}

Jet Jet::variable(double point, std::size_t length)
{
    std::vector<double> c(length, 0.0);
    if (length > 0)
        c[0] = point;
    if (length > 1)
        c[1] = 1.0;
    return Jet(point, std::move(c));
}

Jet Jet::from_derivatives(double point, const std::vector<double>& derivs)
{
    std::vector<double> c(derivs.size());
    double fact = 1.0;
    for (std::size_t k = 0; k < derivs.size(); ++k) {
        if (k > 0)
            fact *= static_cast<double>(k);
        c[k] = derivs[k] / fact;
    }
    return Jet(point, std::move(c));
}

Jet Jet::exponential(double point, double lambda, std::size_t length)
{
    std::vector<double> c(length);
    double term = std::exp(lambda * point);
    for (std::size_t k = 0; k < length; ++k) {
        c[k] = term;
        term *= lambda / static_cast<double>(k + 1);
    }
    return Jet(point, std::move(c));
}

double Jet::derivative_value(std::size_t k) const
{
    if (k >= c_.size())
        throw std::out_of_range("jet too short for requested derivative");
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i)
        fact *= static_cast<double>(i);
    return c_[k] * fact;
}

Jet Jet::derivative() const
{
    if (c_.empty())
        return *this;
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 0; k + 1 < c_.size(); ++k)
        d[k] = static_cast<double>(k + 1) * c_[k + 1];
    return Jet(point_, std::move(d));
}

namespace {

void require_same_point(const Jet& a, const Jet& b)
{
    if (a.point() != b.point())
        throw std::invalid_argument("jets expanded at different points");
}

}  // namespace

Jet& Jet::operator+=(const Jet& rhs)
{
    require_same_point(*this, rhs);
    c_.resize(std::min(c_.size(), rhs.c_.size()));
    for (std::size_t k = 0; k < c_.size(); ++k)
        c_[k] += rhs.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs)
{
    require_same_point(*this, rhs);
    c_.resize(std::min(c_.size(), rhs.c_.size()));
    for (std::size_t k = 0; k < c_.size(); ++k)
        c_[k] -= rhs.c_[k];
    return *this;
}

Jet operator*(const Jet& a, const Jet& b)
{
    require_same_point(a, b);
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j)
            out[i + j] += a.c_[i] * b.c_[j];
    return Jet(a.point_, std::move(out));
}

Jet operator*(Jet a, double s)
{
    for (auto& c : a.c_)
        c *= s;
    return a;
}

Jet scale(const Jet& a, const BigRational& q)
{
    return a * to_double(q);
}

bool is_zero(const Jet& a)
{
    return std::all_of(a.taylor().begin(), a.taylor().end(), [](double c) { return std::abs(c) <= 1e-12; });
}

}  // namespace lg
