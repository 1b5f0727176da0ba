#include "twocenter/model.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "twocenter/error.hpp"

namespace twocenter {

Params Params::make(double m1, double m2, double h)
{
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw std::invalid_argument("masses must be positive");
    if (!(h < 0.0)) throw std::invalid_argument("energy must be negative (bounded motion), got h = " + std::to_string(h));
    return Params{m1, m2, h};
}

namespace model {

namespace {

constexpr double kCentreTolerance = 1e-14;

struct Distances {
    double r1;
    double r2;
};

Distances distances(const CartesianState& s)
{
    const Distances d{std::hypot(s.x + 1.0, s.y), std::hypot(s.x - 1.0, s.y)};
    if (d.r1 < kCentreTolerance || d.r2 < kCentreTolerance) {
        throw CollisionError("state is at a centre");
    }
    return d;
}

}  // namespace

double hamiltonian(const CartesianState& s, const Params& p)
{
    const auto [r1, r2] = distances(s);
    return 0.5 * (s.px * s.px + s.py * s.py) - p.m1 / r1 - p.m2 / r2;
}

double second_integral(const CartesianState& s, const Params& p)
{
    const auto [r1, r2] = distances(s);
    const double ang = s.x * s.py - s.y * s.px;
    return 0.5 * ang * ang + 0.5 * s.px * s.px + s.x * (p.m1 / r1 - p.m2 / r2);
}

CartesianState from_regularized(const PhaseState& ps)
{
    const double ch = std::cosh(ps.lambda);
    const double sh = std::sinh(ps.lambda);
    const double sn = std::sin(ps.nu);
    const double cn = std::cos(ps.nu);
    // Jacobian rows (d/dlambda, d/dnu) = [[a, b], [b, -a]], J^2 = D I.
    const double a = sh * sn;
    const double b = ch * cn;
    const double d = a * a + b * b;
    CartesianState s{ch * sn, sh * cn, 0.0, 0.0};
    if (d > 0.0) {
        s.px = (a * ps.p_lambda + b * ps.p_nu) / d;
        s.py = (b * ps.p_lambda - a * ps.p_nu) / d;
    }
    return s;
}

PhaseState to_regularized(const CartesianState& s)
{
    if (std::hypot(s.x - 1.0, s.y) < kCentreTolerance || std::hypot(s.x + 1.0, s.y) < kCentreTolerance) {
        throw BranchAmbiguity("the regularizing cover is branched at the centres");
    }
    const std::complex<double> w = std::asin(std::complex<double>(s.x, s.y));
    double nu = w.real();
    double lambda = w.imag();
    if (lambda < 0.0) {
        lambda = -lambda;
        nu = std::numbers::pi - nu;
    }
    if (nu > std::numbers::pi) nu -= 2.0 * std::numbers::pi;
    PhaseState ps;
    ps.lambda = lambda;
    ps.nu = nu;
    const double a = std::sinh(lambda) * std::sin(nu);
    const double b = std::cosh(lambda) * std::cos(nu);
    ps.p_lambda = a * s.px + b * s.py;
    ps.p_nu = b * s.px - a * s.py;
    return ps;
}

double potential_lambda(double lambda, const Params& p)
{
    const double c = std::cosh(lambda);
    return -p.total() * c - p.h * c * c;
}

double potential_nu(double nu, const Params& p)
{
    const double s = std::sin(nu);
    return p.difference() * s + p.h * s * s;
}

double force_lambda(double lambda, const Params& p)
{
    return std::sinh(lambda) * (p.total() + 2.0 * p.h * std::cosh(lambda));
}

double force_nu(double nu, const Params& p)
{
    return -std::cos(nu) * (p.difference() + 2.0 * p.h * std::sin(nu));
}

SeparatedEnergies separated_hamiltonians(const PhaseState& ps, const Params& p)
{
    return {0.5 * ps.p_lambda * ps.p_lambda + potential_lambda(ps.lambda, p),
            0.5 * ps.p_nu * ps.p_nu + potential_nu(ps.nu, p)};
}

double time_factor(const PhaseState& ps)
{
    const double sh = std::sinh(ps.lambda);
    const double cn = std::cos(ps.nu);
    return sh * sh + cn * cn;
}

PhaseState deck_transform(const PhaseState& ps)
{
    PhaseState out = ps;
    out.lambda = -ps.lambda;
    out.nu = std::numbers::pi - ps.nu;
    out.p_lambda = -ps.p_lambda;
    out.p_nu = -ps.p_nu;
    return out;
}

}  // namespace model
}  // namespace twocenter
