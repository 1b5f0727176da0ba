#include "twocenter/periods.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "twocenter/elliptic.hpp"
#include "twocenter/error.hpp"
#include "twocenter/parallel.hpp"

namespace twocenter {

std::string to_string(LambdaBranch b) { return b == LambdaBranch::Lambda3 ? "lambda3" : "lambda0"; }
std::string to_string(NuBranch b) { return b == NuBranch::Oscillation ? "nu_o" : "nu_r"; }
std::string to_string(TorusSelector s) { return s == TorusSelector::First ? "first" : "second"; }

namespace periods {

using elliptic::complete_k_complement;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

// 1 - k^2 for k^2 = 1/2 + s/(2 sqrt(R)), R = s^2 + mass^2 - (g-h)^2 ... written so that the
// k^2 -> 1 end (s > 0) does not cancel.
double one_minus_k_sq(double g, double h, double mass, double sR)
{
    const double s = g + h;
    if (s > 0.0) return (mass - g + h) * (mass + g - h) / (2.0 * sR * (sR + s));
    return 0.5 - s / (2.0 * sR);
}

}  // namespace

namespace formulas {

double t_lambda3(double g, double h, double mass)
{
    const double sR = std::sqrt(4.0 * g * h + mass * mass);
    const double f = std::sqrt(2.0) / std::sqrt(-sR / h);
    return 4.0 / std::sqrt(2.0 * std::abs(h)) * f * complete_k_complement(one_minus_k_sq(g, h, mass, sR));
}

double t_lambda0(double g, double h, double mass)
{
    const double R = std::max(0.0, 4.0 * g * h + mass * mass);
    const double sR = std::sqrt(R);
    const double s = g + h;
    const double f = std::sqrt(2.0) / std::sqrt((-1.0 - g / h) - sR / h);
    // parameter 1/k^2 = 2 sR / (sR + s)
    const double mc = (g - h - mass) * (g - h + mass) / ((sR + s) * (sR + s));
    return 2.0 / std::sqrt(std::abs(h)) * f * complete_k_complement(mc);
}

double t_nu_oscillation(double g, double h, double mass)
{
    if (mass == 0.0) return 4.0 / std::sqrt(-2.0 * h) * complete_k_complement(g / h);
    const double sR = std::sqrt(4.0 * g * h + mass * mass);
    const double f = std::sqrt(2.0) / std::sqrt(-sR / h);
    return 4.0 / std::sqrt(2.0 * std::abs(h)) * f * complete_k_complement(one_minus_k_sq(g, h, mass, sR));
}

double t_nu_rotation(double g, double h, double mass)
{
    if (mass == 0.0) {
        const double k_sq = 1.0 - g / h;
        return 4.0 / (std::sqrt(k_sq) * std::sqrt(-2.0 * h)) * complete_k_complement((-g / h) / k_sq);
    }
    const double q = std::sqrt((g - h - mass) * (g - h + mass));
    const double s = g + h;
    const double mc = s < 0.0 ? -(4.0 * g * h + mass * mass) / (2.0 * q * (q - s)) : 0.5 + s / (2.0 * q);
    return 4.0 / (std::sqrt(2.0) * std::sqrt(q)) * complete_k_complement(mc);
}

}  // namespace formulas

LambdaPeriod period_lambda(double g, const Params& p)
{
    switch (emmap::motion(g, p).lambda) {
    case emmap::LambdaMotion::Crossing: return {formulas::t_lambda3(g, p.h, p.total()), LambdaBranch::Lambda3};
    case emmap::LambdaMotion::Well: return {formulas::t_lambda0(g, p.h, p.total()), LambdaBranch::Lambda0};
    case emmap::LambdaMotion::Critical: throw DivergenceError("lambda period: g is on a critical curve");
    case emmap::LambdaMotion::None: break;
    }
    throw RegionError("lambda period: no lambda motion at this (g, h)");
}

NuPeriod period_nu(double g, const Params& p)
{
    const double mass = std::abs(p.difference());
    switch (emmap::motion(g, p).nu) {
    case emmap::NuMotion::SingleWell:
    case emmap::NuMotion::TwoWell: return {formulas::t_nu_oscillation(g, p.h, mass), NuBranch::Oscillation};
    case emmap::NuMotion::Rotation: return {formulas::t_nu_rotation(g, p.h, mass), NuBranch::Rotation};
    case emmap::NuMotion::Critical: throw DivergenceError("nu period: g is on a critical curve");
    case emmap::NuMotion::None: break;
    }
    throw RegionError("nu period: no nu motion at this (g, h)");
}

ModulusData modulus_data(double g, const Params& p)
{
    const double h = p.h;
    const double sum = p.total();
    const double dif = std::abs(p.difference());
    ModulusData m{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    const double r_plus = 4.0 * g * h + sum * sum;
    if (r_plus > 0.0) {
        const double s = std::sqrt(r_plus);
        m.k_plus_sq = 0.5 + (g + h) / (2.0 * s);
        m.f_p0 = std::sqrt(2.0) / std::sqrt(-s / h);
        const double d1 = (-1.0 - g / h) - s / h;
        if (d1 > 0.0) m.f_p1 = std::sqrt(2.0) / std::sqrt(d1);
    }
    const double r_minus = 4.0 * g * h + dif * dif;
    if (r_minus > 0.0) {
        const double s = std::sqrt(r_minus);
        m.k_minus_sq = 0.5 + (g + h) / (2.0 * s);
        m.f_m0 = std::sqrt(2.0) / std::sqrt(-s / h);
    }
    const double q_sq = (g - h) * (g - h) - dif * dif;
    if (q_sq > 0.0) m.k_c_sq = 0.5 - (g + h) / (2.0 * std::sqrt(q_sq));
    return m;
}

TorusData rotation_number(double g, const Params& p)
{
    const RegionType r = emmap::classify(g, p);
    if (r.tag == Region::Critical) throw DivergenceError("rotation number: (g, h) is on a critical curve");
    if (r.tag == Region::Empty) throw RegionError("rotation number: (g, h) is not in the image of the integral map");
    const LambdaPeriod tl = period_lambda(g, p);
    const NuPeriod tn = period_nu(g, p);
    return {g, p.h, r, tl.value, tn.value, tn.value / tl.value, tl.branch, tn.branch};
}

namespace {

struct Branches {
    bool lambda_well;
    bool nu_rotation;
};

Branches branches_of(Region r)
{
    switch (r) {
    case Region::S:
    case Region::Sprime: return {false, false};
    case Region::L: return {false, true};
    case Region::P: return {true, true};
    default: throw RegionError("no rotation number for region " + to_string(r));
    }
}

double w_formula(Branches b, double g, const Params& p)
{
    const double dif = std::abs(p.difference());
    const double tl = b.lambda_well ? formulas::t_lambda0(g, p.h, p.total()) : formulas::t_lambda3(g, p.h, p.total());
    const double tn = b.nu_rotation ? formulas::t_nu_rotation(g, p.h, dif) : formulas::t_nu_oscillation(g, p.h, dif);
    return tn / tl;
}

// Limit of W at a boundary: 0 or infinity where one period diverges, else the formula value.
double w_limit(Branches b, const emmap::Boundary& bd, const Params& p)
{
    const CriticalData c = emmap::critical_data(p);
    const auto has = [&](const char* name) {
        const std::string& l = bd.label;
        const std::string n(name);
        for (std::size_t pos = 0; (pos = l.find(n, pos)) != std::string::npos; pos += n.size()) {
            const bool left = pos == 0 || l[pos - 1] == '=';
            const bool right = pos + n.size() == l.size() || l[pos + n.size()] == '=';
            if (left && right) return true;
        }
        return false;
    };
    const bool nu_separatrix = has("chi_m") || (has("kappa_mp") && !(p.h < c.h_nu));
    const bool lambda_separatrix = has("kappa_pp") && p.h > c.h_lambda;
    if (nu_separatrix) return std::numeric_limits<double>::infinity();
    if (lambda_separatrix) return 0.0;
    return w_formula(b, bd.g, p);
}

const emmap::RegionInterval& find_interval(Region region, const Params& p, std::vector<emmap::RegionInterval>& store)
{
    store = emmap::region_intervals(p);
    for (const auto& iv : store) {
        if (iv.region.tag == region) return iv;
    }
    throw RegionEmpty("region " + to_string(region) + " does not occur at h = " + std::to_string(p.h));
}

}  // namespace

WRange w_range(Region region, const Params& p)
{
    std::vector<emmap::RegionInterval> store;
    const auto& iv = find_interval(region, p, store);
    const Branches b = branches_of(region);
    const double a = w_limit(b, iv.lower, p);
    const double z = w_limit(b, iv.upper, p);
    return {std::min(a, z), std::max(a, z)};
}

GSolution solve_g(Region region, double w_target, const Params& p)
{
    const WRange range = w_range(region, p);
    if (!range.contains(w_target)) {
        throw OutOfRange("W = " + std::to_string(w_target) + " is outside (" + std::to_string(range.lo) + ", " +
                         std::to_string(range.hi) + ") for region " + to_string(region));
    }
    std::vector<emmap::RegionInterval> store;
    const auto& iv = find_interval(region, p, store);
    const double lo = iv.lower.g;
    const double hi = iv.upper.g;
    const double width = hi - lo;
    const double margin = 1.5 * emmap::kCriticalTolerance;

    // Uniform interior plus geometric clustering toward both ends, where W varies fastest.
    std::vector<double> gs;
    for (int i = 1; i < 64; ++i) gs.push_back(lo + width * i / 64.0);
    for (double d = width / 128.0; d > margin; d *= 0.5) {
        gs.push_back(lo + d);
        gs.push_back(hi - d);
    }
    gs.push_back(lo + margin);
    gs.push_back(hi - margin);
    std::sort(gs.begin(), gs.end());

    std::vector<std::pair<double, double>> samples;
    for (double g : gs) {
        try {
            samples.emplace_back(g, rotation_number(g, p).W);
        } catch (const Error&) {
        }
    }

    GSolution sol;
    int trend = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const int dir = samples[i].second > samples[i - 1].second ? 1 : samples[i].second < samples[i - 1].second ? -1 : 0;
        if (dir == 0 || (trend != 0 && dir != trend)) sol.monotonicity_violation = true;
        if (trend == 0) trend = dir;
    }

    for (std::size_t i = 1; i < samples.size(); ++i) {
        double a = samples[i - 1].first, fa = samples[i - 1].second - w_target;
        double z = samples[i].first, fz = samples[i].second - w_target;
        if (fa == 0.0) return {a, samples[i - 1].second, sol.monotonicity_violation, 0};
        if ((fa < 0.0) == (fz < 0.0)) continue;
        double best = std::abs(fa);
        for (int it = 1; it <= 200; ++it) {
            const double mid = 0.5 * (a + z);
            const double wm = rotation_number(mid, p).W;
            const double fm = wm - w_target;
            if (std::abs(fm) <= kSolveTolerance) return {mid, wm, sol.monotonicity_violation, it};
            best = std::min(best, std::abs(fm));
            if (mid <= a || mid >= z) break;
            if ((fm < 0.0) == (fa < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                z = mid;
            }
        }
        // W too steep in g: neighbouring doubles straddle the target
        char msg[160];
        std::snprintf(msg, sizeof msg, "solve_g: g resolution exhausted, closest |W - target| = %.3g > %.0e", best,
                      kSolveTolerance);
        throw NoConvergence(msg);
    }
    throw OutOfRange("W = " + std::to_string(w_target) + " is not attained away from the critical curves");
}

flow::Vec<3> reference_lambda(double g, const Params& p)
{
    const double M = p.total();
    const double c = (M + std::sqrt(std::max(0.0, M * M + 4.0 * p.h * g))) / (2.0 * std::abs(p.h));
    return {std::acosh(std::max(1.0, c)), 0.0, 0.0};
}

flow::Vec<3> reference_nu(double g, const Params& p, TorusSelector sel)
{
    const emmap::NuMotion m = emmap::motion(g, p).nu;
    if (m == emmap::NuMotion::Rotation) {
        const double speed = std::sqrt(2.0 * g);
        return {0.0, sel == TorusSelector::First ? speed : -speed, 0.0};
    }
    if (m != emmap::NuMotion::SingleWell && m != emmap::NuMotion::TwoWell) {
        throw RegionError("no regular nu motion at this (g, h)");
    }
    // Turning points solve h s^2 + delta s - g = 0 with s = sin(nu).
    const double delta = p.difference();
    const double root = std::sqrt(std::max(0.0, delta * delta + 4.0 * p.h * g));
    const double s_hi = (delta + root) / (2.0 * std::abs(p.h));
    const double s_lo = (delta - root) / (2.0 * std::abs(p.h));
    const bool upper_exists = delta + p.h < g;
    const bool lower_exists = -delta + p.h < g;
    bool upper = sel == TorusSelector::Second;
    if (!upper_exists) upper = false;
    if (!lower_exists) upper = true;
    if (upper) return {std::asin(std::clamp(s_hi, -1.0, 1.0)), 0.0, 0.0};
    return {-kPi - std::asin(std::clamp(s_lo, -1.0, 1.0)), 0.0, 0.0};
}

PhaseState torus_point(const TorusData& torus, const Params& p, TorusSelector sel, double theta_nu,
                       double theta_lambda)
{
    const auto l = flow::advance(flow::Axis::Lambda, p, reference_lambda(torus.g, p), theta_lambda * torus.T_lambda);
    const auto n = flow::advance(flow::Axis::Nu, p, reference_nu(torus.g, p, sel), theta_nu * torus.T_nu);
    PhaseState s;
    s.lambda = l[0];
    s.p_lambda = l[1];
    s.nu = n[0];
    s.p_nu = n[1];
    return s;
}

sturmian::WindowPhases window_phases(double g, const Params& p, TorusSelector sel)
{
    const TorusData torus = rotation_number(g, p);
    sturmian::WindowPhases w;
    if (torus.lambda_branch == LambdaBranch::Lambda3) {
        const auto hits = flow::crossings(flow::Axis::Lambda, p, reference_lambda(g, p), torus.T_lambda,
                                          [](const flow::Vec<3>& s) { return s[0]; });
        for (const auto& c : hits) {
            if (c.tau < torus.T_lambda) w.horizontal.push_back({c.tau / torus.T_lambda, '3'});
        }
    }
    const auto hits = flow::crossings(flow::Axis::Nu, p, reference_nu(g, p, sel), torus.T_nu,
                                      [](const flow::Vec<3>& s) { return std::cos(s[0]); });
    for (const auto& c : hits) {
        if (c.tau < torus.T_nu) w.vertical.push_back({c.tau / torus.T_nu, std::sin(c.state[0]) > 0.0 ? '2' : '1'});
    }
    return w;
}

MeasuredPeriods measured_periods(double g, const Params& p, TorusSelector sel)
{
    const TorusData torus = rotation_number(g, p);
    MeasuredPeriods m;
    {
        const auto hits = flow::crossings(flow::Axis::Lambda, p, reference_lambda(g, p), 1.25 * torus.T_lambda,
                                          [](const flow::Vec<3>& s) { return s[1]; });
        if (hits.size() < 2) throw NoConvergence("lambda return not found");
        m.T_lambda = hits[1].tau;
        m.A_lambda = hits[1].state[2];
    }
    {
        const auto start = reference_nu(g, p, sel);
        std::vector<flow::Crossing> hits;
        std::size_t idx = 1;
        if (torus.nu_branch == NuBranch::Rotation) {
            const double target = start[1] > 0.0 ? 2.0 * kPi : -2.0 * kPi;
            hits = flow::crossings(flow::Axis::Nu, p, start, 1.25 * torus.T_nu,
                                   [target](const flow::Vec<3>& s) { return s[0] - target; });
            idx = 0;
        } else {
            hits = flow::crossings(flow::Axis::Nu, p, start, 1.25 * torus.T_nu,
                                   [](const flow::Vec<3>& s) { return s[1]; });
        }
        if (hits.size() <= idx) throw NoConvergence("nu return not found");
        m.T_nu = hits[idx].tau;
        m.B_nu = hits[idx].state[2];
    }
    return m;
}

double physical_period(const MeasuredPeriods& m, Rational w)
{
    return static_cast<double>(w.p) * m.A_lambda - static_cast<double>(w.q) * m.B_nu;
}

std::vector<AtlasRow> atlas(double m1, double m2, const GridAxis& g_axis, const GridAxis& h_axis)
{
    std::vector<AtlasRow> rows(static_cast<std::size_t>(g_axis.n) * h_axis.n);
    parallel_for(rows.size(), [&](std::size_t k) {
        const int ih = static_cast<int>(k) / g_axis.n;
        const int ig = static_cast<int>(k) % g_axis.n;
        AtlasRow& row = rows[k];
        row.g = g_axis.at(ig);
        row.h = h_axis.at(ih);
        const Params p = Params::make(m1, m2, row.h);
        row.region = emmap::classify(row.g, p);
        if (row.region.tag != Region::Critical && row.region.tag != Region::Empty) row.torus = rotation_number(row.g, p);
    });
    return rows;
}

}  // namespace periods
}  // namespace twocenter
