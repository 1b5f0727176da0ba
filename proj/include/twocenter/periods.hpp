#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twocenter/emmap.hpp"
#include "twocenter/flow.hpp"
#include "twocenter/model.hpp"
#include "twocenter/sturmian.hpp"

namespace twocenter {

/// Which torus when the preimage of (g,h) has two components.
///   S: First = well at nu = -pi/2 (symbol 1), Second = well at +pi/2 (symbol 2).
///   P: First = nu rotating forward, Second = backward (both with lambda > 0).
///   S', L: one torus (for L, Second is its retrograde copy on the other sheet).
enum class TorusSelector { First, Second };

enum class LambdaBranch { Lambda3, Lambda0 };
enum class NuBranch { Oscillation, Rotation };

std::string to_string(LambdaBranch b);
std::string to_string(NuBranch b);
std::string to_string(TorusSelector s);

struct TorusData {
    double g = 0.0;
    double h = 0.0;
    RegionType region;
    double T_lambda = 0.0;
    double T_nu = 0.0;
    double W = 0.0;
    LambdaBranch lambda_branch = LambdaBranch::Lambda3;
    NuBranch nu_branch = NuBranch::Oscillation;
};

/// NaN where a quantity is undefined at (g,h).
struct ModulusData {
    double k_plus_sq;
    double k_minus_sq;
    double k_c_sq;
    double f_p0;
    double f_p1;
    double f_m0;
};

namespace periods {

/// Closed forms without region checks. `mass` is m1+m2 for lambda, |m1-m2| for nu.
namespace formulas {
double t_lambda3(double g, double h, double mass);
double t_lambda0(double g, double h, double mass);
double t_nu_oscillation(double g, double h, double mass);
double t_nu_rotation(double g, double h, double mass);
}  // namespace formulas

struct LambdaPeriod {
    double value;
    LambdaBranch branch;
};
struct NuPeriod {
    double value;
    NuBranch branch;
};

LambdaPeriod period_lambda(double g, const Params& p);
NuPeriod period_nu(double g, const Params& p);
ModulusData modulus_data(double g, const Params& p);
TorusData rotation_number(double g, const Params& p);

struct WRange {
    double lo;
    double hi;
    bool contains(double w) const { return w > lo && w < hi; }
};

/// Open range of W over the region at energy p.h. Throws RegionEmpty.
WRange w_range(Region region, const Params& p);

struct GSolution {
    double g = 0.0;
    double W = 0.0;
    bool monotonicity_violation = false;
    int iterations = 0;
};

inline constexpr double kSolveTolerance = 1e-11;

GSolution solve_g(Region region, double w_target, const Params& p);

/// Reference points (q, p, 0) with angle zero: lambda at its maximum; nu at its
/// minimum turning point (oscillation) or nu = 0 (rotation).
flow::Vec<3> reference_lambda(double g, const Params& p);
flow::Vec<3> reference_nu(double g, const Params& p, TorusSelector sel);

/// State at angles (theta_nu, theta_lambda) in [0,1)^2 of the chosen torus.
PhaseState torus_point(const TorusData& torus, const Params& p, TorusSelector sel, double theta_nu,
                       double theta_lambda);

/// Window phases measured along the 1-dof orbits from the reference points.
/// Vertical: symbol '1' at nu = -pi/2, '2' at nu = +pi/2. Horizontal: '3' at lambda = 0.
sturmian::WindowPhases window_phases(double g, const Params& p, TorusSelector sel);

/// Numerical return times and the time-factor pieces
///   A = integral of cosh^2(lambda) over one lambda period, B = of sin^2(nu) over one nu period.
struct MeasuredPeriods {
    double T_lambda = 0.0;
    double T_nu = 0.0;
    double A_lambda = 0.0;
    double B_nu = 0.0;
    double W() const { return T_nu / T_lambda; }
};
MeasuredPeriods measured_periods(double g, const Params& p, TorusSelector sel);

/// Physical time elapsed over the closed orbit of slope p/q: p A - q B.
double physical_period(const MeasuredPeriods& m, Rational w);

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int n = 2;
    double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

struct AtlasRow {
    double g = 0.0;
    double h = 0.0;
    RegionType region;
    std::optional<TorusData> torus;
};

/// Row-major over h then g; regular points carry their TorusData.
std::vector<AtlasRow> atlas(double m1, double m2, const GridAxis& g_axis, const GridAxis& h_axis);

}  // namespace periods
}  // namespace twocenter
