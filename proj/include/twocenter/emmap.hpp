#pragma once

#include <string>
#include <vector>

#include "twocenter/model.hpp"

namespace twocenter {

enum class Region { S, Sprime, L, P, Critical, Empty };

struct RegionType {
    Region tag = Region::Empty;
    int torus_count = 0;
    friend bool operator==(const RegionType&, const RegionType&) = default;
};

/// "S", "Sprime", "L", "P", "Critical", "Empty".
std::string to_string(Region r);
/// Accepts the names above plus "S'". Throws std::invalid_argument.
Region parse_region(const std::string& text);

struct CriticalData {
    double h_star = 0.0;
    double h_lambda = 0.0;
    double h_nu = 0.0;
    double kappa_pp = 0.0;
    double kappa_mp = 0.0;
    double kappa_mm = 0.0;
    double chi_p = 0.0;
    double chi_m = 0.0;
};

struct IntegralPoint {
    double g = 0.0;
    double h = 0.0;
    RegionType region;
};

namespace emmap {

/// Points this close to a relevant critical curve are Critical.
inline constexpr double kCriticalTolerance = 1e-10;

enum class LambdaMotion { None, Crossing, Well, Critical };
enum class NuMotion { None, SingleWell, TwoWell, Rotation, Critical };

struct Motion {
    LambdaMotion lambda = LambdaMotion::None;
    NuMotion nu = NuMotion::None;
};

CriticalData critical_data(const Params& p);

/// Motion type of each separated degree of freedom at level g (energy p.h).
Motion motion(double g, const Params& p);

RegionType classify(double g, const Params& p);

struct Boundary {
    double g = 0.0;
    /// Curve name(s): kappa_pp, kappa_mp, kappa_mm, chi_p, chi_m; coincident curves joined by '='.
    std::string label;
};

/// g-values at energy p.h where the classification changes, ascending.
std::vector<Boundary> region_boundaries(const Params& p);

struct RegionInterval {
    RegionType region;
    Boundary lower;
    Boundary upper;
};

/// Non-empty open g-intervals between consecutive boundaries.
std::vector<RegionInterval> region_intervals(const Params& p);

/// Distinct region tags present at energy p.h, in order of increasing g.
std::vector<Region> regions_present(const Params& p);

}  // namespace emmap
}  // namespace twocenter
