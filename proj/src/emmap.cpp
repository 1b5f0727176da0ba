#include "twocenter/emmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twocenter {

std::string to_string(Region r)
{
    switch (r) {
    case Region::S: return "S";
    case Region::Sprime: return "Sprime";
    case Region::L: return "L";
    case Region::P: return "P";
    case Region::Critical: return "Critical";
    case Region::Empty: return "Empty";
    }
    return "?";
}

Region parse_region(const std::string& text)
{
    if (text == "S") return Region::S;
    if (text == "Sprime" || text == "S'") return Region::Sprime;
    if (text == "L") return Region::L;
    if (text == "P") return Region::P;
    if (text == "Critical") return Region::Critical;
    if (text == "Empty") return Region::Empty;
    throw std::invalid_argument("unknown region '" + text + "'");
}

namespace emmap {

namespace {

bool near(double g, double curve) { return std::abs(g - curve) < kCriticalTolerance; }

int tori(Region r)
{
    switch (r) {
    case Region::S:
    case Region::P: return 2;
    case Region::Sprime:
    case Region::L: return 1;
    default: return 0;
    }
}

}  // namespace

CriticalData critical_data(const Params& p)
{
    const double h = p.h;
    const double sum = p.total();
    const double dif = std::abs(p.difference());
    CriticalData c;
    c.h_star = -0.5 * (sum + 2.0 * std::sqrt(p.m1 * p.m2));
    c.h_lambda = -0.5 * sum;
    c.h_nu = -0.5 * dif + 0.0;
    c.kappa_pp = h + sum;
    c.kappa_mp = h + dif;
    c.kappa_mm = h - dif;
    c.chi_p = -sum * sum / (4.0 * h);
    c.chi_m = -dif * dif / (4.0 * h);
    return c;
}

Motion motion(double g, const Params& p)
{
    const CriticalData c = critical_data(p);
    Motion m;

    // lambda: the potential -M cosh - h cosh^2 has its maximum at lambda = 0 (value kappa_pp
    // in -g units) unless h > h_lambda, when a pair of off-axis wells tops out at chi_p.
    if (near(g, c.kappa_pp)) {
        m.lambda = LambdaMotion::Critical;
    } else if (g < c.kappa_pp) {
        m.lambda = LambdaMotion::Crossing;
    } else if (p.h > c.h_lambda) {
        if (near(g, c.chi_p)) m.lambda = LambdaMotion::Critical;
        else if (g < c.chi_p) m.lambda = LambdaMotion::Well;
    }

    // nu: wells at +-pi/2 with bottoms kappa_mm (deep) and kappa_mp (shallow); for h < h_nu
    // the barrier between them tops out at chi_m, otherwise the shallow well is a saddle.
    const bool two_wells = p.h < c.h_nu;
    const double top = two_wells ? c.chi_m : c.kappa_mp;
    if (near(g, c.kappa_mm) || near(g, top) || (two_wells && near(g, c.kappa_mp))) {
        m.nu = NuMotion::Critical;
    } else if (g < c.kappa_mm) {
        m.nu = NuMotion::None;
    } else if (g > top) {
        m.nu = NuMotion::Rotation;
    } else if (two_wells && g > c.kappa_mp) {
        m.nu = NuMotion::TwoWell;
    } else {
        m.nu = NuMotion::SingleWell;
    }
    return m;
}

RegionType classify(double g, const Params& p)
{
    const Motion m = motion(g, p);
    Region r = Region::Empty;
    if (m.lambda == LambdaMotion::None || m.nu == NuMotion::None) {
        r = Region::Empty;
    } else if (m.lambda == LambdaMotion::Critical || m.nu == NuMotion::Critical) {
        r = Region::Critical;
    } else if (m.lambda == LambdaMotion::Crossing) {
        r = m.nu == NuMotion::TwoWell ? Region::S : m.nu == NuMotion::SingleWell ? Region::Sprime : Region::L;
    } else if (m.nu == NuMotion::Rotation) {
        r = Region::P;
    }
    return {r, tori(r)};
}

std::vector<Boundary> region_boundaries(const Params& p)
{
    const CriticalData c = critical_data(p);
    std::vector<Boundary> cand{{c.kappa_mm, "kappa_mm"}, {c.kappa_mp, "kappa_mp"}, {c.kappa_pp, "kappa_pp"}};
    if (p.h > c.h_lambda) cand.push_back({c.chi_p, "chi_p"});
    if (p.h < c.h_nu) cand.push_back({c.chi_m, "chi_m"});
    std::stable_sort(cand.begin(), cand.end(), [](const Boundary& a, const Boundary& b) { return a.g < b.g; });

    std::vector<Boundary> merged;
    for (const Boundary& b : cand) {
        if (!merged.empty() && std::abs(b.g - merged.back().g) <= 1e-14 * std::max(1.0, std::abs(b.g))) {
            merged.back().label += "=" + b.label;
        } else {
            merged.push_back(b);
        }
    }

    std::vector<Boundary> out;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const double left_gap = i > 0 ? merged[i].g - merged[i - 1].g : 1.0;
        const double right_gap = i + 1 < merged.size() ? merged[i + 1].g - merged[i].g : 1.0;
        const double probe = std::max(0.25 * std::min({left_gap, right_gap, 1e-3}), 4.0 * kCriticalTolerance);
        if (classify(merged[i].g - probe, p) != classify(merged[i].g + probe, p)) out.push_back(merged[i]);
    }
    return out;
}

std::vector<RegionInterval> region_intervals(const Params& p)
{
    const auto bounds = region_boundaries(p);
    std::vector<RegionInterval> out;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const RegionType r = classify(0.5 * (bounds[i].g + bounds[i + 1].g), p);
        if (r.tag != Region::Empty) out.push_back({r, bounds[i], bounds[i + 1]});
    }
    return out;
}

std::vector<Region> regions_present(const Params& p)
{
    std::vector<Region> out;
    for (const auto& iv : region_intervals(p)) {
        if (std::find(out.begin(), out.end(), iv.region.tag) == out.end()) out.push_back(iv.region.tag);
    }
    return out;
}

}  // namespace emmap
}  // namespace twocenter
