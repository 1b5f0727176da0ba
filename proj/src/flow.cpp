#include "twocenter/flow.hpp"

namespace twocenter::flow {

void RegularizedField::operator()(const Vec<5>& s, Vec<5>& ds, double) const
{
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = model::force_lambda(s[0], params);
    ds[3] = model::force_nu(s[1], params);
    const double sh = std::sinh(s[0]);
    const double cn = std::cos(s[1]);
    ds[4] = sh * sh + cn * cn;
}

void SeparatedField::operator()(const Vec<3>& s, Vec<3>& ds, double) const
{
    ds[0] = s[1];
    if (axis == Axis::Lambda) {
        ds[1] = model::force_lambda(s[0], params);
        const double c = std::cosh(s[0]);
        ds[2] = c * c;
    } else {
        ds[1] = model::force_nu(s[0], params);
        const double sn = std::sin(s[0]);
        ds[2] = sn * sn;
    }
}

Vec<3> advance(Axis axis, const Params& p, Vec<3> start, double duration, const Options& opt)
{
    if (duration <= 0.0) return start;
    const SeparatedField field{axis, p};
    drive<3>(field, start, 0.0, duration, opt, {}, [](double, const Vec<3>&) { return true; },
             [](const Event<3>&) { return true; });
    return start;
}

std::vector<Crossing> crossings(Axis axis, const Params& p, Vec<3> start, double duration,
                                const std::function<double(const Vec<3>&)>& event, const Options& opt)
{
    std::vector<Crossing> out;
    const SeparatedField field{axis, p};
    drive<3>(field, start, 0.0, duration, opt, {event}, [](double, const Vec<3>&) { return true; },
             [&out](const Event<3>& e) {
                 out.push_back({e.tau, e.state});
                 return true;
             });
    return out;
}

}  // namespace twocenter::flow
