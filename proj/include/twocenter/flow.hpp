#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "twocenter/model.hpp"

namespace twocenter::flow {

struct Options {
    double tol = 1e-12;
    double max_step = 0.05;
    double event_tol = 1e-11;
};

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct Event {
    std::size_t which = 0;
    double tau = 0.0;
    Vec<N> state{};
};

/// Adaptive RKF78 march from tau0 to tau_end with sign-change event location.
///   on_step(tau, x)        after each accepted step; return false to stop.
///   on_event(Event)        for every event, in time order; return false to stop.
/// Event functions only fire on a strict sign change (or on reaching exactly 0),
/// never on the starting value. Returns the final time reached.
template <std::size_t N, class Rhs, class OnStep, class OnEvent>
double drive(const Rhs& rhs, Vec<N>& x, double tau0, double tau_end, const Options& opt,
             const std::vector<std::function<double(const Vec<N>&)>>& events, OnStep&& on_step,
             OnEvent&& on_event)
{
    namespace ode = boost::numeric::odeint;
    using Stepper = ode::runge_kutta_fehlberg78<Vec<N>>;
    auto controlled = ode::make_controlled(opt.tol, opt.tol, Stepper());
    Stepper plain;
    auto sys = [&rhs](const Vec<N>& s, Vec<N>& ds, double t) { rhs(s, ds, t); };

    double tau = tau0;
    double dt = std::min(opt.max_step, 0.01);
    std::vector<double> before(events.size());
    std::vector<Event<N>> hits;
    while (tau < tau_end) {
        const double remaining = tau_end - tau;
        dt = std::min({dt, opt.max_step, remaining});
        Vec<N> next;
        double t_try = tau;
        double dt_try = dt;
        if (controlled.try_step(sys, x, t_try, next, dt_try) != ode::success) {
            dt = dt_try;
            continue;
        }
        const double h = t_try - tau;
        // The last sliver is taken verbatim so tau_end is hit exactly.
        const bool last = remaining - h <= 1e-14 * std::max(1.0, std::abs(tau_end));

        hits.clear();
        for (std::size_t i = 0; i < events.size(); ++i) {
            const double e0 = events[i](x);
            const double e1 = events[i](next);
            if (e0 == 0.0 || !(e1 == 0.0 || (e0 < 0.0) != (e1 < 0.0))) continue;
            double lo = 0.0, hi = h;
            Vec<N> mid_state = next;
            while (hi - lo > opt.event_tol) {
                const double mid = 0.5 * (lo + hi);
                plain.do_step(sys, x, tau, mid_state, mid);
                const double em = events[i](mid_state);
                if (em != 0.0 && (em < 0.0) == (e0 < 0.0)) lo = mid;
                else hi = mid;
            }
            const double at = 0.5 * (lo + hi);
            plain.do_step(sys, x, tau, mid_state, at);
            hits.push_back({i, tau + at, mid_state});
        }
        std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.tau < b.tau; });

        for (const auto& e : hits) {
            if (!on_event(e)) {
                x = e.state;
                return e.tau;
            }
        }
        x = next;
        tau = last ? tau_end : t_try;
        if (!on_step(tau, x)) return tau;
        dt = dt_try;
    }
    return tau;
}

/// (lambda, nu, p_lambda, p_nu, t) in fictitious time.
struct RegularizedField {
    Params params;
    void operator()(const Vec<5>& s, Vec<5>& ds, double) const;
};

enum class Axis { Lambda, Nu };

/// One separated degree of freedom (q, p) plus an accumulated weight:
/// cosh^2(lambda) for Axis::Lambda, sin^2(nu) for Axis::Nu.
struct SeparatedField {
    Axis axis = Axis::Lambda;
    Params params;
    void operator()(const Vec<3>& s, Vec<3>& ds, double) const;
};

/// Advance one separated degree of freedom by `duration` (>= 0).
Vec<3> advance(Axis axis, const Params& p, Vec<3> start, double duration, const Options& opt = {});

/// Times in (0, duration] at which the 1-dof orbit crosses the given levels of `event`.
struct Crossing {
    double tau;
    Vec<3> state;
};
std::vector<Crossing> crossings(Axis axis, const Params& p, Vec<3> start, double duration,
                                const std::function<double(const Vec<3>&)>& event, const Options& opt = {});

}  // namespace twocenter::flow
