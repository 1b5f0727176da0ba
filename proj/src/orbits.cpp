#include "twocenter/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include "twocenter/error.hpp"
#include "twocenter/parallel.hpp"

namespace twocenter::orbits {

namespace {

constexpr double kPi = std::numbers::pi;

using sturmian::SymbolWord;

// Distance of nu to the nearest of the window values pi/2 + k pi.
double window_distance(double nu) { return std::abs(std::remainder(nu - 0.5 * kPi, kPi)); }

PhaseState to_phase(const flow::Vec<5>& s, double tau)
{
    return {s[0], s[1], s[2], s[3], tau, s[4]};
}

// Events fired this close to a collision start are the start itself.
constexpr double kCollisionStartSkip = 1e-6;

}  // namespace

Trajectory integrate(const PhaseState& start, const Params& p, double tau_span, const IntegrateOptions& opt)
{
    const SeparatedEnergies e0 = model::separated_hamiltonians(start, p);
    if (!(std::abs(e0.sum()) <= opt.admissible_tol)) {
        throw InadmissibleStart("start is off the zero level: H_lambda + H_nu = " + std::to_string(e0.sum()));
    }
    if (!opt.collision_mode && model::time_factor(start) < opt.collision_guard) {
        throw CollisionApproach("start is at a centre");
    }

    Trajectory tr;
    const double g0 = e0.nu;
    tr.min_time_factor = model::time_factor(start);
    auto track = [&](const PhaseState& s) {
        const SeparatedEnergies e = model::separated_hamiltonians(s, p);
        tr.max_level_error = std::max(tr.max_level_error, std::abs(e.sum()));
        tr.max_g_drift = std::max(tr.max_g_drift, std::abs(e.nu - g0));
        const double d = model::time_factor(s);
        tr.min_time_factor = std::min(tr.min_time_factor, d);
        if (!opt.collision_mode && d < opt.collision_guard) {
            throw CollisionApproach("trajectory reaches a centre near tau = " + std::to_string(s.tau));
        }
    };

    PhaseState first = start;
    first.tau = 0.0;
    first.t = 0.0;
    tr.samples.push_back(first);
    flow::Vec<5> x{start.lambda, start.nu, start.p_lambda, start.p_nu, 0.0};

    const std::vector<std::function<double(const flow::Vec<5>&)>> events{
        [](const flow::Vec<5>& s) { return s[0]; },
        [](const flow::Vec<5>& s) { return std::cos(s[1]); },
    };
    const flow::RegularizedField field{p};
    const double end = flow::drive<5>(
        field, x, 0.0, tau_span, opt.flow, events,
        [&](double tau, const flow::Vec<5>& s) {
            const PhaseState ps = to_phase(s, tau);
            track(ps);
            if (opt.record_samples) tr.samples.push_back(ps);
            return true;
        },
        [&](const flow::Event<5>& e) {
            const PhaseState ps = to_phase(e.state, e.tau);
            if (opt.collision_mode) {
                if (e.tau < kCollisionStartSkip) return true;
                const double partner = e.which == 0 ? std::abs(std::cos(ps.nu)) : std::abs(std::sinh(ps.lambda));
                if (partner < opt.collision_capture) {
                    tr.ends_in_collision = true;
                    tr.collision_residual = std::hypot(ps.lambda, window_distance(ps.nu));
                    return false;
                }
            }
            track(ps);
            const char symbol = e.which == 0 ? '3' : (std::sin(ps.nu) > 0.0 ? '2' : '1');
            tr.events.push_back({e.tau, symbol, ps});
            return true;
        });

    const PhaseState last = to_phase(x, end);
    if (!opt.record_samples || tr.samples.back().tau != end) {
        if (!opt.record_samples) tr.samples.resize(1);
        tr.samples.push_back(last);
    }
    return tr;
}

SymbolWord syzygy_word(const Trajectory& t)
{
    std::string s;
    s.reserve(t.events.size());
    for (const auto& e : t.events) s += e.symbol;
    return SymbolWord(std::move(s), t.closed);
}

std::optional<Rational> as_rational(double w, double tol, std::int64_t max_q)
{
    if (!(w > 0.0) || !std::isfinite(w)) return std::nullopt;
    // Convergents h_n / k_n of the continued fraction.
    std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double x = w;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(x);
        if (a > 1e12) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t h2 = ai * h0 + h1;
        const std::int64_t k2 = ai * k0 + k1;
        if (k2 > max_q) break;
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        if (h0 > 0 && std::abs(static_cast<double>(h0) / static_cast<double>(k0) - w) <= tol) {
            return Rational::make(h0, k0);
        }
        const double frac = x - a;
        if (frac <= 0.0) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

PeriodicOrbit periodic_orbit(const OrbitSpec& spec, const Params& p, const IntegrateOptions& opt)
{
    PeriodicOrbit out;
    out.spec = spec;
    double g = 0.0;
    if (spec.g) {
        g = *spec.g;
        const TorusData t = periods::rotation_number(g, p);
        if (spec.w) {
            if (std::abs(t.W - spec.w->value()) > 1e-8 * spec.w->value()) {
                throw std::invalid_argument("given g has W = " + std::to_string(t.W) + ", not " + spec.w->str());
            }
            out.w = *spec.w;
        } else {
            const auto r = as_rational(t.W);
            if (!r) throw std::invalid_argument("W = " + std::to_string(t.W) + " is not a small rational");
            out.w = *r;
        }
    } else {
        if (!spec.w) throw std::invalid_argument("periodic orbit needs g or W");
        out.w = *spec.w;
        g = periods::solve_g(spec.region, out.w.value(), p).g;
    }
    out.torus = periods::rotation_number(g, p);

    const PhaseState start = periods::torus_point(out.torus, p, spec.selector, spec.theta_nu, spec.theta_lambda);
    const double period = static_cast<double>(out.w.p) * out.torus.T_lambda;
    out.trajectory = integrate(start, p, period, opt);

    const PhaseState& end = out.trajectory.samples.back();
    const double err = std::max({std::abs(end.lambda - start.lambda), std::abs(std::remainder(end.nu - start.nu, 2.0 * kPi)),
                                 std::abs(end.p_lambda - start.p_lambda), std::abs(end.p_nu - start.p_nu)});
    out.trajectory.closure_error = err;
    if (!(err <= kClosureTolerance)) {
        throw ClosureFailure("orbit does not close: error " + std::to_string(err));
    }
    out.trajectory.closed = true;
    // a start on a window sees the same crossing at both ends; count it once
    auto& ev = out.trajectory.events;
    if (ev.size() >= 2 && ev.front().tau < 1e-8 && period - ev.back().tau < 1e-8 &&
        ev.front().symbol == ev.back().symbol) {
        ev.pop_back();
    }
    return out;
}

std::vector<double> collision_intercepts(const sturmian::WindowPhases& w, Rational slope)
{
    const double cell = 1.0 / static_cast<double>(slope.q);
    std::vector<double> out;
    for (const auto& v : w.vertical) {
        for (const auto& h : w.horizontal) {
            double b = std::fmod(h.phase - slope.value() * v.phase, cell);
            if (b < 0.0) b += cell;
            out.push_back(b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Midpoint of the widest gap of the forbidden intercepts on the circle of length 1/q.
double safe_intercept(const std::vector<double>& forbidden, Rational slope)
{
    const double cell = 1.0 / static_cast<double>(slope.q);
    if (forbidden.empty()) return 0.25 * cell;
    double best_gap = -1.0, best = 0.0;
    for (std::size_t i = 0; i < forbidden.size(); ++i) {
        const double a = forbidden[i];
        const double z = i + 1 < forbidden.size() ? forbidden[i + 1] : forbidden[0] + cell;
        if (z - a > best_gap) {
            best_gap = z - a;
            best = std::fmod(0.5 * (a + z), cell);
        }
    }
    return best;
}

double circle_distance(double a, double b, double cell)
{
    const double d = std::abs(std::remainder(a - b, cell));
    return d;
}

bool half_spaced(const std::vector<sturmian::Window>& list)
{
    if (list.size() != 2) return true;
    return std::abs(std::abs(list[1].phase - list[0].phase) - 0.5) <= kHalfSpacingTolerance;
}

}  // namespace

Prediction predict(double g, Rational w, const Params& p, TorusSelector sel)
{
    const TorusData torus = periods::rotation_number(g, p);
    Prediction out;
    out.phases = periods::window_phases(g, p, sel);
    out.intercept = safe_intercept(collision_intercepts(out.phases, w), w);
    const int count = static_cast<int>(out.phases.horizontal.empty() ? 2 * w.q : 2 * (w.p + w.q));
    out.word = SymbolWord(sturmian::cutting_sequence(out.phases, w.value(), out.intercept, count).str(), true);
    out.half_spaced = half_spaced(out.phases.vertical) && half_spaced(out.phases.horizontal);

    const char lead = out.phases.vertical.empty() ? '1' : out.phases.vertical.front().symbol;
    switch (torus.region.tag) {
    case Region::L: out.theorem_word = sturmian::family_word(sturmian::WordFamily::Lemniscate, w, lead); break;
    case Region::S:
    case Region::Sprime: out.theorem_word = sturmian::family_word(sturmian::WordFamily::Satellite, w, lead); break;
    default: out.theorem_word = sturmian::family_word(sturmian::WordFamily::Planetary, w); break;
    }
    out.agrees = sturmian::same_cyclic(out.word, out.theorem_word, true);
    return out;
}

SymbolWord predicted_word(double g, Rational w, const Params& p, TorusSelector sel)
{
    return predict(g, w, p, sel).word;
}

namespace {

struct CollisionState {
    PhaseState state;
    double window;  // +-pi/2
};

std::vector<CollisionState> collision_states(const TorusData& torus, const Params& p, TorusSelector sel)
{
    if (torus.region.tag == Region::P) throw RegionError("P tori have no collisions");
    const double pl = std::sqrt(2.0 * (p.total() + p.h - torus.g));
    auto pn_at = [&](double window) { return std::sqrt(std::max(0.0, 2.0 * (torus.g - model::potential_nu(window, p)))); };
    std::vector<CollisionState> out;
    if (torus.nu_branch == NuBranch::Oscillation) {
        const double ref = periods::reference_nu(torus.g, p, sel)[0];
        const double window = ref > -0.5 * kPi ? 0.5 * kPi : -0.5 * kPi;
        for (double sl : {1.0, -1.0}) {
            for (double sn : {1.0, -1.0}) out.push_back({{0.0, window, sl * pl, sn * pn_at(window), 0.0, 0.0}, window});
        }
    } else {
        const double dir = sel == TorusSelector::First ? 1.0 : -1.0;
        for (double window : {-0.5 * kPi, 0.5 * kPi}) {
            for (double sl : {1.0, -1.0}) out.push_back({{0.0, window, sl * pl, dir * pn_at(window), 0.0, 0.0}, window});
        }
    }
    return out;
}

IntegrateOptions collision_options()
{
    IntegrateOptions opt;
    opt.collision_mode = true;
    return opt;
}

}  // namespace

std::vector<Trajectory> collision_orbits(double g, const Params& p, TorusSelector sel)
{
    const TorusData torus = periods::rotation_number(g, p);
    const auto states = collision_states(torus, p, sel);
    const auto w = as_rational(torus.W);
    if (!w) throw std::invalid_argument("collision orbits need a rational rotation number");
    const double span = 1.05 * static_cast<double>(w->p) * torus.T_lambda;

    std::vector<Trajectory> runs(states.size());
    std::vector<int> next(states.size(), -1);
    for (std::size_t i = 0; i < states.size(); ++i) {
        runs[i] = integrate(states[i].state, p, span, collision_options());
        if (!runs[i].ends_in_collision) throw NoConvergence("no second collision within one period");
        const PhaseState& e = runs[i].samples.back();
        const double window = std::sin(e.nu) > 0.0 ? 0.5 * kPi : -0.5 * kPi;
        for (std::size_t j = 0; j < states.size(); ++j) {
            const PhaseState& s = states[j].state;
            if (states[j].window == window && (s.p_lambda > 0.0) == (e.p_lambda > 0.0) && (s.p_nu > 0.0) == (e.p_nu > 0.0)) {
                next[i] = static_cast<int>(j);
            }
        }
        if (next[i] < 0) throw std::logic_error("collision arrival state is not on the torus");
    }

    std::vector<Trajectory> out;
    std::vector<bool> seen(states.size(), false);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (seen[i]) continue;
        for (int j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = next[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
        }
        out.push_back(runs[i]);
    }
    return out;
}

Trajectory collision_search(double g, const Params& p, TorusSelector sel, double lambda_periods)
{
    const TorusData torus = periods::rotation_number(g, p);
    const auto states = collision_states(torus, p, sel);
    IntegrateOptions opt = collision_options();
    opt.record_samples = false;
    return integrate(states.front().state, p, lambda_periods * torus.T_lambda, opt);
}

namespace {

struct Job {
    Region region;
    TorusSelector selector;
    Rational w;
    double g;
    double theta_nu;
    double theta_lambda;
    const Prediction* prediction;
};

// Cartesian H - h equals the level error divided by the time factor, so close
// passes need a tighter step tolerance than the default.
IntegrateOptions verify_options()
{
    IntegrateOptions opt;
    opt.flow.tol = 1e-14;
    return opt;
}

void cartesian_drift(const Trajectory& tr, const Params& p, double g, VerifyCase& c)
{
    for (const PhaseState& s : tr.samples) {
        const CartesianState cs = model::from_regularized(s);
        c.cartesian_h_drift = std::max(c.cartesian_h_drift, std::abs(model::hamiltonian(cs, p) - p.h));
        c.cartesian_g_drift = std::max(c.cartesian_g_drift, std::abs(model::second_integral(cs, p) - g));
    }
}

VerifyCase run_case(const Job& job, const Params& p)
{
    VerifyCase c;
    c.region = job.region;
    c.selector = job.selector;
    c.w = job.w;
    c.g = job.g;
    c.theta_nu = job.theta_nu;
    c.theta_lambda = job.theta_lambda;
    c.expected = job.prediction->word.canonical().str();
    c.theorem = job.prediction->theorem_word.canonical().str();
    try {
        OrbitSpec spec;
        spec.g = job.g;
        spec.w = job.w;
        spec.region = job.region;
        spec.theta_nu = job.theta_nu;
        spec.theta_lambda = job.theta_lambda;
        spec.selector = job.selector;
        const PeriodicOrbit po = periodic_orbit(spec, p, verify_options());
        const SymbolWord observed = syzygy_word(po.trajectory);
        c.observed = observed.canonical().str();
        c.W_measured = periods::measured_periods(job.g, p, job.selector).W();
        c.closure_error = po.trajectory.closure_error;
        c.level_error = po.trajectory.max_level_error;
        cartesian_drift(po.trajectory, p, job.g, c);

        const bool planetary = job.region == Region::P;
        const auto bal = sturmian::is_balanced(observed);
        const auto n = static_cast<int>(std::floor(job.w.value()));
        bool runs_ok = true;
        for (int e : bal.exponents) runs_ok = runs_ok && (e == n || e == n + 1);
        const bool has_33 = observed.str().find("33") != std::string::npos ||
                            (observed.size() > 1 && observed.str().front() == '3' && observed.str().back() == '3');

        c.checks.emplace_back("word_matches_prediction", sturmian::same_cyclic(observed, job.prediction->word, true));
        c.checks.emplace_back("word_matches_theorem", sturmian::same_cyclic(observed, job.prediction->theorem_word, true));
        c.checks.emplace_back("length", observed.size() == static_cast<std::size_t>(planetary ? 2 * job.w.q : 2 * (job.w.p + job.w.q)));
        c.checks.emplace_back("closed", po.trajectory.closed);
        c.checks.emplace_back("level_conserved", c.level_error <= 1e-9);
        c.checks.emplace_back("cartesian_conserved", c.cartesian_h_drift <= 1e-8 && c.cartesian_g_drift <= 1e-8);
        c.checks.emplace_back("no_1_2_stutter", !bal.has_stutter);
        if (planetary) {
            c.checks.emplace_back("no_symbol_3", observed.count('3') == 0);
            c.checks.emplace_back("alternating_12", sturmian::same_cyclic(observed, sturmian::family_word(sturmian::WordFamily::Planetary, job.w), false));
        } else {
            c.checks.emplace_back("3_runs_n_or_n+1", runs_ok);
            if (job.region == Region::L) {
                c.checks.emplace_back("3_stutter_iff_W_gt_1", has_33 == (job.w.value() > 1.0));
            } else {
                c.checks.emplace_back("S_W_gt_1", c.W_measured > 1.0);
                c.checks.emplace_back("S_has_3_stutter", has_33);
            }
        }
        c.pass = true;
        for (const auto& [name, ok] : c.checks) c.pass = c.pass && ok;
    } catch (const std::exception& e) {
        c.error = e.what();
        c.pass = false;
    }
    return c;
}

}  // namespace

VerifyReport verify_theorems(const Params& p, const std::vector<Rational>& ws, int phases, std::uint64_t seed)
{
    VerifyReport report;
    report.params = p;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Job> jobs;
    std::vector<VerifyCase> failures;
    std::vector<std::unique_ptr<Prediction>> predictions;
    const auto intervals = emmap::region_intervals(p);

    for (const Rational& w : ws) {
        bool placed = false;
        for (const auto& iv : intervals) {
            const Region region = iv.region.tag;
            VerifyCase fail;
            fail.region = region;
            fail.w = w;
            try {
                if (!periods::w_range(region, p).contains(w.value())) continue;
                placed = true;
                const double g = periods::solve_g(region, w.value(), p).g;
                fail.g = g;
                for (int t = 0; t < iv.region.torus_count; ++t) {
                    const TorusSelector sel = t == 0 ? TorusSelector::First : TorusSelector::Second;
                    fail.selector = sel;
                    predictions.push_back(std::make_unique<Prediction>(predict(g, w, p, sel)));
                    const Prediction* pred = predictions.back().get();
                    const auto forbidden = collision_intercepts(pred->phases, w);
                    const double cell = 1.0 / static_cast<double>(w.q);
                    const double clearance = 0.1 * cell / static_cast<double>(std::max<std::size_t>(1, forbidden.size()));
                    for (int k = 0; k < phases; ++k) {
                        double tn = 0.0, tl = 0.0;
                        for (int attempt = 0; attempt < 1000; ++attempt) {
                            tn = unit(rng);
                            tl = unit(rng);
                            const double b = tl - w.value() * tn;
                            double nearest = cell;
                            for (double f : forbidden) nearest = std::min(nearest, circle_distance(b, f, cell));
                            if (nearest >= clearance) break;
                        }
                        jobs.push_back({region, sel, w, g, tn, tl, pred});
                    }
                }
            } catch (const std::exception& e) {
                fail.error = e.what();
                failures.push_back(fail);
            }
        }
        if (!placed) {
            VerifyCase c;
            c.w = w;
            c.error = "OutOfRange: W = " + w.str() + " lies in no region's range at h = " + std::to_string(p.h);
            failures.push_back(c);
        }
    }

    std::vector<VerifyCase> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { results[i] = run_case(jobs[i], p); });
    report.cases = std::move(results);
    for (auto& f : failures) report.cases.push_back(std::move(f));
    report.all_pass = !report.cases.empty();
    for (const auto& c : report.cases) report.all_pass = report.all_pass && c.pass;
    return report;
}

}  // namespace twocenter::orbits
