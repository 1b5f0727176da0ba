#include <doctest.h>

#include <set>

#include "twocenter/error.hpp"
#include "twocenter/orbits.hpp"

using namespace twocenter;
using sturmian::SymbolWord;

namespace {

const Params kEq = Params::make(0.5, 0.5, -0.23);
const Params kAs = Params::make(1.0 / 3, 2.0 / 3, -0.23);

orbits::OrbitSpec spec_for(Region r, Rational w, double tn, double tl, TorusSelector sel = TorusSelector::First)
{
    orbits::OrbitSpec s;
    s.w = w;
    s.region = r;
    s.theta_nu = tn;
    s.theta_lambda = tl;
    s.selector = sel;
    return s;
}

// Starting phases on a line of slope w that keep clear of every collision intercept.
double safe_lambda_phase(double g, Rational w, const Params& p, TorusSelector sel, double theta_nu)
{
    const auto ph = periods::window_phases(g, p, sel);
    auto bad = orbits::collision_intercepts(ph, w);
    const double cell = 1.0 / static_cast<double>(w.q);
    if (bad.empty()) return theta_nu * w.value() + 0.5 * cell;
    std::sort(bad.begin(), bad.end());
    bad.push_back(bad.front() + cell);
    double best = 0.0, gap = -1.0;
    for (std::size_t i = 0; i + 1 < bad.size(); ++i) {
        if (bad[i + 1] - bad[i] > gap) {
            gap = bad[i + 1] - bad[i];
            best = 0.5 * (bad[i] + bad[i + 1]);
        }
    }
    double tl = best + w.value() * theta_nu;
    return tl - std::floor(tl);
}

}  // namespace

TEST_SUITE("orbits")
{
    TEST_CASE("as_rational")
    {
        CHECK(orbits::as_rational(0.5 + 1e-12) == Rational{1, 2});
        CHECK(orbits::as_rational(2.0 / 3.0) == Rational{2, 3});
        CHECK_FALSE(orbits::as_rational(0.7119002606692394).has_value());
    }

    TEST_CASE("W = 1 lemniscate word over many phases")
    {
        const double g = periods::solve_g(Region::L, 1.0, kEq).g;
        for (int i = 0; i < 8; ++i) {
            const double tn = (i + 0.5) / 8.0;
            const double tl = safe_lambda_phase(g, Rational{1, 1}, kEq, TorusSelector::First, tn);
            const auto orbit = orbits::periodic_orbit(spec_for(Region::L, {1, 1}, tn, tl), kEq);
            const SymbolWord w(orbits::syzygy_word(orbit.trajectory).str(), true);
            CHECK(w.size() == 4);
            CHECK(sturmian::same_cyclic(w, SymbolWord("1323", true), true));
        }
    }

    TEST_CASE("W = 2 and W = 1/2 lemniscate words")
    {
        const auto two = orbits::periodic_orbit(spec_for(Region::L, {2, 1}, 0.1, 0.0), kEq);
        const auto w2 = orbits::syzygy_word(two.trajectory);
        CHECK(sturmian::same_cyclic(SymbolWord(w2.str(), true), SymbolWord("133233", true), true));
        const double gh = periods::solve_g(Region::L, 0.5, kEq).g;
        const auto half = orbits::periodic_orbit(
            spec_for(Region::L, {1, 2}, 0.3, safe_lambda_phase(gh, {1, 2}, kEq, TorusSelector::First, 0.3)), kEq);
        const auto wh = orbits::syzygy_word(half.trajectory);
        CHECK(wh.size() == 6);
        CHECK(wh.count('3') == 2);
        CHECK(sturmian::same_cyclic(SymbolWord(wh.str(), true), SymbolWord("123123", true), true));
    }

    TEST_CASE("satellite and planetary words")
    {
        const auto s = orbits::periodic_orbit(spec_for(Region::S, {2, 1}, 0.1, 0.37, TorusSelector::Second), kEq);
        CHECK(sturmian::same_cyclic(SymbolWord(orbits::syzygy_word(s.trajectory).str(), true), SymbolWord("233233", true), false));
        const double gp = periods::solve_g(Region::P, 2.0 / 3.0, kEq).g;
        const auto pl = orbits::periodic_orbit(
            spec_for(Region::P, {2, 3}, 0.2, safe_lambda_phase(gp, {2, 3}, kEq, TorusSelector::First, 0.2)), kEq);
        const std::string w = orbits::syzygy_word(pl.trajectory).str();
        CHECK(w.size() == 6);
        CHECK(w.find('3') == std::string::npos);
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] != w[(i + 1) % w.size()]);
    }

    TEST_CASE("predicted words match integration")
    {
        for (const auto& [p, region, w, sel] : std::vector<std::tuple<Params, Region, Rational, TorusSelector>>{
                 {kEq, Region::L, {3, 2}, TorusSelector::First},
                 {kEq, Region::S, {5, 2}, TorusSelector::First},
                 {kEq, Region::P, {1, 3}, TorusSelector::Second},
                 {kAs, Region::L, {1, 3}, TorusSelector::First},
                 {kAs, Region::Sprime, {3, 2}, TorusSelector::First}}) {
            const double g = periods::solve_g(region, w.value(), p).g;
            const auto pred = orbits::predict(g, w, p, sel);
            const double tl = safe_lambda_phase(g, w, p, sel, 0.0);
            // the prediction uses the safe intercept; integrate on the same line
            const auto orbit = orbits::periodic_orbit(spec_for(region, w, 0.0, tl, sel), p);
            const SymbolWord seen(orbits::syzygy_word(orbit.trajectory).str(), true);
            CHECK(seen.size() == pred.word.size());
            CHECK(sturmian::same_cyclic(seen, SymbolWord(pred.word.str(), true), true));
            if (pred.half_spaced) CHECK(pred.agrees);
        }
    }

    TEST_CASE("conservation and closure")
    {
        const auto orbit = orbits::periodic_orbit(spec_for(Region::L, {3, 2}, 0.05, 0.11), kAs);
        const auto& tr = orbit.trajectory;
        CHECK(tr.closed);
        CHECK(tr.closure_error <= 1e-6);
        CHECK(tr.max_level_error <= 1e-9);
        CHECK(tr.max_g_drift <= 1e-9);
        double dh = 0.0, dg = 0.0;
        for (const auto& s : tr.samples) {
            const auto c = model::from_regularized(s);
            dh = std::max(dh, std::abs(model::hamiltonian(c, kAs) - kAs.h));
            dg = std::max(dg, std::abs(model::second_integral(c, kAs) - orbit.torus.g));
        }
        CHECK(dh <= 1e-8);
        CHECK(dg <= 1e-8);
        CHECK(tr.min_time_factor > 0.0);
    }

    TEST_CASE("a short span records no syzygy")
    {
        const auto torus = periods::rotation_number(0.4, kEq);
        const auto start = periods::torus_point(torus, kEq, TorusSelector::First, 0.1, 0.1);
        const auto tr = orbits::integrate(start, kEq, 1e-3);
        CHECK(tr.events.empty());
        CHECK(orbits::syzygy_word(tr).empty());
    }

    TEST_CASE("deck transformation gives the same physical orbit")
    {
        const auto torus = periods::rotation_number(0.4, kEq);
        const auto a = periods::torus_point(torus, kEq, TorusSelector::First, 0.13, 0.41);
        const auto b = model::deck_transform(a);
        const auto ta = orbits::integrate(a, kEq, 30.0);
        const auto tb = orbits::integrate(b, kEq, 30.0);
        CHECK(orbits::syzygy_word(ta).str() == orbits::syzygy_word(tb).str());
        const auto ca = model::from_regularized(ta.samples.back());
        const auto cb = model::from_regularized(tb.samples.back());
        CHECK(std::abs(ca.x - cb.x) <= 1e-8);
        CHECK(std::abs(ca.y - cb.y) <= 1e-8);
        CHECK(std::abs(ca.px - cb.px) <= 1e-7);
        CHECK(std::abs(ta.samples.back().t - tb.samples.back().t) <= 1e-8);
    }

    TEST_CASE("rotation number from crossing counts")
    {
        const auto torus = periods::rotation_number(0.4, kEq);
        const auto start = periods::torus_point(torus, kEq, TorusSelector::First, 0.013, 0.377);
        orbits::IntegrateOptions opt;
        opt.record_samples = false;
        const auto tr = orbits::integrate(start, kEq, 150 * torus.T_lambda, opt);
        const auto w = orbits::syzygy_word(tr);
        const double v = static_cast<double>(w.count('1') + w.count('2'));
        const double hz = static_cast<double>(w.count('3'));
        CHECK(hz / v == doctest::Approx(torus.W).epsilon(0.02));
    }

    TEST_CASE("collision orbits")
    {
        for (const auto& [region, w, sel] : std::vector<std::tuple<Region, Rational, TorusSelector>>{
                 {Region::L, {1, 1}, TorusSelector::First}, {Region::S, {2, 1}, TorusSelector::Second}, {Region::L, {3, 2}, TorusSelector::First}}) {
            const double g = periods::solve_g(region, w.value(), kEq).g;
            const auto segs = orbits::collision_orbits(g, kEq, sel);
            CHECK(segs.size() == 2);
            const double tl = periods::period_lambda(g, kEq).value;
            for (const auto& s : segs) {
                CHECK(s.ends_in_collision);
                CHECK(s.collision_residual <= 1e-6);
                CHECK(s.samples.back().tau == doctest::Approx(w.p * tl / 2).epsilon(1e-6));
            }
        }
        CHECK_THROWS_AS(orbits::collision_orbits(0.9, kEq), RegionError);
        CHECK_THROWS_AS(orbits::collision_orbits(0.4, kEq), std::invalid_argument);
    }

    TEST_CASE("irrational torus never returns to a collision")
    {
        const auto tr = orbits::collision_search(0.4, kEq, TorusSelector::First, 50);
        CHECK_FALSE(tr.ends_in_collision);
        CHECK(tr.samples.back().tau >= 49 * periods::period_lambda(0.4, kEq).value);
    }

    TEST_CASE("physical period")
    {
        const Rational w{3, 2};
        const auto orbit = orbits::periodic_orbit(spec_for(Region::L, w, 0.05, 0.11), kEq);
        const auto m = periods::measured_periods(orbit.torus.g, kEq, TorusSelector::First);
        CHECK(orbit.trajectory.samples.back().t == doctest::Approx(periods::physical_period(m, w)).epsilon(1e-7));
    }

    TEST_CASE("start errors")
    {
        PhaseState off;
        off.lambda = 0.3;
        off.nu = 0.2;
        off.p_lambda = 5.0;
        CHECK_THROWS_AS(orbits::integrate(off, kEq, 1.0), InadmissibleStart);
        PhaseState centre;
        centre.nu = std::numbers::pi / 2;
        centre.p_lambda = std::sqrt(2.0 * kEq.total());
        CHECK_THROWS_AS(orbits::integrate(centre, kEq, 1.0), CollisionApproach);
        CHECK_THROWS_AS(orbits::periodic_orbit(spec_for(Region::P, {3, 1}, 0.1, 0.1), kEq), OutOfRange);
    }

    TEST_CASE("verify report")
    {
        const auto r = orbits::verify_theorems(kEq, {{1, 1}, {5, 2}}, 3, 7);
        CHECK(r.all_pass);
        std::set<Region> seen;
        for (const auto& c : r.cases) seen.insert(c.region);
        CHECK(seen == std::set<Region>{Region::S, Region::L});
        const auto bad = orbits::verify_theorems(Params::make(0.5, 0.5, -1.2), {{1, 2}}, 2, 1);
        CHECK_FALSE(bad.all_pass);
        REQUIRE(bad.cases.size() == 1);
        CHECK_FALSE(bad.cases[0].error.empty());
    }
}
