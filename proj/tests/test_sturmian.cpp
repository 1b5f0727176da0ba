#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "twocenter/error.hpp"
#include "twocenter/sturmian.hpp"

using namespace twocenter;
using namespace twocenter::sturmian;

TEST_SUITE("sturmian")
{
    TEST_CASE("rational parsing")
    {
        CHECK(Rational::parse("4/6") == Rational{2, 3});
        CHECK(Rational::parse("3") == Rational{3, 1});
        CHECK(Rational::parse("0.5") == Rational{1, 2});
        CHECK(Rational::parse("2.5").str() == "5/2");
        CHECK_THROWS_AS(Rational::parse("0"), std::invalid_argument);
        CHECK_THROWS_AS(Rational::parse("x/2"), std::invalid_argument);
        CHECK_THROWS_AS(Rational::make(1, 0), std::invalid_argument);
    }

    TEST_CASE("exponents of the 1/pi line")
    {
        const auto e = sturmian_exponents(SlopeIntercept::irrational(1.0 / oracle::pi, 0.15), 4);
        CHECK(e.values == std::vector<int>{0, 0, 1, 0});
        CHECK(e.str() == "0,0,1,0");
        // The first six crossings from x = 0 include the vertical at the origin.
        const WindowPhases w{{{0.0, 'V'}}, {{0.0, 'H'}}};
        CHECK(cutting_sequence(w, 1.0 / oracle::pi, 0.15, 6).str() == "VVVHVV");
    }

    TEST_CASE("exponent examples")
    {
        CHECK(sturmian_exponents(SlopeIntercept::irrational(1.0, 0.3), 5).values == std::vector<int>(5, 1));
        const auto e = sturmian_exponents(SlopeIntercept::rational(Rational{2, 3}, 1.0 / 6.0), 3);
        CHECK(e.values == std::vector<int>{0, 1, 1});
        // same values from the float path
        CHECK(sturmian_exponents(SlopeIntercept::irrational(2.0 / 3.0, 1.0 / 6.0), 3).values == e.values);
    }

    TEST_CASE("lattice hits are rejected")
    {
        CHECK_THROWS_AS(sturmian_exponents(SlopeIntercept::rational(Rational{1, 2}, 0.5), 4), LatticeHit);
        CHECK_THROWS_AS(sturmian_exponents(SlopeIntercept::irrational(0.5, 0.0), 4), LatticeHit);
        CHECK_THROWS_AS(sturmian_exponents(SlopeIntercept::rational(Rational{2, 5}, 0.2), 10), LatticeHit);
    }

    TEST_CASE("exponents match the crossing simulation")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 300; ++trial) {
            const double m = 0.05 + 4.0 * u(rng);
            const double b = u(rng);
            const int n = 30;
            const auto e = sturmian_exponents(SlopeIntercept::irrational(m, b), n);
            std::string expect = oracle::crossings({{0.0, 'V'}}, {{0.0, 'H'}}, m, b, 400, 0.0);
            // V at x = 0, then H^{n_k} V for k = 1..n.
            std::string got = word_from_exponents(e, "V", 'H').str() + "V";
            CHECK(expect.substr(0, got.size()) == got);
            const int lo = static_cast<int>(std::floor(m));
            for (int v : e.values) CHECK((v == lo || v == lo + 1));
        }
    }

    TEST_CASE("word_from_exponents examples")
    {
        ExponentSequence e{{1, 1}, 1.0, true};
        CHECK(word_from_exponents(e, "12", '3').str() == "1323");
        CHECK(word_from_exponents(ExponentSequence{{0, 0}, 0.0, true}, "12", '3').str() == "12");
        CHECK(word_from_exponents(ExponentSequence{{2, 2}, 2.0, true}, "22", '3').str() == "233233");
        CHECK(word_from_exponents(e, "12", '3').cyclic());
        CHECK_THROWS_AS(word_from_exponents(e, "", '3'), std::invalid_argument);
    }

    TEST_CASE("canonical rational words")
    {
        CHECK(canonical_rational_word({1, 1}, Grid::Unit) == SymbolWord("VH", true));
        CHECK(canonical_rational_word({1, 2}, Grid::Unit) == SymbolWord("VVH", true));
        CHECK(canonical_rational_word({1, 1}, Grid::Half) == SymbolWord("VHVH", true));
        for (std::int64_t p = 1; p <= 12; ++p) {
            for (std::int64_t q = 1; q <= 12; ++q) {
                if (std::gcd(p, q) != 1) continue;
                const auto unit = canonical_rational_word({p, q}, Grid::Unit);
                const auto half = canonical_rational_word({p, q}, Grid::Half);
                CHECK(unit.count('V') == static_cast<std::size_t>(q));
                CHECK(unit.count('H') == static_cast<std::size_t>(p));
                CHECK(half.count('V') == static_cast<std::size_t>(2 * q));
                CHECK(half.count('H') == static_cast<std::size_t>(2 * p));
                const auto sum = periodic_exponents({p, q}, Grid::Half).values;
                CHECK(std::accumulate(sum.begin(), sum.end(), 0) == 2 * p);
            }
        }
    }

    TEST_CASE("intercept independence for p, q <= 12")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::int64_t p = 1; p <= 12; ++p) {
            for (std::int64_t q = 1; q <= 12; ++q) {
                if (std::gcd(p, q) != 1) continue;
                const auto ref = canonical_rational_word({p, q}, Grid::Unit);
                for (int k = 0; k < 50; ++k) {
                    const double b = u(rng);
                    try {
                        auto e = sturmian_exponents(SlopeIntercept::rational({p, q}, b), static_cast<int>(q));
                        e.periodic = true;
                        CHECK(word_from_exponents(e, "V", 'H') == ref);
                    } catch (const LatticeHit&) {
                    }
                }
            }
        }
    }

    TEST_CASE("cutting sequence examples")
    {
        const WindowPhases half{{{0.0, 'V'}, {0.5, 'V'}}, {{0.0, 'H'}, {0.5, 'H'}}};
        CHECK(cutting_sequence(half, 0.5, 0.1, 6).str() == "VVHVVH");
        const WindowPhases lemniscate_windows{{{0.0, '1'}, {0.5, '2'}}, {{0.25, '3'}, {0.75, '3'}}};
        CHECK(same_cyclic(cutting_sequence(lemniscate_windows, 1.0, 0.1, 4), SymbolWord("1323", true), false));
        const WindowPhases p_type{{{0.0, '1'}, {0.5, '2'}}, {}};
        CHECK(cutting_sequence(p_type, 3.0, 0.05, 6).str() == "121212");
        CHECK_THROWS_AS(cutting_sequence(lemniscate_windows, 1.0, 0.25, 4), PhaseHit);
    }

    TEST_CASE("cutting sequence matches the crossing simulation")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            const double m = 0.1 + 3.0 * u(rng), b = u(rng);
            const double v1 = 0.5 * u(rng), v2 = 0.5 + 0.5 * u(rng), h1 = 0.5 * u(rng), h2 = 0.5 + 0.5 * u(rng);
            const WindowPhases w{{{v1, '1'}, {v2, '2'}}, {{h1, '3'}, {h2, '4'}}};
            const std::string expect = oracle::crossings({{v1, '1'}, {v2, '2'}}, {{h1, '3'}, {h2, '4'}}, m, b, 40);
            CHECK(cutting_sequence(w, m, b, 40).str() == expect);
        }
    }

    TEST_CASE("half-spaced cutting sequences reproduce the half-grid word")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::int64_t p = 1; p <= 8; ++p) {
            for (std::int64_t q = 1; q <= 8; ++q) {
                if (std::gcd(p, q) != 1) continue;
                const double a = 0.5 * u(rng), c = 0.5 * u(rng);
                const WindowPhases w{{{a, 'V'}, {a + 0.5, 'V'}}, {{c, 'H'}, {c + 0.5, 'H'}}};
                const auto word = cutting_sequence(w, static_cast<double>(p) / q, u(rng), static_cast<int>(2 * (p + q)));
                CHECK(same_cyclic(word, canonical_rational_word({p, q}, Grid::Half), false));
            }
        }
    }

    TEST_CASE("H:V ratio converges to the slope")
    {
        for (double m : {0.3183, 0.7071, 1.618, 2.5, 3.3}) {
            for (int count : {10, 100, 2000}) {
                const auto e = sturmian_exponents(SlopeIntercept::irrational(m, 0.123), count);
                const double h = std::accumulate(e.values.begin(), e.values.end(), 0.0);
                CHECK(std::abs(h / count - m) <= 2.0 / count);
            }
        }
    }

    TEST_CASE("cyclic equality and relabeling")
    {
        const SymbolWord a("1323", true), b("2313", true), c("2313", false);
        CHECK(a == b);
        CHECK_FALSE(a == c);
        CHECK(same_cyclic(SymbolWord("123123", true), SymbolWord("132132", true), true));
        CHECK_FALSE(same_cyclic(SymbolWord("123123", true), SymbolWord("132132", true), false));
        CHECK(least_rotation("3231") == "1323");
        // relabel equivalence is reflexive, symmetric and transitive on a sample
        const std::vector<std::string> ws{"1323", "2313", "1333", "2333", "3132", "1233"};
        for (const auto& x : ws) {
            CHECK(same_cyclic(SymbolWord(x, true), SymbolWord(x, true), true));
            for (const auto& y : ws) {
                const bool xy = same_cyclic(SymbolWord(x, true), SymbolWord(y, true), true);
                CHECK(xy == same_cyclic(SymbolWord(y, true), SymbolWord(x, true), true));
                for (const auto& z : ws) {
                    if (xy && same_cyclic(SymbolWord(y, true), SymbolWord(z, true), true)) {
                        CHECK(same_cyclic(SymbolWord(x, true), SymbolWord(z, true), true));
                    }
                }
            }
        }
    }

    TEST_CASE("family words")
    {
        CHECK(family_word(WordFamily::Lemniscate, {1, 1}) == SymbolWord("1323", true));
        CHECK(family_word(WordFamily::Lemniscate, {2, 1}) == SymbolWord("133233", true));
        CHECK(family_word(WordFamily::Satellite, {2, 1}, '2') == SymbolWord("233233", true));
        CHECK(family_word(WordFamily::Planetary, {3, 2}) == SymbolWord("1212", true));
        const auto half = family_word(WordFamily::Lemniscate, {1, 2});
        CHECK(half.size() == 6);
        CHECK(half.count('3') == 2);
    }

    TEST_CASE("balance report")
    {
        const auto a = is_balanced(SymbolWord("1323", true));
        CHECK(a.balanced);
        CHECK(a.run_lengths == std::vector<int>{1, 1});
        CHECK_FALSE(a.has_12_adjacency);
        const auto b = is_balanced(SymbolWord("133233", true));
        CHECK(b.balanced);
        CHECK(b.run_lengths == std::vector<int>{2, 2});
        const auto c = is_balanced(SymbolWord("121212", true));
        CHECK(c.run_lengths.empty());
        CHECK(c.has_12_adjacency);
        CHECK_FALSE(c.has_stutter);
        const auto d = is_balanced(SymbolWord("11323", true));
        CHECK(d.balanced);
        CHECK(d.has_stutter);
        CHECK_FALSE(is_balanced(SymbolWord("1323333", true)).balanced);
    }

    TEST_CASE("enumeration examples and bound")
    {
        const auto four = enumerate_syzygy_words(4);
        std::set<std::string> s;
        for (const auto& w : four) s.insert(w.str());
        CHECK(s == std::set<std::string>{"1212", "1323"});
        CHECK(enumerate_syzygy_words(2).empty());
        std::set<std::string> six;
        for (const auto& w : enumerate_syzygy_words(6)) six.insert(w.str());
        // W = 1/2 L in both labelings, W = 2 L and S in both families, (12)^2, (12)^3
        CHECK(six == std::set<std::string>{"1212", "121212", "123123", "132132", "1323", "133233", "133133", "233233"});
        std::size_t prev = 0;
        for (int L = 2; L <= 40; ++L) {
            const auto n = enumerate_syzygy_words(L).size();
            CHECK(n >= prev);
            CHECK(n <= static_cast<std::size_t>(L * L / 4 + 1));
            prev = n;
        }
        CHECK_THROWS_AS(enumerate_syzygy_words(1), std::invalid_argument);
    }
}
