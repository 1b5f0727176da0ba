#include <doctest.h>

#include "support/oracles.hpp"
#include "twocenter/elliptic.hpp"
#include "twocenter/error.hpp"

using twocenter::elliptic::complete_k;

TEST_SUITE("elliptic")
{
    TEST_CASE("anchor values")
    {
        CHECK(std::abs(complete_k(0.0) - oracle::pi / 2) <= 1e-14);
        CHECK(complete_k(0.5) == doctest::Approx(1.8540746773013719).epsilon(1e-14));
        CHECK(complete_k(-1.0) == doctest::Approx(1.3110287771460600).epsilon(1e-14));
        CHECK(std::abs(complete_k(-1.0) - complete_k(0.5) / std::sqrt(2.0)) <= 1e-14);
    }

    TEST_CASE("agreement with quadrature on [-50, 0.99]")
    {
        for (int i = 0; i <= 400; ++i) {
            const double m = -50.0 + (50.99) * i / 400.0;
            const double k = complete_k(m);
            CHECK(std::abs(k - oracle::k_quadrature(m)) <= 1e-10 * k);
            if (m >= 0.0) CHECK(std::abs(k - oracle::k_boost(m)) <= 1e-13 * k);
        }
    }

    TEST_CASE("imaginary modulus identity")
    {
        for (double mu : {0.1, 1.0, 10.0, 100.0}) {
            CHECK(std::abs(complete_k(-mu) * std::sqrt(1.0 + mu) - complete_k(mu / (1.0 + mu))) <= 1e-12);
        }
    }

    TEST_CASE("monotone and divergent")
    {
        double prev = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double m = -1e4 + (1e4 + 1.0 - 1e-9) * std::pow(i / 2000.0, 0.2);
            const double k = complete_k(m);
            CHECK(k > prev);
            prev = k;
        }
        CHECK(complete_k(1.0 - 1e-14) > 17.0);
        CHECK(twocenter::elliptic::near_singular(1.0 - 1e-13));
        CHECK_FALSE(twocenter::elliptic::near_singular(0.9));
        CHECK_THROWS_AS(complete_k(1.0), twocenter::DomainError);
        CHECK_THROWS_AS(complete_k(2.0), twocenter::DomainError);
        CHECK_THROWS_AS(complete_k(std::nan("")), twocenter::DomainError);
    }

    TEST_CASE("complement form")
    {
        for (double mc : {1e-12, 1e-6, 0.3, 1.0, 4.0, 1e6}) {
            CHECK(twocenter::elliptic::complete_k_complement(mc) == doctest::Approx(complete_k(1.0 - mc)).epsilon(mc < 1e-3 ? 1e-4 : 1e-13));
        }
    }
}
