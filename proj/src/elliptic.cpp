#include "twocenter/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "twocenter/error.hpp"

namespace twocenter::elliptic {

namespace {

// AGM(1, b) for b > 0.
double agm(double b)
{
    double a = 1.0;
    for (int it = 0; it < 64; ++it) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * a) break;
    }
    return 0.5 * (a + b);
}

}  // namespace

double complete_k_complement(double mc)
{
    if (!(mc > 0.0) || std::isnan(mc)) {
        throw DomainError("complete_k: complementary parameter must be positive, got " + std::to_string(mc));
    }
    if (mc > 1.0) {
        // m = 1 - mc < 0: K(-mu) = K(mu/(1+mu)) / sqrt(1+mu), complement 1/(1+mu).
        return complete_k_complement(1.0 / mc) / std::sqrt(mc);
    }
    return std::numbers::pi / (2.0 * agm(std::sqrt(mc)));
}

double complete_k(double m)
{
    if (std::isnan(m) || m >= 1.0 - kDomainMargin) {
        throw DomainError("complete_k: parameter must be < 1, got " + std::to_string(m));
    }
    if (m < 0.0) {
        const double mu = -m;
        return complete_k_complement(1.0 / (1.0 + mu)) / std::sqrt(1.0 + mu);
    }
    return complete_k_complement(1.0 - m);
}

bool near_singular(double m)
{
    return m > 1.0 - kOverflowMargin;
}

}  // namespace twocenter::elliptic
