#pragma once

namespace twocenter::elliptic {

/// Parameters closer to 1 than this are refused.
inline constexpr double kDomainMargin = 1e-15;
/// Above 1 - kOverflowMargin the result is dominated by the log singularity.
inline constexpr double kOverflowMargin = 1e-12;

/// Complete elliptic integral of the first kind K(m), m = k^2 < 1.
///
/// Arithmetic-geometric mean: K(m) = pi / (2 AGM(1, sqrt(1-m))). Negative
/// parameters go through K(-mu) = K(mu/(1+mu)) / sqrt(1+mu) first, so the
/// iteration only ever sees parameters in [0, 1).
/// Throws DomainError for m >= 1 - kDomainMargin or NaN.
double complete_k(double m);

/// K expressed through the complementary parameter mc = 1 - m > 0.
/// Use this when 1 - m is available without cancellation.
double complete_k_complement(double mc);

/// True when m is past the overflow-warning threshold (but still evaluable).
bool near_singular(double m);

}  // namespace twocenter::elliptic
