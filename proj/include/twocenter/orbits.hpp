#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twocenter/emmap.hpp"
#include "twocenter/flow.hpp"
#include "twocenter/model.hpp"
#include "twocenter/periods.hpp"
#include "twocenter/sturmian.hpp"

namespace twocenter {

struct SyzygyEvent {
    double tau = 0.0;
    char symbol = '3';
    PhaseState state;
};

struct Trajectory {
    std::vector<PhaseState> samples;
    std::vector<SyzygyEvent> events;
    bool closed = false;
    double closure_error = 0.0;
    bool ends_in_collision = false;
    /// Distance in (lambda, nu) from the last state to the nearest centre preimage.
    double collision_residual = 0.0;
    /// max |H_lambda + H_nu| and max |H_nu - H_nu(start)| over the samples.
    double max_level_error = 0.0;
    double max_g_drift = 0.0;
    /// Smallest time factor seen at steps and events.
    double min_time_factor = 0.0;
};

namespace orbits {

struct IntegrateOptions {
    flow::Options flow;
    double collision_guard = 1e-10;
    double admissible_tol = 1e-9;
    bool record_samples = true;
    /// Start at a centre and stop at the next one (disables the guard).
    bool collision_mode = false;
    double collision_capture = 1e-5;
};

/// Regularized flow over [0, tau_span] from `start` (tau and t reset to 0).
/// Throws InadmissibleStart, CollisionApproach.
Trajectory integrate(const PhaseState& start, const Params& p, double tau_span, const IntegrateOptions& opt = {});

sturmian::SymbolWord syzygy_word(const Trajectory& t);

/// Continued-fraction match within tol and denominator <= max_q.
std::optional<Rational> as_rational(double w, double tol = 1e-9, std::int64_t max_q = 1000);

struct OrbitSpec {
    std::optional<double> g;
    std::optional<Rational> w;
    Region region = Region::L;
    double theta_nu = 0.0;
    double theta_lambda = 0.0;
    TorusSelector selector = TorusSelector::First;
};

struct PeriodicOrbit {
    Trajectory trajectory;
    TorusData torus;
    Rational w;
    OrbitSpec spec;
};

inline constexpr double kClosureTolerance = 1e-6;

/// Throws ClosureFailure, CollisionApproach, OutOfRange (via solve_g).
PeriodicOrbit periodic_orbit(const OrbitSpec& spec, const Params& p, const IntegrateOptions& opt = {});

/// Torus-line intercept b = theta_lambda - W theta_nu, and the intercepts (mod 1/q)
/// whose lines run through a window intersection, i.e. hit a centre.
std::vector<double> collision_intercepts(const sturmian::WindowPhases& w, Rational slope);

struct Prediction {
    sturmian::SymbolWord word;          // cutting sequence of the measured windows
    sturmian::SymbolWord theorem_word;  // Sturmian exponents with the family labeling
    sturmian::WindowPhases phases;
    double intercept = 0.0;
    bool half_spaced = false;
    bool agrees = false;
};

inline constexpr double kHalfSpacingTolerance = 1e-9;

Prediction predict(double g, Rational w, const Params& p, TorusSelector sel);
sturmian::SymbolWord predicted_word(double g, Rational w, const Params& p, TorusSelector sel);

/// Collision-to-collision segments of a rational S, S' or L torus, one per distinct orbit.
/// Throws RegionError for P, std::invalid_argument for irrational W.
std::vector<Trajectory> collision_orbits(double g, const Params& p, TorusSelector sel = TorusSelector::First);

/// Integrate from the first collision state of the torus for `lambda_periods` periods,
/// stopping early at a second collision.
Trajectory collision_search(double g, const Params& p, TorusSelector sel, double lambda_periods);

struct VerifyCase {
    Region region = Region::Empty;
    TorusSelector selector = TorusSelector::First;
    Rational w;
    double g = 0.0;
    double theta_nu = 0.0;
    double theta_lambda = 0.0;
    std::string expected;
    std::string observed;
    std::string theorem;
    double W_measured = 0.0;
    double closure_error = 0.0;
    double level_error = 0.0;
    double cartesian_h_drift = 0.0;
    double cartesian_g_drift = 0.0;
    /// check name -> pass
    std::vector<std::pair<std::string, bool>> checks;
    std::string error;
    bool pass = false;
};

struct VerifyReport {
    Params params;
    std::uint64_t seed = 0;
    std::vector<VerifyCase> cases;
    bool all_pass = false;
};

/// Every region present at p.h whose W-range contains w, every torus, `phases` random
/// collision-free starting phases. A w inside no range yields a failing OutOfRange case.
VerifyReport verify_theorems(const Params& p, const std::vector<Rational>& ws, int phases, std::uint64_t seed = 1);

}  // namespace orbits
}  // namespace twocenter
