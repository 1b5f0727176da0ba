#pragma once

namespace twocenter {

/// One problem instance. The centres sit at (-1,0) (mass m1) and (1,0)
/// (mass m2); other separations follow by rescaling.
struct Params {
    double m1 = 0.5;
    double m2 = 0.5;
    double h = -0.23;

    /// Throws std::invalid_argument unless m1, m2 > 0 and h < 0.
    static Params make(double m1, double m2, double h);
    Params with_h(double energy) const { return make(m1, m2, energy); }

    double total() const { return m1 + m2; }
    double difference() const { return m1 - m2; }
};

struct CartesianState {
    double x = 0.0;
    double y = 0.0;
    double px = 0.0;
    double py = 0.0;
};

/// Regularized state. `nu` is unwrapped along trajectories.
struct PhaseState {
    double lambda = 0.0;
    double nu = 0.0;
    double p_lambda = 0.0;
    double p_nu = 0.0;
    double tau = 0.0;  // fictitious time
    double t = 0.0;    // physical time
};

struct SeparatedEnergies {
    double lambda = 0.0;  // H_lambda
    double nu = 0.0;      // H_nu
    double sum() const { return lambda + nu; }
};

namespace model {

/// H = (px^2+py^2)/2 - m1/r1 - m2/r2. Throws CollisionError at a centre.
double hamiltonian(const CartesianState& s, const Params& p);

/// Euler's second integral G. Throws CollisionError at a centre.
double second_integral(const CartesianState& s, const Params& p);

/// (x, y) = (cosh l sin n, sinh l cos n) with the cotangent lift for momenta.
CartesianState from_regularized(const PhaseState& ps);

/// Principal branch of asin(x + i y) with lambda >= 0, nu in (-pi, pi].
/// Throws BranchAmbiguity at the centres.
PhaseState to_regularized(const CartesianState& s);

double potential_lambda(double lambda, const Params& p);
double potential_nu(double nu, const Params& p);
/// -dV/dq of the two potentials.
double force_lambda(double lambda, const Params& p);
double force_nu(double nu, const Params& p);

/// H_lambda = p^2/2 - (m1+m2) cosh l - h cosh^2 l,  H_nu = p^2/2 + (m1-m2) sin n + h sin^2 n.
SeparatedEnergies separated_hamiltonians(const PhaseState& ps, const Params& p);

/// dt/dtau = |cos(nu + i lambda)|^2 = cosh^2 l - sin^2 n; zero only at the centres.
double time_factor(const PhaseState& ps);

/// (l, n, pl, pn) -> (-l, pi - n, -pl, -pn): same Cartesian point, other sheet.
PhaseState deck_transform(const PhaseState& ps);

}  // namespace model
}  // namespace twocenter
