#pragma once

#include "ncqm/nc_core.hpp"
#include "ncqm/poly.hpp"
#include "ncqm/table.hpp"

#include <array>
#include <string>
#include <vector>

namespace ncqm {

using State = std::array<double, 4>;  // (x1, x2, p1, p2)

struct Trajectory {
    double h = 0;
    std::vector<double> times;
    std::vector<State> states;
    std::vector<std::array<double, 2>> velocities;  // dx/dt from the vector field
    std::vector<double> energy;
    double energy_drift = 0;  // max |H - H0| / max(1, |H0|)
    std::vector<std::string> warnings;
};

struct IntegrateOptions {
    double drift_bound = 1e-6;
};

// Fixed-step RK4 on dxi/dt = Omega(xi) grad H(xi). H is an arity-4 symbol.
Trajectory integrate(const PoissonStructure& s, const Poly& H, const State& xi0, double T, double h,
                     const IntegrateOptions& opt = {});

struct EomResidual {
    std::vector<double> times;
    std::vector<std::array<double, 2>> residual;
    double max_residual = 0;
    // max magnitudes of the individual force terms along the path
    double max_inertial = 0, max_newton = 0, max_magnetic = 0, max_theta = 0;
};

// m x'' + kappa dV - B eps x' - m theta eps d/dt(dV), central differences.
EomResidual eom_residual(const Trajectory& traj, const NCParams& p, const Poly& V);

enum class Gauge { Symmetric, Landau };

// Classical vector potential of field curlyB in the given gauge (arity 2).
std::array<Poly, 2> classical_potential(Gauge g, double curlyB);
// Effective field F12 = {p1 - A1, p2 - A2} for the given gauge.
double effective_field(Gauge g, double curlyB, double theta);

// H = (p - A)^2 / 2m under the standard structure with B = 0.
Trajectory minimal_coupling_trajectory(const NCParams& p, Gauge g, double curlyB, const State& xi0, double T, double h);

struct FrequencyFit {
    double omega = 0;
    double amplitude = 0;
    double offset = 0;
    double residual_rms = 0;
    int zero_crossings = 0;
};

// Least-squares sinusoid a cos(wt) + b sin(wt) + c, seeded from zero crossings.
FrequencyFit fit_frequency(const std::vector<double>& t, const std::vector<double>& y);
// Fit on v1 of the trajectory.
FrequencyFit dominant_frequency(const Trajectory& traj);

Table trajectory_table(const Trajectory& traj);

} // namespace ncqm
