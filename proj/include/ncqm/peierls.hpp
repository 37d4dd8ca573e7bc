#pragma once

#include "ncqm/fock.hpp"
#include "ncqm/nc_core.hpp"
#include "ncqm/table.hpp"

#include <Eigen/Dense>

#include <vector>

namespace ncqm {

// Landau levels of the symmetric-gauge Hamiltonian on a truncated two-mode space.
// vectors[n] holds orthonormal columns spanning the resolved part of level n.
struct ProjectorSet {
    FockSpace space;
    FockOperator H;
    std::vector<double> level_energies;
    std::vector<Eigen::MatrixXcd> vectors;
    std::vector<Eigen::MatrixXcd> projectors;
    Eigen::MatrixXcd cumulative;  // Pi_N = sum of projectors
    int N = 0;
};

// Two-mode space with length sqrt(2 hbar c / |eB|), where the Landau
// Hamiltonian conserves total occupation.
FockSpace landau_space(const NCParams& p, int n_max);

// Canonical X, P on the space (theta = 0, B = 0 representation).
RealizedRep canonical_ops(const FockSpace& s);

// (1/2m) sum (P - (e/c) A)^2 with A = (-B x2/2, B x1/2).
FockOperator landau_hamiltonian(const NCParams& p, const RealizedRep& ops);

// Requires theta = 0, B != 0, hbar = 1 and N <= n_max / 4. Throws ClusterAmbiguity
// when fewer than N + 1 levels cluster cleanly.
ProjectorSet landau_projectors(const NCParams& p, const FockSpace& space, int N);

// f(h) = 4/(pi(2n+1)) sin((n+1/2) pi (h-1)) / ((h-1)(h+1)), with f(+-1) = 1.
double sinc_weight(double h, int n);
// f(H / E_n) by spectral calculus.
Eigen::MatrixXcd projector_sinc(const FockOperator& H, int n, double E_n);

// States with total occupation <= n_max / 2, where truncated levels are complete.
std::vector<int> projector_interior(const FockSpace& s);

struct TruncatedCommutators {
    int N = 0;
    // Fitted coefficients of i P_N on the interior block (so the X1X2 value is
    // the real number multiplying i P_N).
    double coefficient_X1X2 = 0, coefficient_P1P2 = 0;
    double coefficient_XP[2][2] = {{0, 0}, {0, 0}};
    double expected_X1X2 = 0, expected_P1P2 = 0, expected_XP_diag = 0;
    // Interior Frobenius norm of C - coefficient i P_N over the norm of C.
    double residual_norm = 0, residual_P1P2 = 0;
    // Max residual of [X_i, P_j] against i hbar delta_ij (Pi_N - (N+1)/2 P_N).
    double residual_XP = 0;
    // |tr(P_I C_X1P1) / (i hbar tr P_I) - 1| over the interior block.
    double canonical_trend = 0;
};

TruncatedCommutators truncated_commutators(const ProjectorSet& ps, int N, const RealizedRep& ops, const NCParams& p);
Table truncated_commutator_table(const std::vector<TruncatedCommutators>& rows);

// Coefficient c in [Y1, Y2] = i c for the guiding-center coordinates: -hbar c / (eB).
double guiding_center_theta(const NCParams& p);

struct PeierlsOptions {
    int n_max_full = 20;
    int n_max_effective = 60;
    // Ordering of V on the guiding-center pair. Anti-normal ordering carries the
    // lowest-level expectation of V, so it matches E_n - hbar omega_B / 2.
    Prescription prescription = Prescription::AntiNormal;
};

struct PeierlsResult {
    std::vector<double> epsilon_n;
    std::vector<double> full_E_n;
    double omega_B = 0;
    // |(E_0 - hbar omega_B / 2) - eps_0| / |eps_0|
    double deviation = 0;
};

// Requires theta = 0, B != 0, hbar = 1; V is an arity-2 polynomial in (x1, x2).
PeierlsResult peierls_spectrum(const Poly& V, double lambda, const NCParams& p, int k, const PeierlsOptions& opt = {});

} // namespace ncqm
