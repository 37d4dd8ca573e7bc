#pragma once

#include "ncqm/fock.hpp"
#include "ncqm/nc_core.hpp"
#include "ncqm/poly.hpp"

#include <array>
#include <vector>

namespace ncqm {

// Moyal product of arity-2 symbols with theta^{12} = theta. Exact: the series
// stops at the smaller degree.
Poly moyal_star(const Poly& f, const Poly& g, double theta);
Poly star_commutator(const Poly& f, const Poly& g, double theta);

// V(X) psi with X1 = x1 + (i theta/2) d2, X2 = x2 - (i theta/2) d1, each
// monomial of V symmetrized over orderings.
Poly apply_weyl_operator(const Poly& V, const Poly& psi, double theta);
// V * psi by both routes; throws InternalMismatch if they disagree.
Poly apply_star_operator(const Poly& V, const Poly& psi, double theta);

struct GaugePotential {
    Poly A1{2}, A2{2};
    double e = 1.0;
};
// A_i = -(F/2) eps_ij x_j
GaugePotential symmetric_gauge(double field, double e = 1.0);
// A = (0, F x1)
GaugePotential landau_gauge(double field, double e = 1.0);

// d1 A2 - d2 A1 - i e [A1 *, A2]
Poly field_strength(const GaugePotential& A, double theta);
// Infinitesimal star gauge variation d_i lambda - i e [A_i *, lambda].
std::array<Poly, 2> gauge_variation(const GaugePotential& A, const Poly& lambda, double theta);

struct EffectiveLandauParams {
    double Bbar = 0;
    double Lambda_bar = 1;
    double m_star = 1;
    double e_star = 1;
    double B_check = 0;
    double m_check = 1;
    double B_physical = 0;
    double m_SW = 1;
    double e_SW = 1;
};

// Symmetric-gauge potential whose star field strength is B:
// Bbar = (2/(e theta)) (sqrt(1 + e theta B) - 1), evaluated in rationalized form.
EffectiveLandauParams bbar_of_B(double B, const NCParams& p);
// Viewpoint where Bbar itself is the theta-independent input.
EffectiveLandauParams effective_from_bbar(double Bbar, const NCParams& p);

struct StarLandauSpectrum {
    EffectiveLandauParams eff;
    std::vector<double> E_closed;  // |e* Bbar|/m* (n + 1/2)
    SpectrumResult fock;           // diagonalization of the disentangled Hamiltonian
    double max_deviation = 0;      // closed form vs fock cluster means
};

struct StarSpectrumOptions {
    int n_max = 16;  // raised to 3k when more levels are requested
    bool cross_check = true;
    double tol = 1e-6;
};

StarLandauSpectrum star_landau_spectrum(const NCParams& p, double Bbar, int k, const StarSpectrumOptions& opt = {});

struct SWFirstOrder {
    std::array<Poly, 2> A_check{Poly(2), Poly(2)};
    Poly lambda_check{2};
    Poly psi_check{2};
    Poly F_check{2};                                  // F^_12
    std::array<Poly, 2> residual{Poly(2), Poly(2)};   // O(theta) part, times theta
    std::array<Poly, 2> residual0{Poly(2), Poly(2)};  // O(1) part, zero by construction
    double residual_max = 0;
};

SWFirstOrder sw_first_order(const GaugePotential& A, const Poly& lambda, const Poly& psi, double theta);

struct SWConstantField {
    EffectiveLandauParams eff;
    double field_strength_check = 0;  // |F^_12(symmetric Bbar) - B_check|
    std::vector<double> E_closed;     // |e curlyB|/m (n + 1/2)
    SpectrumResult fock;
    double max_deviation = 0;
};

SWConstantField sw_constant_field(double curlyB, const NCParams& p, int k = 5, const StarSpectrumOptions& opt = {});

struct StarCommutationTable {
    Poly x1x2{2};                                     // [x1 *, x2]
    Poly PiPi{2};                                     // [Pi1 *, Pi2]
    std::array<std::array<Poly, 2>, 2> xPi{{{Poly(2), Poly(2)}, {Poly(2), Poly(2)}}};// [x_i *, Pi_j]
    Poly F12{2};
    double operator_mismatch = 0;                     // table vs operator composition on test functions
    std::array<Poly, 4> jacobi{Poly(2), Poly(2), Poly(2), Poly(2)};
    double jacobi_max = 0;
};

StarCommutationTable star_commutation_table(const GaugePotential& A, double theta);

} // namespace ncqm
