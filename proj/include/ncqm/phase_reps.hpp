#pragma once

#include "ncqm/errors.hpp"
#include "ncqm/nc_core.hpp"
#include "ncqm/poly.hpp"

#include <Eigen/Dense>

#include <array>

namespace ncqm {

// Representation ordering is (X1, P1, X2, P2) for both rows (deformed operators)
// and columns (canonical operators). nc-core orders phase space as
// (x1, x2, p1, p2); rep_to_xi maps a representation index to its xi index.
inline constexpr std::array<int, 4> rep_to_xi{0, 2, 1, 3};

enum class RepTag { LandauGauge, SymmetricGauge, Custom };
enum class Branch { Plus, Minus };

struct LinearRep {
    Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();
    RepTag tag = RepTag::Custom;
    NCParams params;
    // symmetric-gauge coefficients; zero otherwise
    double a = 0, c = 0, d = 0;
    Branch branch = Branch::Plus;

    double det() const { return matrix.determinant(); }
    bool invertible(double tol = 1e-14) const { return std::abs(det()) > tol; }
};

// [X1,P1] = [X2,P2] = i in representation ordering (coefficients of i).
Eigen::Matrix4d omega_canonical();
// Target table: theta in the X1X2 slot, B in P1P2, delta in the cross slots.
Eigen::Matrix4d target_table(const NCParams& p);
// Permute a representation-ordered 4x4 matrix into xi ordering.
Eigen::Matrix4d to_xi_ordering(const Eigen::Matrix4d& m);

LinearRep landau_gauge_rep(const NCParams& p);
LinearRep symmetric_gauge_rep(const NCParams& p, double a, Branch branch);
LinearRep custom_rep(const Eigen::Matrix4d& m, const NCParams& p);
// symmetric_gauge_rep for theta != 0; at theta = 0 the commutative symmetric
// gauge X_j, P_1 + (B/2) X_2, P_2 - (B/2) X_1.
LinearRep symmetric_rep_any_theta(const NCParams& p, double a = 1.0, Branch branch = Branch::Plus);

// M Omega_can M^T
Eigen::Matrix4d commutator_table(const LinearRep& rep);

struct Decoupling {
    Eigen::Matrix<double, 2, 4> K_rows;  // K1, K2 over canonical (X1,P1,X2,P2)
    double KK_commutator = 0;            // coefficient of i in [K1,K2]
    double max_XK = 0;                   // max |[X_i,K_j]| coefficient, zero when decoupled
};

// K_j = P_j - (1/theta) eps_jk X_k in the Landau-gauge representation.
Decoupling decouple(const NCParams& p);

// Orthogonal-plus-scaling transform T with T M T^T = omega_canonical(), built
// from the real Schur form. exists is false when M is degenerate.
struct CanonicalForm {
    bool exists = false;
    Eigen::Matrix4d T = Eigen::Matrix4d::Zero();
    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
    double residual = 0;
};
CanonicalForm antisymmetric_canonical_form(const Eigen::Matrix4d& M, double tol = 1e-12);

// X_j -> X_j - At_j(P), P_j unchanged. At_j are arity-2 polynomials whose two
// variables are read as (p1, p2).
struct MomentumGaugeRep {
    Poly A1{2}, A2{2};
    double theta = 0;
};

class CurlMismatch : public Error {
public:
    explicit CurlMismatch(Poly residual);
    const Poly& residual() const { return residual_; }

private:
    Poly residual_;
};

MomentumGaugeRep momentum_gauge_rep(const Poly& A1, const Poly& A2, double theta);
inline MomentumGaugeRep symmetric_momentum_gauge(double theta) {
    return momentum_gauge_rep(x2() * (theta / 2), x1() * (-theta / 2), theta);
}

// Gauge function alpha(P) with At_from - At_to = grad alpha, so that
// exp(i alpha(P)) maps the 'from' coordinates onto the 'to' coordinates.
Poly gauge_function(const MomentumGaugeRep& from, const MomentumGaugeRep& to);
// Gauge rep obtained from 'rep' by the unitary exp(i alpha(P)).
MomentumGaugeRep gauge_transform(const MomentumGaugeRep& rep, const Poly& alpha);

// Applies the four rep operators, as differential operators, to
// f(x1) exp(i (lambda - x1/theta) x2) with f = x1^deg; each image is reported
// through its polynomial prefactor. The family is closed when no prefactor
// depends on x2.
struct FamilyClosure {
    std::array<Poly, 4> images{Poly(2), Poly(2), Poly(2), Poly(2)};
    double x2_dependence = 0;
    bool closed = false;
};
FamilyClosure kappa_zero_family_closure(const LinearRep& rep, int deg, double lambda);

} // namespace ncqm
