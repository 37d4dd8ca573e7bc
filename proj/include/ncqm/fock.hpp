#pragma once

#include "ncqm/nc_core.hpp"
#include "ncqm/phase_reps.hpp"
#include "ncqm/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <optional>
#include <vector>

namespace ncqm {

using SparseOp = Eigen::SparseMatrix<cplx>;

// Truncated number basis, one or two modes, each occupation 0..n_max.
// Two-mode index is n1 * (n_max + 1) + n2. length is the oscillator length
// used for X = length (a + a^dag)/sqrt2, P = i (a^dag - a)/(sqrt2 length).
struct FockSpace {
    int n_max = 4;
    int modes = 2;
    int interior_margin = 2;
    double length = 1.0;

    FockSpace() = default;
    FockSpace(int n_max, int modes = 2, double length = 1.0, int interior_margin = 2);

    int per_mode() const { return n_max + 1; }
    int dim() const { return modes == 1 ? per_mode() : per_mode() * per_mode(); }
    int index(int n1, int n2 = 0) const { return modes == 1 ? n1 : n1 * per_mode() + n2; }
    std::array<int, 2> occupation(int i) const;
    int max_occupation(int i) const;
    // Basis states with every occupation <= n_max - margin * degree.
    std::vector<int> interior(int degree) const;
    std::vector<int> boundary(int degree) const;
};

class FockOperator {
public:
    FockOperator() = default;
    // degree is the ladder-operator degree, which sets the interior margin.
    FockOperator(const FockSpace& space, Eigen::MatrixXcd m, int degree);

    const FockSpace& space() const { return space_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    int degree() const { return degree_; }
    bool hermitian() const { return hermitian_; }
    double hermiticity_defect() const;

    FockOperator operator+(const FockOperator& o) const;
    FockOperator operator-(const FockOperator& o) const;
    FockOperator operator*(const FockOperator& o) const;
    FockOperator operator*(cplx s) const;

private:
    FockSpace space_;
    Eigen::MatrixXcd m_;
    int degree_ = 0;
    bool hermitian_ = false;
};

FockOperator commutator(const FockOperator& a, const FockOperator& b);
// Identity on the space, degree 0.
FockOperator identity(const FockSpace& s);
// max |A - expected| over rows and columns inside interior(degree).
double interior_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& expected, const FockSpace& s, int degree);
Eigen::MatrixXcd interior_block(const Eigen::MatrixXcd& A, const std::vector<int>& idx);

struct CanonicalOps {
    FockOperator X1, X2, P1, P2;
};
// Plain truncated ladder construction on the space itself.
CanonicalOps build_canonical_ops(const FockSpace& s);

// Sparse ladder-built canonical operators (modes 1 and 2) on a given space.
struct SparseCanonical {
    std::array<SparseOp, 2> X, P;
    SparseOp I;
};
SparseCanonical sparse_canonical(const FockSpace& s);

// Deformed operators realized on a padded space. Polynomials of them are formed
// there and then restricted to the target box, which makes every product exact
// on the box as long as the word degree stays within 2 * pad.
class RealizedRep {
public:
    RealizedRep(FockSpace target, int pad, int op_degree, double theta, std::array<SparseOp, 2> X,
                std::array<SparseOp, 2> P);

    const FockSpace& space() const { return target_; }
    const FockSpace& padded() const { return padded_; }
    int pad() const { return pad_; }
    int op_degree() const { return op_degree_; }
    double theta() const { return theta_; }
    const SparseOp& Xp(int j) const { return X_[j]; }
    const SparseOp& Pp(int j) const { return P_[j]; }

    FockOperator X(int j) const { return restrict(X_[j], op_degree_); }
    FockOperator P(int j) const { return restrict(P_[j], op_degree_); }
    FockOperator restrict(const SparseOp& A, int degree) const;
    // Throws when a product of the given ladder degree would see the padding edge.
    void check_degree(int degree) const;

private:
    FockSpace target_, padded_;
    int pad_, op_degree_;
    double theta_;
    std::array<SparseOp, 2> X_, P_;
    std::vector<int> keep_;
};

// Linear representation; optional alpha(p1,p2) applies the unitary
// exp(i alpha(P)), which shifts X_j -> X_j + d alpha / d P_j.
RealizedRep realize_rep(const LinearRep& rep, const FockSpace& s, int max_word_degree = 4,
                        const std::optional<Poly>& alpha = std::nullopt);
RealizedRep realize_rep(const MomentumGaugeRep& rep, const FockSpace& s, int max_word_degree = 4);
// One-mode pair with [X1, X2] = i theta (theta > 0): X1 = sqrt(theta) X, X2 = sqrt(theta) P.
RealizedRep realize_pair(double theta, const FockSpace& one_mode, int max_word_degree = 4);

// sqrt(c/d) style length that balances the momentum rows of a linear rep.
double matched_length(const LinearRep& rep);

enum class Prescription { Weyl, Normal, AntiNormal };

// V(X1, X2) on the padded space and its ladder degree.
SparseOp quantize_padded(const Poly& V, const RealizedRep& ops, Prescription pr, int* degree = nullptr);
FockOperator quantize_poly(const Poly& V, const RealizedRep& ops, Prescription pr);

// (1/2m) sum_j (P_j - (e/c) A_j(X))^2 with A_j Weyl-ordered; A empty means A = 0.
FockOperator minimal_coupling_hamiltonian(const RealizedRep& ops, double m, double e_over_c = 1.0,
                                          const std::array<Poly, 2>* A = nullptr);
// Same plus lambda V(X) quantized with the given prescription.
FockOperator hamiltonian_with_potential(const RealizedRep& ops, double m, double e_over_c,
                                        const std::array<Poly, 2>* A, const Poly& V, double lambda,
                                        Prescription pr = Prescription::Weyl);

struct Cluster {
    double mean = 0;
    int multiplicity = 0;
    double spread = 0;
};

struct SpectrumOptions {
    double degeneracy_tol = 1e-9;  // relative grouping before leakage rotation
    double leak_tol = 1e-8;        // max weight allowed on boundary states
    double cluster_tol = 1e-6;     // relative join distance within a cluster
    double upper_fraction = 1.0 / 3.0;
    bool filter_leakage = true;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;      // resolved eigenvalues of the reported clusters
    std::vector<Cluster> clusters;        // lowest k validated clusters
    std::vector<double> all_eigenvalues;  // raw ascending eigenvalues
    int n_resolved = 0;
    double omega_B = 0;  // filled by callers that know the field
};

// Full spectral decomposition with leakage classification. Used by spectrum
// and by the projector builders that need eigenvectors.
struct Decomposition {
    Eigen::VectorXd values;          // resolved eigenvalues ascending
    Eigen::MatrixXcd vectors;        // matching eigenvectors
    Eigen::VectorXd all_values;
    std::vector<std::vector<int>> clusters;  // indices into values, validated clusters only
    std::vector<Cluster> stats;
};
Decomposition decompose(const FockOperator& H, const SpectrumOptions& opt = {});

SpectrumResult spectrum(const FockOperator& H, int k, const SpectrumOptions& opt = {});

// Dense Hermitian eigensolve (LAPACK zheevd). Eigenvalues ascending.
void hermitian_eigensolve(const Eigen::MatrixXcd& A, Eigen::VectorXd& w, Eigen::MatrixXcd* V);

// Lowest k clusters of (P1^2 + P2^2)/2m for the deformed momenta of the
// symmetric-gauge rep, optionally conjugated by exp(i alpha(P)). omega_B = |B|/m.
SpectrumResult deformed_landau_spectrum(const NCParams& p, int n_max, int k, double a = 1.0,
                                        Branch branch = Branch::Plus, const std::optional<Poly>& alpha = std::nullopt);

struct LandauClosedForms {
    std::vector<double> E_n;
    double omega_B = 0;
    double density_of_states = 0;
};
// E_n = hbar |eB|/(m c) (n + 1/2); density (1/2pi)|eB/(hbar c)|/|kappa|.
LandauClosedForms landau_closed_forms(const NCParams& p, int levels = 5);

} // namespace ncqm
