#pragma once

#include "ncqm/poly.hpp"

#include <Eigen/Dense>

#include <array>

namespace ncqm {

struct NCParams {
    double theta = 0.0;
    double B = 0.0;
    double e = 1.0;
    double m = 1.0;
    double hbar = 1.0;
    double c = 1.0;

    // 1 - (e/(hbar c)) B theta; computed on demand so it never goes stale.
    double kappa() const { return 1.0 - (e / (hbar * c)) * B * theta; }
    // Throws InvalidArgument unless m, hbar, c > 0 and all fields finite.
    void validate() const;
};

double kappa(const NCParams& p);

enum class StructureKind { Standard, Exotic, Custom };
enum class Variant { Standard, Exotic };

// Poisson tensor over xi = (x1, x2, p1, p2). Entries are num[I][J] / den with a
// common polynomial denominator, which is 1 for every polynomial structure and
// kappa(x) = 1 - theta B(x) for the exotic structure with a varying field.
class PoissonStructure {
public:
    using Entries = std::array<std::array<Poly, 4>, 4>;

    PoissonStructure(StructureKind kind, Entries num, Poly den);

    StructureKind kind() const { return kind_; }
    const Poly& numerator(int i, int j) const { return num_[i][j]; }
    const Poly& denominator() const { return den_; }
    bool has_constant_denominator() const { return den_.is_constant(); }
    bool is_constant() const;

    // Entry as a polynomial; requires a constant denominator.
    Poly entry(int i, int j) const;
    Eigen::Matrix4d at(const double* xi) const;
    Eigen::Matrix4d at(const std::array<double, 4>& xi) const { return at(xi.data()); }

private:
    StructureKind kind_;
    Entries num_;
    Poly den_;
};

PoissonStructure symplectic_matrix(const NCParams& p, Variant v);

// Standard structure with a position-dependent field B(x1,x2) (arity-2 polynomial).
PoissonStructure standard_structure(double theta, const Poly& B_of_x);
// Standard structure divided by kappa(x) = 1 - theta B(x).
PoissonStructure exotic_structure(double theta, const Poly& B_of_x);
// Antisymmetric structure from upper-triangle polynomial entries.
PoissonStructure custom_structure(const PoissonStructure::Entries& upper, const Poly& den = Poly::constant(4, 1.0));

// sum_IJ Omega^{IJ} d_I f d_J g. Exact for polynomial structures.
Poly poisson_bracket(const Poly& f, const Poly& g, const PoissonStructure& s);

using JacobiTensor = std::array<std::array<std::array<double, 4>, 4>, 4>;

// J^{IJK} = {xi^I,{xi^J,xi^K}} + cyclic, i.e. sum_L Omega^{IL} d_L Omega^{JK} + cyclic.
JacobiTensor jacobi_residual(const PoissonStructure& s, const std::array<double, 4>& xi);
double max_abs(const JacobiTensor& j);

} // namespace ncqm
