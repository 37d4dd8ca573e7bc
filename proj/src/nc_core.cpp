#include "ncqm/nc_core.hpp"

#include "ncqm/errors.hpp"

#include <cmath>

namespace ncqm {

void NCParams::validate() const {
    for (double v : {theta, B, e, m, hbar, c})
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite parameter");
    if (m <= 0 || hbar <= 0 || c <= 0)
        throw Error(ErrorCode::InvalidArgument, "m, hbar and c must be positive");
}

double kappa(const NCParams& p) { return p.kappa(); }

PoissonStructure::PoissonStructure(StructureKind kind, Entries num, Poly den)
    : kind_(kind), num_(std::move(num)), den_(std::move(den)) {
    if (den_.arity() != 4 || den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "denominator must be a nonzero arity-4 polynomial");
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (num_[i][j].arity() != 4) throw Error(ErrorCode::ArityMismatch, "structure entries must have arity 4");
            if (!approx_equal(num_[i][j], -num_[j][i], 0.0))
                throw Error(ErrorCode::InvalidArgument, "structure is not antisymmetric");
        }
}

bool PoissonStructure::is_constant() const {
    if (!den_.is_constant()) return false;
    for (auto& row : num_)
        for (auto& e : row)
            if (!e.is_constant()) return false;
    return true;
}

Poly PoissonStructure::entry(int i, int j) const {
    if (!den_.is_constant()) throw Error(ErrorCode::InvalidArgument, "entry is rational, not polynomial");
    return num_[i][j] * (1.0 / den_.constant_term());
}

Eigen::Matrix4d PoissonStructure::at(const double* xi) const {
    double d = den_.eval(xi).real();
    // compare against the size of the individual terms so rounding near kappa(x) = 0 still counts as singular
    double scale = 0;
    for (const auto& [e, c] : den_.terms()) {
        double t = std::abs(c);
        for (int v = 0; v < 4; ++v) t *= std::pow(std::abs(xi[v]), e[v]);
        scale += t;
    }
    if (std::abs(d) <= 1e-14 * scale) throw Error(ErrorCode::SingularStructure, "structure denominator vanishes at point");
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = num_[i][j].eval(xi).real() / d;
    return m;
}

namespace {

PoissonStructure::Entries zero_entries() {
    PoissonStructure::Entries e;
    for (auto& row : e) row.fill(Poly(4));
    return e;
}

PoissonStructure::Entries standard_entries(double theta, const Poly& B4) {
    auto e = zero_entries();
    auto set = [&](int i, int j, const Poly& v) {
        e[i][j] = v;
        e[j][i] = -v;
    };
    set(0, 1, Poly::constant(4, theta));
    set(0, 2, Poly::constant(4, 1.0));
    set(1, 3, Poly::constant(4, 1.0));
    set(2, 3, B4);
    return e;
}

Poly field_lift(const Poly& B_of_x) {
    if (B_of_x.arity() == 4) {
        for (auto& [ex, c] : B_of_x.terms())
            if (ex[2] || ex[3]) throw Error(ErrorCode::InvalidArgument, "field may depend on x1, x2 only");
        return B_of_x;
    }
    return B_of_x.lift4();
}

} // namespace

PoissonStructure symplectic_matrix(const NCParams& p, Variant v) {
    auto e = standard_entries(p.theta, Poly::constant(4, p.B));
    if (v == Variant::Standard) return {StructureKind::Standard, e, Poly::constant(4, 1.0)};
    double k = p.kappa();
    if (k == 0.0) throw Error(ErrorCode::SingularStructure, "exotic structure undefined at kappa = 0");
    for (auto& row : e)
        for (auto& x : row) x *= 1.0 / k;
    return {StructureKind::Exotic, e, Poly::constant(4, 1.0)};
}

PoissonStructure standard_structure(double theta, const Poly& B_of_x) {
    return {StructureKind::Standard, standard_entries(theta, field_lift(B_of_x)), Poly::constant(4, 1.0)};
}

PoissonStructure exotic_structure(double theta, const Poly& B_of_x) {
    Poly B4 = field_lift(B_of_x);
    Poly den = Poly::constant(4, 1.0) - B4 * theta;
    if (den.is_zero()) throw Error(ErrorCode::SingularStructure, "exotic structure undefined at kappa = 0");
    return {StructureKind::Exotic, standard_entries(theta, B4), den};
}

PoissonStructure custom_structure(const PoissonStructure::Entries& upper, const Poly& den) {
    auto e = zero_entries();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            e[i][j] = upper[i][j];
            e[j][i] = -upper[i][j];
        }
    return {StructureKind::Custom, e, den};
}

Poly poisson_bracket(const Poly& f, const Poly& g, const PoissonStructure& s) {
    if (f.arity() != 4 || g.arity() != 4) throw Error(ErrorCode::ArityMismatch, "poisson_bracket needs arity-4 symbols");
    std::array<Poly, 4> df{Poly(4), Poly(4), Poly(4), Poly(4)}, dg = df;
    for (int i = 0; i < 4; ++i) {
        df[i] = f.derivative(i);
        dg[i] = g.derivative(i);
    }
    Poly r(4);
    for (int i = 0; i < 4; ++i) {
        if (df[i].is_zero()) continue;
        for (int j = 0; j < 4; ++j) {
            if (dg[j].is_zero() || s.numerator(i, j).is_zero()) continue;
            r += s.entry(i, j) * df[i] * dg[j];
        }
    }
    return r;
}

JacobiTensor jacobi_residual(const PoissonStructure& s, const std::array<double, 4>& xi) {
    const double* pt = xi.data();
    const Poly& D = s.denominator();
    double d = D.eval(pt).real();
    if (d == 0.0) throw Error(ErrorCode::SingularStructure, "structure denominator vanishes at point");
    double dD[4];
    for (int l = 0; l < 4; ++l) dD[l] = D.derivative(l).eval(pt).real();

    double om[4][4], dom[4][4][4];  // dom[l][j][k] = d_l Omega^{jk}
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const Poly& N = s.numerator(j, k);
            double n = N.eval(pt).real();
            om[j][k] = n / d;
            for (int l = 0; l < 4; ++l) {
                double dn = N.is_zero() ? 0.0 : N.derivative(l).eval(pt).real();
                dom[l][j][k] = (dn * d - n * dD[l]) / (d * d);
            }
        }

    JacobiTensor J{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                double v = 0;
                for (int l = 0; l < 4; ++l)
                    v += om[i][l] * dom[l][j][k] + om[j][l] * dom[l][k][i] + om[k][l] * dom[l][i][j];
                J[i][j][k] = v;
            }
    return J;
}

double max_abs(const JacobiTensor& j) {
    double m = 0;
    for (auto& a : j)
        for (auto& b : a)
            for (double v : b) m = std::max(m, std::abs(v));
    return m;
}

} // namespace ncqm
