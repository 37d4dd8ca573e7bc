#include "ncqm/peierls.hpp"

#include "ncqm/errors.hpp"
#include "ncqm/phase_reps.hpp"

#include <cmath>
#include <numbers>

namespace ncqm {

namespace {

void require_landau(const NCParams& p) {
    p.validate();
    if (p.theta != 0.0) throw Error(ErrorCode::InvalidArgument, "Landau projectors are built at theta = 0");
    if (p.B == 0.0) throw Error(ErrorCode::InvalidArgument, "no Landau structure at B = 0");
    if (p.hbar != 1.0) throw Error(ErrorCode::InvalidArgument, "Fock realization assumes hbar = 1");
    if (p.e == 0.0) throw Error(ErrorCode::InvalidArgument, "charge must be nonzero");
}

std::array<Poly, 2> symmetric_potential(double B) { return {x2() * (-B / 2), x1() * (B / 2)}; }

Eigen::MatrixXcd rows_of(const Eigen::MatrixXcd& V, const std::vector<int>& idx) {
    Eigen::MatrixXcd r(idx.size(), V.cols());
    for (size_t i = 0; i < idx.size(); ++i) r.row(i) = V.row(idx[i]);
    return r;
}

} // namespace

FockSpace landau_space(const NCParams& p, int n_max) {
    return FockSpace(n_max, 2, std::sqrt(2 * p.hbar * p.c / std::abs(p.e * p.B)));
}

RealizedRep canonical_ops(const FockSpace& s) {
    NCParams zero;
    return realize_rep(custom_rep(Eigen::Matrix4d::Identity(), zero), s);
}

FockOperator landau_hamiltonian(const NCParams& p, const RealizedRep& ops) {
    auto A = symmetric_potential(p.B);
    return minimal_coupling_hamiltonian(ops, p.m, p.e / p.c, &A);
}

ProjectorSet landau_projectors(const NCParams& p, const FockSpace& space, int N) {
    require_landau(p);
    if (N < 0 || 4 * N > space.n_max) throw Error(ErrorCode::InvalidArgument, "need 0 <= N <= n_max / 4");
    auto ops = canonical_ops(space);
    ProjectorSet ps{space, landau_hamiltonian(p, ops), {}, {}, {}, {}, N};
    Decomposition d = decompose(ps.H);
    if ((int)d.clusters.size() < N + 1)
        throw Error(ErrorCode::ClusterAmbiguity,
                    "only " + std::to_string(d.clusters.size()) + " Landau levels clustered, need " + std::to_string(N + 1));
    const int n = space.dim();
    ps.cumulative = Eigen::MatrixXcd::Zero(n, n);
    for (int l = 0; l <= N; ++l) {
        const auto& idx = d.clusters[l];
        Eigen::MatrixXcd V(n, idx.size());
        for (size_t k = 0; k < idx.size(); ++k) V.col(k) = d.vectors.col(idx[k]);
        ps.level_energies.push_back(d.stats[l].mean);
        ps.projectors.push_back(V * V.adjoint());
        ps.cumulative += ps.projectors.back();
        ps.vectors.push_back(std::move(V));
    }
    return ps;
}

double sinc_weight(double h, int n) {
    const double a = n + 0.5;
    if (std::abs(h - 1) < 1e-8 || std::abs(h + 1) < 1e-8) {
        // second-order expansion around the removable points
        const double u = std::abs(h - 1) < 1e-8 ? h - 1 : h + 1;
        const double s = std::abs(h - 1) < 1e-8 ? 1.0 : -1.0;
        const double x = a * std::numbers::pi * u;
        // sin(a pi u)/(a pi u) and 1/(1 + s u/2) to first order in u
        return (1 - x * x / 6) / (1 + s * u / 2);
    }
    return 4 / (std::numbers::pi * (2 * n + 1)) * std::sin(a * std::numbers::pi * (h - 1)) / ((h - 1) * (h + 1));
}

Eigen::MatrixXcd projector_sinc(const FockOperator& H, int n, double E_n) {
    if (!H.hermitian())
        throw Error(ErrorCode::NonHermitian, "hermiticity defect " + std::to_string(H.hermiticity_defect()));
    if (n < 0 || E_n == 0.0) throw Error(ErrorCode::InvalidArgument, "need n >= 0 and E_n != 0");
    Eigen::VectorXd w;
    Eigen::MatrixXcd V;
    hermitian_eigensolve(H.matrix(), w, &V);
    Eigen::VectorXd f(w.size());
    for (int i = 0; i < w.size(); ++i) f(i) = sinc_weight(w(i) / E_n, n);
    return V * f.asDiagonal() * V.adjoint();
}

std::vector<int> projector_interior(const FockSpace& s) {
    std::vector<int> idx;
    for (int i = 0; i < s.dim(); ++i) {
        auto o = s.occupation(i);
        if (2 * (o[0] + o[1]) <= s.n_max) idx.push_back(i);
    }
    return idx;
}

TruncatedCommutators truncated_commutators(const ProjectorSet& ps, int N, const RealizedRep& ops, const NCParams& p) {
    if (N < 0 || N > ps.N) throw Error(ErrorCode::InvalidArgument, "N outside the projector set");
    const int n = ps.space.dim();
    int r = 0;
    for (int l = 0; l <= N; ++l) r += ps.vectors[l].cols();
    Eigen::MatrixXcd V(n, r);
    Eigen::MatrixXcd Pi = Eigen::MatrixXcd::Zero(n, n);
    for (int l = 0, c = 0; l <= N; c += ps.vectors[l].cols(), ++l) {
        V.middleCols(c, ps.vectors[l].cols()) = ps.vectors[l];
        Pi += ps.projectors[l];
    }
    // reduced operators V^H A V; commutators lift back as V [.,.] V^H
    std::array<Eigen::MatrixXcd, 2> X, P;
    for (int j = 0; j < 2; ++j) {
        X[j] = V.adjoint() * ops.X(j).matrix() * V;
        P[j] = V.adjoint() * ops.P(j).matrix() * V;
    }
    const auto idx = projector_interior(ps.space);
    const Eigen::MatrixXcd VI = rows_of(V, idx);
    auto lifted = [&](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) -> Eigen::MatrixXcd {
        return VI * (a * b - b * a) * VI.adjoint();
    };
    const Eigen::MatrixXcd PN = interior_block(ps.projectors[N], idx);
    const Eigen::MatrixXcd PiI = interior_block(Pi, idx);
    const double pn2 = PN.squaredNorm();
    const cplx I(0, 1);
    auto fit = [&](const Eigen::MatrixXcd& C) { return ((PN.adjoint() * C).trace() / pn2 / I).real(); };
    auto rel = [&](const Eigen::MatrixXcd& C, double coef) {
        double nc = C.norm();
        return nc > 0 ? (C - I * coef * PN).norm() / nc : 0.0;
    };

    TruncatedCommutators t;
    t.N = N;
    const double eB = p.e * p.B;
    t.expected_X1X2 = -(p.hbar * p.c / eB) * (N + 1);
    t.expected_P1P2 = -(p.hbar * eB / (4 * p.c)) * (N + 1);
    t.expected_XP_diag = p.hbar * (1 - 0.5 * (N + 1));

    Eigen::MatrixXcd C = lifted(X[0], X[1]);
    t.coefficient_X1X2 = fit(C);
    t.residual_norm = rel(C, t.coefficient_X1X2);
    Eigen::MatrixXcd D = lifted(P[0], P[1]);
    t.coefficient_P1P2 = fit(D);
    t.residual_P1P2 = rel(D, t.coefficient_P1P2);

    const Eigen::MatrixXcd cross = I * p.hbar * (PiI - 0.5 * (N + 1) * PN);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Eigen::MatrixXcd Cij = lifted(X[i], P[j]);
            t.coefficient_XP[i][j] = fit(Cij);
            Eigen::MatrixXcd target = i == j ? cross : Eigen::MatrixXcd::Zero(Cij.rows(), Cij.cols());
            t.residual_XP = std::max(t.residual_XP, (Cij - target).cwiseAbs().maxCoeff());
            if (i == 0 && j == 0)
                t.canonical_trend = std::abs(Cij.trace() / (I * p.hbar * double(idx.size())) - 1.0);
        }
    return t;
}

Table truncated_commutator_table(const std::vector<TruncatedCommutators>& rows) {
    std::vector<long long> N;
    std::vector<double> c[10];
    for (auto& t : rows) {
        N.push_back(t.N);
        double v[10] = {t.coefficient_X1X2, t.expected_X1X2, t.residual_norm,      t.coefficient_P1P2,
                        t.expected_P1P2,    t.residual_P1P2, t.coefficient_XP[0][0], t.expected_XP_diag,
                        t.residual_XP,      t.canonical_trend};
        for (int k = 0; k < 10; ++k) c[k].push_back(v[k]);
    }
    const char* names[10] = {"coefficient_X1X2", "expected_X1X2",  "residual_norm",    "coefficient_P1P2",
                             "expected_P1P2",    "residual_P1P2",  "coefficient_X1P1", "expected_X1P1",
                             "residual_XP",      "canonical_trend"};
    Table tab;
    tab.add_int("N", std::move(N));
    for (int k = 0; k < 10; ++k) tab.add(names[k], std::move(c[k]));
    return tab;
}

double guiding_center_theta(const NCParams& p) { return -p.hbar * p.c / (p.e * p.B); }

PeierlsResult peierls_spectrum(const Poly& V, double lambda, const NCParams& p, int k, const PeierlsOptions& opt) {
    require_landau(p);
    if (V.arity() != 2) throw Error(ErrorCode::ArityMismatch, "potential must be a polynomial in (x1, x2)");
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    PeierlsResult r;
    r.omega_B = std::abs(p.e * p.B) / (p.m * p.c);

    auto ops = canonical_ops(landau_space(p, opt.n_max_full));
    auto A = symmetric_potential(p.B);
    FockOperator H = hamiltonian_with_potential(ops, p.m, p.e / p.c, &A, V, lambda, Prescription::Weyl);
    for (auto& c : spectrum(H, k).clusters) r.full_E_n.push_back(c.mean);

    const double th = guiding_center_theta(p);
    Poly W = th > 0 ? V : V.substitute({x2(), x1()});  // Y1 = Z2, Y2 = Z1 flips the commutator sign
    auto pair = realize_pair(std::abs(th), FockSpace(opt.n_max_effective, 1));
    if (lambda == 0.0 || W.is_zero()) {
        r.epsilon_n.assign(1, 0.0);
    } else {
        FockOperator He = quantize_poly(W * lambda, pair, opt.prescription);
        for (auto& c : spectrum(He, k).clusters) r.epsilon_n.push_back(c.mean);
    }
    if (r.full_E_n.empty() || r.epsilon_n.empty())
        throw Error(ErrorCode::ClusterAmbiguity, "no resolved levels for the Peierls comparison");
    const double d = std::abs(r.full_E_n[0] - 0.5 * p.hbar * r.omega_B - r.epsilon_n[0]);
    r.deviation = r.epsilon_n[0] != 0.0 ? d / std::abs(r.epsilon_n[0]) : d;
    return r;
}

} // namespace ncqm
