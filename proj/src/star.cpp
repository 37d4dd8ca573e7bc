#include "ncqm/star.hpp"

#include "ncqm/errors.hpp"
#include "ncqm/phase_reps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ncqm {

namespace {

void need2(const Poly& f) {
    if (f.arity() != 2) throw Error(ErrorCode::ArityMismatch, "star products act on arity-2 symbols");
}

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// epsilon^{kl} with eps^{12} = 1
double eps(int k, int l) { return k == l ? 0.0 : (k == 0 ? 1.0 : -1.0); }

Poly d(const Poly& f, int k) { return f.derivative(k); }

// d1 f d2 g - d2 f d1 g
Poly eps_bracket(const Poly& f, const Poly& g) { return d(f, 0) * d(g, 1) - d(f, 1) * d(g, 0); }

const cplx I1(0, 1);

} // namespace

Poly moyal_star(const Poly& f, const Poly& g, double theta) {
    need2(f);
    need2(g);
    Poly r = f * g;
    if (theta == 0.0 || f.is_zero() || g.is_zero()) return r;
    const int nmax = std::min(f.degree(), g.degree());
    cplx pref = 1.0;
    for (int n = 1; n <= nmax; ++n) {
        pref *= I1 * theta / (2.0 * n);  // (i theta/2)^n / n!
        Poly term(2);
        for (int k = 0; k <= n; ++k) {
            Poly df = f.derivative({n - k, k, 0, 0});
            if (df.is_zero()) continue;
            Poly dg = g.derivative({k, n - k, 0, 0});
            if (dg.is_zero()) continue;
            term += df * dg * (binom(n, k) * ((k % 2) ? -1.0 : 1.0));
        }
        r += term * pref;
    }
    return r;
}

Poly star_commutator(const Poly& f, const Poly& g, double theta) {
    return moyal_star(f, g, theta) - moyal_star(g, f, theta);
}

Poly apply_weyl_operator(const Poly& V, const Poly& psi, double theta) {
    need2(V);
    need2(psi);
    auto X = [&](int i, const Poly& u) -> Poly {
        if (i == 0) return x1() * u + d(u, 1) * (I1 * theta / 2.0);
        return x2() * u - d(u, 0) * (I1 * theta / 2.0);
    };
    Poly r(2);
    for (auto& [e, c] : V.terms()) {
        std::vector<int> w(e[0], 0);
        w.insert(w.end(), e[1], 1);
        Poly acc(2);
        int count = 0;
        do {
            Poly u = psi;
            for (auto it = w.rbegin(); it != w.rend(); ++it) u = X(*it, u);
            acc += u;
            ++count;
        } while (std::next_permutation(w.begin(), w.end()));
        r += acc * (c / double(count));
    }
    return r;
}

Poly apply_star_operator(const Poly& V, const Poly& psi, double theta) {
    Poly a = moyal_star(V, psi, theta);
    Poly b = apply_weyl_operator(V, psi, theta);
    if (!approx_equal(a, b, 1e-12))
        throw Error(ErrorCode::InternalMismatch, "Moyal and operator routes disagree by " + std::to_string(max_abs_diff(a, b)));
    return a;
}

GaugePotential symmetric_gauge(double field, double e) {
    return {x2() * (-field / 2), x1() * (field / 2), e};
}

GaugePotential landau_gauge(double field, double e) { return {Poly(2), x1() * field, e}; }

Poly field_strength(const GaugePotential& A, double theta) {
    return d(A.A2, 0) - d(A.A1, 1) - star_commutator(A.A1, A.A2, theta) * (I1 * A.e);
}

std::array<Poly, 2> gauge_variation(const GaugePotential& A, const Poly& lambda, double theta) {
    return {d(lambda, 0) - star_commutator(A.A1, lambda, theta) * (I1 * A.e),
            d(lambda, 1) - star_commutator(A.A2, lambda, theta) * (I1 * A.e)};
}

// ---------------------------------------------------------------------------

EffectiveLandauParams effective_from_bbar(double Bbar, const NCParams& p) {
    p.validate();
    EffectiveLandauParams r;
    r.Bbar = Bbar;
    r.Lambda_bar = 1 + p.e * p.theta * Bbar / 4;
    r.m_star = p.m / (r.Lambda_bar * r.Lambda_bar);
    r.e_star = p.e / r.Lambda_bar;
    r.B_physical = r.Lambda_bar * Bbar;
    r.B_check = r.B_physical;
    r.m_check = p.m;
    r.m_SW = r.m_star;
    r.e_SW = r.e_star;
    return r;
}

EffectiveLandauParams bbar_of_B(double B, const NCParams& p) {
    const double x = p.e * p.theta * B;
    if (!(1 + x >= 0)) throw Error(ErrorCode::DomainError, "1 + e theta B = " + std::to_string(1 + x) + " < 0");
    // 2(s - 1)/(e theta) with s = sqrt(1 + x), rationalized: no cancellation near theta = 0
    const double Bbar = 2 * B / (1 + std::sqrt(1 + x));
    EffectiveLandauParams r = effective_from_bbar(Bbar, p);
    r.B_physical = B;
    return r;
}

namespace {

// Disentangled star Landau Hamiltonian (1/2m)(P - e A(X))^2 with the symmetric
// gauge of strength Bbar and X realized in the symmetric momentum gauge.
SpectrumResult fock_star_landau(double theta, double e, double mass, double Bbar, double Lambda, int k, int n_max) {
    if (Bbar == 0 || Lambda == 0) throw Error(ErrorCode::InvalidArgument, "no Landau structure at zero field");
    const double len = std::sqrt(std::abs(2 * Lambda / (e * Bbar)));
    FockSpace s(std::max(n_max, 3 * k), 2, len);
    auto ops = realize_rep(symmetric_momentum_gauge(theta), s, 2);
    GaugePotential A = symmetric_gauge(Bbar, e);
    std::array<Poly, 2> Ap{A.A1, A.A2};
    auto H = minimal_coupling_hamiltonian(ops, mass, e, &Ap);
    return spectrum(H, k);
}

double compare(const SpectrumResult& sp, const std::vector<double>& E) {
    if (sp.clusters.size() < E.size())
        throw Error(ErrorCode::InternalMismatch, "fock cross-check resolved only " + std::to_string(sp.clusters.size()) + " levels");
    double m = 0;
    for (size_t n = 0; n < E.size(); ++n) m = std::max(m, std::abs(sp.clusters[n].mean - E[n]));
    return m;
}

bool unit_hbar_c(const NCParams& p) { return p.hbar == 1.0 && p.c == 1.0; }

} // namespace

StarLandauSpectrum star_landau_spectrum(const NCParams& p, double Bbar, int k, const StarSpectrumOptions& opt) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    StarLandauSpectrum r;
    r.eff = effective_from_bbar(Bbar, p);
    const double w = p.hbar * std::abs(r.eff.e_star * Bbar) / (r.eff.m_star * p.c);
    for (int n = 0; n < k; ++n) r.E_closed.push_back(w * (n + 0.5));
    r.fock.omega_B = w / p.hbar;
    if (opt.cross_check && unit_hbar_c(p)) {
        r.fock = fock_star_landau(p.theta, p.e, p.m, Bbar, r.eff.Lambda_bar, k, opt.n_max);
        r.fock.omega_B = w;
        r.max_deviation = compare(r.fock, r.E_closed);
        if (r.max_deviation > opt.tol)
            throw Error(ErrorCode::InternalMismatch, "star Landau levels differ from diagonalization by " + std::to_string(r.max_deviation));
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

std::array<Poly, 2> comps(const GaugePotential& A) { return {A.A1, A.A2}; }

// theta-coefficient of A_check: -(e/2) eps^{kl} A_k (d_l A_i + F_li)
std::array<Poly, 2> A_check_c1(const std::array<Poly, 2>& A, double e) {
    std::array<Poly, 2> r{Poly(2), Poly(2)};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                if (eps(k, l) == 0) continue;
                Poly Fli = d(A[i], l) - d(A[l], i);
                r[i] += A[k] * (d(A[i], l) + Fli) * (-0.5 * e * eps(k, l));
            }
    return r;
}

// theta-coefficient of the matter/gauge-parameter map: -(e/2) eps^{ij} A_i d_j f
Poly field_c1(const std::array<Poly, 2>& A, const Poly& f, double e) {
    Poly r(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (eps(i, j) != 0) r += A[i] * d(f, j) * (-0.5 * e * eps(i, j));
    return r;
}

// O(1) and O(theta) coefficients of Ah(A) + delta Ah - Ah(A + d lambda)
std::array<std::array<Poly, 2>, 2> sw_defect(const std::array<Poly, 2>& A, const Poly& lam, double e) {
    auto a1 = A_check_c1(A, e);
    Poly l1 = field_c1(A, lam, e);
    std::array<Poly, 2> Ag{A[0] + d(lam, 0), A[1] + d(lam, 1)};
    auto g1 = A_check_c1(Ag, e);
    std::array<std::array<Poly, 2>, 2> out{{{Poly(2), Poly(2)}, {Poly(2), Poly(2)}}};
    for (int i = 0; i < 2; ++i) {
        // [A_i *, lambda] = i theta {A_i, lambda}_eps + O(theta^3)
        Poly lhs0 = A[i] + d(lam, i);
        Poly lhs1 = a1[i] + d(l1, i) + eps_bracket(A[i], lam) * e;
        out[0][i] = lhs0 - Ag[i];
        out[1][i] = lhs1 - g1[i];
    }
    return out;
}

} // namespace

SWFirstOrder sw_first_order(const GaugePotential& A, const Poly& lambda, const Poly& psi, double theta) {
    need2(lambda);
    need2(psi);
    const double e = A.e;
    auto a = comps(A);
    SWFirstOrder r;
    auto c1 = A_check_c1(a, e);
    for (int i = 0; i < 2; ++i) r.A_check[i] = a[i] + c1[i] * theta;
    r.lambda_check = lambda + field_c1(a, lambda, e) * theta;
    r.psi_check = psi + field_c1(a, psi, e) * theta;
    // F_12 + e theta^{kl} F_1k F_2l
    auto F = [&](int i, int j) { return d(a[j], i) - d(a[i], j); };
    Poly F12 = F(0, 1);
    Poly corr(2);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            if (eps(k, l) != 0) corr += F(0, k) * F(1, l) * eps(k, l);
    r.F_check = F12 + corr * (e * theta);

    // the map is defined for infinitesimal lambda: keep the part linear in lambda
    auto plus = sw_defect(a, lambda, e);
    auto minus = sw_defect(a, -lambda, e);
    for (int i = 0; i < 2; ++i) {
        r.residual0[i] = (plus[0][i] - minus[0][i]) * 0.5;
        r.residual[i] = (plus[1][i] - minus[1][i]) * (0.5 * theta);
        r.residual_max = std::max({r.residual_max, r.residual0[i].max_abs_coeff(), r.residual[i].max_abs_coeff()});
    }
    return r;
}

SWConstantField sw_constant_field(double curlyB, const NCParams& p, int k, const StarSpectrumOptions& opt) {
    p.validate();
    const double x = p.e * p.theta * curlyB;
    if (!(1 - x > 0))
        throw Error(ErrorCode::DomainError, "1 - e theta curlyB = " + std::to_string(1 - x) + " <= 0");
    SWConstantField r;
    auto& f = r.eff;
    const double s = std::sqrt(1 - x);
    f.B_physical = curlyB;
    f.B_check = curlyB / (1 - x);
    // (2/(e theta))(1/s - 1) rationalized
    f.Bbar = 2 * curlyB / (s * (1 + s));
    f.Lambda_bar = 1 + p.e * p.theta * f.Bbar / 4;
    f.m_check = p.m / (1 - x);
    f.m_SW = f.m_check / (f.Lambda_bar * f.Lambda_bar);
    f.e_SW = p.e / f.Lambda_bar;
    f.m_star = f.m_SW;
    f.e_star = f.e_SW;

    Poly F = field_strength(symmetric_gauge(f.Bbar, p.e), p.theta);
    r.field_strength_check = max_abs_diff(F, Poly::constant(2, f.B_check));
    if (r.field_strength_check > 1e-12 * std::max(1.0, std::abs(f.B_check)))
        throw Error(ErrorCode::InternalMismatch, "symmetric gauge does not reproduce B_check");

    const double w = std::abs(p.e * curlyB) / (p.m * p.c);
    for (int n = 0; n < k; ++n) r.E_closed.push_back(p.hbar * w * (n + 0.5));
    r.fock.omega_B = w;
    if (opt.cross_check && unit_hbar_c(p) && curlyB != 0) {
        r.fock = fock_star_landau(p.theta, p.e, f.m_check, f.Bbar, f.Lambda_bar, k, opt.n_max);
        r.fock.omega_B = w;
        r.max_deviation = compare(r.fock, r.E_closed);
        if (r.max_deviation > opt.tol)
            throw Error(ErrorCode::InternalMismatch, "SW Landau levels differ from diagonalization by " + std::to_string(r.max_deviation));
    }
    return r;
}

// ---------------------------------------------------------------------------

StarCommutationTable star_commutation_table(const GaugePotential& A, double theta) {
    need2(A.A1);
    need2(A.A2);
    const double e = A.e;
    const std::array<Poly, 2> a{A.A1, A.A2};
    const std::array<Poly, 2> x{x1(), x2()};
    StarCommutationTable t;
    t.F12 = field_strength(A, theta);
    t.x1x2 = star_commutator(x[0], x[1], theta);
    t.PiPi = t.F12 * (I1 * e);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            t.xPi[i][j] = Poly::constant(2, i == j ? I1 : cplx{}) - star_commutator(x[i], a[j], theta) * e;

    // operator-level check: the commutators act as left star multiplication
    using Op = std::function<Poly(const Poly&)>;
    auto Pi = [&](int j) -> Op {
        return [&, j](const Poly& u) { return d(u, j) * (-I1) - moyal_star(a[j], u, theta) * e; };
    };
    auto X = [&](int i) -> Op { return [&, i](const Poly& u) { return moyal_star(x[i], u, theta); }; };
    auto comm = [](const Op& f, const Op& g, const Poly& u) { return f(g(u)) - g(f(u)); };
    const std::vector<Poly> tests{Poly::constant(2, 1.0), x1(), x2(), x1() * x1(), x1() * x2(), x2() * x2() * x1()};
    for (auto& u : tests) {
        auto chk = [&](const Poly& got, const Poly& G) {
            t.operator_mismatch = std::max(t.operator_mismatch, max_abs_diff(got, moyal_star(G, u, theta)));
        };
        chk(comm(X(0), X(1), u), t.x1x2);
        chk(comm(Pi(0), Pi(1), u), t.PiPi);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) chk(comm(X(i), Pi(j), u), t.xPi[i][j]);
    }

    // Jacobi from the table: [G *, x_j] and [G *, Pi_j] = i d_j G - e [G *, A_j]
    auto with_x = [&](const Poly& G, int j) { return star_commutator(G, x[j], theta); };
    auto with_pi = [&](const Poly& G, int j) { return d(G, j) * I1 - star_commutator(G, a[j], theta) * e; };
    for (int j = 0; j < 2; ++j)  // (x1, x2, Pi_j)
        t.jacobi[j] = with_pi(t.x1x2, j) + with_x(t.xPi[1][j], 0) - with_x(t.xPi[0][j], 1);
    for (int i = 0; i < 2; ++i)  // (x_i, Pi1, Pi2)
        t.jacobi[2 + i] = with_pi(t.xPi[i][0], 1) + with_x(t.PiPi, i) - with_pi(t.xPi[i][1], 0);
    for (auto& j : t.jacobi) t.jacobi_max = std::max(t.jacobi_max, j.max_abs_coeff());
    return t;
}

} // namespace ncqm
