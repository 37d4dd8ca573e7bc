#include "ncqm/phase_reps.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace ncqm {

Eigen::Matrix4d omega_canonical() {
    Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
    o(0, 1) = 1;
    o(1, 0) = -1;
    o(2, 3) = 1;
    o(3, 2) = -1;
    return o;
}

Eigen::Matrix4d target_table(const NCParams& p) {
    Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
    auto set = [&](int i, int j, double v) {
        t(i, j) = v;
        t(j, i) = -v;
    };
    set(0, 1, 1.0);
    set(0, 2, p.theta);
    set(1, 3, p.B);
    set(2, 3, 1.0);
    return t;
}

Eigen::Matrix4d to_xi_ordering(const Eigen::Matrix4d& m) {
    Eigen::Matrix4d r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(rep_to_xi[i], rep_to_xi[j]) = m(i, j);
    return r;
}

LinearRep landau_gauge_rep(const NCParams& p) {
    LinearRep r;
    r.tag = RepTag::LandauGauge;
    r.params = p;
    r.matrix.setIdentity();
    r.matrix(1, 2) = p.B;      // P1 + B X2
    r.matrix(2, 1) = p.theta;  // X2 + theta P1
    return r;
}

LinearRep symmetric_gauge_rep(const NCParams& p, double a, Branch branch) {
    if (p.theta == 0.0) throw Error(ErrorCode::ZeroTheta, "symmetric gauge representation needs theta != 0");
    if (a == 0.0 || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "scale a must be finite and nonzero");
    const double k = 1.0 - p.B * p.theta;
    if (k < 0.0) throw Error(ErrorCode::NegativeKappa, "kappa = " + std::to_string(k) + " < 0");
    const double s = std::sqrt(k);
    // rationalized so neither branch cancels as B theta -> 0
    double c, d;
    if (branch == Branch::Plus) {
        c = (1 + s) / (2 * a);
        d = a * p.B / (1 + s);
    } else {
        c = p.B * p.theta / (2 * a * (1 + s));
        d = (a / p.theta) * (1 + s);
    }
    LinearRep r;
    r.tag = RepTag::SymmetricGauge;
    r.params = p;
    r.a = a;
    r.c = c;
    r.d = d;
    r.branch = branch;
    const double h = p.theta / (2 * a);
    r.matrix << a, 0, 0, -h,
                0, c, d, 0,
                0, h, a, 0,
                -d, 0, 0, c;
    return r;
}

LinearRep custom_rep(const Eigen::Matrix4d& m, const NCParams& p) {
    LinearRep r;
    r.matrix = m;
    r.tag = RepTag::Custom;
    r.params = p;
    return r;
}

LinearRep symmetric_rep_any_theta(const NCParams& p, double a, Branch branch) {
    if (p.theta != 0.0) return symmetric_gauge_rep(p, a, branch);
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(1, 2) = p.B / 2;
    m(3, 0) = -p.B / 2;
    return custom_rep(m, p);
}

Eigen::Matrix4d commutator_table(const LinearRep& rep) {
    return rep.matrix * omega_canonical() * rep.matrix.transpose();
}

Decoupling decouple(const NCParams& p) {
    if (p.theta == 0.0) throw Error(ErrorCode::ZeroTheta, "decoupling needs theta != 0");
    const Eigen::Matrix4d M = landau_gauge_rep(p).matrix;
    const Eigen::Matrix4d O = omega_canonical();
    Decoupling d;
    d.K_rows.row(0) = M.row(1) - M.row(2) / p.theta;
    d.K_rows.row(1) = M.row(3) + M.row(0) / p.theta;
    d.KK_commutator = d.K_rows.row(0) * O * d.K_rows.row(1).transpose();
    for (int i : {0, 2})
        for (int j = 0; j < 2; ++j) {
            double v = M.row(i) * O * d.K_rows.row(j).transpose();
            d.max_XK = std::max(d.max_XK, std::abs(v));
        }
    return d;
}

CanonicalForm antisymmetric_canonical_form(const Eigen::Matrix4d& M, double tol) {
    CanonicalForm cf;
    Eigen::RealSchur<Eigen::Matrix4d> schur(M);
    const Eigen::Matrix4d& U = schur.matrixU();
    const Eigen::Matrix4d& S = schur.matrixT();
    // M is normal, so S is block diagonal with 2x2 blocks [[0, mu], [-mu, 0]].
    Eigen::Matrix4d D = Eigen::Matrix4d::Zero();
    for (int k = 0; k < 2; ++k) {
        double mu = S(2 * k, 2 * k + 1);
        cf.mu(k) = mu;
        if (std::abs(mu) <= tol) return cf;
        double s = 1.0 / std::sqrt(std::abs(mu));
        D(2 * k, 2 * k) = s;
        D(2 * k + 1, 2 * k + 1) = mu > 0 ? s : -s;
    }
    cf.T = D * U.transpose();
    cf.residual = (cf.T * M * cf.T.transpose() - omega_canonical()).cwiseAbs().maxCoeff();
    cf.exists = cf.residual <= 1e-9;
    return cf;
}

CurlMismatch::CurlMismatch(Poly residual)
    : Error(ErrorCode::CurlMismatch, "curl(At) - theta = " + residual.str()), residual_(std::move(residual)) {}

MomentumGaugeRep momentum_gauge_rep(const Poly& A1, const Poly& A2, double theta) {
    if (A1.arity() != 2 || A2.arity() != 2) throw Error(ErrorCode::ArityMismatch, "momentum gauge potentials are arity-2 in (p1,p2)");
    Poly curl = A1.derivative(1) - A2.derivative(0);
    Poly residual = curl - Poly::constant(2, theta);
    if (!approx_equal(residual, Poly(2), 1e-12)) throw CurlMismatch(residual);
    return {A1, A2, theta};
}

namespace {

Poly integrate(const Poly& f, int v) {
    Poly r(2);
    for (auto& [e, c] : f.terms()) {
        Poly::Exps ne = e;
        ne[v] += 1;
        r.add_term(ne, c / double(ne[v]));
    }
    return r;
}

Poly drop_var(const Poly& f, int v) {
    Poly r(2);
    for (auto& [e, c] : f.terms())
        if (e[v] == 0) r.add_term(e, c);
    return r;
}

} // namespace

Poly gauge_function(const MomentumGaugeRep& from, const MomentumGaugeRep& to) {
    Poly D1 = from.A1 - to.A1, D2 = from.A2 - to.A2;
    Poly alpha = integrate(drop_var(D1, 1), 0);
    alpha += integrate(D2 - alpha.derivative(1), 1);
    if (!approx_equal(alpha.derivative(0), D1) || !approx_equal(alpha.derivative(1), D2))
        throw Error(ErrorCode::InvalidArgument, "gauge difference is not a gradient");
    return alpha;
}

MomentumGaugeRep gauge_transform(const MomentumGaugeRep& rep, const Poly& alpha) {
    return momentum_gauge_rep(rep.A1 - alpha.derivative(0), rep.A2 - alpha.derivative(1), rep.theta);
}

FamilyClosure kappa_zero_family_closure(const LinearRep& rep, int deg, double lambda) {
    const double th = rep.params.theta;
    if (th == 0.0) throw Error(ErrorCode::ZeroTheta, "family is defined for theta != 0");
    const cplx I(0, 1);
    Poly f = Poly::monomial(2, {deg, 0, 0, 0});
    // phase phi = (lambda - x1/theta) x2
    Poly dphi1 = x2() * (-1.0 / th);
    Poly dphi2 = Poly::constant(2, lambda) - x1() * (1.0 / th);
    // canonical actions on the prefactor
    Poly X1f = x1() * f, X2f = x2() * f;
    Poly P1f = f.derivative(0) * (-I) + f * dphi1;
    Poly P2f = f.derivative(1) * (-I) + f * dphi2;
    FamilyClosure fc;
    for (int r = 0; r < 4; ++r) {
        const auto row = rep.matrix.row(r);
        Poly img = X1f * row(0) + P1f * row(1) + X2f * row(2) + P2f * row(3);
        img = img.chop(1e-13 * std::max(1.0, img.max_abs_coeff()));
        for (auto& [e, c] : img.terms())
            if (e[1] > 0) fc.x2_dependence = std::max(fc.x2_dependence, std::abs(c));
        fc.images[r] = img;
    }
    fc.closed = fc.x2_dependence == 0.0;
    return fc;
}

} // namespace ncqm
