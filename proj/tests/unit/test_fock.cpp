#include "fixtures.hpp"
#include "ncqm/errors.hpp"
#include "ncqm/fock.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace ncqm;

namespace {

NCParams P(double theta, double B) {
    NCParams p;
    p.theta = theta;
    p.B = B;
    return p;
}

const cplx I(0, 1);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Eigen::MatrixXcd comm(const FockOperator& a, const FockOperator& b) { return commutator(a, b).matrix(); }

double interior_dev(const Eigen::MatrixXcd& C, cplx scalar, const FockSpace& s, int degree) {
    Eigen::MatrixXcd E = scalar * Eigen::MatrixXcd::Identity(s.dim(), s.dim());
    return interior_residual(C, E, s, degree);
}

// Table check of a realized rep on the interior block.
double table_residual(const RealizedRep& r, double th, double B) {
    const auto& s = r.space();
    const int d = 2 * r.op_degree();
    double m = 0;
    m = std::max(m, interior_dev(comm(r.X(0), r.X(1)), I * th, s, d));
    m = std::max(m, interior_dev(comm(r.P(0), r.P(1)), I * B, s, d));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, interior_dev(comm(r.X(i), r.P(j)), i == j ? I : cplx(0), s, d));
    return m;
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalMismatch;
}

} // namespace

TEST_CASE("fock space geometry") {
    FockSpace s(8);
    CHECK(s.dim() == 81);
    CHECK(s.index(2, 3) == 21);
    CHECK(s.occupation(21) == std::array<int, 2>{2, 3});
    CHECK(s.interior(1).size() == 49);  // occupations <= 6
    CHECK(s.interior(1).size() + s.boundary(1).size() == 81);
    CHECK_THROWS(FockSpace(3));
}

TEST_CASE("canonical ops: CCR on the interior, exact cross commutation") {
    FockSpace s(8);
    auto c = build_canonical_ops(s);
    CHECK(interior_dev(comm(c.X1, c.P1), I, s, 1) < 1e-12);
    CHECK(interior_dev(comm(c.X2, c.P2), I, s, 1) < 1e-12);
    CHECK(comm(c.X1, c.X2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(comm(c.X1, c.P2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(comm(c.P1, c.P2).cwiseAbs().maxCoeff() == 0.0);
    // the corner defect is real and sits on the boundary
    CHECK(std::abs(comm(c.X1, c.P1)(s.index(8, 0), s.index(8, 0)) - I) > 1);
}

TEST_CASE("canonical ops match direct ladder construction") {
    FockSpace s(6, 2, 1.7);
    auto c = build_canonical_ops(s);
    Eigen::MatrixXcd a = oracle::annihilation(6), one = Eigen::MatrixXcd::Identity(7, 7);
    Eigen::MatrixXcd x = 1.7 / std::sqrt(2.0) * (a + a.adjoint());
    Eigen::MatrixXcd X1 = kron(x, one);
    CHECK((c.X1.matrix() - X1).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::MatrixXcd p = I / (std::sqrt(2.0) * 1.7) * (a.adjoint() - a);
    CHECK((c.P2.matrix() - kron(one, p)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("realized reps reproduce the commutator table") {
    FockSpace s10(10);
    auto lan = realize_rep(landau_gauge_rep(P(0.3, 0.5)), s10);
    CHECK(interior_dev(comm(lan.X(0), lan.X(1)), 0.3 * I, s10, 2) <= 1e-10);

    FockSpace s12(12);
    CHECK(table_residual(realize_rep(landau_gauge_rep(P(0.3, 0.5)), s12), 0.3, 0.5) <= 1e-10);
    for (Branch b : {Branch::Plus, Branch::Minus})
        for (double a : {0.5, 1.0, 2.0})
            CHECK(table_residual(realize_rep(symmetric_gauge_rep(P(0.3, 0.5), a, b), s12), 0.3, 0.5) <= 1e-10);
    CHECK(table_residual(realize_rep(symmetric_momentum_gauge(0.4), s12), 0.4, 0.0) <= 1e-10);
    auto lg = momentum_gauge_rep(x2() * 0.4, Poly(2), 0.4);
    CHECK(table_residual(realize_rep(lg, s12), 0.4, 0.0) <= 1e-10);
    // unitary gauge change keeps the table
    CHECK(table_residual(realize_rep(symmetric_gauge_rep(P(0.3, 0.5), 1, Branch::Plus), s12, 4, x1() * x2() * 0.1), 0.3,
                         0.5) <= 1e-10);
}

TEST_CASE("identity rep returns the canonical operators") {
    FockSpace s(8);
    auto r = realize_rep(custom_rep(Eigen::Matrix4d::Identity(), P(0, 0)), s);
    auto c = build_canonical_ops(s);
    CHECK((r.X(0).matrix() - c.X1.matrix()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((r.P(1).matrix() - c.P2.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("quantize: Weyl symmetrization against a test-side product") {
    const double th = 0.5;
    const int n = 10;
    auto pair = realize_pair(th, FockSpace(n, 1));
    // big-space oracle, then cut to the box
    Eigen::MatrixXcd a = oracle::annihilation(n + 8);
    Eigen::MatrixXcd X1 = std::sqrt(th / 2) * (a + a.adjoint());
    Eigen::MatrixXcd X2 = I * std::sqrt(th / 2) * (a.adjoint() - a);
    Eigen::MatrixXcd sym = 0.5 * (X1 * X2 + X2 * X1);
    auto W = quantize_poly(x1() * x2(), pair, Prescription::Weyl);
    CHECK((W.matrix() - sym.topLeftCorner(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(W.hermitian());

    Eigen::MatrixXcd w3 = (X1 * X1 * X2 + X1 * X2 * X1 + X2 * X1 * X1) / 3.0;
    auto W3 = quantize_poly(x1() * x1() * x2(), pair, Prescription::Weyl);
    CHECK((W3.matrix() - w3.topLeftCorner(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quantize: anti-normal product formula") {
    const double th = 0.5;
    const int n = 10;
    auto pair = realize_pair(th, FockSpace(n, 1));
    Poly r2 = x1() * x1() + x2() * x2();
    auto A = quantize_poly(r2 * r2, pair, Prescription::AntiNormal);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) expect(k, k) = (2 * th) * (2 * th) * (k + 1.0) * (k + 2.0);
    CHECK((A.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
    // normal order: (2 theta)^2 n (n - 1)
    auto N = quantize_poly(r2 * r2, pair, Prescription::Normal);
    for (int k = 0; k <= n; ++k) CHECK(std::abs(N.matrix()(k, k) - (2 * th) * (2 * th) * k * (k - 1.0)) < 1e-12);
    // degree one is ordering free
    for (auto pr : {Prescription::Weyl, Prescription::Normal, Prescription::AntiNormal})
        CHECK((quantize_poly(x1(), pair, pr).matrix() - pair.X(0).matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("quantize: errors") {
    CHECK(code_of([] { realize_pair(0.0, FockSpace(6, 1)); }) == ErrorCode::ThetaNonPositive);
    FockSpace s(6);
    auto can = realize_rep(custom_rep(Eigen::Matrix4d::Identity(), P(0, 0)), s);
    CHECK(code_of([&] { quantize_poly(x1() * x1(), can, Prescription::AntiNormal); }) == ErrorCode::ThetaNonPositive);
    auto pair = realize_pair(0.5, FockSpace(6, 1));
    CHECK(code_of([&] { quantize_poly(x1() * I, pair, Prescription::Weyl); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("hermiticity is validated") {
    FockSpace s(4, 1);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
    m(0, 1) = 1;
    FockOperator A(s, m, 1);
    CHECK_FALSE(A.hermitian());
    CHECK(code_of([&] { spectrum(A, 2); }) == ErrorCode::NonHermitian);
}

TEST_CASE("eigensolver against Eigen's reference solver") {
    const int n = 40;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Random(n, n);
    M = (M + M.adjoint()).eval();
    Eigen::VectorXd w;
    Eigen::MatrixXcd V;
    hermitian_eigensolve(M, w, &V);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(M);
    CHECK((w - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((M * V - V * w.asDiagonal()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectrum: one-mode oscillator") {
    FockSpace s(12, 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(13, 13);
    for (int k = 0; k <= 12; ++k) h(k, k) = k + 0.5;
    auto r = spectrum(FockOperator(s, h, 2), 3);
    REQUIRE(r.clusters.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(r.clusters[k].mean == k + 0.5);
        CHECK(r.clusters[k].multiplicity == 1);
    }
}

TEST_CASE("Landau spectrum: theta independence and closed forms") {
    auto a = deformed_landau_spectrum(P(0.0, 1), 30, 3);
    auto b = deformed_landau_spectrum(P(0.3, 1), 30, 3);
    REQUIRE(a.clusters.size() == 3);
    REQUIRE(b.clusters.size() == 3);
    for (int n = 0; n < 3; ++n) {
        CHECK(std::abs(a.clusters[n].mean - b.clusters[n].mean) < 1e-6);
        CHECK(std::abs(b.clusters[n].mean - (n + 0.5)) < 1e-6);
        CHECK(b.clusters[n].spread * 10 < 1.0);
    }
    // gauge conjugation by exp(i alpha(P)) leaves the levels unchanged
    auto g = deformed_landau_spectrum(P(0.3, 1), 30, 3, 1.0, Branch::Plus, x1() * x2() * 0.1);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(g.clusters[n].mean - b.clusters[n].mean) < 1e-6);
}

TEST_CASE("Landau Hamiltonian as a linear oscillator") {
    // Q = Pi1 / B, H = Pi2^2/2m + m omega^2 Q^2 / 2 with omega = B/m
    const double B = 1.3, m = 1.0;
    FockSpace s(12);
    auto r = realize_rep(landau_gauge_rep(P(0.2, B)), s);
    FockOperator Q = r.P(0) * cplx(1 / B);
    CHECK(interior_dev(comm(Q, r.P(1)), I, s, 2) < 1e-10);
    auto H = minimal_coupling_hamiltonian(r, m);
    const double w = B / m;
    Eigen::MatrixXcd H2 = (r.P(1) * r.P(1)).matrix() / (2 * m) + 0.5 * m * w * w * (Q * Q).matrix();
    CHECK(interior_residual(H.matrix(), H2, s, 2) < 1e-12);
}

TEST_CASE("Landau closed forms") {
    auto f = landau_closed_forms(P(0.3, 1));
    CHECK(f.E_n[0] == 0.5);
    CHECK(f.E_n[1] == 1.5);
    CHECK(f.density_of_states == doctest::Approx(1 / (2 * M_PI * 0.7)).epsilon(1e-14));
    CHECK(landau_closed_forms(P(0, 1)).density_of_states == doctest::Approx(1 / (2 * M_PI)));
    CHECK(code_of([] { landau_closed_forms(P(0.5, 2)); }) == ErrorCode::SingularDensity);
}
