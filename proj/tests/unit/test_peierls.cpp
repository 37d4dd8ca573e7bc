#include "fixtures.hpp"
#include "ncqm/errors.hpp"
#include "ncqm/peierls.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ncqm;

namespace {

NCParams P(double theta, double B) {
    NCParams p;
    p.theta = theta;
    p.B = B;
    return p;
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalMismatch;
}

Eigen::MatrixXcd block(const Eigen::MatrixXcd& M, const std::vector<int>& idx) {
    Eigen::MatrixXcd b(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) b(i, j) = M(idx[i], idx[j]);
    return b;
}

// sin((n+1/2) pi (h-1)) / ((h-1)(h+1)) scaled, evaluated directly away from +-1.
double sinc_direct(double h, int n) {
    return 4 / (std::numbers::pi * (2 * n + 1)) * std::sin((n + 0.5) * std::numbers::pi * (h - 1)) / ((h - 1) * (h + 1));
}

} // namespace

TEST_CASE("landau projectors: levels, idempotency and orthogonality") {
    NCParams p = P(0, 1);
    FockSpace s = landau_space(p, 30);
    auto ps = landau_projectors(p, s, 2);
    REQUIRE(ps.level_energies.size() >= 3);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(ps.level_energies[n] - (n + 0.5)) < 1e-10);
    auto in = projector_interior(s);
    REQUIRE(!in.empty());
    for (int n = 0; n < 3; ++n) {
        const auto& Pn = ps.projectors[n];
        CHECK((Pn - Pn.adjoint()).norm() < 1e-12);
        CHECK(block(Pn * Pn - Pn, in).cwiseAbs().maxCoeff() <= 1e-10);
        for (int m = n + 1; m < 3; ++m) CHECK(block(Pn * ps.projectors[m], in).cwiseAbs().maxCoeff() <= 1e-10);
    }
    CHECK((ps.cumulative - ps.projectors[0] - ps.projectors[1] - ps.projectors[2]).norm() < 1e-12);
}

TEST_CASE("landau projectors: preconditions") {
    CHECK(code_of([] { landau_projectors(P(0, 0), FockSpace(20, 2), 1); }) != ErrorCode::InternalMismatch);
    CHECK(code_of([] { landau_projectors(P(0.2, 1), landau_space(P(0, 1), 20), 1); }) != ErrorCode::InternalMismatch);
    CHECK(code_of([] { landau_projectors(P(0, 1), landau_space(P(0, 1), 8), 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("interior is total occupation <= n_max / 2") {
    FockSpace s(10, 2);
    auto in = projector_interior(s);
    CHECK(in.size() == 21);  // (5+1)(5+2)/2
}

TEST_CASE("sinc weight") {
    for (int n : {0, 1, 3}) {
        CHECK(sinc_weight(1.0, n) == doctest::Approx(1.0));
        CHECK(sinc_weight(-1.0, n) == doctest::Approx(1.0));
        CHECK(std::abs(sinc_weight(1 + 1e-9, n) - 1) < 1e-6);
        // zeros at h = (2j+1)/(2n+1), j != n
        for (int j = 0; j < 6; ++j) {
            if (j == n) continue;
            CHECK(std::abs(sinc_weight((2.0 * j + 1) / (2 * n + 1), n)) < 1e-14);
        }
        for (double h : {0.3, 2.7, -0.5}) CHECK(sinc_weight(h, n) == doctest::Approx(sinc_direct(h, n)).epsilon(1e-13));
    }
}

TEST_CASE("sinc projector matches the clustered projector") {
    NCParams p = P(0, 1);
    FockSpace s = landau_space(p, 30);
    auto ps = landau_projectors(p, s, 2);
    auto in = projector_interior(s);
    // levels near the truncation edge are distorted, so compare where the basis is complete
    for (int n = 0; n < 3; ++n) {
        auto Ps = projector_sinc(ps.H, n, ps.level_energies[n]);
        CHECK(block(Ps - ps.projectors[n], in).cwiseAbs().maxCoeff() <= 1e-8);
    }
    CHECK(code_of([&] { projector_sinc(ps.H, 0, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("truncated commutators") {
    NCParams p = P(0, 1);
    FockSpace s = landau_space(p, 30);
    auto ps = landau_projectors(p, s, 4);
    auto ops = canonical_ops(s);
    double prev = 2;
    for (int N = 0; N <= 4; ++N) {
        auto t = truncated_commutators(ps, N, ops, p);
        CHECK(t.expected_X1X2 == doctest::Approx(-(N + 1.0)));
        CHECK(std::abs(t.coefficient_X1X2 / t.expected_X1X2 - 1) <= 0.05);
        CHECK(std::abs(t.coefficient_P1P2 / t.expected_P1P2 - 1) <= 0.05);
        CHECK(t.residual_XP < 1e-8);
        CHECK(t.canonical_trend < prev);
        prev = t.canonical_trend;
    }
    auto t0 = truncated_commutators(ps, 0, ops, p);
    CHECK(std::abs(t0.coefficient_X1X2 - guiding_center_theta(p)) < 1e-8);
    Table tab = truncated_commutator_table({t0});
    CHECK(tab.names().front() == "N");
    CHECK(tab.cols() == 11);
}

TEST_CASE("guiding-center commutator sign") {
    CHECK(guiding_center_theta(P(0, 2)) == doctest::Approx(-0.5));
    CHECK(guiding_center_theta(P(0, -2)) == doctest::Approx(0.5));
    NCParams q = P(0, 2);
    q.e = -1;
    CHECK(guiding_center_theta(q) == doctest::Approx(0.5));
}

TEST_CASE("peierls: full spectrum against Fock-Darwin levels") {
    const double B = 10, lam = 0.1;
    Poly V = x1() * x1() + x2() * x2();
    auto r = peierls_spectrum(V, lam, P(0, B), 1);
    auto fd = oracle::fock_darwin(B, 1, 1, lam, 1);
    CHECK(std::abs(r.full_E_n[0] - fd[0]) < 1e-6);
    CHECK(r.omega_B == doctest::Approx(B));
    CHECK(r.epsilon_n[0] == doctest::Approx(2 * lam / B).epsilon(1e-10));
    // both field signs give the same effective levels
    auto m = peierls_spectrum(V + x1() * 0.3, lam, P(0, -B), 2);
    auto pl = peierls_spectrum(V + x1() * 0.3, lam, P(0, B), 2);
    CHECK(m.epsilon_n[0] == doctest::Approx(pl.epsilon_n[0]).epsilon(1e-10));
}

TEST_CASE("peierls: deviation shrinks with the field") {
    Poly V = x1() * x1() + x2() * x2() * 0.5 + x1() * x2() * 0.2;
    double prev = 1e9;
    for (double B : {10.0, 50.0, 250.0}) {
        auto r = peierls_spectrum(V, 0.1, P(0, B), 1);
        CHECK(r.deviation < prev);
        prev = r.deviation;
    }
}

TEST_CASE("peierls: zero coupling and preconditions") {
    auto r = peierls_spectrum(x1() * x1(), 0.0, P(0, 5), 1);
    CHECK(r.epsilon_n == std::vector<double>{0.0});
    CHECK(r.deviation < 1e-10);
    CHECK_THROWS_AS(peierls_spectrum(x1(), 0.1, P(0, 0), 1), Error);
    CHECK_THROWS_AS(peierls_spectrum(x1(4), 0.1, P(0, 5), 1), Error);
}
