#include "fixtures.hpp"
#include "ncqm/errors.hpp"
#include "ncqm/phase_reps.hpp"

#include <doctest.h>

using namespace ncqm;

namespace {

NCParams P(double theta, double B) {
    NCParams p;
    p.theta = theta;
    p.B = B;
    return p;
}

// Target table written out by hand in (X1, P1, X2, P2) order.
Eigen::Matrix4d table_oracle(double th, double B) {
    Eigen::Matrix4d T = Eigen::Matrix4d::Zero();
    T(0, 1) = 1;   // [X1,P1]
    T(2, 3) = 1;   // [X2,P2]
    T(0, 2) = th;  // [X1,X2]
    T(1, 3) = B;   // [P1,P2]
    return T - T.transpose();
}

double max_diff(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) { return (a - b).cwiseAbs().maxCoeff(); }

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalMismatch;
}

} // namespace

TEST_CASE("target table and ordering permutation") {
    CHECK(max_diff(target_table(P(0.3, 0.5)), table_oracle(0.3, 0.5)) == 0.0);
    Eigen::Matrix4d xi = to_xi_ordering(table_oracle(0.3, 0.5));
    CHECK(xi(0, 1) == 0.3);  // {x1,x2}
    CHECK(xi(2, 3) == 0.5);  // {p1,p2}
    CHECK(xi(0, 2) == 1.0);  // {x1,p1}
    CHECK(xi(1, 3) == 1.0);  // {x2,p2}
}

TEST_CASE("landau gauge rep") {
    auto r = landau_gauge_rep(P(0.3, 0.5));
    CHECK(oracle::det(r.matrix) == doctest::Approx(0.85).epsilon(1e-14));
    CHECK(max_diff(commutator_table(r), table_oracle(0.3, 0.5)) < 1e-15);
    CHECK(max_diff(landau_gauge_rep(P(0, 0)).matrix, Eigen::Matrix4d::Identity()) == 0.0);
    auto s = landau_gauge_rep(P(0.5, 2));
    CHECK(std::abs(s.det()) < 1e-15);
    CHECK_FALSE(s.invertible());
}

TEST_CASE("symmetric gauge rep coefficients") {
    auto r = symmetric_gauge_rep(P(0.3, 0.5), 1, Branch::Plus);
    const double s = std::sqrt(0.85);
    CHECK(r.c == doctest::Approx((1 + s) / 2).epsilon(1e-15));
    CHECK(r.d == doctest::Approx((1 - s) / 0.3).epsilon(1e-13));
    CHECK(2 * r.c * r.d == doctest::Approx(0.5).epsilon(1e-14));

    auto shear = symmetric_gauge_rep(P(0.5, 0), 1, Branch::Plus);
    CHECK(shear.c == 1.0);
    CHECK(shear.d == 0.0);

    for (Branch b : {Branch::Plus, Branch::Minus}) {
        auto k0 = symmetric_gauge_rep(P(0.5, 2), 1, b);
        CHECK(k0.c == doctest::Approx(0.5));
        CHECK(k0.d == doctest::Approx(2.0));
        // K1 = P1 - X2/theta and K2 = P2 + X1/theta vanish as operators
        Eigen::RowVector4d K1 = k0.matrix.row(1) - k0.matrix.row(2) / 0.5;
        Eigen::RowVector4d K2 = k0.matrix.row(3) + k0.matrix.row(0) / 0.5;
        CHECK(K1.cwiseAbs().maxCoeff() < 1e-15);
        CHECK(K2.cwiseAbs().maxCoeff() < 1e-15);
    }
    CHECK(code_of([] { symmetric_gauge_rep(P(0, 1), 1, Branch::Plus); }) == ErrorCode::ZeroTheta);
    CHECK(code_of([] { symmetric_gauge_rep(P(1, 2), 1, Branch::Plus); }) == ErrorCode::NegativeKappa);
    CHECK(code_of([] { symmetric_gauge_rep(P(0.3, 0.5), 0, Branch::Plus); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("symmetric gauge rep: table and det over random scales and both branches") {
    auto r0 = symmetric_gauge_rep(P(0.3, 0.5), 2, Branch::Minus);
    CHECK(max_diff(commutator_table(r0), table_oracle(0.3, 0.5)) < 1e-15);
    for (int t = 0; t < 20; ++t) {
        const double a = std::exp(oracle::uniform(std::log(0.1), std::log(10.0)));
        NCParams p = P(oracle::uniform(-2, 2), oracle::uniform(-2, 2));
        if (p.theta == 0 || p.kappa() < 0) continue;
        for (Branch b : {Branch::Plus, Branch::Minus}) {
            auto r = symmetric_gauge_rep(p, a, b);
            CHECK(max_diff(commutator_table(r), table_oracle(p.theta, p.B)) < 1e-12);
            CHECK(std::abs(oracle::det(r.matrix) - p.kappa()) < 1e-12);
        }
    }
}

TEST_CASE("symmetric rep at theta = 0 is the commutative symmetric gauge") {
    auto r = symmetric_rep_any_theta(P(0, 1.5));
    CHECK(max_diff(commutator_table(r), table_oracle(0, 1.5)) < 1e-15);
    CHECK(oracle::det(r.matrix) == doctest::Approx(1.0));
}

TEST_CASE("decoupling") {
    auto d = decouple(P(0.5, 1));
    CHECK(d.KK_commutator == doctest::Approx(-1.0));
    CHECK(d.max_XK < 1e-15);
    auto z = decouple(P(0.5, 2));
    CHECK(std::abs(z.KK_commutator) < 1e-15);
    CHECK(z.max_XK < 1e-15);
    CHECK(decouple(P(1, 0)).KK_commutator == doctest::Approx(-1.0));
    CHECK(code_of([] { decouple(P(0, 1)); }) == ErrorCode::ZeroTheta);
}

TEST_CASE("antisymmetric canonical form exists iff kappa != 0") {
    auto f = antisymmetric_canonical_form(table_oracle(0.3, 0.5));
    REQUIRE(f.exists);
    CHECK(max_diff(f.T * table_oracle(0.3, 0.5) * f.T.transpose(), omega_canonical()) < 1e-12);
    CHECK_FALSE(antisymmetric_canonical_form(table_oracle(0.5, 2)).exists);
}

TEST_CASE("momentum gauge reps and curl check") {
    const double th = 0.4;
    CHECK_NOTHROW(symmetric_momentum_gauge(th));
    CHECK_NOTHROW(momentum_gauge_rep(x2() * th, Poly(2), th));
    CHECK(code_of([&] { momentum_gauge_rep(Poly(2), Poly(2), th); }) == ErrorCode::CurlMismatch);
    // (-theta p2/2, theta p1/2) has curl -theta
    try {
        momentum_gauge_rep(x2() * (-th / 2), x1() * (th / 2), th);
        FAIL("expected CurlMismatch");
    } catch (const CurlMismatch& e) {
        CHECK(approx_equal(e.residual(), Poly::constant(2, -2 * th)));
    }
}

TEST_CASE("gauge function between momentum gauges") {
    const double th = 0.4;
    auto sym = symmetric_momentum_gauge(th);
    auto lan = momentum_gauge_rep(x2() * th, Poly(2), th);
    Poly alpha = gauge_function(sym, lan);
    auto back = gauge_transform(sym, alpha);
    CHECK(approx_equal(back.A1, lan.A1));
    CHECK(approx_equal(back.A2, lan.A2));
    // a non-gradient difference is rejected
    MomentumGaugeRep odd{x2() * th + x1() * x2(), Poly(2), th};
    CHECK_THROWS(gauge_function(sym, odd));
}

TEST_CASE("kappa = 0 function family closes under the Landau-gauge rep") {
    auto r = landau_gauge_rep(P(0.5, 2));
    for (int deg : {0, 1, 3}) {
        auto c = kappa_zero_family_closure(r, deg, 0.7);
        CHECK(c.closed);
        CHECK(c.x2_dependence < 1e-14);
    }
    // away from kappa = 0 the P1 image picks up x2 dependence
    CHECK_FALSE(kappa_zero_family_closure(landau_gauge_rep(P(0.5, 1)), 2, 0.7).closed);
}
