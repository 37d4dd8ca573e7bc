#pragma once

// Test-side reference computations. Nothing here calls into the library's
// numerics, so agreement is an independent check.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Cofactor expansion along the first row.
inline double det(const Eigen::MatrixXd& m) {
    const int n = m.rows();
    if (n == 1) return m(0, 0);
    double s = 0;
    for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r)
            for (int c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        s += (j % 2 ? -1.0 : 1.0) * m(0, j) * det(minor);
    }
    return s;
}

// Single-mode annihilation operator on 0..n.
inline Eigen::MatrixXcd annihilation(int n) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (int k = 1; k <= n; ++k) a(k - 1, k) = std::sqrt(double(k));
    return a;
}

// Omega(xi) with xi = (x1, x2, p1, p2); residual of the Jacobi identity by
// central differences: sum_L Om^{IL} d_L Om^{JK} + cyclic.
using StructureFn = std::function<Eigen::Matrix4d(const std::array<double, 4>&)>;

inline double jacobi_fd(const StructureFn& om, const std::array<double, 4>& xi, int I, int J, int K, double h = 1e-5) {
    std::array<Eigen::Matrix4d, 4> d;
    for (int L = 0; L < 4; ++L) {
        auto a = xi, b = xi;
        a[L] += h;
        b[L] -= h;
        d[L] = (om(a) - om(b)) / (2 * h);
    }
    Eigen::Matrix4d O = om(xi);
    auto term = [&](int i, int j, int k) {
        double s = 0;
        for (int L = 0; L < 4; ++L) s += O(i, L) * d[L](j, k);
        return s;
    };
    return term(I, J, K) + term(J, K, I) + term(K, I, J);
}

// Standard structure in xi ordering with field B(x): {x1,x2}=theta, {x_i,p_j}=delta, {p1,p2}=B.
inline Eigen::Matrix4d standard_omega(double theta, double B) {
    Eigen::Matrix4d O = Eigen::Matrix4d::Zero();
    O(0, 1) = theta;
    O(0, 2) = 1;
    O(1, 3) = 1;
    O(2, 3) = B;
    return O - O.transpose();
}

// Fock-Darwin levels for H = (p - eA)^2/2m + lambda r^2 with eB > 0, lowest count.
inline std::vector<double> fock_darwin(double B, double m, double e, double lambda, int count) {
    const double wc = std::abs(e * B) / m;
    const double W = std::sqrt(2 * lambda / m + wc * wc / 4);
    std::vector<double> E;
    for (int nr = 0; nr < 40; ++nr)
        for (int l = -40; l <= 40; ++l) E.push_back((2 * nr + std::abs(l) + 1) * W - l * wc / 2);
    std::sort(E.begin(), E.end());
    E.resize(count);
    return E;
}

// Plain textbook forms, deliberately not rationalized.
inline double bbar_textbook(double B, double theta, double e) { return 2 / (e * theta) * (std::sqrt(1 + e * theta * B) - 1); }
inline double bbar_sw_textbook(double curlyB, double theta, double e) {
    return 2 / (e * theta) * (1 / std::sqrt(1 - e * theta * curlyB) - 1);
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20241015);
    return g;
}
inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

} // namespace oracle
