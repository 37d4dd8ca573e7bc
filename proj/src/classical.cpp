#include "ncqm/classical.hpp"

#include "ncqm/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace ncqm {

namespace {

struct Field {
    const PoissonStructure& s;
    std::array<Poly, 4> grad;
    bool constant;
    Eigen::Matrix4d om;

    Field(const PoissonStructure& s_, const Poly& H) : s(s_), grad{Poly(4), Poly(4), Poly(4), Poly(4)} {
        for (int i = 0; i < 4; ++i) grad[i] = H.derivative(i);
        constant = s.is_constant();
        if (constant) om = s.at(State{0, 0, 0, 0});
    }

    Eigen::Vector4d operator()(const State& x) const {
        Eigen::Vector4d g;
        for (int i = 0; i < 4; ++i) g(i) = grad[i].eval(x.data()).real();
        return (constant ? om : s.at(x)) * g;
    }
};

State add(const State& a, const Eigen::Vector4d& k, double f) {
    return {a[0] + f * k(0), a[1] + f * k(1), a[2] + f * k(2), a[3] + f * k(3)};
}

} // namespace

Trajectory integrate(const PoissonStructure& s, const Poly& H, const State& xi0, double T, double h,
                     const IntegrateOptions& opt) {
    if (H.arity() != 4) throw Error(ErrorCode::ArityMismatch, "Hamiltonian must be an arity-4 symbol");
    if (!(h > 0) || !(T >= h)) throw Error(ErrorCode::InvalidArgument, "need h > 0 and T >= h");
    Trajectory tr;
    tr.h = h;
    if (!s.is_constant()) {
        double j = max_abs(jacobi_residual(s, xi0));
        if (j > 1e-10) tr.warnings.push_back("Jacobi identity fails at the initial point (residual " + std::to_string(j) + ")");
    }
    Field f(s, H);
    const long steps = std::lround(T / h);
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    tr.velocities.reserve(steps + 1);
    State x = xi0;
    const double H0 = H.eval(x.data()).real();
    for (long k = 0; k <= steps; ++k) {
        Eigen::Vector4d k1 = f(x);
        tr.times.push_back(k * h);
        tr.states.push_back(x);
        tr.velocities.push_back({k1(0), k1(1)});
        const double E = H.eval(x.data()).real();
        tr.energy.push_back(E);
        tr.energy_drift = std::max(tr.energy_drift, std::abs(E - H0) / std::max(1.0, std::abs(H0)));
        if (k == steps) break;
        Eigen::Vector4d k2 = f(add(x, k1, h / 2));
        Eigen::Vector4d k3 = f(add(x, k2, h / 2));
        Eigen::Vector4d k4 = f(add(x, k3, h));
        x = add(x, k1 + 2 * k2 + 2 * k3 + k4, h / 6);
    }
    if (tr.energy_drift > opt.drift_bound)
        throw Error(ErrorCode::StepTooLarge, "energy drift " + std::to_string(tr.energy_drift) + " exceeds bound");
    return tr;
}

EomResidual eom_residual(const Trajectory& tr, const NCParams& p, const Poly& V) {
    const size_t n = tr.states.size();
    if (n < 3) throw Error(ErrorCode::InsufficientData, "need at least three samples");
    // V may be arity 2 (x1, x2) or a full phase-space symbol; both read x first
    const Poly dV0 = V.derivative(0), dV1 = V.derivative(1);
    auto dV = [&](int j, const State& x) { return (j == 0 ? dV0 : dV1).eval(x.data()).real(); };
    const double k = p.kappa(), h = tr.h;
    EomResidual r;
    for (size_t t = 1; t + 1 < n; ++t) {
        std::array<double, 2> res{};
        for (int i = 0; i < 2; ++i) {
            const int j = 1 - i;
            const double e_ij = i == 0 ? 1.0 : -1.0;
            double acc = (tr.velocities[t + 1][i] - tr.velocities[t - 1][i]) / (2 * h);
            double ddV = (dV(j, tr.states[t + 1]) - dV(j, tr.states[t - 1])) / (2 * h);
            double inertial = p.m * acc;
            double newton = k * dV(i, tr.states[t]);
            double magnetic = p.B * e_ij * tr.velocities[t][j];
            double thet = p.m * p.theta * e_ij * ddV;
            res[i] = inertial + newton - magnetic - thet;
            r.max_inertial = std::max(r.max_inertial, std::abs(inertial));
            r.max_newton = std::max(r.max_newton, std::abs(newton));
            r.max_magnetic = std::max(r.max_magnetic, std::abs(magnetic));
            r.max_theta = std::max(r.max_theta, std::abs(thet));
            r.max_residual = std::max(r.max_residual, std::abs(res[i]));
        }
        r.times.push_back(tr.times[t]);
        r.residual.push_back(res);
    }
    return r;
}

std::array<Poly, 2> classical_potential(Gauge g, double B) {
    if (g == Gauge::Symmetric) return {x2() * (-B / 2), x1() * (B / 2)};
    return {Poly(2), x1() * B};
}

double effective_field(Gauge g, double B, double theta) {
    NCParams p;
    p.theta = theta;
    auto A = classical_potential(g, B);
    Poly br = poisson_bracket(p1() - A[0].lift4(), p2() - A[1].lift4(), symplectic_matrix(p, Variant::Standard));
    return br.constant_term().real();
}

Trajectory minimal_coupling_trajectory(const NCParams& p, Gauge g, double B, const State& xi0, double T, double h) {
    p.validate();
    if (p.B != 0.0) throw Error(ErrorCode::InvalidArgument, "minimal coupling runs with momentum field B = 0");
    auto A = classical_potential(g, B);
    Poly k1 = p1() - A[0].lift4(), k2 = p2() - A[1].lift4();
    Poly H = (k1 * k1 + k2 * k2) * (1.0 / (2 * p.m));
    return integrate(symplectic_matrix(p, Variant::Standard), H, xi0, T, h);
}

namespace {

// Residual of the linear fit at fixed omega; fills a, b, c.
double projected_residual(const std::vector<double>& t, const std::vector<double>& y, double w, Eigen::Vector3d& abc) {
    Eigen::Matrix3d N = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (size_t i = 0; i < t.size(); ++i) {
        Eigen::Vector3d b(std::cos(w * t[i]), std::sin(w * t[i]), 1.0);
        N += b * b.transpose();
        rhs += b * y[i];
    }
    abc = N.ldlt().solve(rhs);
    double r = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        double f = abc(0) * std::cos(w * t[i]) + abc(1) * std::sin(w * t[i]) + abc(2);
        r += (y[i] - f) * (y[i] - f);
    }
    return r;
}

} // namespace

FrequencyFit fit_frequency(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 16) throw Error(ErrorCode::InsufficientData, "too few samples");
    double mean = 0;
    for (double v : y) mean += v;
    mean /= y.size();
    double var = 0;
    for (double v : y) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / y.size());
    if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) throw Error(ErrorCode::InsufficientData, "signal does not oscillate");

    std::vector<double> cross;
    for (size_t i = 1; i < y.size(); ++i) {
        double a = y[i - 1] - mean, b = y[i] - mean;
        if ((a < 0 && b >= 0) || (a >= 0 && b < 0)) cross.push_back(t[i - 1] + (t[i] - t[i - 1]) * a / (a - b));
    }
    FrequencyFit fit;
    fit.zero_crossings = (int)cross.size();
    if (cross.size() < 10) throw Error(ErrorCode::InsufficientData, "fewer than five oscillation periods");
    const double w0 = std::numbers::pi * (cross.size() - 1) / (cross.back() - cross.front());
    const double T = t.back() - t.front();

    // coarse scan across a few side-lobe widths, then golden section
    Eigen::Vector3d abc;
    const double span = 2 * std::numbers::pi / T;
    double best = w0, bestr = projected_residual(t, y, w0, abc);
    const int M = 40;
    for (int i = 0; i <= M; ++i) {
        double w = w0 - span + 2 * span * i / M;
        if (w <= 0) continue;
        double r = projected_residual(t, y, w, abc);
        if (r < bestr) bestr = r, best = w;
    }
    double lo = best - 2 * span / M, hi = best + 2 * span / M;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = projected_residual(t, y, c, abc), fd = projected_residual(t, y, d, abc);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, best); ++it) {
        if (fc < fd) {
            hi = d, d = c, fd = fc;
            c = hi - g * (hi - lo);
            fc = projected_residual(t, y, c, abc);
        } else {
            lo = c, c = d, fc = fd;
            d = lo + g * (hi - lo);
            fd = projected_residual(t, y, d, abc);
        }
    }
    fit.omega = 0.5 * (lo + hi);
    double r = projected_residual(t, y, fit.omega, abc);
    fit.amplitude = std::hypot(abc(0), abc(1));
    fit.offset = abc(2);
    fit.residual_rms = std::sqrt(r / y.size());
    return fit;
}

FrequencyFit dominant_frequency(const Trajectory& tr) {
    std::vector<double> v1;
    v1.reserve(tr.velocities.size());
    for (auto& v : tr.velocities) v1.push_back(v[0]);
    return fit_frequency(tr.times, v1);
}

Table trajectory_table(const Trajectory& tr) {
    std::vector<double> c[7];
    for (size_t i = 0; i < tr.times.size(); ++i) {
        c[0].push_back(tr.times[i]);
        for (int k = 0; k < 4; ++k) c[1 + k].push_back(tr.states[i][k]);
        c[5].push_back(tr.velocities[i][0]);
        c[6].push_back(tr.velocities[i][1]);
    }
    Table t;
    const char* names[7] = {"t", "x1", "x2", "p1", "p2", "v1", "v2"};
    for (int k = 0; k < 7; ++k) t.add(names[k], std::move(c[k]));
    return t;
}

} // namespace ncqm
