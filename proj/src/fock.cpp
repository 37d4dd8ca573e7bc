#include "ncqm/fock.hpp"

#include "ncqm/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ncqm {

FockSpace::FockSpace(int n_max_, int modes_, double length_, int margin)
    : n_max(n_max_), modes(modes_), interior_margin(margin), length(length_) {
    if (n_max < 4) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 4");
    if (modes != 1 && modes != 2) throw Error(ErrorCode::InvalidArgument, "one or two modes");
    if (margin < 1) throw Error(ErrorCode::InvalidArgument, "interior margin must be >= 1");
    if (!(length > 0)) throw Error(ErrorCode::InvalidArgument, "oscillator length must be positive");
}

std::array<int, 2> FockSpace::occupation(int i) const {
    if (modes == 1) return {i, 0};
    return {i / per_mode(), i % per_mode()};
}

int FockSpace::max_occupation(int i) const {
    auto o = occupation(i);
    return std::max(o[0], o[1]);
}

std::vector<int> FockSpace::interior(int degree) const {
    std::vector<int> r;
    const int lim = n_max - interior_margin * degree;
    for (int i = 0; i < dim(); ++i)
        if (max_occupation(i) <= lim) r.push_back(i);
    return r;
}

std::vector<int> FockSpace::boundary(int degree) const {
    std::vector<int> r;
    const int lim = n_max - interior_margin * degree;
    for (int i = 0; i < dim(); ++i)
        if (max_occupation(i) > lim) r.push_back(i);
    return r;
}

// ---------------------------------------------------------------------------

FockOperator::FockOperator(const FockSpace& space, Eigen::MatrixXcd m, int degree)
    : space_(space), m_(std::move(m)), degree_(degree) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim())
        throw Error(ErrorCode::InvalidArgument, "matrix does not match the space dimension");
    double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    hermitian_ = hermiticity_defect() <= 1e-12 * scale;
    if (hermitian_) {
        Eigen::MatrixXcd h = 0.5 * (m_ + m_.adjoint());
        m_ = std::move(h);
    }
}

double FockOperator::hermiticity_defect() const {
    if (m_.size() == 0) return 0;
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

FockOperator FockOperator::operator+(const FockOperator& o) const {
    return {space_, m_ + o.m_, std::max(degree_, o.degree_)};
}
FockOperator FockOperator::operator-(const FockOperator& o) const {
    return {space_, m_ - o.m_, std::max(degree_, o.degree_)};
}
FockOperator FockOperator::operator*(const FockOperator& o) const {
    return {space_, m_ * o.m_, degree_ + o.degree_};
}
FockOperator FockOperator::operator*(cplx s) const { return {space_, m_ * s, degree_}; }

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
    Eigen::MatrixXcd c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    return {a.space(), std::move(c), a.degree() + b.degree()};
}

FockOperator identity(const FockSpace& s) {
    return {s, Eigen::MatrixXcd::Identity(s.dim(), s.dim()), 0};
}

Eigen::MatrixXcd interior_block(const Eigen::MatrixXcd& A, const std::vector<int>& idx) {
    const int n = (int)idx.size();
    Eigen::MatrixXcd r(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r(i, j) = A(idx[i], idx[j]);
    return r;
}

double interior_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& expected, const FockSpace& s, int degree) {
    auto idx = s.interior(degree);
    if (idx.empty()) throw Error(ErrorCode::InvalidArgument, "interior block is empty");
    return (interior_block(A, idx) - interior_block(expected, idx)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

namespace {

using Trip = Eigen::Triplet<cplx>;

SparseOp kron(const SparseOp& A, const SparseOp& B) {
    std::vector<Trip> t;
    t.reserve(A.nonZeros() * B.nonZeros());
    for (int ka = 0; ka < A.outerSize(); ++ka)
        for (SparseOp::InnerIterator ia(A, ka); ia; ++ia)
            for (int kb = 0; kb < B.outerSize(); ++kb)
                for (SparseOp::InnerIterator ib(B, kb); ib; ++ib)
                    t.emplace_back(ia.row() * B.rows() + ib.row(), ia.col() * B.cols() + ib.col(),
                                   ia.value() * ib.value());
    SparseOp r(A.rows() * B.rows(), A.cols() * B.cols());
    r.setFromTriplets(t.begin(), t.end());
    return r;
}

SparseOp sparse_identity(int n) {
    SparseOp I(n, n);
    I.setIdentity();
    return I;
}

SparseOp poly_in_P(const Poly& f, const SparseCanonical& c) {
    // f(p1, p2) with commuting P1, P2
    const int n = (int)c.I.rows();
    SparseOp r(n, n);
    std::vector<SparseOp> pw1{c.I}, pw2{c.I};
    for (int k = 1; k <= std::max(0, f.degree_in(0)); ++k) pw1.push_back(SparseOp(pw1.back() * c.P[0]));
    for (int k = 1; k <= std::max(0, f.degree_in(1)); ++k) pw2.push_back(SparseOp(pw2.back() * c.P[1]));
    for (auto& [e, co] : f.terms()) r += co * SparseOp(pw1[e[0]] * pw2[e[1]]);
    return r;
}

int ceil_half(int d) { return (d + 1) / 2; }

} // namespace

SparseCanonical sparse_canonical(const FockSpace& s) {
    const int N = s.per_mode();
    std::vector<Trip> ta;
    for (int n = 1; n < N; ++n) ta.emplace_back(n - 1, n, std::sqrt(double(n)));
    SparseOp a(N, N);
    a.setFromTriplets(ta.begin(), ta.end());
    SparseOp ad = SparseOp(a.adjoint());
    const double r2 = std::sqrt(2.0);
    SparseOp x = (s.length / r2) * (a + ad);
    SparseOp p = (cplx(0, 1) / (r2 * s.length)) * (ad - a);
    SparseCanonical c;
    if (s.modes == 1) {
        c.X = {x, SparseOp(N, N)};
        c.P = {p, SparseOp(N, N)};
        c.I = sparse_identity(N);
    } else {
        SparseOp I1 = sparse_identity(N);
        c.X = {kron(x, I1), kron(I1, x)};
        c.P = {kron(p, I1), kron(I1, p)};
        c.I = sparse_identity(N * N);
    }
    return c;
}

CanonicalOps build_canonical_ops(const FockSpace& s) {
    auto c = sparse_canonical(s);
    auto dense = [&](const SparseOp& A) { return FockOperator(s, Eigen::MatrixXcd(A), 1); };
    return {dense(c.X[0]), dense(c.X[1]), dense(c.P[0]), dense(c.P[1])};
}

// ---------------------------------------------------------------------------

RealizedRep::RealizedRep(FockSpace target, int pad, int op_degree, double theta, std::array<SparseOp, 2> X,
                         std::array<SparseOp, 2> P)
    : target_(target),
      padded_(target.n_max + pad, target.modes, target.length, target.interior_margin),
      pad_(pad),
      op_degree_(op_degree),
      theta_(theta),
      X_(std::move(X)),
      P_(std::move(P)) {
    for (int i = 0; i < target_.dim(); ++i) {
        auto o = target_.occupation(i);
        keep_.push_back(padded_.index(o[0], o[1]));
    }
}

void RealizedRep::check_degree(int degree) const {
    if (degree > 2 * pad_)
        throw Error(ErrorCode::InvalidArgument,
                    "ladder degree " + std::to_string(degree) + " exceeds padding " + std::to_string(pad_));
}

FockOperator RealizedRep::restrict(const SparseOp& A, int degree) const {
    check_degree(degree);
    const int n = (int)keep_.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    std::vector<int> inv(padded_.dim(), -1);
    for (int i = 0; i < n; ++i) inv[keep_[i]] = i;
    for (int k = 0; k < A.outerSize(); ++k) {
        int jc = inv[k];
        if (jc < 0) continue;
        for (SparseOp::InnerIterator it(A, k); it; ++it) {
            int ir = inv[it.row()];
            if (ir >= 0) m(ir, jc) = it.value();
        }
    }
    return {target_, std::move(m), degree};
}

RealizedRep realize_rep(const LinearRep& rep, const FockSpace& s, int max_word_degree, const std::optional<Poly>& alpha) {
    if (s.modes != 2) throw Error(ErrorCode::InvalidArgument, "linear reps need a two-mode space");
    int q = 1;
    if (alpha) {
        if (alpha->arity() != 2) throw Error(ErrorCode::ArityMismatch, "gauge function is arity-2 in (p1,p2)");
        q = std::max(1, alpha->degree() - 1);
    }
    const int pad = std::max(1, ceil_half(max_word_degree * q));
    FockSpace padded(s.n_max + pad, 2, s.length, s.interior_margin);
    auto c = sparse_canonical(padded);
    std::array<SparseOp, 2> X0 = c.X;
    if (alpha) {
        X0[0] += poly_in_P(alpha->derivative(0), c);
        X0[1] += poly_in_P(alpha->derivative(1), c);
    }
    const auto& M = rep.matrix;
    auto row = [&](int r) -> SparseOp {
        return M(r, 0) * X0[0] + M(r, 1) * c.P[0] + M(r, 2) * X0[1] + M(r, 3) * c.P[1];
    };
    return RealizedRep(s, pad, q, rep.params.theta, {row(0), row(2)}, {row(1), row(3)});
}

RealizedRep realize_rep(const MomentumGaugeRep& rep, const FockSpace& s, int max_word_degree) {
    if (s.modes != 2) throw Error(ErrorCode::InvalidArgument, "momentum gauge reps need a two-mode space");
    const int q = std::max({1, rep.A1.degree(), rep.A2.degree()});
    const int pad = std::max(1, ceil_half(max_word_degree * q));
    FockSpace padded(s.n_max + pad, 2, s.length, s.interior_margin);
    auto c = sparse_canonical(padded);
    std::array<SparseOp, 2> X{SparseOp(c.X[0] - poly_in_P(rep.A1, c)), SparseOp(c.X[1] - poly_in_P(rep.A2, c))};
    return RealizedRep(s, pad, q, rep.theta, X, c.P);
}

RealizedRep realize_pair(double theta, const FockSpace& s, int max_word_degree) {
    if (s.modes != 1) throw Error(ErrorCode::InvalidArgument, "realize_pair needs a one-mode space");
    if (!(theta > 0)) throw Error(ErrorCode::ThetaNonPositive, "pair realization needs theta > 0");
    const int pad = std::max(1, ceil_half(max_word_degree));
    FockSpace padded(s.n_max + pad, 1, 1.0, s.interior_margin);
    auto c = sparse_canonical(padded);
    const double r = std::sqrt(theta);
    SparseOp Z(c.I.rows(), c.I.cols());
    return RealizedRep(s, pad, 1, theta, {SparseOp(r * c.X[0]), SparseOp(r * c.P[0])}, {Z, Z});
}

double matched_length(const LinearRep& rep) {
    const auto& M = rep.matrix;
    double pc = 0, xc = 0;
    for (int r : {1, 3}) {
        pc += M(r, 1) * M(r, 1) + M(r, 3) * M(r, 3);
        xc += M(r, 0) * M(r, 0) + M(r, 2) * M(r, 2);
    }
    if (xc == 0 || pc == 0) return 1.0;
    return std::sqrt(std::sqrt(pc / xc));
}

// ---------------------------------------------------------------------------

namespace {

// All distinct orderings of a word with a copies of 0 and b copies of 1.
std::vector<std::vector<int>> words(int a, int b) {
    std::vector<int> w(a, 0);
    w.insert(w.end(), b, 1);
    std::vector<std::vector<int>> out;
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

SparseOp product(const std::vector<const SparseOp*>& fs, const SparseOp& I) {
    SparseOp r = I;
    for (auto* f : fs) r = SparseOp(r * *f);
    return r;
}

SparseOp weyl_padded(const Poly& V, const RealizedRep& ops, const SparseOp& I) {
    SparseOp r(I.rows(), I.cols());
    for (auto& [e, c] : V.terms()) {
        auto ws = words(e[0], e[1]);
        SparseOp acc(I.rows(), I.cols());
        for (auto& w : ws) {
            std::vector<const SparseOp*> fs;
            for (int v : w) fs.push_back(&ops.Xp(v));
            acc += product(fs, I);
        }
        r += (c / double(ws.size())) * acc;
    }
    return r;
}

} // namespace

SparseOp quantize_padded(const Poly& V, const RealizedRep& ops, Prescription pr, int* degree) {
    if (V.arity() != 2) throw Error(ErrorCode::ArityMismatch, "quantize_poly needs an arity-2 symbol");
    if (!V.is_real(1e-14 * std::max(1.0, V.max_abs_coeff())))
        throw Error(ErrorCode::InvalidArgument, "observable symbol must have real coefficients");
    const int deg = std::max(0, V.degree()) * ops.op_degree();
    ops.check_degree(deg);
    if (degree) *degree = deg;
    const int n = ops.padded().dim();
    SparseOp I(n, n);
    I.setIdentity();
    if (pr == Prescription::Weyl) return weyl_padded(V, ops, I);

    const double th = ops.theta();
    if (!(th > 0)) throw Error(ErrorCode::ThetaNonPositive, "ladder-based ordering needs theta > 0");
    const double s = 1.0 / std::sqrt(2 * th);
    const cplx iu(0, 1);
    SparseOp a = s * (ops.Xp(0) + iu * ops.Xp(1));
    SparseOp ad = s * (ops.Xp(0) - iu * ops.Xp(1));
    // x1 = (z + zb)/2, x2 = -i (z - zb)/2 with z -> sqrt(2 theta) a
    Poly z = x1(), zb = x2();
    Poly Vz = V.substitute({(z + zb) * 0.5, (z - zb) * (-0.5 * iu)});
    std::vector<SparseOp> pa{I}, pd{I};
    for (int k = 1; k <= std::max(0, Vz.degree_in(0)); ++k) pa.push_back(SparseOp(pa.back() * a));
    for (int k = 1; k <= std::max(0, Vz.degree_in(1)); ++k) pd.push_back(SparseOp(pd.back() * ad));
    SparseOp r(n, n);
    for (auto& [e, c] : Vz.terms()) {
        const double scale = std::pow(2 * th, 0.5 * (e[0] + e[1]));
        SparseOp t = pr == Prescription::Normal ? SparseOp(pd[e[1]] * pa[e[0]]) : SparseOp(pa[e[0]] * pd[e[1]]);
        r += (c * scale) * t;
    }
    return r;
}

FockOperator quantize_poly(const Poly& V, const RealizedRep& ops, Prescription pr) {
    int deg = 0;
    SparseOp A = quantize_padded(V, ops, pr, &deg);
    return ops.restrict(A, deg);
}

namespace {

SparseOp kinetic_padded(const RealizedRep& ops, double m, double e_over_c, const std::array<Poly, 2>* A, int* degree) {
    const int n = ops.padded().dim();
    SparseOp I(n, n);
    I.setIdentity();
    SparseOp H(n, n);
    int deg = 2 * ops.op_degree();
    for (int j = 0; j < 2; ++j) {
        SparseOp Pi = ops.Pp(j);
        if (A && !(*A)[j].is_zero()) {
            int dA = 0;
            Pi -= e_over_c * quantize_padded((*A)[j], ops, Prescription::Weyl, &dA);
            deg = std::max(deg, 2 * dA);
        }
        H += SparseOp(Pi * Pi);
    }
    ops.check_degree(deg);
    *degree = deg;
    return (1.0 / (2 * m)) * H;
}

} // namespace

FockOperator minimal_coupling_hamiltonian(const RealizedRep& ops, double m, double e_over_c, const std::array<Poly, 2>* A) {
    int deg = 0;
    SparseOp H = kinetic_padded(ops, m, e_over_c, A, &deg);
    return ops.restrict(H, deg);
}

FockOperator hamiltonian_with_potential(const RealizedRep& ops, double m, double e_over_c, const std::array<Poly, 2>* A,
                                        const Poly& V, double lambda, Prescription pr) {
    int dk = 0, dv = 0;
    SparseOp H = kinetic_padded(ops, m, e_over_c, A, &dk);
    if (lambda != 0.0 && !V.is_zero()) H += lambda * quantize_padded(V, ops, pr, &dv);
    return ops.restrict(H, std::max(dk, dv));
}

// ---------------------------------------------------------------------------

Decomposition decompose(const FockOperator& H, const SpectrumOptions& opt) {
    if (!H.hermitian())
        throw Error(ErrorCode::NonHermitian, "hermiticity defect " + std::to_string(H.hermiticity_defect()));
    Eigen::VectorXd w;
    Eigen::MatrixXcd V;
    hermitian_eigensolve(H.matrix(), w, &V);
    const int n = (int)w.size();

    std::vector<double> leak(n, 0.0);
    if (opt.filter_leakage) {
        const auto bnd = H.space().boundary(H.degree());
        auto boundary_rows = [&](const Eigen::MatrixXcd& cols) {
            Eigen::MatrixXcd b(bnd.size(), cols.cols());
            for (size_t i = 0; i < bnd.size(); ++i) b.row(i) = cols.row(bnd[i]);
            return b;
        };
        int i = 0;
        while (i < n) {
            int j = i + 1;
            while (j < n && w(j) - w(j - 1) <= opt.degeneracy_tol * std::max(1.0, std::abs(w(j - 1)))) ++j;
            const int g = j - i;
            Eigen::MatrixXcd Vb = boundary_rows(V.middleCols(i, g));
            if (g == 1) {
                leak[i] = Vb.squaredNorm();
            } else {
                // rotate inside the degenerate group so the boundary weight is diagonal
                Eigen::MatrixXcd L = Vb.adjoint() * Vb;
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L);
                Eigen::MatrixXcd rot = V.middleCols(i, g) * es.eigenvectors();
                V.middleCols(i, g) = rot;
                for (int k = 0; k < g; ++k) leak[i + k] = std::max(0.0, es.eigenvalues()(k));
            }
            i = j;
        }
    }

    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (leak[i] <= opt.leak_tol) keep.push_back(i);
    // stable ascending order; rotation within degenerate groups leaves the order intact
    Decomposition d;
    d.all_values = w;
    d.values.resize(keep.size());
    d.vectors.resize(H.space().dim(), keep.size());
    for (size_t k = 0; k < keep.size(); ++k) {
        d.values(k) = w(keep[k]);
        d.vectors.col(k) = V.col(keep[k]);
    }

    // cluster resolved eigenvalues by gap
    std::vector<std::vector<int>> raw;
    for (int k = 0; k < (int)keep.size(); ++k) {
        if (!raw.empty()) {
            double prev = d.values(raw.back().back());
            if (d.values(k) - prev <= opt.cluster_tol * std::max(1.0, std::abs(prev))) {
                raw.back().push_back(k);
                continue;
            }
        }
        raw.push_back({k});
    }
    if (n == 0) return d;
    const double lo = w(0), hi = w(n - 1);
    const double cutoff = lo + (1.0 - opt.upper_fraction) * (hi - lo);
    for (size_t c = 0; c < raw.size(); ++c) {
        double cmin = d.values(raw[c].front()), cmax = d.values(raw[c].back());
        if (cmax > cutoff && hi > lo) break;
        double spread = cmax - cmin;
        double gap = std::numeric_limits<double>::infinity();
        if (c > 0) gap = std::min(gap, cmin - d.values(raw[c - 1].back()));
        if (c + 1 < raw.size()) gap = std::min(gap, d.values(raw[c + 1].front()) - cmax);
        if (!(10 * spread < gap)) break;
        double mean = 0;
        for (int k : raw[c]) mean += d.values(k);
        mean /= raw[c].size();
        d.clusters.push_back(raw[c]);
        d.stats.push_back({mean, (int)raw[c].size(), spread});
    }
    return d;
}

SpectrumResult spectrum(const FockOperator& H, int k, const SpectrumOptions& opt) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    Decomposition d = decompose(H, opt);
    SpectrumResult r;
    r.all_eigenvalues.assign(d.all_values.data(), d.all_values.data() + d.all_values.size());
    r.n_resolved = (int)d.values.size();
    for (int c = 0; c < std::min<int>(k, d.clusters.size()); ++c) {
        r.clusters.push_back(d.stats[c]);
        for (int i : d.clusters[c]) r.eigenvalues.push_back(d.values(i));
    }
    return r;
}

SpectrumResult deformed_landau_spectrum(const NCParams& p, int n_max, int k, double a, Branch branch,
                                        const std::optional<Poly>& alpha) {
    p.validate();
    if (p.hbar != 1.0) throw Error(ErrorCode::InvalidArgument, "Fock realization assumes hbar = 1");
    if (p.B == 0.0) throw Error(ErrorCode::InvalidArgument, "no Landau levels at B = 0");
    LinearRep rep = symmetric_rep_any_theta(p, a, branch);
    FockSpace s(n_max, 2, matched_length(rep));
    auto ops = realize_rep(rep, s, 2, alpha);
    SpectrumResult r = spectrum(minimal_coupling_hamiltonian(ops, p.m), k);
    r.omega_B = std::abs(p.B) / p.m;
    return r;
}

LandauClosedForms landau_closed_forms(const NCParams& p, int levels) {
    p.validate();
    LandauClosedForms f;
    f.omega_B = std::abs(p.e * p.B) / (p.m * p.c);
    for (int n = 0; n < levels; ++n) f.E_n.push_back(p.hbar * f.omega_B * (n + 0.5));
    const double k = p.kappa();
    if (k == 0.0) throw Error(ErrorCode::SingularDensity, "density of states diverges at kappa = 0");
    f.density_of_states = std::abs(p.e * p.B / (p.hbar * p.c)) / (2 * std::numbers::pi * std::abs(k));
    return f;
}

} // namespace ncqm
