#include "ncqm/poly.hpp"

#include "ncqm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ncqm {

namespace {

void check_arity(int a) {
    if (a != 2 && a != 4) throw Error(ErrorCode::ArityMismatch, "arity must be 2 or 4");
}

void same_arity(const Poly& a, const Poly& b) {
    if (a.arity() != b.arity())
        throw Error(ErrorCode::ArityMismatch,
                    "arity " + std::to_string(a.arity()) + " vs " + std::to_string(b.arity()));
}

} // namespace

Poly::Poly(int arity) : arity_(arity) { check_arity(arity); }

Poly Poly::constant(int arity, cplx c) { return monomial(arity, {0, 0, 0, 0}, c); }

Poly Poly::var(int arity, int i, cplx c) {
    if (i < 0 || i >= arity) throw Error(ErrorCode::ArityMismatch, "variable index out of range");
    Exps e{0, 0, 0, 0};
    e[i] = 1;
    return monomial(arity, e, c);
}

Poly Poly::monomial(int arity, const Exps& e, cplx c) {
    Poly p(arity);
    for (int i = arity; i < 4; ++i)
        if (e[i] != 0) throw Error(ErrorCode::ArityMismatch, "exponent beyond arity");
    p.add_term(e, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exps{0, 0, 0, 0});
}

bool Poly::is_real(double tol) const {
    for (auto& [e, c] : terms_)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

int Poly::degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
}

int Poly::degree_in(int v) const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

cplx Poly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? cplx{} : it->second;
}

double Poly::max_abs_coeff() const {
    double m = 0;
    for (auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void Poly::add_term(const Exps& e, cplx c) {
    if (c == cplx{}) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == cplx{}) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    same_arity(*this, o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    same_arity(*this, o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(cplx s) {
    if (s == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        if (it->second == cplx{}) it = terms_.erase(it);
        else ++it;
    }
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly Poly::derivative(int v, int order) const {
    if (v < 0 || v >= arity_) throw Error(ErrorCode::ArityMismatch, "derivative variable out of range");
    Poly r(arity_);
    for (auto& [e, c] : terms_) {
        if (e[v] < order) continue;
        double f = 1;
        for (int k = 0; k < order; ++k) f *= e[v] - k;
        Exps ne = e;
        ne[v] -= order;
        r.add_term(ne, c * f);
    }
    return r;
}

Poly Poly::derivative(const Exps& orders) const {
    Poly r = *this;
    for (int v = 0; v < arity_; ++v)
        if (orders[v] > 0) r = r.derivative(v, orders[v]);
    return r;
}

Poly Poly::conj() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = std::conj(c);
    return r;
}

Poly Poly::chop(double tol) const {
    Poly r(arity_);
    for (auto& [e, c] : terms_) {
        cplx k = c;
        if (std::abs(k.real()) <= tol) k.real(0);
        if (std::abs(k.imag()) <= tol) k.imag(0);
        r.add_term(e, k);
    }
    return r;
}

Poly Poly::pow(int n) const {
    Poly r = constant(arity_, 1.0);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if ((int)images.size() != arity_) throw Error(ErrorCode::ArityMismatch, "substitute needs one image per variable");
    const int out = images[0].arity();
    for (auto& im : images)
        if (im.arity() != out) throw Error(ErrorCode::ArityMismatch, "substitute images disagree on arity");
    // cache powers per variable
    std::vector<std::vector<Poly>> pw(arity_);
    for (int v = 0; v < arity_; ++v) {
        pw[v].push_back(constant(out, 1.0));
        int dv = std::max(0, degree_in(v));
        for (int k = 1; k <= dv; ++k) pw[v].push_back(pw[v].back() * images[v]);
    }
    Poly r(out);
    for (auto& [e, c] : terms_) {
        Poly t = constant(out, c);
        for (int v = 0; v < arity_; ++v)
            if (e[v]) t = t * pw[v][e[v]];
        r += t;
    }
    return r;
}

Poly Poly::lift4() const {
    if (arity_ == 4) return *this;
    Poly r(4);
    r.terms_ = terms_;
    return r;
}

cplx Poly::eval(const std::vector<cplx>& pt) const {
    if ((int)pt.size() < arity_) throw Error(ErrorCode::ArityMismatch, "evaluation point too short");
    cplx s{};
    for (auto& [e, c] : terms_) {
        cplx t = c;
        for (int v = 0; v < arity_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= pt[v];
        s += t;
    }
    return s;
}

cplx Poly::eval(const double* pt) const {
    cplx s{};
    for (auto& [e, c] : terms_) {
        double t = 1;
        for (int v = 0; v < arity_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= pt[v];
        s += c * t;
    }
    return s;
}

std::string Poly::str() const {
    static const char* names[4] = {"x1", "x2", "p1", "p2"};
    if (terms_.empty()) return "0";
    std::string s;
    char buf[96];
    for (auto& [e, c] : terms_) {
        std::snprintf(buf, sizeof buf, "%s(%.17g%+.17gi)", s.empty() ? "" : " + ", c.real(), c.imag());
        s += buf;
        for (int v = 0; v < arity_; ++v) {
            if (e[v] == 0) continue;
            s += std::string("*") + names[v];
            if (e[v] > 1) s += "^" + std::to_string(e[v]);
        }
    }
    return s;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(Poly a, cplx s) { return a *= s; }
Poly operator*(cplx s, Poly a) { return a *= s; }

Poly operator*(const Poly& a, const Poly& b) {
    same_arity(a, b);
    Poly r(a.arity());
    for (auto& [ea, ca] : a.terms())
        for (auto& [eb, cb] : b.terms())
            r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}, ca * cb);
    return r;
}

double max_abs_diff(const Poly& a, const Poly& b) { return (a - b).max_abs_coeff(); }

bool approx_equal(const Poly& a, const Poly& b, double tol) {
    double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
    return max_abs_diff(a, b) <= tol * scale;
}

} // namespace ncqm
