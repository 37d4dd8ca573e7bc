#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace ncqm {

using cplx = std::complex<double>;

// Sparse multivariate polynomial with complex coefficients in 2 or 4 variables.
// Arity 2 is (x1,x2); arity 4 is (x1,x2,p1,p2). Exact zero coefficients are
// never stored, so an empty term map is the zero polynomial.
class Poly {
public:
    using Exps = std::array<int, 4>;
    using Terms = std::map<Exps, cplx>;

    explicit Poly(int arity = 2);

    static Poly constant(int arity, cplx c);
    static Poly var(int arity, int i, cplx c = 1.0);
    static Poly monomial(int arity, const Exps& e, cplx c = 1.0);

    int arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_real(double tol = 0.0) const;
    int degree() const;
    int degree_in(int v) const;
    cplx coeff(const Exps& e) const;
    cplx constant_term() const { return coeff({0, 0, 0, 0}); }
    double max_abs_coeff() const;

    void add_term(const Exps& e, cplx c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(cplx s);
    Poly operator-() const;

    Poly derivative(int v, int order = 1) const;
    // Mixed partial d^{k0}/dv0^{k0} ... over the first arity variables.
    Poly derivative(const Exps& orders) const;
    Poly conj() const;
    // Drops coefficients with |c| <= tol.
    Poly chop(double tol) const;
    // Composition: variable i is replaced by images[i]. All images share one arity.
    Poly substitute(const std::vector<Poly>& images) const;
    // Reinterpret as arity-4 with x-variables kept in place.
    Poly lift4() const;
    Poly pow(int n) const;

    cplx eval(const std::vector<cplx>& pt) const;
    cplx eval(const double* pt) const;

    std::string str() const;

private:
    int arity_;
    Terms terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, cplx s);
Poly operator*(cplx s, Poly a);

// Coefficient-wise comparison with tolerance scaled by the larger coefficient norm.
bool approx_equal(const Poly& a, const Poly& b, double tol = 1e-12);
double max_abs_diff(const Poly& a, const Poly& b);

// Convenience symbols.
inline Poly x1(int arity = 2) { return Poly::var(arity, 0); }
inline Poly x2(int arity = 2) { return Poly::var(arity, 1); }
inline Poly p1() { return Poly::var(4, 2); }
inline Poly p2() { return Poly::var(4, 3); }

} // namespace ncqm
