#pragma once

#include "ncqm/poly.hpp"
#include "oracles.hpp"

namespace fixture {

// Random complex polynomial with every monomial of total degree <= deg present.
inline ncqm::Poly random_poly(int arity, int deg, bool real = false) {
    ncqm::Poly p(arity);
    auto coef = [&] {
        double re = oracle::uniform(-1, 1), im = real ? 0.0 : oracle::uniform(-1, 1);
        return ncqm::cplx(re, im);
    };
    if (arity == 2) {
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j) p.add_term({i, j, 0, 0}, coef());
    } else {
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; a + b <= deg; ++b)
                for (int c = 0; a + b + c <= deg; ++c)
                    for (int d = 0; a + b + c + d <= deg; ++d) p.add_term({a, b, c, d}, coef());
    }
    return p;
}

} // namespace fixture
