#pragma once
// Finite Dirichlet polynomials A(s) = sum_{m <= M} a(m) m^{-s}.

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"

#include <cmath>
#include <map>

namespace kuzlab {

struct DirichletPolynomial {
    std::map<u64, cplx> coefficients; // m -> a(m), sparse, keys <= M
    u64 M = 1;

    cplx a(u64 m) const {
        auto it = coefficients.find(m);
        return it == coefficients.end() ? cplx(0) : it->second;
    }

    void validate() const {
        if (M < 1)
            throw SchemaError("M: polynomial length must be >= 1");
        for (const auto& [m, v] : coefficients) {
            if (m == 0 || m > M)
                throw SchemaError("coefficients: index outside [1, M]");
            if (std::abs(v) > 10 * std::pow((real)m, 0.1L))
                throw SchemaError("coefficients: a(" + std::to_string(m)
                                  + ") breaks the size bound");
        }
    }
};

} // namespace kuzlab
