#pragma once
// Maass cusp form records: spectral parameter, parity, Hecke eigenvalues.

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"

#include <optional>
#include <vector>

namespace kuzlab {

struct MaassFormRecord {
    real kappa = 0;              // spectral parameter, > 0
    int parity = 1;              // +1 even, -1 odd
    std::vector<real> coefficients; // t(n) stored dense at index n-1, t(1) = 1
    std::optional<real> alpha;   // normalized spectral weight, > 0 when present

    // Hecke eigenvalue t(n); throws when the record does not reach n
    real t(u64 n) const {
        if (n == 0 || n > coefficients.size())
            throw InsufficientCoefficients(
                "form at kappa = " + std::to_string((double)kappa)
                + " has no coefficient t(" + std::to_string(n) + ")");
        return coefficients[n - 1];
    }

    u64 depth() const { return coefficients.size(); }

    void validate() const;
};

} // namespace kuzlab
