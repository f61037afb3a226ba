#include "kuzlab/forms.hpp"
#include "kuzlab/arith.hpp"

#include <cmath>
#include <string>

namespace kuzlab {

void MaassFormRecord::validate() const {
    if (!(kappa > 0))
        throw SchemaError("kappa: must be positive");
    if (parity != 1 && parity != -1)
        throw SchemaError("parity: must be +1 or -1");
    if (coefficients.empty())
        throw SchemaError("coefficients: empty list");
    if (std::abs(coefficients[0] - 1.0L) > 1e-12L)
        throw SchemaError("coefficients: t(1) must equal 1");
    for (u64 n = 1; n <= coefficients.size(); ++n) {
        real cap = 1.5L * divisor_count(n) * std::pow((real)n, 7.0L / 64.0L);
        if (std::abs(coefficients[n - 1]) > cap)
            throw SchemaError("coefficients: t(" + std::to_string(n)
                              + ") breaks the size bound");
    }
    if (alpha && !(*alpha > 0))
        throw SchemaError("alpha: must be positive when present");
}

} // namespace kuzlab
