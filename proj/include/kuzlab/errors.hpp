#pragma once
#include <stdexcept>
#include <string>

namespace kuzlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define KUZLAB_ERROR_TYPE(Name)                                              \
    struct Name : Error {                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

// arith
KUZLAB_ERROR_TYPE(NotCoprime)
// special
KUZLAB_ERROR_TYPE(PoleAtNonpositiveInteger)
KUZLAB_ERROR_TYPE(PoleAtOne)
KUZLAB_ERROR_TYPE(OutOfValidatedRange)
KUZLAB_ERROR_TYPE(SeriesRegimeExceeded)
KUZLAB_ERROR_TYPE(QuadratureFailure)
// smoothing / afe
KUZLAB_ERROR_TYPE(OutsideRegularityStrip)
KUZLAB_ERROR_TYPE(InsufficientCoefficients)
KUZLAB_ERROR_TYPE(RegimeTooSmall)
// trace
KUZLAB_ERROR_TYPE(TailNotConvergent)
KUZLAB_ERROR_TYPE(MissingAlpha)
KUZLAB_ERROR_TYPE(PoorIsolation)
KUZLAB_ERROR_TYPE(DivisionUnstable)
// moments
KUZLAB_ERROR_TYPE(SingularFit)
// io
KUZLAB_ERROR_TYPE(ParseError)
KUZLAB_ERROR_TYPE(SchemaError)
KUZLAB_ERROR_TYPE(NetworkError)
KUZLAB_ERROR_TYPE(ChecksumMismatch)

#undef KUZLAB_ERROR_TYPE

} // namespace kuzlab
