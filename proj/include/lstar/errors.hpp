#pragma once

#include <stdexcept>
#include <string>

namespace lstar {

/// Base class for all errors raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
struct contract_violation : error {
    using error::error;
};

/// Reciprocal of a series whose constant term is not a unit.
struct not_invertible : contract_violation {
    using contract_violation::contract_violation;
};

/// Square root of a series whose constant term admits no root in the ring.
struct not_a_square_root_domain : contract_violation {
    using contract_violation::contract_violation;
};

/// Composition with an inner series of nonzero constant term.
struct composition_diverges : contract_violation {
    using contract_violation::contract_violation;
};

/// Requested genus outside the supported range.
struct not_implemented_genus : error {
    using error::error;
};

/// Polynomial fit against reference counts is inconsistent or underdetermined.
struct fit_failed : error {
    using error::error;
};

/// Order-by-order fixed point solve failed to stabilize.
struct fixed_point_failure : error {
    using error::error;
};

/// Index beyond the truncation order of a computed series.
struct out_of_range_error : error {
    using error::error;
};

/// Exhaustive enumeration requested beyond the hard size cap.
struct cap_exceeded : error {
    using error::error;
};

/// Input sequence contains characters outside {A,C,G,U}.
struct bad_sequence : error {
    using error::error;
};

/// Estimator was handed fewer data points than it needs.
struct insufficient_data : error {
    using error::error;
};

/// Filesystem failure, annotated with the offending path.
struct io_error : error {
    using error::error;
};

}  // namespace lstar
