#ifndef WDVV_CORE_HPP
#define WDVV_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wdvv {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside a function's domain of definition (series radius, half-plane).
class domain_error : public error {
public:
    using error::error;
};

/// Argument within the guard distance of a pole of the function.
class pole_error : public error {
public:
    using error::error;
};

/// Evaluation point violates a coordinate-domain guard (coincident or vanishing
/// coordinates, pole-lattice proximity). Recoverable by resampling.
class singular_point : public error {
public:
    using error::error;
};

/// Matrix numerically singular under the scaled determinant test.
class singular_matrix : public error {
public:
    using error::error;
};

/// Metric fails invertibility or a closed-form cross-check.
class degenerate_metric : public error {
public:
    using error::error;
};

/// A stated operation precondition does not hold; the message names it.
class precondition_error : public error {
public:
    using error::error;
};

/// Equivalence map undefined or an internal identity of the map failed.
class degenerate_equivalence : public error {
public:
    using error::error;
};

/// Malformed or inconsistent run configuration.
class config_error : public error {
public:
    using error::error;
};

} // namespace wdvv

#endif
