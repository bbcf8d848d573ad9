#ifndef WDVV_SPECFN_HPP
#define WDVV_SPECFN_HPP

// Polylogarithms Li_0..Li_3 and the trilogarithm-based building blocks
// f(z) = z^3/6 - Li_3(e^{-2z})/4 and its rotation ftilde(z) = -f(-iz),
// whose third derivatives are coth z and cot z. These are the only special
// functions the prepotential families need.

#include <cmath>
#include <cstddef>
#include <numbers>

#include "core.hpp"

namespace wdvv {

namespace detail {

/// Power series sum_{k>=1} z^k / k^n. Converges for |z| < 1; terminates when a
/// term drops below 1e-16 of the accumulated sum, capped at 1e4 terms.
template <class C>
C li_series(int n, C z) {
    if (z == C(0)) return C(0);
    C acc = z;
    C zk = z;
    for (std::size_t k = 2; k <= 10000; ++k) {
        zk *= z;
        double kn = static_cast<double>(k);
        for (int p = 1; p < n; ++p) kn *= static_cast<double>(k);
        C term = zk / kn;
        acc += term;
        if (std::abs(term) <= 1e-16 * std::abs(acc)) break;
    }
    return acc;
}

/// coth on the pole-free set, computed through the contracting exponential on
/// each half-plane so large |Re z| cannot overflow.
inline cplx coth_stable(cplx z) {
    if (z.real() >= 0.0) {
        cplx e = std::exp(-2.0 * z);
        return (1.0 + e) / (1.0 - e);
    }
    cplx e = std::exp(2.0 * z);
    return (e + 1.0) / (e - 1.0);
}

} // namespace detail

/// Distance from z to the coth pole lattice i*pi*Z.
inline double coth_pole_distance(cplx z) {
    double k = std::round(z.imag() / std::numbers::pi);
    return std::abs(z - cplx(0.0, k * std::numbers::pi));
}

/// Distance from z to the cot pole lattice pi*Z.
inline double cot_pole_distance(cplx z) {
    double k = std::round(z.real() / std::numbers::pi);
    return std::abs(z - cplx(k * std::numbers::pi, 0.0));
}

/// Li_n(z) for n in 0..3. Li_0(z) = z/(1-z); Li_1(z) = -log(1-z);
/// Li_2, Li_3 by power series on |z| <= 0.999.
inline cplx polylog(int n, cplx z) {
    if (n < 0 || n > 3) throw domain_error("polylog: order must be in 0..3");
    if (n == 0) {
        if (std::abs(z - 1.0) < 1e-14)
            throw domain_error("polylog: Li_0 pole at z = 1");
        return z / (1.0 - z);
    }
    if (std::abs(z) > 0.999)
        throw domain_error("polylog: series domain is |z| <= 0.999 for n >= 1");
    if (n == 1) return -std::log(1.0 - z);
    return detail::li_series(n, z);
}

/// f(z) = z^3/6 - Li_3(e^{-2z})/4, defined on Re z > 0.0005.
inline cplx f_eval(cplx z) {
    if (z.real() <= 0.0005)
        throw domain_error("f_eval: requires Re z > 0.0005");
    return z * z * z / 6.0 - 0.25 * detail::li_series(3, std::exp(-2.0 * z));
}

/// f'''(z) = coth z = (e^{2z}+1)/(e^{2z}-1); z must stay 1e-8 away from i*pi*Z.
inline cplx f_d3(cplx z) {
    if (coth_pole_distance(z) < 1e-8)
        throw pole_error("f_d3: z within 1e-8 of a pole on i*pi*Z");
    return detail::coth_stable(z);
}

/// d^2/dz^2 [ 8 f(kappa z / 2) ] = kappa^3 z + 2 kappa^2 log(1 - e^{-kappa z}).
/// kappa = 0 gives 0; otherwise requires Re(kappa z) > 0.001 and the log
/// argument away from its zero.
inline cplx f_d2_scaled(cplx kappa, cplx z) {
    if (kappa == cplx(0.0)) return cplx(0.0);
    cplx kz = kappa * z;
    if (kz.real() <= 0.001)
        throw domain_error("f_d2_scaled: requires Re(kappa z) > 0.001");
    cplx e = std::exp(-kz);
    if (std::abs(e - 1.0) < 1e-9)
        throw domain_error("f_d2_scaled: log argument within 1e-9 of zero");
    return kappa * kappa * (kappa * z + 2.0 * std::log(1.0 - e));
}

/// ftilde(z) = -f(-iz), defined on Im z > 0.0005.
inline cplx ftilde_eval(cplx z) {
    if (z.imag() <= 0.0005)
        throw domain_error("ftilde_eval: requires Im z > 0.0005");
    return -f_eval(cplx(0.0, -1.0) * z);
}

/// ftilde'''(z) = cot z = i coth(iz); z must stay 1e-6 away from pi*Z.
inline cplx ftilde_d3(cplx z) {
    if (cot_pole_distance(z) < 1e-6)
        throw pole_error("ftilde_d3: z within 1e-6 of a pole on pi*Z");
    return cplx(0.0, 1.0) * detail::coth_stable(cplx(0.0, 1.0) * z);
}

} // namespace wdvv

#endif
