#ifndef WDVV_LEGENDRE_HPP
#define WDVV_LEGENDRE_HPP

// Legendre-type transformation S_gamma for the rational families: hat
// coordinates x-hat^a = eta^{ab} d_b d_gamma F(x), their closed-form inverses,
// the transformed third-derivative tensors, and the chain-rule consistency
// residual sum_l Fhat_{abl}(x-hat) J^l_k = F_{abk}(x) with J = eta^{-1} F_gamma.
//
// gamma is a 0-based coordinate index throughout the C++ API.

#include <cmath>
#include <cstddef>
#include <limits>
#include <variant>

#include "core.hpp"
#include "families.hpp"
#include "linalg.hpp"
#include "specfn.hpp"

namespace wdvv {

namespace detail {

inline void check_gamma(std::size_t gamma, std::size_t n, const char* who) {
    if (gamma >= n)
        throw precondition_error(std::string(who) + ": gamma out of range");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Rational A_n
// ---------------------------------------------------------------------------

/// x-hat^gamma = [(a_gamma + 1) log x^gamma + sum_{i != gamma} a_i log(x^gamma - x^i)]/(A+1),
/// x-hat^alpha = (a_gamma/(A+1)) [log x^gamma - log(x^gamma - x^alpha)].
inline cvec an_hat_coords(const rational_an_params& p, std::size_t gamma, const cvec& x) {
    const std::size_t n = p.dim();
    detail::check_gamma(gamma, n, "an_hat_coords");
    if (x.size() != n) throw precondition_error("an_hat_coords: dimension mismatch");
    an_rat_check_point(x);
    const cplx A = p.total;
    cvec xh(n);
    cplx acc = (p.a[gamma] + 1.0) * std::log(x[gamma]);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        acc += p.a[i] * std::log(x[gamma] - x[i]);
        xh[i] = p.a[gamma] / (A + 1.0) *
                (std::log(x[gamma]) - std::log(x[gamma] - x[i]));
    }
    xh[gamma] = acc / (A + 1.0);
    return xh;
}

/// Closed-form inverse: log x^gamma = sum_i (a_i/a_gamma) x-hat^i and
/// x^alpha = (1 - e^{-(A+1) x-hat^alpha / a_gamma}) x^gamma.
inline cvec an_inverse_coords(const rational_an_params& p, std::size_t gamma,
                              const cvec& xh) {
    const std::size_t n = p.dim();
    detail::check_gamma(gamma, n, "an_inverse_coords");
    if (xh.size() != n) throw precondition_error("an_inverse_coords: dimension mismatch");
    const cplx A = p.total;
    cplx lg = 0.0;
    for (std::size_t i = 0; i < n; ++i) lg += p.a[i] / p.a[gamma] * xh[i];
    cplx xg = std::exp(lg);
    cvec x(n);
    x[gamma] = xg;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        x[i] = (1.0 - std::exp(-(A + 1.0) * xh[i] / p.a[gamma])) * xg;
    }
    an_rat_check_point(x); // e.g. x-hat^alpha = 0 lands on the x^alpha = 0 locus
    return x;
}

/// Third derivatives of the transformed prepotential in hat coordinates. The
/// non-polynomial part contributes coth((A+1) w / (2 a_gamma)) terms in
/// w = x-hat^i and x-hat^i - x-hat^j (i, j != gamma).
inline ctensor3 an_hat_tensor(const rational_an_params& p, std::size_t gamma,
                              const cvec& xh) {
    const std::size_t n = p.dim();
    detail::check_gamma(gamma, n, "an_hat_tensor");
    if (xh.size() != n) throw precondition_error("an_hat_tensor: dimension mismatch");
    const cplx A = p.total;
    const cplx ag = p.a[gamma];
    const cplx s = (A + 1.0) / (2.0 * ag);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        if (coth_pole_distance(s * xh[i]) < 1e-6)
            throw singular_point("an_hat_tensor: coth argument near pole");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == gamma) continue;
            if (coth_pole_distance(s * (xh[i] - xh[j])) < 1e-6)
                throw singular_point("an_hat_tensor: coth argument near pole");
        }
    }

    cmatrix eta = an_rat_metric(p).eta;
    ctensor3 t(n);
    t(gamma, gamma, gamma) = eta(gamma, gamma);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        t.set_sym(gamma, gamma, i, eta(i, gamma));
        t.set_sym(gamma, i, i, eta(i, i));
    }
    // cubic cross terms over all distinct triples, including gamma
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
                t.set_sym(i, j, l, -2.0 * p.a[i] * p.a[j] * p.a[l] / ag);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        cplx cube = p.a[i] * (eta(i, i) - eta(gamma, gamma)) / (2.0 * ag) -
                    eta(i, i) * eta(i, i) / (4.0 * p.a[i] * ag) + eta(i, gamma) / 2.0;
        cube += p.a[i] * (A + 1.0) / ag * detail::coth_stable(s * xh[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == gamma || j == i) continue;
            t.set_sym(i, i, j,
                      t(i, i, j) + (p.a[j] * eta(i, i) + p.a[i] * eta(i, j)) / (2.0 * ag));
            if (j > i) {
                cplx w = p.a[i] * p.a[j] * (A + 1.0) / ag *
                         detail::coth_stable(s * (xh[i] - xh[j]));
                cube += w;
                t(j, j, j) -= w;
                t.set_sym(i, i, j, t(i, i, j) - w);
                t.set_sym(j, j, i, t(j, j, i) + w);
            }
        }
        t(i, i, i) += cube;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Rational B_n
// ---------------------------------------------------------------------------

/// x-hat^gamma = ((b_0 + b_gamma)/B) log x^gamma
///             + sum_{i != gamma} (b_i / 2B) log((x^gamma)^2 - (x^i)^2),
/// x-hat^alpha = (b_gamma / 2B) log((x^gamma + x^alpha)/(x^gamma - x^alpha)).
inline cvec bn_hat_coords(const rational_bn_params& p, std::size_t gamma, const cvec& x) {
    const std::size_t n = p.dim();
    detail::check_gamma(gamma, n, "bn_hat_coords");
    if (x.size() != n) throw precondition_error("bn_hat_coords: dimension mismatch");
    bn_rat_check_point(x);
    const cplx B = p.total;
    cvec xh(n);
    cplx acc = (p.b0() + p.w(gamma)) / B * std::log(x[gamma]);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        acc += p.w(i) / (2.0 * B) * std::log(x[gamma] * x[gamma] - x[i] * x[i]);
        xh[i] = p.w(gamma) / (2.0 * B) *
                std::log((x[gamma] + x[i]) / (x[gamma] - x[i]));
    }
    xh[gamma] = acc;
    return xh;
}

/// Closed-form inverse through tau(u) = (e^{2u} - 1)/(e^{2u} + 1):
/// x^alpha = x^gamma tau(B x-hat^alpha / b_gamma) and
/// log x^gamma = x-hat^gamma - sum_{i != gamma} (b_i/2B) log(1 - tau^2).
///
/// The tau ratios are branch-free, but the log x^gamma formula assumes the
/// principal branches of log((x^gamma)^2 - (x^i)^2) and log(1 - tau^2) + 2
/// log x^gamma agree, which can be off by 2 pi i jumps. Each jump rescales
/// x^gamma by a known factor, so a finite lattice of candidate scales covers
/// every preimage; the forward gamma component identifies a matching one.
/// The returned point is a genuine preimage of xh under the principal-branch
/// forward map. For generic complex weights that map is not injective, so the
/// preimage of a given x need not be x itself; it is always a point with the
/// same hat coordinates.
inline cvec bn_inverse_coords(const rational_bn_params& p, std::size_t gamma,
                              const cvec& xh) {
    const std::size_t n = p.dim();
    detail::check_gamma(gamma, n, "bn_inverse_coords");
    if (xh.size() != n) throw precondition_error("bn_inverse_coords: dimension mismatch");
    const cplx B = p.total;
    auto tau = [](cplx u) {
        cplx e = std::exp(2.0 * u);
        return (e - 1.0) / (e + 1.0);
    };
    cvec t(n);
    cplx base = xh[gamma];
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        t[i] = tau(B * xh[i] / p.w(gamma));
        cplx om = 1.0 - t[i] * t[i];
        if (std::abs(om) < 1e-14)
            throw singular_point("bn_inverse_coords: tau^2 = 1 (image coordinate collision)");
        base -= p.w(i) / (2.0 * B) * std::log(om);
    }

    // Each branch mismatch contributes -(b_i/B) pi i k_i to log x^gamma with
    // k_i in {-1, 0, 1} (the principal imaginary parts involved sum inside
    // (-3 pi, 3 pi]), so 3^(n-1) candidates cover the preimage exactly; the
    // forward gamma component identifies a matching one. The jump-free
    // assignment is tried first, so whenever the point whose image is xh sits
    // on principal branches the inverse returns that point itself.
    const double tol = 1e-12 * (1.0 + std::abs(xh[gamma]));
    const cplx pii(0.0, 3.14159265358979323846);
    std::size_t total = 1;
    for (std::size_t i = 1; i < n; ++i) total *= 3;
    cvec best;
    double best_dev = std::numeric_limits<double>::infinity();
    for (std::size_t code = 0; code < total; ++code) {
        cplx lg = base;
        std::size_t rem = code;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == gamma) continue;
            static constexpr int kmap[3] = {0, -1, 1};
            int k = kmap[rem % 3];
            rem /= 3;
            if (k != 0) lg -= p.w(i) / B * pii * static_cast<double>(k);
        }
        cplx xg = std::exp(lg);
        cvec x(n);
        x[gamma] = xg;
        cplx have = (p.b0() + p.w(gamma)) / B * std::log(xg);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == gamma) continue;
            x[i] = xg * t[i];
            have += p.w(i) / (2.0 * B) * std::log(xg * xg - x[i] * x[i]);
        }
        double dev = std::abs(have - xh[gamma]);
        if (dev < best_dev) {
            best_dev = dev;
            best = std::move(x);
            if (best_dev <= tol) break;
        }
    }
    if (best_dev > tol)
        throw singular_point("bn_inverse_coords: no branch assignment matches");
    bn_rat_check_point(best); // degenerate images land on singular loci
    return best;
}

/// Transformed B_n tensor: the gamma-slice reproduces eta; the rest is
/// built from coth at arguments t x-hat^i, 2t x-hat^i, t(x-hat^i +- x-hat^j)
/// with t = -B/b_gamma.
inline ctensor3 bn_hat_tensor(const rational_bn_params& p, std::size_t gamma,
                              const cvec& xh) {
    const std::size_t n = p.dim();
    detail::check_gamma(gamma, n, "bn_hat_tensor");
    if (xh.size() != n) throw precondition_error("bn_hat_tensor: dimension mismatch");
    const cplx B = p.total;
    const cplx bg = p.w(gamma);
    const cplx t = -B / bg;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        if (coth_pole_distance(t * xh[i]) < 1e-6 ||
            coth_pole_distance(2.0 * t * xh[i]) < 1e-6)
            throw singular_point("bn_hat_tensor: coth argument near pole");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == gamma) continue;
            if (coth_pole_distance(t * (xh[i] + xh[j])) < 1e-6 ||
                coth_pole_distance(t * (xh[i] - xh[j])) < 1e-6)
                throw singular_point("bn_hat_tensor: coth argument near pole");
        }
    }

    ctensor3 tt(n);
    tt(gamma, gamma, gamma) = 4.0 * bg * B;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == gamma) continue;
        tt.set_sym(gamma, i, i, 4.0 * p.w(i) * B);
        cplx cube =
            4.0 * p.w(i) * bg * bg * (p.b0() + B) / (B * B) * t * t * t *
                detail::coth_stable(t * xh[i]) +
            p.w(i) * bg * bg * (p.w(i) - B) / (B * B) * 8.0 * t * t * t *
                detail::coth_stable(2.0 * t * xh[i]);
        for (std::size_t j = 1 + i; j < n; ++j) {
            if (j == gamma) continue;
            cplx w = 2.0 * p.w(i) * p.w(j) * bg * bg / (B * B) * t * t * t;
            cplx cp = detail::coth_stable(t * (xh[i] + xh[j]));
            cplx cm = detail::coth_stable(t * (xh[i] - xh[j]));
            cube += w * (cp + cm);
            tt(j, j, j) += w * (cp - cm);
            tt.set_sym(i, i, j, tt(i, i, j) + w * (cp - cm));
            tt.set_sym(j, j, i, tt(j, j, i) + w * (cp + cm));
        }
        tt(i, i, i) += cube;
    }
    return tt;
}

// ---------------------------------------------------------------------------
// Family-agnostic context
// ---------------------------------------------------------------------------

struct legendre_context {
    std::variant<rational_an_params, rational_bn_params> family;
    std::size_t gamma; // 0-based

    legendre_context(rational_an_params p, std::size_t g)
        : family(std::move(p)), gamma(g) {
        detail::check_gamma(gamma, dim(), "legendre_context");
    }
    legendre_context(rational_bn_params p, std::size_t g)
        : family(std::move(p)), gamma(g) {
        detail::check_gamma(gamma, dim(), "legendre_context");
    }

    std::size_t dim() const {
        return std::visit([](const auto& p) { return p.dim(); }, family);
    }

    ctensor3 tensor(const cvec& x) const {
        return std::visit(
            [&x](const auto& p) -> ctensor3 {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                             rational_an_params>)
                    return an_rat_tensor(p, x);
                else
                    return bn_rat_tensor(p, x);
            },
            family);
    }

    metric_pair metric() const {
        return std::visit(
            [](const auto& p) -> metric_pair {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                             rational_an_params>)
                    return an_rat_metric(p);
                else
                    return bn_rat_metric(p);
            },
            family);
    }

    cvec hat_coords(const cvec& x) const {
        return std::visit(
            [&](const auto& p) -> cvec {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                             rational_an_params>)
                    return an_hat_coords(p, gamma, x);
                else
                    return bn_hat_coords(p, gamma, x);
            },
            family);
    }

    cvec inverse_coords(const cvec& xh) const {
        return std::visit(
            [&](const auto& p) -> cvec {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                             rational_an_params>)
                    return an_inverse_coords(p, gamma, xh);
                else
                    return bn_inverse_coords(p, gamma, xh);
            },
            family);
    }

    ctensor3 hat_tensor(const cvec& xh) const {
        return std::visit(
            [&](const auto& p) -> ctensor3 {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                             rational_an_params>)
                    return an_hat_tensor(p, gamma, xh);
                else
                    return bn_hat_tensor(p, gamma, xh);
            },
            family);
    }
};

/// Jacobian of the hat coordinates: J^l_k = d x-hat^l / d x^k = (eta^{-1} F_gamma)^l_k.
inline cmatrix legendre_jacobian(const legendre_context& ctx, const cvec& x) {
    ctensor3 t = ctx.tensor(x);
    return ctx.metric().eta_inv * t.slice(ctx.gamma);
}

/// Chain-rule consistency at third-derivative level:
/// max_{a,b,k} | sum_l Fhat_{abl}(x-hat) J^l_k - F_{abk}(x) | / max |F(x)|.
inline double legendre_consistency(const legendre_context& ctx, const cvec& x) {
    const std::size_t n = ctx.dim();
    ctensor3 t = ctx.tensor(x);
    cmatrix j = ctx.metric().eta_inv * t.slice(ctx.gamma);
    ctensor3 th = ctx.hat_tensor(ctx.hat_coords(x));
    double scale = t.max_abs();
    if (scale == 0.0) return 0.0;
    double dev = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t k = 0; k < n; ++k) {
                cplx acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += th(a, b, l) * j(l, k);
                dev = std::max(dev, std::abs(acc - t(a, b, k)));
            }
    return dev / scale;
}

} // namespace wdvv

#endif
