#ifndef WDVV_FAMILIES_HPP
#define WDVV_FAMILIES_HPP

// The four prepotential families: rational A_n and B_n, trigonometric A_n and
// BC_{n-1}. Each family exposes its closed-form third-derivative tensor and
// its constant metric eta (with closed-form inverse where available).
//
// Conventions: all parameter structs validate on construction and are treated
// as immutable afterwards. Coordinate-domain violations throw singular_point
// (recoverable by resampling); parameter-level failures throw
// precondition_error or degenerate_metric.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "core.hpp"
#include "linalg.hpp"
#include "specfn.hpp"

namespace wdvv {

namespace detail {

inline cplx csum(const cvec& v) {
    cplx s = 0.0;
    for (const cplx& x : v) s += x;
    return s;
}

inline void require_nonzero(const cvec& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) < 1e-12)
            throw precondition_error(std::string(what) + "[" + std::to_string(i) +
                                     "] vanishes");
}

/// Metric sanity: eta * eta_inv must reproduce the identity to 1e-10.
inline void check_metric_product(const cmatrix& eta, const cmatrix& eta_inv,
                                 const char* who) {
    cmatrix p = eta * eta_inv - cmatrix::identity(eta.dim());
    if (p.max_abs() > 1e-10)
        throw degenerate_metric(std::string(who) +
                                ": eta * eta^{-1} deviates from identity");
}

} // namespace detail

struct metric_pair {
    cmatrix eta;
    cmatrix eta_inv;
    cplx det;
};

// ---------------------------------------------------------------------------
// Rational A_n:
//   F = sum_i a_i (x^i)^2 log x^i + sum_{i<j} a_i a_j (x^i - x^j)^2 log(x^i - x^j)
// ---------------------------------------------------------------------------

struct rational_an_params {
    cvec a;
    cplx total; // A = sum_i a_i

    explicit rational_an_params(cvec coeffs) : a(std::move(coeffs)) {
        if (a.empty()) throw precondition_error("rational A_n: empty parameter list");
        detail::require_nonzero(a, "a");
        total = detail::csum(a);
        if (std::abs(total + 1.0) < 1e-12)
            throw precondition_error("rational A_n: A = -1 is excluded");
    }

    std::size_t dim() const { return a.size(); }
};

/// Coordinate-domain guard shared by the rational A_n operations.
inline void an_rat_check_point(const cvec& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) < 1e-9)
            throw singular_point("rational A_n: coordinate too close to 0");
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (std::abs(x[i] - x[j]) < 1e-9)
                throw singular_point("rational A_n: coincident coordinates");
    }
}

/// Third derivatives: F_iii = 2a_i/x^i + sum_{j != i} 2a_i a_j/(x^i - x^j),
/// F_iij = -2a_i a_j/(x^i - x^j), zero for three distinct indices.
inline ctensor3 an_rat_tensor(const rational_an_params& p, const cvec& x) {
    const std::size_t n = p.dim();
    if (x.size() != n) throw precondition_error("an_rat_tensor: dimension mismatch");
    an_rat_check_point(x);
    ctensor3 t(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx diag = 2.0 * p.a[i] / x[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            cplx d = x[i] - x[j];
            diag += 2.0 * p.a[i] * p.a[j] / d;
            t.set_sym(i, i, j, -2.0 * p.a[i] * p.a[j] / d);
        }
        t(i, i, i) = diag;
    }
    return t;
}

/// eta_ab = 2 a_a (A - a_a + 1) on the diagonal, -2 a_a a_b off it; the
/// closed-form inverse is (a_a + 1)/(2 a_a (A + 1)) diagonal, 1/(2(A+1)) off.
inline metric_pair an_rat_metric(const rational_an_params& p) {
    const std::size_t n = p.dim();
    const cplx A = p.total;
    cmatrix eta(n), inv(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
            eta(r, s) = (r == s) ? 2.0 * p.a[r] * (A - p.a[r] + 1.0)
                                 : -2.0 * p.a[r] * p.a[s];
            inv(r, s) = (r == s) ? (p.a[r] + 1.0) / (2.0 * p.a[r] * (A + 1.0))
                                 : 1.0 / (2.0 * (A + 1.0));
        }
    detail::check_metric_product(eta, inv, "an_rat_metric");
    return {eta, inv, invert(eta).det};
}

// ---------------------------------------------------------------------------
// Rational B_n:
//   F = sum_i 2 b_i (b_0 + b_i) (x^i)^2 log x^i
//     + sum_{i<j} b_i b_j [ (x^i+x^j)^2 log(x^i+x^j) + (x^i-x^j)^2 log(x^i-x^j) ]
// ---------------------------------------------------------------------------

struct rational_bn_params {
    cvec b;     // b[0] = b_0, b[1..n] = coordinate weights
    cplx total; // B = sum_{i=0..n} b_i

    explicit rational_bn_params(cvec coeffs) : b(std::move(coeffs)) {
        if (b.size() < 2)
            throw precondition_error("rational B_n: need b_0 and at least one b_i");
        detail::require_nonzero(b, "b");
        total = detail::csum(b);
        if (std::abs(total) < 1e-12)
            throw precondition_error("rational B_n: B = 0 is excluded");
    }

    std::size_t dim() const { return b.size() - 1; }
    cplx b0() const { return b[0]; }
    cplx w(std::size_t i) const { return b[i + 1]; } // weight of x^{i}
};

inline void bn_rat_check_point(const cvec& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) < 1e-9)
            throw singular_point("rational B_n: coordinate too close to 0");
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (std::abs(x[i] - x[j]) < 1e-9)
                throw singular_point("rational B_n: coincident coordinates");
            if (std::abs(x[i] + x[j]) < 1e-9)
                throw singular_point("rational B_n: coordinates sum to 0");
        }
    }
}

/// F_iii = 4 b_i (b_0 + b_i)/x^i + sum_{j != i} 2 b_i b_j (1/(x^i-x^j) + 1/(x^i+x^j)),
/// F_iij = 2 b_i b_j (1/(x^i+x^j) - 1/(x^i-x^j)), zero for distinct triples.
inline ctensor3 bn_rat_tensor(const rational_bn_params& p, const cvec& x) {
    const std::size_t n = p.dim();
    if (x.size() != n) throw precondition_error("bn_rat_tensor: dimension mismatch");
    bn_rat_check_point(x);
    ctensor3 t(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx diag = 4.0 * p.w(i) * (p.b0() + p.w(i)) / x[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            cplx dm = x[i] - x[j];
            cplx dp = x[i] + x[j];
            diag += 2.0 * p.w(i) * p.w(j) * (1.0 / dm + 1.0 / dp);
            t.set_sym(i, i, j, 2.0 * p.w(i) * p.w(j) * (1.0 / dp - 1.0 / dm));
        }
        t(i, i, i) = diag;
    }
    return t;
}

/// eta = diag(4 b_i B).
inline metric_pair bn_rat_metric(const rational_bn_params& p) {
    const std::size_t n = p.dim();
    cmatrix eta(n), inv(n);
    cplx det = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        cplx d = 4.0 * p.w(i) * p.total;
        if (std::abs(d) < 1e-12)
            throw degenerate_metric("bn_rat_metric: vanishing diagonal entry");
        eta(i, i) = d;
        inv(i, i) = 1.0 / d;
        det *= d;
    }
    detail::check_metric_product(eta, inv, "bn_rat_metric");
    return {eta, inv, det};
}

// ---------------------------------------------------------------------------
// Trigonometric A_n:
//   F = sum_{i<j} m_i m_j f(u_i - u_j) + (a/6) (sum m_i u_i)^3
//     + (b/2) (sum m_i u_i)(sum m_j u_j^2) + (c/6) sum m_i u_i^3
// ---------------------------------------------------------------------------

struct trig_an_params {
    cvec m;
    cplx a, b, c;
    cplx weight_sum; // M = sum m_i

    trig_an_params(cvec weights, cplx a_, cplx b_, cplx c_)
        : m(std::move(weights)), a(a_), b(b_), c(c_) {
        if (m.empty()) throw precondition_error("trig A_n: empty weight list");
        detail::require_nonzero(m, "m");
        weight_sum = detail::csum(m);
    }

    std::size_t dim() const { return m.size(); }

    /// bM + c != 0 (metric diagonal regularity).
    bool cond1() const { return std::abs(b * weight_sum + c) > 1e-12; }
    /// aM^2 + 3bM + c != 0 (metric determinant regularity).
    bool cond2() const {
        return std::abs(a * weight_sum * weight_sum + 3.0 * b * weight_sum + c) > 1e-12;
    }
};

inline void trig_an_check_point(const trig_an_params& p, const cvec& u) {
    if (u.size() != p.dim())
        throw precondition_error("trig A_n: dimension mismatch");
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (coth_pole_distance(u[i] - u[j]) < 1e-6)
                throw singular_point("trig A_n: u_i - u_j within 1e-6 of i*pi*Z");
}

/// F_krs = a m_k m_r m_s
///       + delta_krs m_k (sum_q m_q beta_kq + c) + delta_kr m_k m_s beta_sk
///       + delta_ks m_k m_r beta_rk + delta_rs m_k m_r beta_kr
///       + b (delta_kr m_k m_s + delta_ks m_k m_r + delta_rs m_k m_r),
/// with beta_ij = coth(u_i - u_j), beta_ii = 0.
inline ctensor3 trig_an_tensor(const trig_an_params& p, const cvec& u) {
    trig_an_check_point(p, u);
    const std::size_t n = p.dim();
    cmatrix beta(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) beta(i, j) = detail::coth_stable(u[i] - u[j]);
    ctensor3 t(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) {
                cplx v = p.a * p.m[k] * p.m[r] * p.m[s];
                if (k == r && r == s) {
                    cplx acc = p.c;
                    for (std::size_t q = 0; q < n; ++q) acc += p.m[q] * beta(k, q);
                    v += p.m[k] * acc;
                }
                if (k == r) v += p.b * p.m[k] * p.m[s];
                if (k == s) v += p.b * p.m[k] * p.m[r];
                if (r == s) v += p.b * p.m[k] * p.m[r];
                if (k == r && k != s) v += p.m[k] * p.m[s] * beta(s, k);
                if (k == s && k != r) v += p.m[k] * p.m[r] * beta(r, k);
                if (r == s && r != k) v += p.m[k] * p.m[r] * beta(k, r);
                t(k, r, s) = v;
            }
    return t;
}

/// eta_rs = (aM + 2b) m_r m_s + delta_rs (bM + c) m_r with closed-form inverse
/// eta^rs = delta_rs / ((bM+c) m_r) - (aM+2b)/((aM^2+3bM+c)(bM+c)) and
/// det eta = (aM^2 + 3bM + c)(bM + c)^{n-1} prod m_i. The closed forms are
/// cross-checked against elimination on every call.
inline metric_pair trig_an_metric(const trig_an_params& p) {
    if (!p.cond1())
        throw degenerate_metric("trig_an_metric: bM + c = 0");
    if (!p.cond2())
        throw degenerate_metric("trig_an_metric: aM^2 + 3bM + c = 0");
    const std::size_t n = p.dim();
    const cplx M = p.weight_sum;
    const cplx d1 = p.b * M + p.c;
    const cplx d2 = p.a * M * M + 3.0 * p.b * M + p.c;
    const cplx am2b = p.a * M + 2.0 * p.b;
    cmatrix eta(n), inv(n);
    cplx det = d2;
    for (std::size_t r = 0; r < n; ++r) {
        if (r + 1 < n) det *= d1;
        det *= p.m[r];
        for (std::size_t s = 0; s < n; ++s) {
            eta(r, s) = am2b * p.m[r] * p.m[s] + ((r == s) ? d1 * p.m[r] : 0.0);
            inv(r, s) = ((r == s) ? 1.0 / (d1 * p.m[r]) : 0.0) - am2b / (d2 * d1);
        }
    }
    detail::check_metric_product(eta, inv, "trig_an_metric");
    inverse_result lu = invert(eta);
    if (std::abs(lu.det - det) > 1e-10 * std::abs(det))
        throw degenerate_metric("trig_an_metric: closed-form det disagrees with elimination");
    return {eta, inv, det};
}

/// Solvability constraint of the family: b^3 M + 3 b^2 c - a c^2 + a M^2 + 3 b M + c.
inline cplx trig_an_relation(const trig_an_params& p) {
    const cplx M = p.weight_sum;
    return p.b * p.b * p.b * M + 3.0 * p.b * p.b * p.c - p.a * p.c * p.c +
           p.a * M * M + 3.0 * p.b * M + p.c;
}

/// Degenerate-metric special case bM + c = 0: relative asymmetry residual of
/// F_i Q^{-1} F_j with Q = diag(m_r). Vanishes (for n >= 3) iff b = +-1.
inline double trig_an_q_asymmetry(const trig_an_params& p, const cvec& u) {
    if (std::abs(p.b * p.weight_sum + p.c) > 1e-12)
        throw precondition_error("trig_an_q_asymmetry: requires bM + c = 0");
    ctensor3 t = trig_an_tensor(p, u);
    const std::size_t n = p.dim();
    cmatrix qinv(n);
    for (std::size_t r = 0; r < n; ++r) qinv(r, r) = 1.0 / p.m[r];
    return asymmetry_residual(t, qinv);
}

/// Under bM + c = 0 and aM + 2b != 0, the combination
///   sum_k h_k F_k,  h_k = -(aM+2b) e^{2b u_k} + a sum_q m_q e^{2b u_q},
/// equals kappa Q with kappa = -2b (aM+2b) sum_q m_q e^{2b u_q} and
/// Q = diag(m_r) exactly when b = +-1; returns ||sum_k h_k F_k - kappa Q|| / |kappa|.
/// b = +-1 is the theorem hypothesis under test, deliberately not enforced, so
/// the converse (b off +-1 gives a large residual) stays measurable.
inline double trig_an_h_combination(const trig_an_params& p, const cvec& u) {
    const cplx M = p.weight_sum;
    if (std::abs(p.b * M + p.c) > 1e-12)
        throw precondition_error("trig_an_h_combination: requires bM + c = 0");
    const cplx am2b = p.a * M + 2.0 * p.b;
    if (std::abs(am2b) < 1e-12)
        throw precondition_error("trig_an_h_combination: requires aM + 2b != 0");
    const std::size_t n = p.dim();
    ctensor3 t = trig_an_tensor(p, u);
    cvec e(n);
    cplx esum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        e[k] = std::exp(2.0 * p.b * u[k]);
        esum += p.m[k] * e[k];
    }
    cplx kappa = -2.0 * p.b * am2b * esum;
    if (std::abs(kappa) < 1e-12)
        throw precondition_error("trig_an_h_combination: kappa vanishes at this point");
    cmatrix s(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx hk = -am2b * e[k] + p.a * esum;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) s(r, c) += hk * t(k, r, c);
    }
    for (std::size_t r = 0; r < n; ++r) s(r, r) -= kappa * p.m[r];
    return s.max_abs() / std::abs(kappa);
}

// ---------------------------------------------------------------------------
// Trigonometric BC_{n-1} in coordinates (xi_0, xi_1, ..., xi_{n-1}):
//   F = xi_0^3/3 + h xi_0 sum m_i xi_i^2 + lambda r sum m_i ftilde(xi_i)
//     + lambda sum (s m_i + q m_i (m_i - 1)/2) ftilde(2 xi_i)
//     + lambda q sum_{i<j} m_i m_j [ftilde(xi_i + xi_j) + ftilde(xi_i - xi_j)]
// with h = r + 4s + 2q(M-1) and lambda the principal square root of
// 2h^3 / (q (r + 8s + 2q(M-2))).
// ---------------------------------------------------------------------------

struct trig_bcn_params {
    cvec m; // n-1 weights for xi_1..xi_{n-1}
    cplx q, r, s;
    cplx weight_sum; // M = sum m_i
    cplx h;
    cplx lambda;

    trig_bcn_params(cvec weights, cplx q_, cplx r_, cplx s_)
        : m(std::move(weights)), q(q_), r(r_), s(s_) {
        if (m.empty()) throw precondition_error("trig BC: empty weight list");
        detail::require_nonzero(m, "m");
        if (std::abs(q) < 1e-12)
            throw precondition_error("trig BC: q = 0 is excluded");
        weight_sum = detail::csum(m);
        const cplx denom = q * (r + 8.0 * s + 2.0 * q * (weight_sum - 2.0));
        if (std::abs(denom) < 1e-12)
            throw precondition_error("trig BC: q (r + 8s + 2q(M-2)) vanishes");
        h = r + 4.0 * s + 2.0 * q * (weight_sum - 1.0);
        if (std::abs(h) < 1e-12)
            throw precondition_error("trig BC: h = r + 4s + 2q(M-1) vanishes");
        lambda = std::sqrt(2.0 * h * h * h / denom);
        if (std::abs(lambda) < 1e-12)
            throw precondition_error("trig BC: lambda vanishes");
    }

    std::size_t dim() const { return m.size() + 1; }
};

inline void trig_bcn_check_point(const trig_bcn_params& p, const cvec& xi) {
    if (xi.size() != p.dim())
        throw precondition_error("trig BC: dimension mismatch");
    for (std::size_t i = 1; i < xi.size(); ++i) {
        if (cot_pole_distance(xi[i]) < 1e-6 || cot_pole_distance(2.0 * xi[i]) < 1e-6)
            throw singular_point("trig BC: xi_i or 2 xi_i within 1e-6 of pi*Z");
        for (std::size_t j = i + 1; j < xi.size(); ++j)
            if (cot_pole_distance(xi[i] + xi[j]) < 1e-6 ||
                cot_pole_distance(xi[i] - xi[j]) < 1e-6)
                throw singular_point("trig BC: xi_i +- xi_j within 1e-6 of pi*Z");
    }
}

/// F_000 = 2, F_0ii = 2 h m_i, mixed 0-entries vanish,
/// F_iii = lambda [ r m_i cot xi_i + 8 (s m_i + q m_i (m_i-1)/2) cot 2 xi_i
///        + q m_i sum_{j != i} m_j (cot(xi_i + xi_j) + cot(xi_i - xi_j)) ],
/// F_iij = lambda q m_i m_j (cot(xi_i + xi_j) - cot(xi_i - xi_j)).
inline ctensor3 trig_bcn_tensor(const trig_bcn_params& p, const cvec& xi) {
    trig_bcn_check_point(p, xi);
    const std::size_t n = p.dim();
    auto cot = [](cplx z) {
        return cplx(0.0, 1.0) * detail::coth_stable(cplx(0.0, 1.0) * z);
    };
    ctensor3 t(n);
    t(0, 0, 0) = 2.0;
    for (std::size_t i = 1; i < n; ++i) {
        const cplx mi = p.m[i - 1];
        t.set_sym(0, i, i, 2.0 * p.h * mi);
        cplx diag = p.r * mi * cot(xi[i]) +
                    8.0 * (p.s * mi + 0.5 * p.q * mi * (mi - 1.0)) * cot(2.0 * xi[i]);
        for (std::size_t j = 1; j < n; ++j) {
            if (j == i) continue;
            const cplx mj = p.m[j - 1];
            cplx cp = cot(xi[i] + xi[j]);
            cplx cm = cot(xi[i] - xi[j]);
            diag += p.q * mi * mj * (cp + cm);
            t.set_sym(i, i, j, p.lambda * p.q * mi * mj * (cp - cm));
        }
        t(i, i, i) = p.lambda * diag;
    }
    return t;
}

/// eta = diag(2, 2 h m_1, ..., 2 h m_{n-1}); by construction the xi_0-slice of
/// the tensor.
inline metric_pair trig_bcn_metric(const trig_bcn_params& p) {
    const std::size_t n = p.dim();
    cmatrix eta(n), inv(n);
    cplx det = 2.0;
    eta(0, 0) = 2.0;
    inv(0, 0) = 0.5;
    for (std::size_t i = 1; i < n; ++i) {
        cplx d = 2.0 * p.h * p.m[i - 1];
        if (std::abs(d) < 1e-12)
            throw degenerate_metric("trig_bcn_metric: vanishing diagonal entry");
        eta(i, i) = d;
        inv(i, i) = 1.0 / d;
        det *= d;
    }
    detail::check_metric_product(eta, inv, "trig_bcn_metric");
    return {eta, inv, det};
}

} // namespace wdvv

#endif
