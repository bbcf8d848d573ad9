#ifndef WDVV_LINALG_HPP
#define WDVV_LINALG_HPP

// Dense complex matrices, totally symmetric rank-3 tensors, and the WDVV
// asymmetry residual. Sized for prepotential work (n <= 16): plain Gaussian
// elimination with partial pivoting, no blocking.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "core.hpp"

namespace wdvv {

class cmatrix {
public:
    cmatrix() = default;
    explicit cmatrix(std::size_t n) : n_(n), a_(n * n) {}

    static cmatrix identity(std::size_t n) {
        cmatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    friend cmatrix operator*(const cmatrix& x, const cmatrix& y) {
        cmatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                cplx xik = x(i, k);
                if (xik == cplx(0.0)) continue;
                for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend cmatrix operator-(const cmatrix& x, const cmatrix& y) {
        cmatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_ * x.n_; ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

struct inverse_result {
    cmatrix inverse;
    cplx det;
};

/// Invert by Gauss-Jordan with partial pivoting; also returns the determinant.
/// Rejects matrices with |det| <= 1e-12 * (max row norm)^n, the scaled
/// Hadamard-style singularity test.
inline inverse_result invert(const cmatrix& m) {
    const std::size_t n = m.dim();
    if (n == 0) throw precondition_error("invert: empty matrix");

    double max_row_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::norm(m(i, j));
        max_row_norm = std::max(max_row_norm, std::sqrt(s));
    }

    cmatrix a = m;
    cmatrix inv = cmatrix::identity(n);
    cplx det = 1.0;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == cplx(0.0))
            throw singular_matrix("invert: zero pivot column");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
            det = -det;
        }
        cplx p = a(col, col);
        det *= p;
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            cplx f = a(r, col);
            if (f == cplx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }

    if (std::abs(det) <= 1e-12 * std::pow(max_row_norm, static_cast<double>(n)))
        throw singular_matrix("invert: determinant below scaled singularity threshold");
    return {std::move(inv), det};
}

/// Totally symmetric rank-3 tensor of third derivatives F_irs.
class ctensor3 {
public:
    ctensor3() = default;
    explicit ctensor3(std::size_t n) : n_(n), a_(n * n * n) {}

    std::size_t dim() const { return n_; }

    cplx& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return a_[(i * n_ + j) * n_ + k];
    }
    cplx operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return a_[(i * n_ + j) * n_ + k];
    }

    /// Assign v to every permutation of (i, j, k).
    void set_sym(std::size_t i, std::size_t j, std::size_t k, cplx v) {
        (*this)(i, j, k) = v;
        (*this)(i, k, j) = v;
        (*this)(j, i, k) = v;
        (*this)(j, k, i) = v;
        (*this)(k, i, j) = v;
        (*this)(k, j, i) = v;
    }

    /// Matrix slice F_i with entries (F_i)_{rs} = F_irs.
    cmatrix slice(std::size_t i) const {
        cmatrix m(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t s = 0; s < n_; ++s) m(r, s) = (*this)(i, r, s);
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Largest absolute deviation between an entry and any permutation of it.
    double symmetry_defect() const {
        double d = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                for (std::size_t k = j; k < n_; ++k) {
                    cplx v = (*this)(i, j, k);
                    for (cplx w : {(*this)(i, k, j), (*this)(j, i, k), (*this)(j, k, i),
                                   (*this)(k, i, j), (*this)(k, j, i)})
                        d = std::max(d, std::abs(v - w));
                }
        return d;
    }

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

/// Relative asymmetry residual of the pencil F_i K F_j:
/// max over i<j of the largest entry of [F_i K F_j - F_j K F_i], normalized by
/// max_i ||F_i K|| * max_j ||F_j|| (max-entry norms). Zero denominator gives 0.
/// With K = eta^{-1} this is the WDVV residual.
inline double asymmetry_residual(const ctensor3& t, const cmatrix& k) {
    const std::size_t n = t.dim();
    if (n < 2) return 0.0;
    std::vector<cmatrix> fk;
    std::vector<cmatrix> f;
    fk.reserve(n);
    f.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.push_back(t.slice(i));
        fk.push_back(f.back() * k);
    }
    double den_fk = 0.0;
    double den_f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        den_fk = std::max(den_fk, fk[i].max_abs());
        den_f = std::max(den_f, f[i].max_abs());
    }
    double den = den_fk * den_f;
    if (den == 0.0) return 0.0;
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            cmatrix c = fk[i] * f[j] - fk[j] * f[i];
            num = std::max(num, c.max_abs());
        }
    return num / den;
}

/// WDVV commutativity residual of a third-derivative tensor against eta^{-1}.
inline double wdvv_residual(const ctensor3& t, const cmatrix& eta_inv) {
    return asymmetry_residual(t, eta_inv);
}

} // namespace wdvv

#endif
