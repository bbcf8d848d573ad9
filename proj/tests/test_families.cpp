#include <catch2/catch_amalgamated.hpp>
#include <wdvv/wdvv.hpp>

#include <cmath>
#include <functional>
#include <numbers>

#include "oracles.hpp"

using wdvv::cplx;
using wdvv::cvec;
using oracle::aerr;

namespace {

constexpr double pi = std::numbers::pi;

/// Wrap a point guard into an admissibility predicate.
template <class Check>
std::function<bool(const cvec&)> admits(Check check) {
    return [check](const cvec& v) {
        try {
            check(v);
            return true;
        } catch (const wdvv::singular_point&) {
            return false;
        }
    };
}

/// Largest deviation between nested finite differences of the long-double
/// prepotential and the tensor under test, relative to the tensor's largest
/// entry.
template <class F>
double fd_tensor_dev(F&& Fref, const wdvv::ctensor3& t, const cvec& x) {
    const std::size_t n = x.size();
    oracle::lvec X = oracle::widen(x);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k)
                dev = std::max(dev, aerr(oracle::narrow(oracle::d3(Fref, X, i, j, k)),
                                         t(i, j, k)));
    return dev / t.max_abs();
}

bool all_cut_safe_an(const cvec& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!oracle::cut_safe(x[i])) return false;
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (!oracle::cut_safe(x[i] - x[j])) return false;
    }
    return true;
}

bool all_cut_safe_bn(const cvec& x) {
    if (!all_cut_safe_an(x)) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (!oracle::cut_safe(x[i] + x[j])) return false;
    return true;
}

bool fold_safe_trig_an(const cvec& u) {
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (!oracle::fold_safe_re(u[i] - u[j])) return false;
    return true;
}

bool fold_safe_trig_bcn(const cvec& xi) {
    for (std::size_t i = 1; i < xi.size(); ++i) {
        if (!oracle::fold_safe_im(xi[i])) return false;
        for (std::size_t j = i + 1; j < xi.size(); ++j)
            if (!oracle::fold_safe_im(xi[i] + xi[j]) ||
                !oracle::fold_safe_im(xi[i] - xi[j]))
                return false;
    }
    return true;
}

/// Solve the solvability relation for a given (m, b, c); requires M^2 != c^2.
cplx solve_relation_for_a(const cvec& m, cplx b, cplx c) {
    cplx M = 0.0;
    for (cplx w : m) M += w;
    return -(b * b * b * M + 3.0 * b * b * c + 3.0 * b * M + c) / (M * M - c * c);
}

} // namespace

// ---------------------------------------------------------------------------
// rational A_n
// ---------------------------------------------------------------------------

TEST_CASE("rational A_n worked tensor and metric") {
    wdvv::rational_an_params p({cplx(1.0), cplx(1.0)});
    cvec x = {cplx(2.0), cplx(1.0)};
    wdvv::ctensor3 t = wdvv::an_rat_tensor(p, x);

    CHECK(aerr(t(0, 0, 0), 3.0) < 1e-14);
    CHECK(aerr(t(0, 0, 1), -2.0) < 1e-14);
    CHECK(aerr(t(0, 1, 1), 2.0) < 1e-14);
    CHECK(aerr(t(1, 1, 1), 0.0) < 1e-14);
    CHECK(t.symmetry_defect() == 0.0);

    auto m = wdvv::an_rat_metric(p);
    CHECK(aerr(m.eta(0, 0), 4.0) < 1e-14);
    CHECK(aerr(m.eta(0, 1), -2.0) < 1e-14);
    CHECK(aerr(m.eta(1, 1), 4.0) < 1e-14);
    CHECK(aerr(m.det, 12.0) < 1e-12);

    wdvv::rational_an_params p2({cplx(1.0), cplx(2.0)});
    auto m2 = wdvv::an_rat_metric(p2);
    CHECK(aerr(m2.eta(0, 0), 6.0) < 1e-14);
    CHECK(aerr(m2.eta(0, 1), -4.0) < 1e-14);
    CHECK(aerr(m2.eta(1, 1), 8.0) < 1e-14);
    CHECK(aerr(m2.eta_inv(0, 0), 0.25) < 1e-14);
    CHECK(aerr(m2.eta_inv(0, 1), 0.125) < 1e-14);
    CHECK(aerr(m2.eta_inv(1, 1), 3.0 / 16.0) < 1e-14);
}

TEST_CASE("rational A_n tensor vanishes on three distinct indices") {
    wdvv::rational_an_params p({cplx(1.0), cplx(0.5, 0.5), cplx(-0.3, 0.7)});
    cvec x = {cplx(3.0), cplx(1.5, 1.0), cplx(-1.0, -0.5)};
    wdvv::ctensor3 t = wdvv::an_rat_tensor(p, x);
    CHECK(t(0, 1, 2) == cplx(0.0));
    CHECK(t.symmetry_defect() == 0.0);
}

TEST_CASE("rational families satisfy the Euler contraction sum x^i F_iab = eta") {
    wdvv::sampler s(wdvv::substream_seed(11, 0));

    wdvv::rational_an_params pa({cplx(1.0), cplx(0.5, 0.5), cplx(-0.3, 0.7)});
    auto ma = wdvv::an_rat_metric(pa);
    for (int t = 0; t < 5; ++t) {
        cvec x = wdvv::draw_admissible(s, 3, admits(wdvv::an_rat_check_point));
        wdvv::ctensor3 f = wdvv::an_rat_tensor(pa, x);
        double dev = 0.0;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                cplx acc = 0.0;
                for (std::size_t i = 0; i < 3; ++i) acc += x[i] * f(i, a, b);
                dev = std::max(dev, aerr(acc, ma.eta(a, b)));
            }
        CHECK(dev / ma.eta.max_abs() < 1e-12);
    }

    wdvv::rational_bn_params pb({cplx(0.5), cplx(1.0), cplx(-0.7, 0.2)});
    auto mb = wdvv::bn_rat_metric(pb);
    for (int t = 0; t < 5; ++t) {
        cvec x = wdvv::draw_admissible(s, 2, admits(wdvv::bn_rat_check_point));
        wdvv::ctensor3 f = wdvv::bn_rat_tensor(pb, x);
        double dev = 0.0;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                cplx acc = 0.0;
                for (std::size_t i = 0; i < 2; ++i) acc += x[i] * f(i, a, b);
                dev = std::max(dev, aerr(acc, mb.eta(a, b)));
            }
        CHECK(dev / mb.eta.max_abs() < 1e-12);
    }
}

TEST_CASE("rational B_n worked tensor and metric") {
    wdvv::rational_bn_params p({cplx(1.0), cplx(1.0), cplx(1.0)});
    CHECK(aerr(p.total, 3.0) == 0.0);
    cvec x = {cplx(3.0), cplx(1.0)};
    wdvv::ctensor3 t = wdvv::bn_rat_tensor(p, x);

    CHECK(aerr(t(0, 0, 0), 25.0 / 6.0) < 1e-14);
    CHECK(aerr(t(0, 0, 1), -0.5) < 1e-14);
    CHECK(aerr(t(0, 1, 1), 1.5) < 1e-14);
    CHECK(t.symmetry_defect() == 0.0);

    auto m = wdvv::bn_rat_metric(p);
    CHECK(aerr(m.eta(0, 0), 12.0) < 1e-14);
    CHECK(aerr(m.eta(1, 1), 12.0) < 1e-14);
    CHECK(aerr(m.eta(0, 1), 0.0) == 0.0);
    CHECK(aerr(m.det, 144.0) < 1e-12);
}

TEST_CASE("rational WDVV residuals vanish at machine precision") {
    wdvv::sampler s(wdvv::substream_seed(11, 1));

    wdvv::rational_an_params pa(
        {cplx(1.0), cplx(0.5, 0.5), cplx(-0.3, 0.7), cplx(2.0)});
    auto ka = wdvv::an_rat_metric(pa).eta_inv;
    for (int t = 0; t < 5; ++t) {
        cvec x = wdvv::draw_admissible(s, 4, admits(wdvv::an_rat_check_point));
        CHECK(wdvv::wdvv_residual(wdvv::an_rat_tensor(pa, x), ka) < 1e-11);
    }

    wdvv::rational_bn_params pb(
        {cplx(0.5), cplx(1.0), cplx(-0.7, 0.2), cplx(1.3, -0.4)});
    auto kb = wdvv::bn_rat_metric(pb).eta_inv;
    for (int t = 0; t < 5; ++t) {
        cvec x = wdvv::draw_admissible(s, 3, admits(wdvv::bn_rat_check_point));
        CHECK(wdvv::wdvv_residual(wdvv::bn_rat_tensor(pb, x), kb) < 1e-11);
    }
}

TEST_CASE("rational guards and parameter validation") {
    using wdvv::precondition_error;
    using wdvv::singular_point;

    CHECK_THROWS_AS(wdvv::rational_an_params({}), precondition_error);
    CHECK_THROWS_AS(wdvv::rational_an_params({cplx(1.0), cplx(0.0)}),
                    precondition_error);
    CHECK_THROWS_AS(wdvv::rational_an_params({cplx(1.0), cplx(-2.0)}),
                    precondition_error); // A = -1
    CHECK_THROWS_AS(wdvv::rational_bn_params({cplx(1.0)}), precondition_error);
    CHECK_THROWS_AS(
        wdvv::rational_bn_params({cplx(1.0), cplx(-0.5), cplx(-0.5)}),
        precondition_error); // B = 0

    wdvv::rational_an_params pa({cplx(1.0), cplx(1.0)});
    CHECK_THROWS_AS(wdvv::an_rat_tensor(pa, {cplx(1.0), cplx(1.0)}),
                    singular_point);
    CHECK_THROWS_AS(wdvv::an_rat_tensor(pa, {cplx(1.0)}), precondition_error);

    wdvv::rational_bn_params pb({cplx(1.0), cplx(1.0), cplx(1.0)});
    CHECK_THROWS_AS(wdvv::bn_rat_tensor(pb, {cplx(1.0), cplx(-1.0)}),
                    singular_point);
    CHECK_THROWS_AS(wdvv::bn_rat_tensor(pb, {cplx(1e-12), cplx(1.0)}),
                    singular_point);
}

// ---------------------------------------------------------------------------
// trigonometric A_n
// ---------------------------------------------------------------------------

TEST_CASE("trigonometric A_n worked values") {
    wdvv::trig_an_params p({cplx(1.0), cplx(1.0)}, cplx(-1.0 / 3.0), cplx(0.0),
                           cplx(1.0));
    cvec u = {cplx(1.2), cplx(0.2)};
    wdvv::ctensor3 t = wdvv::trig_an_tensor(p, u);
    CHECK(aerr(t(0, 0, 0), cplx(1.9797019521659979703)) < 1e-13);
    CHECK(t.symmetry_defect() == 0.0);

    CHECK(aerr(wdvv::trig_an_relation(p), 0.0) < 1e-15);
    CHECK(aerr(wdvv::trig_an_metric(p).det, cplx(-1.0 / 3.0)) < 1e-13);

    wdvv::trig_an_params bad({cplx(1.0), cplx(1.0), cplx(1.0)}, cplx(1.0),
                             cplx(1.0), cplx(1.0));
    CHECK(aerr(wdvv::trig_an_relation(bad), 24.0) < 1e-13);
}

TEST_CASE("trigonometric A_n reduces to the pure coth tensor at a=b=c=0") {
    wdvv::trig_an_params p({cplx(2.0), cplx(3.0)}, cplx(0.0), cplx(0.0),
                           cplx(0.0));
    cvec u = {cplx(0.9), cplx(0.2)};
    cplx beta = wdvv::f_d3(u[0] - u[1]); // coth(0.7)
    wdvv::ctensor3 t = wdvv::trig_an_tensor(p, u);
    CHECK(aerr(t(0, 0, 0), 6.0 * beta) < 1e-13);
    CHECK(aerr(t(0, 0, 1), -6.0 * beta) < 1e-13);
    CHECK(aerr(t(0, 1, 1), 6.0 * beta) < 1e-13);
    CHECK(aerr(t(1, 1, 1), -6.0 * beta) < 1e-13);
}

TEST_CASE("trigonometric A_n metric structure") {
    wdvv::trig_an_params p({cplx(1.0), cplx(0.6, 0.3), cplx(1.4)},
                           cplx(0.4, -0.2), cplx(0.7, 0.1), cplx(-0.5, 0.4));
    auto m = wdvv::trig_an_metric(p);
    const cplx M = p.weight_sum;
    const cplx diag = p.b * M + p.c;
    const cplx am2b = p.a * M + 2.0 * p.b;

    SECTION("eta minus its diagonal part is the rank-one weight square") {
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t s = 0; s < 3; ++s) {
                cplx expect = am2b * p.m[r] * p.m[s];
                if (r == s) expect += diag * p.m[r];
                CHECK(aerr(m.eta(r, s), expect) < 1e-13);
            }
    }

    SECTION("closed-form det matches elimination") {
        CHECK(aerr(m.det, wdvv::invert(m.eta).det) < 1e-12 * std::abs(m.det));
    }

    SECTION("unit-direction contraction: sum_k F_k = eta pointwise") {
        wdvv::sampler s(wdvv::substream_seed(11, 2));
        cvec u = wdvv::draw_admissible(
            s, 3, admits([&](const cvec& w) { wdvv::trig_an_check_point(p, w); }));
        wdvv::ctensor3 t = wdvv::trig_an_tensor(p, u);
        double dev = 0.0;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                cplx acc = 0.0;
                for (std::size_t k = 0; k < 3; ++k) acc += t(k, a, b);
                dev = std::max(dev, aerr(acc, m.eta(a, b)));
            }
        CHECK(dev / m.eta.max_abs() < 1e-12);
    }
}

TEST_CASE("trigonometric A_n WDVV holds on the solvability locus and fails off it") {
    wdvv::sampler s(wdvv::substream_seed(11, 3));

    for (int t = 0; t < 8; ++t) {
        const std::size_t n = 2 + t % 2;
        cvec m(n);
        for (auto& w : m) w = s.draw();
        cplx b = s.draw(), c = s.draw();
        cplx M = 0.0;
        for (cplx w : m) M += w;
        if (std::abs(M * M - c * c) < 0.1) continue;
        cplx a = solve_relation_for_a(m, b, c);
        wdvv::trig_an_params p(m, a, b, c);
        if (!p.cond1() || !p.cond2()) continue;
        auto eta_inv = wdvv::trig_an_metric(p).eta_inv;
        cvec u = wdvv::draw_admissible(
            s, n, admits([&](const cvec& w) { wdvv::trig_an_check_point(p, w); }));
        CHECK(wdvv::wdvv_residual(wdvv::trig_an_tensor(p, u), eta_inv) < 1e-11);

        // push the relation at least 0.5 away through the a-coefficient
        wdvv::trig_an_params bad(m, a + 0.5 / (M * M - c * c), b, c);
        CHECK(std::abs(wdvv::trig_an_relation(bad)) > 0.4);
        if (bad.cond1() && bad.cond2()) {
            auto ki = wdvv::trig_an_metric(bad).eta_inv;
            double r = wdvv::wdvv_residual(wdvv::trig_an_tensor(bad, u), ki);
            if (n == 2) {
                // sum_k F_k = eta holds for every (m,a,b,c), so the two
                // multiplication matrices are C and I - C: n = 2 commutes
                // identically and the relation only constrains n >= 3.
                CHECK(r < 1e-12);
            } else {
                CHECK(r > 1e-5);
            }
        }
    }
}

TEST_CASE("trigonometric A_n special case bM + c = 0") {
    using wdvv::precondition_error;
    wdvv::sampler s(wdvv::substream_seed(11, 4));
    cvec m3 = {cplx(1.0), cplx(1.0), cplx(1.0)};
    auto admissible_u = [&](const wdvv::trig_an_params& p) {
        return admits([&p](const cvec& w) { wdvv::trig_an_check_point(p, w); });
    };

    SECTION("b = +1 and b = -1 are symmetric; generic b is not") {
        wdvv::trig_an_params plus(m3, cplx(2.0), cplx(1.0), cplx(-3.0));
        wdvv::trig_an_params minus(m3, cplx(0.7), cplx(-1.0), cplx(3.0));
        wdvv::trig_an_params off(m3, cplx(2.0), cplx(2.0), cplx(-6.0));
        for (int t = 0; t < 3; ++t) {
            cvec u = wdvv::draw_admissible(s, 3, admissible_u(plus));
            CHECK(wdvv::trig_an_q_asymmetry(plus, u) < 1e-11);
            CHECK(wdvv::trig_an_q_asymmetry(minus, u) < 1e-11);
            CHECK(wdvv::trig_an_q_asymmetry(off, u) > 1e-4);
        }
    }

    SECTION("diagonalizing combination matches kappa Q exactly at b = +-1") {
        wdvv::trig_an_params plus(m3, cplx(2.0), cplx(1.0), cplx(-3.0));
        wdvv::trig_an_params minus(m3, cplx(0.7), cplx(-1.0), cplx(3.0));
        wdvv::trig_an_params off(m3, cplx(1.0), cplx(1.5), cplx(-4.5));
        for (int t = 0; t < 3; ++t) {
            cvec u = wdvv::draw_admissible(s, 3, admissible_u(plus));
            CHECK(wdvv::trig_an_h_combination(plus, u) < 1e-10);
            CHECK(wdvv::trig_an_h_combination(minus, u) < 1e-10);
            CHECK(wdvv::trig_an_h_combination(off, u) > 1e-4);
            // translation invariance along the diagonal direction
            cvec shifted = u;
            for (auto& z : shifted) z += cplx(0.37, -0.11);
            CHECK(wdvv::trig_an_h_combination(plus, shifted) < 1e-10);
        }
    }

    SECTION("preconditions") {
        wdvv::trig_an_params not_special(m3, cplx(2.0), cplx(1.0), cplx(-2.9));
        cvec u = {cplx(0.4), cplx(1.3), cplx(2.9)};
        CHECK_THROWS_AS(wdvv::trig_an_q_asymmetry(not_special, u),
                        precondition_error);
        CHECK_THROWS_AS(wdvv::trig_an_h_combination(not_special, u),
                        precondition_error);
        // aM + 2b = 0 kills the diagonalizing combination
        wdvv::trig_an_params no_comb(m3, cplx(-2.0 / 3.0), cplx(1.0), cplx(-3.0));
        CHECK_THROWS_AS(wdvv::trig_an_h_combination(no_comb, u),
                        precondition_error);
    }
}

TEST_CASE("trigonometric A_n guards") {
    using wdvv::degenerate_metric;
    using wdvv::precondition_error;
    using wdvv::singular_point;

    CHECK_THROWS_AS(wdvv::trig_an_params({}, 1.0, 1.0, 1.0), precondition_error);
    CHECK_THROWS_AS(wdvv::trig_an_params({cplx(1.0), cplx(0.0)}, 1.0, 1.0, 1.0),
                    precondition_error);

    // bM + c = 0 and aM^2 + 3bM + c = 0 both degenerate the metric
    wdvv::trig_an_params d1({cplx(1.0), cplx(1.0), cplx(1.0)}, cplx(2.0),
                            cplx(1.0), cplx(-3.0));
    CHECK_THROWS_AS(wdvv::trig_an_metric(d1), degenerate_metric);
    wdvv::trig_an_params d2({cplx(1.0), cplx(1.0)}, cplx(-1.0), cplx(0.0),
                            cplx(4.0));
    CHECK_THROWS_AS(wdvv::trig_an_metric(d2), degenerate_metric);

    wdvv::trig_an_params p({cplx(1.0), cplx(1.0)}, cplx(1.0), cplx(1.0),
                           cplx(1.0));
    CHECK_THROWS_AS(
        wdvv::trig_an_tensor(p, {cplx(0.5, 1.0), cplx(0.5, 1.0 - pi)}),
        singular_point);
    CHECK_THROWS_AS(wdvv::trig_an_tensor(p, {cplx(0.5)}), precondition_error);
}

// ---------------------------------------------------------------------------
// trigonometric BC_{n-1}
// ---------------------------------------------------------------------------

TEST_CASE("trigonometric BC structural entries and worked metric") {
    // parameters produced by the worked B_n correspondence instance
    wdvv::trig_bcn_params p({cplx(1.0)}, cplx(-2.0 / 9.0), cplx(-16.0 / 9.0),
                            cplx(2.0 / 9.0));
    CHECK(aerr(p.h, cplx(-8.0 / 9.0)) < 1e-14);
    CHECK(aerr(p.lambda * p.lambda, cplx(128.0 / 9.0)) < 1e-13);

    auto m = wdvv::trig_bcn_metric(p);
    CHECK(aerr(m.eta(0, 0), 2.0) == 0.0);
    CHECK(aerr(m.eta(1, 1), cplx(-16.0 / 9.0)) < 1e-14);
    CHECK(aerr(m.det, cplx(-32.0 / 9.0)) < 1e-13);

    wdvv::trig_bcn_params p2({cplx(1.0), cplx(2.0)}, cplx(1.0), cplx(1.0),
                             cplx(1.0));
    cvec xi = {cplx(0.3, -0.2), cplx(0.8, 0.4), cplx(-0.4, 0.9)};
    wdvv::ctensor3 t = wdvv::trig_bcn_tensor(p2, xi);
    CHECK(t(0, 0, 0) == cplx(2.0));
    CHECK(aerr(t(0, 1, 1), 2.0 * p2.h * p2.m[0]) < 1e-13);
    CHECK(aerr(t(0, 2, 2), 2.0 * p2.h * p2.m[1]) < 1e-13);
    CHECK(t(0, 0, 1) == cplx(0.0));
    CHECK(t(0, 0, 2) == cplx(0.0));
    CHECK(t(0, 1, 2) == cplx(0.0));
    CHECK(t.symmetry_defect() == 0.0);

    // the metric is the xi_0 slice of the tensor
    auto m2 = wdvv::trig_bcn_metric(p2);
    CHECK((t.slice(0) - m2.eta).max_abs() < 1e-13);
}

TEST_CASE("trigonometric BC WDVV residual vanishes for valid parameters") {
    wdvv::trig_bcn_params p({cplx(1.0), cplx(2.0)}, cplx(1.0), cplx(1.0),
                            cplx(1.0));
    auto k = wdvv::trig_bcn_metric(p).eta_inv;
    wdvv::sampler s(wdvv::substream_seed(11, 5));
    auto ok = admits([&](const cvec& w) { wdvv::trig_bcn_check_point(p, w); });
    for (int t = 0; t < 5; ++t) {
        cvec xi = wdvv::draw_admissible(s, 3, ok);
        CHECK(wdvv::wdvv_residual(wdvv::trig_bcn_tensor(p, xi), k) < 1e-11);
    }
}

TEST_CASE("trigonometric BC guards") {
    using wdvv::precondition_error;
    using wdvv::singular_point;

    CHECK_THROWS_AS(wdvv::trig_bcn_params({}, 1.0, 1.0, 1.0),
                    precondition_error);
    CHECK_THROWS_AS(wdvv::trig_bcn_params({cplx(1.0)}, 0.0, 1.0, 1.0),
                    precondition_error); // q = 0
    CHECK_THROWS_AS(wdvv::trig_bcn_params({cplx(1.0)}, 1.0, 4.0, -1.0),
                    precondition_error); // h = 0
    CHECK_THROWS_AS(wdvv::trig_bcn_params({cplx(1.0)}, 1.0, 2.0, 0.0),
                    precondition_error); // lambda denominator = 0

    wdvv::trig_bcn_params p({cplx(1.0), cplx(2.0)}, cplx(1.0), cplx(1.0),
                            cplx(1.0));
    CHECK_THROWS_AS(
        wdvv::trig_bcn_tensor(p, {cplx(0.2), cplx(pi), cplx(0.4, 0.8)}),
        singular_point);
    CHECK_THROWS_AS(wdvv::trig_bcn_tensor(
                        p, {cplx(0.2), cplx(0.4, 0.8), cplx(0.4, 0.8)}),
                    singular_point); // xi_1 - xi_2 on the pole lattice
    CHECK_THROWS_AS(wdvv::trig_bcn_tensor(p, {cplx(0.2), cplx(0.4, 0.8)}),
                    precondition_error);
}

// ---------------------------------------------------------------------------
// finite-difference oracle across all four families
// ---------------------------------------------------------------------------

TEST_CASE("tensors differentiate their prepotentials (independent oracle)") {
    wdvv::sampler s(wdvv::substream_seed(11, 6));

    SECTION("rational A_n") {
        wdvv::rational_an_params p({cplx(1.0), cplx(0.5, 0.5)});
        oracle::lvec a = oracle::widen(p.a);
        auto Fref = [&](const oracle::lvec& X) {
            return oracle::F_rational_an(a, X);
        };
        for (int t = 0; t < 10; ++t) {
            cvec x = wdvv::draw_admissible(s, 2, all_cut_safe_an);
            CHECK(fd_tensor_dev(Fref, wdvv::an_rat_tensor(p, x), x) < 1e-6);
        }
    }

    SECTION("rational B_n") {
        wdvv::rational_bn_params p({cplx(0.5), cplx(1.0), cplx(-0.7, 0.2)});
        oracle::lvec b = oracle::widen(p.b);
        auto Fref = [&](const oracle::lvec& X) {
            return oracle::F_rational_bn(b, X);
        };
        for (int t = 0; t < 10; ++t) {
            cvec x = wdvv::draw_admissible(s, 2, all_cut_safe_bn);
            CHECK(fd_tensor_dev(Fref, wdvv::bn_rat_tensor(p, x), x) < 1e-6);
        }
    }

    SECTION("trigonometric A_n") {
        wdvv::trig_an_params p({cplx(1.0), cplx(0.6, 0.3)}, cplx(0.4, -0.2),
                               cplx(0.7, 0.1), cplx(-0.5, 0.4));
        oracle::lvec m = oracle::widen(p.m);
        auto Fref = [&](const oracle::lvec& U) {
            return oracle::F_trig_an(m, oracle::lc(p.a), oracle::lc(p.b),
                                     oracle::lc(p.c), U);
        };
        for (int t = 0; t < 10; ++t) {
            cvec u = wdvv::draw_admissible(s, 2, fold_safe_trig_an);
            CHECK(fd_tensor_dev(Fref, wdvv::trig_an_tensor(p, u), u) < 1e-6);
        }
    }

    SECTION("trigonometric BC") {
        wdvv::trig_bcn_params p({cplx(1.0), cplx(2.0)}, cplx(1.0), cplx(1.0),
                                cplx(1.0));
        oracle::lvec m = oracle::widen(p.m);
        auto Fref = [&](const oracle::lvec& XI) {
            return oracle::F_trig_bcn(m, oracle::lc(p.q), oracle::lc(p.r),
                                      oracle::lc(p.s), oracle::lc(p.h),
                                      oracle::lc(p.lambda), XI);
        };
        for (int t = 0; t < 10; ++t) {
            cvec xi = wdvv::draw_admissible(s, 3, fold_safe_trig_bcn);
            CHECK(fd_tensor_dev(Fref, wdvv::trig_bcn_tensor(p, xi), xi) < 1e-6);
        }
    }
}
