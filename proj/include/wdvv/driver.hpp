#ifndef WDVV_DRIVER_HPP
#define WDVV_DRIVER_HPP

// Batch driver: a JSON run configuration selects a command, a family, and
// sampling parameters; run() draws admissible points from deterministic
// per-sample substreams, evaluates the command's residual at each, and
// assembles a JSON report.
//
// Config schema (complex numbers are [re, im] pairs; a bare number is read as
// a real):
//   command    one of check-wdvv | metric-check | legendre-check |
//              equivalence-check | special-case-check
//   family     {"tag": ..., parameters}; tags and parameters:
//                rational-an  a: [complex, ...]
//                rational-bn  b: [complex, ...]   (b[0] is the free weight b_0)
//                trig-an      m: [...], a, b, c
//                trig-bcn     m: [...], q, r, s
//                an-to-trig   a: [...]            (equivalence-check only)
//                bn-to-bcn    b: [...]            (equivalence-check only)
//   gamma      1-based coordinate index (legendre-check, equivalence-check)
//   R          complex scale (bn-to-bcn only; optional, default 1)
//   samples    positive integer, default 20
//   seed       64-bit unsigned, default 42
//   tolerance  positive real, default 1e-8
//
// Report: config echo, per-sample {point, residual}, max_residual, pass,
// pairing_note (bn-to-bcn only), timing_ms. Everything except timing_ms is
// bit-reproducible for identical (config, seed) on one platform.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "equivalence.hpp"
#include "families.hpp"
#include "legendre.hpp"
#include "linalg.hpp"
#include "sampling.hpp"
#include "specfn.hpp"

namespace wdvv {

using json = nlohmann::ordered_json;

enum class command_kind {
    check_wdvv,
    metric_check,
    legendre_check,
    equivalence_check,
    special_case_check,
};

inline const char* command_name(command_kind c) {
    switch (c) {
        case command_kind::check_wdvv: return "check-wdvv";
        case command_kind::metric_check: return "metric-check";
        case command_kind::legendre_check: return "legendre-check";
        case command_kind::equivalence_check: return "equivalence-check";
        case command_kind::special_case_check: return "special-case-check";
    }
    return "?";
}

inline command_kind command_from_name(const std::string& s) {
    if (s == "check-wdvv") return command_kind::check_wdvv;
    if (s == "metric-check") return command_kind::metric_check;
    if (s == "legendre-check") return command_kind::legendre_check;
    if (s == "equivalence-check") return command_kind::equivalence_check;
    if (s == "special-case-check") return command_kind::special_case_check;
    throw config_error("unknown command '" + s + "'");
}

struct run_config {
    command_kind command;
    std::string family_tag;
    std::variant<rational_an_params, rational_bn_params, trig_an_params, trig_bcn_params>
        params;
    std::optional<std::size_t> gamma; // 0-based internally; 1-based in JSON
    std::optional<cplx> scale_r;      // the free scale R (bn-to-bcn)
    std::size_t samples = 20;
    std::uint64_t seed = 42;
    double tolerance = 1e-8;
};

// --- JSON helpers -----------------------------------------------------------

namespace detail {

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json cvec_to_json(const cvec& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(complex_to_json(z));
    return a;
}

inline cplx parse_complex(const json& j, const std::string& what) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw config_error(what + ": expected a number or an [re, im] pair");
}

inline cvec parse_cvec(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty())
        throw config_error(what + ": expected a non-empty array");
    cvec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_complex(j[i], what + "[" + std::to_string(i) + "]"));
    return v;
}

inline const json& require_field(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw config_error(ctx + ": missing field '" + key + "'");
    return *it;
}

} // namespace detail

/// Parse and validate a run configuration. cli_command, when non-empty, is the
/// command selected on the command line; it must agree with any "command"
/// field in the JSON. All validation failures throw config_error.
inline run_config parse_config(const json& j, const std::string& cli_command = "") {
    if (!j.is_object()) throw config_error("config: expected a JSON object");

    std::string cmd_name = cli_command;
    if (auto it = j.find("command"); it != j.end()) {
        if (!it->is_string()) throw config_error("config: 'command' must be a string");
        std::string in_file = it->get<std::string>();
        if (!cmd_name.empty() && in_file != cmd_name)
            throw config_error("config: command '" + in_file +
                               "' disagrees with the requested command '" + cmd_name + "'");
        cmd_name = in_file;
    }
    if (cmd_name.empty())
        throw config_error("config: no command given (field 'command' or CLI subcommand)");
    command_kind cmd = command_from_name(cmd_name);

    const json& fam = detail::require_field(j, "family", "config");
    if (!fam.is_object()) throw config_error("config: 'family' must be an object");
    std::string tag = detail::require_field(fam, "tag", "config.family").get<std::string>();

    // family/command compatibility
    auto mismatch = [&]() {
        throw config_error("config: family '" + tag + "' is not valid for command '" +
                           cmd_name + "'");
    };
    bool is_equiv_tag = (tag == "an-to-trig" || tag == "bn-to-bcn");
    if (cmd == command_kind::equivalence_check) {
        if (!is_equiv_tag) mismatch();
    } else if (is_equiv_tag) {
        mismatch();
    }
    if (cmd == command_kind::legendre_check && tag != "rational-an" && tag != "rational-bn")
        mismatch();
    if (cmd == command_kind::special_case_check && tag != "trig-an") mismatch();

    run_config cfg{cmd,
                   tag,
                   rational_an_params(cvec{cplx(1.0)}), // placeholder, replaced below
                   std::nullopt,
                   std::nullopt,
                   20,
                   42,
                   1e-8};

    try {
        if (tag == "rational-an" || tag == "an-to-trig") {
            cfg.params = rational_an_params(
                detail::parse_cvec(detail::require_field(fam, "a", "config.family"),
                                   "config.family.a"));
        } else if (tag == "rational-bn" || tag == "bn-to-bcn") {
            cfg.params = rational_bn_params(
                detail::parse_cvec(detail::require_field(fam, "b", "config.family"),
                                   "config.family.b"));
        } else if (tag == "trig-an") {
            cfg.params = trig_an_params(
                detail::parse_cvec(detail::require_field(fam, "m", "config.family"),
                                   "config.family.m"),
                detail::parse_complex(detail::require_field(fam, "a", "config.family"),
                                      "config.family.a"),
                detail::parse_complex(detail::require_field(fam, "b", "config.family"),
                                      "config.family.b"),
                detail::parse_complex(detail::require_field(fam, "c", "config.family"),
                                      "config.family.c"));
        } else if (tag == "trig-bcn") {
            cfg.params = trig_bcn_params(
                detail::parse_cvec(detail::require_field(fam, "m", "config.family"),
                                   "config.family.m"),
                detail::parse_complex(detail::require_field(fam, "q", "config.family"),
                                      "config.family.q"),
                detail::parse_complex(detail::require_field(fam, "r", "config.family"),
                                      "config.family.r"),
                detail::parse_complex(detail::require_field(fam, "s", "config.family"),
                                      "config.family.s"));
        } else {
            throw config_error("config: unknown family tag '" + tag + "'");
        }
    } catch (const config_error&) {
        throw;
    } catch (const error& e) {
        throw config_error(std::string("config: invalid family parameters: ") + e.what());
    }

    std::size_t dim = std::visit([](const auto& p) { return p.dim(); }, cfg.params);

    bool needs_gamma =
        (cmd == command_kind::legendre_check || cmd == command_kind::equivalence_check);
    if (auto it = j.find("gamma"); it != j.end()) {
        if (!it->is_number_integer() || it->get<long long>() < 1)
            throw config_error("config: 'gamma' must be a positive (1-based) integer");
        std::size_t g = it->get<std::size_t>();
        if (g > dim)
            throw config_error("config: gamma = " + std::to_string(g) +
                               " out of range for dimension " + std::to_string(dim));
        cfg.gamma = g - 1;
    }
    if (needs_gamma && !cfg.gamma)
        throw config_error("config: command '" + cmd_name + "' requires 'gamma'");

    if (auto it = j.find("R"); it != j.end())
        cfg.scale_r = detail::parse_complex(*it, "config.R");
    if (tag == "bn-to-bcn" && !cfg.scale_r)
        cfg.scale_r = cplx(1.0);  // free scale; any nonzero value works, 1 is the default

    if (auto it = j.find("samples"); it != j.end()) {
        if (!it->is_number_integer() || it->get<long long>() < 1)
            throw config_error("config: 'samples' must be a positive integer");
        cfg.samples = it->get<std::size_t>();
    }
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_integer() && !it->is_number_unsigned())
            throw config_error("config: 'seed' must be an integer");
        cfg.seed = it->get<std::uint64_t>();
    }
    if (auto it = j.find("tolerance"); it != j.end()) {
        if (!it->is_number() || it->get<double>() <= 0.0)
            throw config_error("config: 'tolerance' must be a positive number");
        cfg.tolerance = it->get<double>();
    }
    return cfg;
}

/// Normalized echo of an accepted configuration (canonical [re, im] pairs,
/// defaults made explicit, 1-based gamma).
inline json config_echo(const run_config& cfg) {
    json fam;
    fam["tag"] = cfg.family_tag;
    std::visit(
        [&fam](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, rational_an_params>) {
                fam["a"] = detail::cvec_to_json(p.a);
            } else if constexpr (std::is_same_v<T, rational_bn_params>) {
                fam["b"] = detail::cvec_to_json(p.b);
            } else if constexpr (std::is_same_v<T, trig_an_params>) {
                fam["m"] = detail::cvec_to_json(p.m);
                fam["a"] = detail::complex_to_json(p.a);
                fam["b"] = detail::complex_to_json(p.b);
                fam["c"] = detail::complex_to_json(p.c);
            } else {
                fam["m"] = detail::cvec_to_json(p.m);
                fam["q"] = detail::complex_to_json(p.q);
                fam["r"] = detail::complex_to_json(p.r);
                fam["s"] = detail::complex_to_json(p.s);
            }
        },
        cfg.params);
    json e;
    e["command"] = command_name(cfg.command);
    e["family"] = std::move(fam);
    if (cfg.gamma) e["gamma"] = *cfg.gamma + 1;
    if (cfg.scale_r) e["R"] = detail::complex_to_json(*cfg.scale_r);
    e["samples"] = cfg.samples;
    e["seed"] = cfg.seed;
    e["tolerance"] = cfg.tolerance;
    return e;
}

// --- residual evaluation ----------------------------------------------------

namespace detail {

struct sample_row {
    cvec point;
    double residual = 0.0;
    int pairing = -1; // -1 n/a, 0 principal, 1 flipped
};

constexpr double sample_margin = 0.1; // admissibility margin on separations / pole distances

struct run_state {
    std::size_t draw_dim;
    std::function<bool(const cvec&)> admissible;
    std::function<sample_row(const cvec&)> eval;
};

/// Contraction residual || sum_k q_k F_k - eta ||_max / ||eta||_max.
inline double contraction_residual(const ctensor3& t, const cvec& q, const cmatrix& eta) {
    const std::size_t n = eta.dim();
    cmatrix s(n);
    for (std::size_t k = 0; k < n; ++k) {
        cmatrix sl = t.slice(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s(i, j) += q[k] * sl(i, j);
    }
    return (s - eta).max_abs() / eta.max_abs();
}

inline double roundtrip_residual(const cvec& x, const cvec& back) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num = std::max(num, std::abs(back[i] - x[i]));
        den = std::max(den, std::abs(x[i]));
    }
    return den == 0.0 ? num : num / den;
}

inline run_state make_run_state(const run_config& cfg) {
    run_state st;
    st.draw_dim = std::visit([](const auto& p) { return p.dim(); }, cfg.params);

    // admissibility predicates keep every draw a comfortable margin away from
    // the family's singular locus (and, for hat-space draws, from the pole
    // lattice of the transformed tensor, which coincides with the singular
    // locus of the mapped image)
    if (cfg.family_tag == "rational-an") {
        st.admissible = [](const cvec& x) {
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = i + 1; j < x.size(); ++j)
                    if (std::abs(x[i] - x[j]) < sample_margin) return false;
            return true;
        };
    } else if (cfg.family_tag == "rational-bn") {
        st.admissible = [](const cvec& x) {
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = i + 1; j < x.size(); ++j)
                    if (std::abs(x[i] - x[j]) < sample_margin ||
                        std::abs(x[i] + x[j]) < sample_margin)
                        return false;
            return true;
        };
    } else if (cfg.family_tag == "trig-an") {
        st.admissible = [](const cvec& u) {
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = i + 1; j < u.size(); ++j)
                    if (coth_pole_distance(u[i] - u[j]) < sample_margin) return false;
            return true;
        };
    } else if (cfg.family_tag == "trig-bcn") {
        st.admissible = [](const cvec& xi) {
            for (std::size_t i = 1; i < xi.size(); ++i) {
                if (cot_pole_distance(xi[i]) < sample_margin ||
                    cot_pole_distance(2.0 * xi[i]) < sample_margin)
                    return false;
                for (std::size_t j = i + 1; j < xi.size(); ++j)
                    if (cot_pole_distance(xi[i] + xi[j]) < sample_margin ||
                        cot_pole_distance(xi[i] - xi[j]) < sample_margin)
                        return false;
            }
            return true;
        };
    } else if (cfg.family_tag == "an-to-trig") {
        const auto& p = std::get<rational_an_params>(cfg.params);
        const std::size_t g = *cfg.gamma;
        const cplx s = (p.total + 1.0) / (2.0 * p.a[g]);
        st.admissible = [g, s](const cvec& xh) {
            for (std::size_t i = 0; i < xh.size(); ++i) {
                if (i == g) continue;
                if (coth_pole_distance(s * xh[i]) < sample_margin) return false;
                for (std::size_t j = i + 1; j < xh.size(); ++j) {
                    if (j == g) continue;
                    if (coth_pole_distance(s * (xh[i] - xh[j])) < sample_margin)
                        return false;
                }
            }
            return true;
        };
    } else { // bn-to-bcn
        const auto& p = std::get<rational_bn_params>(cfg.params);
        const std::size_t g = *cfg.gamma;
        const cplx t = -p.total / p.w(g);
        st.admissible = [g, t](const cvec& xh) {
            for (std::size_t i = 0; i < xh.size(); ++i) {
                if (i == g) continue;
                if (coth_pole_distance(t * xh[i]) < sample_margin ||
                    coth_pole_distance(2.0 * t * xh[i]) < sample_margin)
                    return false;
                for (std::size_t j = i + 1; j < xh.size(); ++j) {
                    if (j == g) continue;
                    if (coth_pole_distance(t * (xh[i] + xh[j])) < sample_margin ||
                        coth_pole_distance(t * (xh[i] - xh[j])) < sample_margin)
                        return false;
                }
            }
            return true;
        };
    }

    switch (cfg.command) {
        case command_kind::check_wdvv: {
            std::visit(
                [&st](const auto& p) {
                    using T = std::decay_t<decltype(p)>;
                    cmatrix k = [&p] {
                        if constexpr (std::is_same_v<T, rational_an_params>)
                            return an_rat_metric(p).eta_inv;
                        else if constexpr (std::is_same_v<T, rational_bn_params>)
                            return bn_rat_metric(p).eta_inv;
                        else if constexpr (std::is_same_v<T, trig_an_params>)
                            return trig_an_metric(p).eta_inv;
                        else
                            return trig_bcn_metric(p).eta_inv;
                    }();
                    st.eval = [p, k](const cvec& x) {
                        ctensor3 t = [&] {
                            if constexpr (std::is_same_v<T, rational_an_params>)
                                return an_rat_tensor(p, x);
                            else if constexpr (std::is_same_v<T, rational_bn_params>)
                                return bn_rat_tensor(p, x);
                            else if constexpr (std::is_same_v<T, trig_an_params>)
                                return trig_an_tensor(p, x);
                            else
                                return trig_bcn_tensor(p, x);
                        }();
                        return sample_row{x, wdvv_residual(t, k)};
                    };
                },
                cfg.params);
            break;
        }
        case command_kind::metric_check: {
            std::visit(
                [&st](const auto& p) {
                    using T = std::decay_t<decltype(p)>;
                    metric_pair mp = [&p] {
                        if constexpr (std::is_same_v<T, rational_an_params>)
                            return an_rat_metric(p);
                        else if constexpr (std::is_same_v<T, rational_bn_params>)
                            return bn_rat_metric(p);
                        else if constexpr (std::is_same_v<T, trig_an_params>)
                            return trig_an_metric(p);
                        else
                            return trig_bcn_metric(p);
                    }();
                    st.eval = [p, mp](const cvec& x) {
                        double r =
                            (mp.eta * mp.eta_inv - cmatrix::identity(mp.eta.dim())).max_abs();
                        if constexpr (std::is_same_v<T, rational_an_params>) {
                            r = std::max(r, contraction_residual(an_rat_tensor(p, x), x,
                                                                 mp.eta));
                        } else if constexpr (std::is_same_v<T, rational_bn_params>) {
                            r = std::max(r, contraction_residual(bn_rat_tensor(p, x), x,
                                                                 mp.eta));
                        } else if constexpr (std::is_same_v<T, trig_an_params>) {
                            cvec ones(p.dim(), cplx(1.0));
                            r = std::max(r, contraction_residual(trig_an_tensor(p, x), ones,
                                                                 mp.eta));
                            cplx lu = invert(mp.eta).det;
                            r = std::max(r, std::abs(lu - mp.det) / std::abs(mp.det));
                        } else {
                            ctensor3 t = trig_bcn_tensor(p, x);
                            r = std::max(r,
                                         (t.slice(0) - mp.eta).max_abs() / mp.eta.max_abs());
                        }
                        return sample_row{x, r};
                    };
                },
                cfg.params);
            break;
        }
        case command_kind::legendre_check: {
            legendre_context ctx =
                std::holds_alternative<rational_an_params>(cfg.params)
                    ? legendre_context(std::get<rational_an_params>(cfg.params), *cfg.gamma)
                    : legendre_context(std::get<rational_bn_params>(cfg.params), *cfg.gamma);
            // round trip in the canonical direction: x-hat lands on the
            // principal image, where inverse_coords returns a genuine
            // preimage; the forward map then reproduces x-hat exactly (the
            // left inverse on x is ill-posed for complex weights, where
            // distinct points can share one principal x-hat)
            st.eval = [ctx](const cvec& x) {
                double r = legendre_consistency(ctx, x);
                cvec xh = ctx.hat_coords(x);
                cvec back = ctx.hat_coords(ctx.inverse_coords(xh));
                return sample_row{x, std::max(r, roundtrip_residual(xh, back))};
            };
            break;
        }
        case command_kind::equivalence_check: {
            if (cfg.family_tag == "an-to-trig") {
                an_equivalence e =
                    an_rat_to_trig(std::get<rational_an_params>(cfg.params), *cfg.gamma);
                st.eval = [e](const cvec& xh) {
                    return sample_row{xh, verify_an_equivalence(e, xh)};
                };
            } else {
                bn_equivalence e = bn_to_bcn(std::get<rational_bn_params>(cfg.params),
                                             *cfg.gamma, *cfg.scale_r);
                // the inverse map must reproduce the source before any sampling
                bcn_inverse_result inv = bcn_to_bn(e.target, *cfg.gamma);
                for (std::size_t i = 0; i < e.source.b.size(); ++i)
                    if (std::abs(inv.params.b[i] - e.source.b[i]) >
                        1e-12 * std::max(1.0, std::abs(e.source.b[i])))
                        throw degenerate_equivalence(
                            "equivalence-check: parameter round trip failed");
                double tol = cfg.tolerance;
                st.eval = [e, tol](const cvec& xh) {
                    pairing_result pr = verify_bn_equivalence(e, xh, tol);
                    return sample_row{xh, pr.residual, pr.flipped ? 1 : 0};
                };
            }
            break;
        }
        case command_kind::special_case_check: {
            const auto& p = std::get<trig_an_params>(cfg.params);
            if (std::abs(p.b * p.weight_sum + p.c) > 1e-12)
                throw config_error(
                    "special-case-check: requires bM + c = 0 (got a regular metric; "
                    "use metric-check / check-wdvv instead)");
            bool with_h =
                std::abs(p.b) > 1e-12 &&
                std::abs(p.a * p.weight_sum + 2.0 * p.b) > 1e-12;
            if (with_h) {
                // keep kappa well away from zero so the h-combination is defined
                auto base = st.admissible;
                cplx b = p.b;
                cvec m = p.m;
                st.admissible = [base, b, m](const cvec& u) {
                    if (!base(u)) return false;
                    cplx esum = 0.0;
                    for (std::size_t k = 0; k < u.size(); ++k)
                        esum += m[k] * std::exp(2.0 * b * u[k]);
                    return std::abs(esum) > 1e-3;
                };
            }
            st.eval = [p, with_h](const cvec& u) {
                double r = trig_an_q_asymmetry(p, u);
                if (with_h) r = std::max(r, trig_an_h_combination(p, u));
                return sample_row{u, r};
            };
            break;
        }
    }
    return st;
}

} // namespace detail

/// Execute a validated configuration: seeded sampling, concurrent residual
/// evaluation, single-threaded report assembly. Deterministic (up to
/// timing_ms) for identical (config, seed).
inline json run(const run_config& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    detail::run_state st = detail::make_run_state(cfg);

    std::vector<detail::sample_row> rows(cfg.samples);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        while (true) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= cfg.samples) return;
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error) return;
            }
            try {
                sampler s(substream_seed(cfg.seed, idx));
                bool done = false;
                for (int attempt = 0; attempt < 100 && !done; ++attempt) {
                    cvec pt = s.draw_vec(st.draw_dim);
                    if (!st.admissible(pt)) continue;
                    try {
                        rows[idx] = st.eval(pt);
                        done = true;
                    } catch (const singular_point&) {
                        // evaluation hit a guard the predicate missed; resample
                    }
                }
                if (!done)
                    throw singular_point("run: sample " + std::to_string(idx) +
                                         ": no admissible point within 100 attempts");
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    unsigned nthreads = std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = std::min<unsigned>(std::min<std::size_t>(nthreads, cfg.samples), 8);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    double max_residual = 0.0;
    bool any_flipped = false, all_flipped = true, has_pairing = false;
    json sample_array = json::array();
    for (const auto& row : rows) {
        max_residual = std::max(max_residual, row.residual);
        json r;
        r["point"] = detail::cvec_to_json(row.point);
        r["residual"] = row.residual;
        if (row.pairing >= 0) {
            has_pairing = true;
            r["pairing"] = row.pairing ? "flipped" : "principal";
            any_flipped |= (row.pairing == 1);
            all_flipped &= (row.pairing == 1);
        }
        sample_array.push_back(std::move(r));
    }
    auto t1 = std::chrono::steady_clock::now();

    json report;
    report["config"] = config_echo(cfg);
    report["samples"] = std::move(sample_array);
    report["max_residual"] = max_residual;
    report["pass"] = max_residual < cfg.tolerance;
    if (has_pairing)
        report["pairing_note"] =
            !any_flipped ? "principal" : (all_flipped ? "flipped" : "mixed");
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

} // namespace wdvv

#endif
