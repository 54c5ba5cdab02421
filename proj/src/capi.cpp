// SPDX-License-Identifier: Apache-2.0
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <string_view>
#include <vector>

#include "relaylab/analysis.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/mc.hpp"
#include "relaylab/optimum.hpp"
#include "relaylab/relaylab.h"

struct rl_params {
    relaylab::SystemParams p;
};

struct rl_theta_scan {
    relaylab::optimum::ThetaScan scan;
};

namespace {

using relaylab::Scheme;
using relaylab::SystemParams;

thread_local std::string g_last_error;

rl_status fail(rl_status s, const char* msg) {
    g_last_error = msg;
    return s;
}

// Runs body, mapping exceptions to status codes. On ConvergenceError the
// partial value goes to *partial when given.
template <class F>
rl_status guarded(F&& body, double* partial = nullptr) {
    try {
        g_last_error.clear();
        body();
        return RL_OK;
    } catch (const relaylab::DegenerateParams& e) {
        return fail(RL_DEGENERATE_PARAMS, e.what());
    } catch (const relaylab::SchemeUnsupported& e) {
        return fail(RL_SCHEME_UNSUPPORTED, e.what());
    } catch (const relaylab::DomainError& e) {
        return fail(RL_DOMAIN, e.what());
    } catch (const relaylab::BracketFailure& e) {
        return fail(RL_BRACKET, e.what());
    } catch (const relaylab::ConvergenceError& e) {
        if (partial) *partial = e.partial_value();
        return fail(RL_CONVERGENCE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RL_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RL_INTERNAL, e.what());
    } catch (...) {
        return fail(RL_INTERNAL, "unknown error");
    }
}

bool to_scheme(rl_scheme s, Scheme& out) {
    switch (s) {
        case RL_SCHEME_NL: out = Scheme::NoiseLimited; return true;
        case RL_SCHEME_MRC: out = Scheme::MrcMrt; return true;
        case RL_SCHEME_ZF: out = Scheme::ZfMrt; return true;
        case RL_SCHEME_MMSE: out = Scheme::MmseMrt; return true;
    }
    return false;
}

rl_scheme from_scheme(Scheme s) {
    switch (s) {
        case Scheme::NoiseLimited: return RL_SCHEME_NL;
        case Scheme::MrcMrt: return RL_SCHEME_MRC;
        case Scheme::ZfMrt: return RL_SCHEME_ZF;
        case Scheme::MmseMrt: return RL_SCHEME_MMSE;
    }
    return RL_SCHEME_NL;
}

double* field(SystemParams& p, rl_param id) {
    switch (id) {
        case RL_PARAM_ETA: return &p.eta;
        case RL_PARAM_THETA: return &p.theta;
        case RL_PARAM_RHO1: return &p.rho1;
        case RL_PARAM_RHO_I: return &p.rho_i;
        case RL_PARAM_D1: return &p.d1;
        case RL_PARAM_D2: return &p.d2;
        case RL_PARAM_D_I: return &p.d_i;
        case RL_PARAM_TAU: return &p.tau;
        case RL_PARAM_GAMMA_TH: return &p.gamma_th;
        default: return nullptr;
    }
}

relaylab::mc::McConfig to_config(const rl_mc_config* cfg) {
    relaylab::mc::McConfig c;
    if (cfg) {
        c.workers = cfg->workers;
        if (cfg->chunk > 0) c.chunk = cfg->chunk;
    }
    return c;
}

rl_mc_estimate to_estimate(const relaylab::mc::McEstimate& e) {
    return {e.mean, e.std_error, e.n_samples, e.seed, from_scheme(e.scheme)};
}

#define RL_REQUIRE_HANDLE(h) \
    if (!(h)) return fail(RL_NULL_HANDLE, "null handle")
#define RL_REQUIRE_OUT(o) \
    if (!(o)) return fail(RL_INVALID_ARGUMENT, "null output pointer")
#define RL_REQUIRE_SCHEME(in, out) \
    Scheme out;                    \
    if (!to_scheme(in, out)) return fail(RL_INVALID_ARGUMENT, "unknown scheme")

}  // namespace

extern "C" {

const char* rl_last_error(void) { return g_last_error.c_str(); }

const char* rl_status_name(rl_status s) {
    switch (s) {
        case RL_OK: return "ok";
        case RL_INVALID_ARGUMENT: return "invalid argument";
        case RL_DEGENERATE_PARAMS: return "degenerate parameters";
        case RL_SCHEME_UNSUPPORTED: return "scheme unsupported";
        case RL_DOMAIN: return "domain error";
        case RL_CONVERGENCE: return "convergence failure";
        case RL_BRACKET: return "bracket failure";
        case RL_NULL_HANDLE: return "null handle";
        case RL_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* rl_scheme_name(rl_scheme s) {
    Scheme sc;
    if (!to_scheme(s, sc)) return "";
    return relaylab::scheme_name(sc).data();
}

rl_status rl_scheme_parse(const char* name, rl_scheme* out) {
    RL_REQUIRE_OUT(out);
    if (!name) return fail(RL_INVALID_ARGUMENT, "null scheme name");
    const auto s = relaylab::parse_scheme(name);
    if (!s) return fail(RL_INVALID_ARGUMENT, (std::string("unknown scheme: ") + name).c_str());
    *out = from_scheme(*s);
    g_last_error.clear();
    return RL_OK;
}

rl_status rl_params_create(rl_params** out) {
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = new rl_params{}; });
}

rl_status rl_params_clone(const rl_params* p, rl_params** out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = new rl_params{*p}; });
}

void rl_params_destroy(rl_params* p) { delete p; }

rl_status rl_params_set(rl_params* p, rl_param id, double value) {
    RL_REQUIRE_HANDLE(p);
    if (id == RL_PARAM_N_ANTENNAS) {
        if (!(value >= 1.0) || value != static_cast<double>(static_cast<int>(value)))
            return fail(RL_DOMAIN, "invalid parameter n_antennas: must be an integer >= 1");
        p->p.n_antennas = static_cast<int>(value);
        g_last_error.clear();
        return RL_OK;
    }
    double* f = field(p->p, id);
    if (!f) return fail(RL_INVALID_ARGUMENT, "unknown parameter id");
    *f = value;
    g_last_error.clear();
    return RL_OK;
}

rl_status rl_params_get(const rl_params* p, rl_param id, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    if (id == RL_PARAM_N_ANTENNAS) {
        *out = p->p.n_antennas;
        return RL_OK;
    }
    double* f = field(const_cast<SystemParams&>(p->p), id);
    if (!f) return fail(RL_INVALID_ARGUMENT, "unknown parameter id");
    *out = *f;
    return RL_OK;
}

rl_status rl_params_set_by_name(rl_params* p, const char* name, double value) {
    RL_REQUIRE_HANDLE(p);
    if (!name) return fail(RL_INVALID_ARGUMENT, "null parameter name");
    struct Entry {
        const char* name;
        rl_param id;
        bool db;
    };
    static const Entry table[] = {
        {"n", RL_PARAM_N_ANTENNAS, false},      {"n_antennas", RL_PARAM_N_ANTENNAS, false},
        {"eta", RL_PARAM_ETA, false},           {"theta", RL_PARAM_THETA, false},
        {"rho1", RL_PARAM_RHO1, false},         {"rho1_db", RL_PARAM_RHO1, true},
        {"rho_i", RL_PARAM_RHO_I, false},       {"rho_i_db", RL_PARAM_RHO_I, true},
        {"d1", RL_PARAM_D1, false},             {"d2", RL_PARAM_D2, false},
        {"d_i", RL_PARAM_D_I, false},           {"tau", RL_PARAM_TAU, false},
        {"gamma_th", RL_PARAM_GAMMA_TH, false}, {"gamma_th_db", RL_PARAM_GAMMA_TH, true},
    };
    for (const auto& e : table)
        if (std::strcmp(e.name, name) == 0)
            return rl_params_set(p, e.id, e.db ? relaylab::db_to_linear(value) : value);
    return fail(RL_INVALID_ARGUMENT, (std::string("unknown parameter: ") + name).c_str());
}

rl_status rl_params_validate(const rl_params* p) {
    RL_REQUIRE_HANDLE(p);
    return guarded([&] { relaylab::validate(p->p); });
}

rl_status rl_outage_exact_nl(const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = relaylab::analysis::outage_exact_nl(p->p); }, out);
}

rl_status rl_outage_lower_bound(rl_scheme s, const rl_params* p, rl_bound_factors* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded(
        [&] {
            const auto b = relaylab::analysis::outage_lower_bound(sc, p->p);
            *out = {b.f1, b.f2, b.probability};
        },
        &out->probability);
}

rl_status rl_outage_high_snr(rl_scheme s, const rl_params* p, rl_high_snr_form form, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    relaylab::analysis::HighSnrForm f;
    switch (form) {
        case RL_HSNR_STANDARD: f = relaylab::analysis::HighSnrForm::Standard; break;
        case RL_HSNR_ZF_TWO_TERM: f = relaylab::analysis::HighSnrForm::ZfTwoTerm; break;
        case RL_HSNR_NL_INCOMPLETE: f = relaylab::analysis::HighSnrForm::NlIncomplete; break;
        default: return fail(RL_INVALID_ARGUMENT, "unknown high-SNR form");
    }
    return guarded([&] { *out = relaylab::analysis::outage_high_snr(sc, p->p, f); }, out);
}

rl_status rl_outage_high_snr_mrc_single_antenna(const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = relaylab::analysis::outage_high_snr_mrc_single_antenna(p->p); }, out);
}

rl_status rl_capacity_upper_bound(rl_scheme s, const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded([&] { *out = relaylab::analysis::capacity_upper_bound(sc, p->p); }, out);
}

rl_status rl_capacity_terms_eval(rl_scheme s, const rl_params* p, rl_capacity_terms* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded(
        [&] {
            const auto t = relaylab::analysis::capacity_terms(sc, p->p);
            *out = {t.c_hop1, t.c_hop2, t.eln_hop1, t.eln_hop2, t.bound};
        },
        &out->bound);
}

rl_status rl_cdf_gamma_i1(rl_scheme s, double x, const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded([&] { *out = relaylab::analysis::cdf_gamma_i1(sc, x, p->p); }, out);
}

rl_status rl_cdf_gamma_i2(double x, const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = relaylab::analysis::cdf_gamma_i2(x, p->p); }, out);
}

rl_status rl_pdf_z(double x, const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = relaylab::analysis::pdf_z(x, p->p); }, out);
}

rl_status rl_array_gains(const rl_params* p, double* mrc, double* zf, double* mmse) {
    RL_REQUIRE_HANDLE(p);
    if (!mrc || !zf || !mmse) return fail(RL_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const auto g = relaylab::analysis::array_gain_terms(p->p);
        *mrc = g.mrc;
        *zf = g.zf;
        *mmse = g.mmse;
    });
}

rl_status rl_cci_effect_indicator(const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = relaylab::analysis::cci_effect_indicator(p->p); });
}

rl_status rl_mc_outage(rl_scheme s, const rl_params* p, int64_t n_samples, uint64_t seed,
                       const rl_mc_config* cfg, rl_mc_estimate* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded([&] {
        *out = to_estimate(relaylab::mc::estimate_outage(sc, p->p, n_samples, seed, to_config(cfg)));
    });
}

rl_status rl_mc_capacity(rl_scheme s, const rl_params* p, int64_t n_samples, uint64_t seed,
                         const rl_mc_config* cfg, rl_mc_estimate* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded([&] {
        *out = to_estimate(relaylab::mc::estimate_capacity(sc, p->p, n_samples, seed, to_config(cfg)));
    });
}

rl_status rl_mc_joint(size_t n_cases, const rl_scheme* schemes, const rl_params* const* params,
                      int64_t n_samples, uint64_t seed, const rl_mc_config* cfg, rl_mc_estimate* outage,
                      rl_mc_estimate* capacity) {
    if (n_cases == 0 || !schemes || !params) return fail(RL_INVALID_ARGUMENT, "empty case list");
    std::vector<relaylab::mc::McCase> cases(n_cases);
    for (size_t i = 0; i < n_cases; ++i) {
        RL_REQUIRE_HANDLE(params[i]);
        if (!to_scheme(schemes[i], cases[i].scheme)) return fail(RL_INVALID_ARGUMENT, "unknown scheme");
        cases[i].params = params[i]->p;
    }
    return guarded([&] {
        const auto r = relaylab::mc::estimate_joint(cases, n_samples, seed, to_config(cfg));
        for (size_t i = 0; i < n_cases; ++i) {
            if (outage) outage[i] = to_estimate(r.outage[i]);
            if (capacity) capacity[i] = to_estimate(r.capacity[i]);
        }
    });
}

rl_status rl_optimal_theta(rl_scheme s, const rl_params* p, rl_theta_solution* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded([&] {
        const auto r = relaylab::optimum::optimal_theta(sc, p->p);
        *out = {r.theta_star, r.residual, r.bracket};
    });
}

rl_status rl_theta_closed_form_mrc(const rl_params* p, double* out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    return guarded([&] { *out = relaylab::optimum::theta_closed_form_mrc(p->p); });
}

rl_status rl_theta_scan_run(rl_scheme s, const rl_params* p, int grid_points, int64_t samples_per_point,
                            uint64_t seed, const rl_mc_config* cfg, int capacity, rl_theta_scan** out) {
    RL_REQUIRE_HANDLE(p);
    RL_REQUIRE_OUT(out);
    RL_REQUIRE_SCHEME(s, sc);
    return guarded([&] {
        auto scan = capacity ? relaylab::optimum::mc_capacity_theta_scan(sc, p->p, grid_points,
                                                                        samples_per_point, seed, to_config(cfg))
                             : relaylab::optimum::mc_theta_scan(sc, p->p, grid_points, samples_per_point, seed,
                                                                to_config(cfg));
        *out = new rl_theta_scan{std::move(scan)};
    });
}

size_t rl_theta_scan_size(const rl_theta_scan* scan) { return scan ? scan->scan.theta.size() : 0; }

rl_status rl_theta_scan_point(const rl_theta_scan* scan, size_t i, double* theta, rl_mc_estimate* est) {
    RL_REQUIRE_HANDLE(scan);
    if (i >= scan->scan.theta.size()) return fail(RL_INVALID_ARGUMENT, "scan index out of range");
    if (theta) *theta = scan->scan.theta[i];
    if (est) *est = to_estimate(scan->scan.estimate[i]);
    return RL_OK;
}

rl_status rl_theta_scan_best(const rl_theta_scan* scan, double* theta) {
    RL_REQUIRE_HANDLE(scan);
    RL_REQUIRE_OUT(theta);
    *theta = scan->scan.best_theta;
    return RL_OK;
}

void rl_theta_scan_destroy(rl_theta_scan* scan) { delete scan; }

}  // extern "C"
