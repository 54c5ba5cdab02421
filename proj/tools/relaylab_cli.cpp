// SPDX-License-Identifier: Apache-2.0
// Sweep front-end over the relaylab C API.
#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaylab/relaylab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- settings: config file first, flags on top ------------------------------

const char* const kParamKeys[] = {"n",   "eta",   "theta",   "rho1",     "rho1_db",    "rho_i", "rho_i_db",
                                  "d1",  "d2",    "d_i",     "tau",      "gamma_th",   "gamma_th_db"};
const char* const kSweepable[] = {"rho1_db", "rho_i_db", "theta", "n_antennas", "d1", "d_i"};

struct Sweep {
    std::string param;
    std::vector<double> values;
};

struct Settings {
    std::vector<std::pair<std::string, double>> params;  // applied in order
    std::vector<std::string> schemes;
    std::vector<Sweep> sweeps;
    std::vector<std::string> outputs;
    std::int64_t mc_samples = 1000000;
    std::uint64_t seed = 1;
    int workers = 0;
    bool nudge = false;
    std::string out;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(field + ": not a number: '" + text + "'");
    }
}

std::vector<double> parse_values(const std::string& field, const std::string& text) {
    std::vector<double> out;
    const auto parts = split(text, ':');
    if (parts.size() == 3 && text.find(',') == std::string::npos) {
        const double start = parse_number(field, parts[0]);
        const double step = parse_number(field, parts[1]);
        const double stop = parse_number(field, parts[2]);
        if (!(step > 0.0) || stop < start) throw UsageError(field + ": range must be start:step:stop with step > 0");
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
    } else {
        for (const auto& v : split(text, ',')) out.push_back(parse_number(field, v));
    }
    if (out.empty()) throw UsageError(field + ": empty value list");
    return out;
}

Sweep make_sweep(const std::string& param, const std::string& values) {
    bool known = false;
    for (const char* k : kSweepable) known = known || param == k;
    if (!known) throw UsageError("sweep: unknown parameter '" + param + "'");
    return {param, parse_values("sweep " + param, values)};
}

bool is_param_key(const std::string& k) {
    for (const char* p : kParamKeys)
        if (k == p) return true;
    return false;
}

void load_config(const std::string& path, Settings& s) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (is_param_key(key)) {
            s.params.emplace_back(key, parse_number(key, value));
        } else if (key == "scheme") {
            s.schemes = split(value, ',');
        } else if (key == "sweep") {
            const auto parts = split(value, ' ');
            if (parts.size() != 2) throw UsageError("sweep: expected 'sweep = PARAM VALUES'");
            s.sweeps.push_back(make_sweep(parts[0], parts[1]));
        } else if (key == "outputs") {
            s.outputs = split(value, ',');
        } else if (key == "mc_samples") {
            s.mc_samples = static_cast<std::int64_t>(parse_number(key, value));
        } else if (key == "seed") {
            try {
                s.seed = std::stoull(value);
            } catch (const std::exception&) {
                throw UsageError("seed: not an unsigned integer: '" + value + "'");
            }
        } else if (key == "workers") {
            s.workers = static_cast<int>(parse_number(key, value));
        } else if (key == "nudge") {
            s.nudge = value == "1" || value == "true";
        } else if (key == "out") {
            s.out = value;
        } else {
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
}

// ---- C API helpers -------------------------------------------------------------

struct ParamsDeleter {
    void operator()(rl_params* p) const { rl_params_destroy(p); }
};
using Params = std::unique_ptr<rl_params, ParamsDeleter>;

Params new_params() {
    rl_params* p = nullptr;
    if (rl_params_create(&p) != RL_OK) throw std::runtime_error(rl_last_error());
    return Params(p);
}

Params clone(const rl_params* src) {
    rl_params* p = nullptr;
    if (rl_params_clone(src, &p) != RL_OK) throw std::runtime_error(rl_last_error());
    return Params(p);
}

double get(const rl_params* p, rl_param id) {
    double v = 0.0;
    rl_params_get(p, id, &v);
    return v;
}

void set_named(rl_params* p, const std::string& name, double value) {
    const std::string key = name == "n_antennas" ? "n" : name;
    const rl_status st = rl_params_set_by_name(p, key.c_str(), value);
    if (st != RL_OK) throw UsageError(name + ": " + rl_last_error());
}

bool equal_powers(const rl_params* p) {
    const double tau = get(p, RL_PARAM_TAU);
    return get(p, RL_PARAM_RHO1) / std::pow(get(p, RL_PARAM_D1), tau) ==
           get(p, RL_PARAM_RHO_I) / std::pow(get(p, RL_PARAM_D_I), tau);
}

void apply_nudge(rl_params* p, bool nudge) {
    if (nudge && equal_powers(p)) rl_params_set(p, RL_PARAM_RHO_I, get(p, RL_PARAM_RHO_I) * (1.0 + 1e-6));
}

// ---- CSV ---------------------------------------------------------------------

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(std::ostream& os) : os_(os) { os_ << "param,scheme,quantity,value,stderr\n"; }
    void row(const std::string& param, const std::string& scheme, const std::string& q, const std::string& value,
             const std::string& err = "") {
        os_ << param << ',' << scheme << ',' << q << ',' << value << ',' << err << '\n';
    }
    void row(const std::string& param, const std::string& scheme, const std::string& q, double value) {
        row(param, scheme, q, fmt(value));
    }
    void row(const std::string& param, const std::string& scheme, const std::string& q, double value, double err) {
        row(param, scheme, q, fmt(value), fmt(err));
    }

private:
    std::ostream& os_;
};

// Evaluates one analytic quantity; degenerate parameters abort the run.
std::string analytic(const std::string& what, rl_status st, double v) {
    if (st == RL_OK || st == RL_CONVERGENCE) {
        if (st == RL_CONVERGENCE) std::cerr << "warning: " << what << ": " << rl_last_error() << "\n";
        return fmt(v);
    }
    if (st == RL_DEGENERATE_PARAMS) throw DegenerateError(what + ": " + rl_last_error() + " (use --nudge)");
    if (st == RL_INVALID_ARGUMENT) throw UsageError(what + ": " + rl_last_error());
    std::cerr << "note: " << what << ": " << rl_last_error() << "\n";
    return "nan";
}

std::vector<rl_scheme> parse_schemes(const std::vector<std::string>& names) {
    std::vector<rl_scheme> out;
    for (const auto& n : names) {
        if (n == "all") {
            out = {RL_SCHEME_NL, RL_SCHEME_MRC, RL_SCHEME_ZF, RL_SCHEME_MMSE};
            continue;
        }
        rl_scheme s;
        if (rl_scheme_parse(n.c_str(), &s) != RL_OK) throw UsageError("scheme: unknown scheme '" + n + "'");
        out.push_back(s);
    }
    if (out.empty()) throw UsageError("scheme: no scheme given");
    return out;
}

const char* const kOutputs[] = {"outage_mc",   "outage_lb",   "outage_hsnr", "outage_exact",
                                "capacity_mc", "capacity_ub", "theta_opt"};

void check_outputs(const std::vector<std::string>& outs) {
    for (const auto& o : outs) {
        bool ok = false;
        for (const char* k : kOutputs) ok = ok || o == k;
        if (!ok) throw UsageError("outputs: unknown quantity '" + o + "'");
    }
}

// ---- sweeps ------------------------------------------------------------------

void eval_point(Csv& csv, const std::string& label, const rl_params* base, const std::vector<rl_scheme>& schemes,
                const std::vector<std::string>& outputs, const Settings& s) {
    auto wants = [&](const char* q) {
        for (const auto& o : outputs)
            if (o == q) return true;
        return false;
    };
    const rl_mc_config cfg{s.workers, 0};
    std::vector<rl_mc_estimate> mc_out(schemes.size()), mc_cap(schemes.size());
    const bool need_mc = wants("outage_mc") || wants("capacity_mc");
    std::vector<bool> mc_ok(schemes.size(), false);
    if (need_mc) {
        // Schemes share draws; a scheme the antenna count rules out is run alone and reported as nan.
        std::vector<rl_scheme> run;
        std::vector<const rl_params*> ps;
        std::vector<size_t> idx;
        for (size_t i = 0; i < schemes.size(); ++i) {
            if (schemes[i] == RL_SCHEME_ZF && get(base, RL_PARAM_N_ANTENNAS) < 2) continue;
            run.push_back(schemes[i]);
            ps.push_back(base);
            idx.push_back(i);
        }
        if (!run.empty()) {
            std::vector<rl_mc_estimate> o(run.size()), c(run.size());
            const rl_status st =
                rl_mc_joint(run.size(), run.data(), ps.data(), s.mc_samples, s.seed, &cfg, o.data(), c.data());
            if (st != RL_OK) throw UsageError(std::string("monte carlo: ") + rl_last_error());
            for (size_t k = 0; k < idx.size(); ++k) {
                mc_out[idx[k]] = o[k];
                mc_cap[idx[k]] = c[k];
                mc_ok[idx[k]] = true;
            }
        }
    }
    for (size_t i = 0; i < schemes.size(); ++i) {
        const rl_scheme sc = schemes[i];
        const std::string name = rl_scheme_name(sc);
        for (const auto& q : outputs) {
            double v = 0.0;
            if (q == "outage_mc" || q == "capacity_mc") {
                if (!mc_ok[i]) {
                    std::cerr << "note: " << q << ": ZF/MRT requires at least two relay antennas\n";
                    csv.row(label, name, q, "nan");
                    continue;
                }
                const rl_mc_estimate& e = q == "outage_mc" ? mc_out[i] : mc_cap[i];
                csv.row(label, name, q, e.mean, e.std_error);
            } else if (q == "outage_lb") {
                rl_bound_factors b{};
                const rl_status st = rl_outage_lower_bound(sc, base, &b);
                csv.row(label, name, q, analytic(q, st, b.probability));
            } else if (q == "outage_hsnr") {
                const rl_status st = rl_outage_high_snr(sc, base, RL_HSNR_STANDARD, &v);
                csv.row(label, name, q, analytic(q, st, v));
            } else if (q == "outage_exact") {
                if (sc != RL_SCHEME_NL) continue;
                const rl_status st = rl_outage_exact_nl(base, &v);
                csv.row(label, name, q, analytic(q, st, v));
            } else if (q == "capacity_ub") {
                const rl_status st = rl_capacity_upper_bound(sc, base, &v);
                csv.row(label, name, q, analytic(q, st, v));
            } else if (q == "theta_opt") {
                rl_theta_solution t{};
                const rl_status st = rl_optimal_theta(sc, base, &t);
                csv.row(label, name, q, analytic(q, st, t.theta_star));
            }
        }
    }
}

Params build_base(const Settings& s) {
    Params p = new_params();
    for (const auto& [k, v] : s.params) set_named(p.get(), k, v);
    if (rl_params_validate(p.get()) != RL_OK) throw UsageError(rl_last_error());
    return p;
}

void run_sweeps(const Settings& s, const std::vector<std::string>& outputs, std::ostream& os) {
    check_outputs(outputs);
    if (s.mc_samples < 1000) throw UsageError("mc_samples: must be >= 1000");
    const auto schemes = parse_schemes(s.schemes.empty() ? std::vector<std::string>{"all"} : s.schemes);
    Params base = build_base(s);
    Csv csv(os);
    if (s.sweeps.empty()) {
        Params p = clone(base.get());
        apply_nudge(p.get(), s.nudge);
        eval_point(csv, "", p.get(), schemes, outputs, s);
        return;
    }
    for (const auto& sw : s.sweeps) {
        for (double v : sw.values) {
            Params p = clone(base.get());
            set_named(p.get(), sw.param, v);
            if (rl_params_validate(p.get()) != RL_OK) throw UsageError(sw.param + ": " + rl_last_error());
            apply_nudge(p.get(), s.nudge);
            eval_point(csv, fmt(v), p.get(), schemes, outputs, s);
        }
    }
}

// ---- theta -------------------------------------------------------------------

void run_theta(const Settings& s, int scan_points, bool scan_capacity, std::ostream& os) {
    const auto schemes = parse_schemes(s.schemes.empty() ? std::vector<std::string>{"all"} : s.schemes);
    Params p = build_base(s);
    apply_nudge(p.get(), s.nudge);
    Csv csv(os);
    const rl_mc_config cfg{s.workers, 0};
    for (rl_scheme sc : schemes) {
        const std::string name = rl_scheme_name(sc);
        rl_theta_solution t{};
        const rl_status st = rl_optimal_theta(sc, p.get(), &t);
        if (st == RL_OK) {
            csv.row("", name, "theta_opt", t.theta_star);
            csv.row("", name, "theta_residual", t.residual);
            csv.row("", name, "theta_bracket", t.bracket);
        } else {
            csv.row("", name, "theta_opt", analytic("theta_opt", st, 0.0));
        }
        if (sc == RL_SCHEME_MRC && get(p.get(), RL_PARAM_N_ANTENNAS) == 1) {
            double cf = 0.0;
            if (rl_theta_closed_form_mrc(p.get(), &cf) == RL_OK) csv.row("", name, "theta_closed_form", cf);
        }
        if (scan_points > 0) {
            rl_theta_scan* scan = nullptr;
            const rl_status ss = rl_theta_scan_run(sc, p.get(), scan_points, s.mc_samples, s.seed, &cfg,
                                                   scan_capacity ? 1 : 0, &scan);
            if (ss != RL_OK) {
                std::cerr << "note: scan: " << rl_last_error() << "\n";
                continue;
            }
            const std::string q = scan_capacity ? "capacity_mc" : "outage_mc";
            for (size_t i = 0; i < rl_theta_scan_size(scan); ++i) {
                double th = 0.0;
                rl_mc_estimate e{};
                rl_theta_scan_point(scan, i, &th, &e);
                csv.row(fmt(th), name, q, e.mean, e.std_error);
            }
            double best = 0.0;
            rl_theta_scan_best(scan, &best);
            csv.row("", name, scan_capacity ? "theta_scan_argmax" : "theta_scan_argmin", best);
            rl_theta_scan_destroy(scan);
        }
    }
}

// ---- validate ----------------------------------------------------------------

// Analysis against MC on a small grid. Every comparison is written as rows and
// a pass flag; returns the number of failed checks.
int run_validate(const Settings& s, bool quick, std::ostream& os) {
    const std::int64_t n = quick ? 200000 : s.mc_samples;
    Csv csv(os);
    const rl_mc_config cfg{s.workers, 0};
    int failures = 0;
    auto verdict = [&](const std::string& label, const std::string& scheme, const std::string& check, bool ok) {
        csv.row(label, scheme, "pass_" + check, ok ? "1" : "0");
        if (!ok) {
            ++failures;
            std::cerr << "FAIL " << check << " " << scheme << " at " << label << "\n";
        }
    };
    Params base = build_base(s);

    for (int nant : {1, 2}) {
        for (double db : {10.0, 20.0}) {
            Params p = clone(base.get());
            rl_params_set(p.get(), RL_PARAM_N_ANTENNAS, nant);
            rl_params_set_by_name(p.get(), "rho1_db", db);
            apply_nudge(p.get(), s.nudge);
            const std::string label = "n" + std::to_string(nant) + "_rho1db" + fmt(db);

            double exact = 0.0;
            const rl_status st = rl_outage_exact_nl(p.get(), &exact);
            if (st != RL_OK) throw UsageError(std::string("outage_exact: ") + rl_last_error());

            std::vector<rl_scheme> schemes = {RL_SCHEME_NL, RL_SCHEME_MRC, RL_SCHEME_MMSE};
            if (nant >= 2) schemes.insert(schemes.begin() + 2, RL_SCHEME_ZF);
            std::vector<const rl_params*> ps(schemes.size(), p.get());
            std::vector<rl_mc_estimate> o(schemes.size()), c(schemes.size());
            if (rl_mc_joint(schemes.size(), schemes.data(), ps.data(), n, s.seed, &cfg, o.data(), c.data()) != RL_OK)
                throw UsageError(std::string("monte carlo: ") + rl_last_error());

            csv.row(label, "nl", "outage_exact", exact);
            csv.row(label, "nl", "outage_mc", o[0].mean, o[0].std_error);
            const double sigma = std::max(o[0].std_error, std::sqrt(exact * (1.0 - exact) / static_cast<double>(n)));
            verdict(label, "nl", "exact_vs_mc", std::abs(exact - o[0].mean) <= 3.0 * sigma);

            for (size_t i = 0; i < schemes.size(); ++i) {
                const std::string name = rl_scheme_name(schemes[i]);
                rl_bound_factors b{};
                const rl_status sb = rl_outage_lower_bound(schemes[i], p.get(), &b);
                if (sb == RL_DEGENERATE_PARAMS) throw DegenerateError(rl_last_error());
                double ub = 0.0;
                const rl_status su = rl_capacity_upper_bound(schemes[i], p.get(), &ub);
                if (su == RL_DEGENERATE_PARAMS) throw DegenerateError(rl_last_error());
                if (i > 0) csv.row(label, name, "outage_mc", o[i].mean, o[i].std_error);
                csv.row(label, name, "outage_lb", b.probability);
                csv.row(label, name, "capacity_mc", c[i].mean, c[i].std_error);
                csv.row(label, name, "capacity_ub", ub);
                verdict(label, name, "bound_below_mc",
                        sb == RL_OK && b.probability <= o[i].mean + 3.0 * o[i].std_error);
                verdict(label, name, "capacity_above_mc", su == RL_OK && ub >= c[i].mean - 3.0 * c[i].std_error);
            }
            // MMSE maximizes the first-hop SINR per draw; on shared draws the
            // outage counts are ordered exactly.
            const double mmse = o.back().mean;
            verdict(label, "mmse", "mmse_le_mrc", mmse <= o[1].mean);
            if (nant >= 2) verdict(label, "mmse", "mmse_le_zf", mmse <= o[2].mean);
        }
    }

    // Single-antenna MRC: root-finder against the closed form.
    for (double rho_i_db : {0.0, 9.5, 20.0}) {
        Params p = clone(base.get());
        rl_params_set(p.get(), RL_PARAM_N_ANTENNAS, 1);
        rl_params_set_by_name(p.get(), "rho_i_db", rho_i_db);
        apply_nudge(p.get(), s.nudge);
        const std::string label = "rhoidb" + fmt(rho_i_db);
        rl_theta_solution t{};
        double cf = 0.0;
        const bool ok = rl_optimal_theta(RL_SCHEME_MRC, p.get(), &t) == RL_OK &&
                        rl_theta_closed_form_mrc(p.get(), &cf) == RL_OK;
        csv.row(label, "mrc", "theta_opt", t.theta_star);
        csv.row(label, "mrc", "theta_closed_form", cf);
        verdict(label, "mrc", "theta_closed_form", ok && std::abs(t.theta_star - cf) <= 1e-8);
    }
    return failures;
}

// ---- flags -------------------------------------------------------------------

struct Flags {
    std::string config;
    std::vector<std::string> schemes;
    std::vector<std::string> sweep;
    std::string outputs;
    std::map<std::string, double> params;
    std::int64_t mc_samples = 0;
    std::uint64_t seed = 0;
    int workers = 0;
    bool nudge = false;
    std::string out;
};

// Registers the shared flags on a subcommand. Parameter flags are recorded
// only when given, so they override the config file.
void add_common(CLI::App* sub, Flags& f, std::vector<std::pair<std::string, CLI::Option*>>& param_opts) {
    sub->add_option("--config", f.config, "flat key = value file; flags take precedence");
    sub->add_option("--scheme", f.schemes, "nl, mrc, zf, mmse or all; repeat or comma-separate")->delimiter(',');
    sub->add_option("--seed", f.seed, "64-bit seed");
    sub->add_option("--mc-samples", f.mc_samples, "Monte Carlo samples (default 1000000)");
    sub->add_option("--workers", f.workers, "worker threads (0: all cores)");
    sub->add_flag("--nudge", f.nudge, "perturb rho_i by 1e-6 relative when rho1/d1^tau equals rho_i/d_i^tau");
    sub->add_option("--out", f.out, "write CSV to FILE instead of stdout");
    struct Spec {
        const char* flag;
        const char* key;
        const char* help;
    };
    static const Spec specs[] = {
        {"--n", "n", "relay antennas"},
        {"--eta", "eta", "energy conversion efficiency"},
        {"--theta", "theta", "power-splitting ratio"},
        {"--rho1", "rho1", "source SNR (linear)"},
        {"--rho1-db", "rho1_db", "source SNR in dB"},
        {"--rho-i", "rho_i", "interference-to-noise ratio (linear)"},
        {"--rho-i-db", "rho_i_db", "interference-to-noise ratio in dB"},
        {"--d1", "d1", "source-relay distance"},
        {"--d2", "d2", "relay-destination distance"},
        {"--d-i", "d_i", "interferer-relay distance"},
        {"--tau", "tau", "path-loss exponent"},
        {"--gamma-th", "gamma_th", "outage threshold (linear)"},
        {"--gamma-th-db", "gamma_th_db", "outage threshold in dB"},
    };
    for (const auto& sp : specs) {
        auto* opt = sub->add_option(sp.flag, f.params[sp.key], sp.help);
        param_opts.emplace_back(sp.key, opt);
    }
}

Settings merge(const Flags& f, CLI::App* sub, const std::vector<std::pair<std::string, CLI::Option*>>& param_opts) {
    Settings s;
    if (!f.config.empty()) load_config(f.config, s);
    for (const auto& [key, opt] : param_opts)
        if (opt->count() > 0) s.params.emplace_back(key, f.params.at(key));
    if (sub->count("--scheme") > 0) s.schemes = f.schemes;
    if (sub->count("--seed") > 0) s.seed = f.seed;
    if (sub->count("--mc-samples") > 0) s.mc_samples = f.mc_samples;
    if (sub->count("--workers") > 0) s.workers = f.workers;
    if (f.nudge) s.nudge = true;
    if (!f.out.empty()) s.out = f.out;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaylab: outage, capacity and power-splitting sweeps for wireless-powered multi-antenna relaying"};
    app.require_subcommand(1);

    Flags f;
    std::vector<std::pair<std::string, CLI::Option*>> outage_opts, capacity_opts, theta_opts, validate_opts;
    std::vector<std::string> sweep_args;
    std::string outputs_arg;
    int scan_points = 0;
    bool scan_capacity = false;
    bool quick = false;

    auto* outage = app.add_subcommand("outage", "outage sweep");
    auto* capacity = app.add_subcommand("capacity", "ergodic capacity sweep");
    auto* theta = app.add_subcommand("theta", "optimal power-splitting ratio");
    auto* validate = app.add_subcommand("validate", "cross-check analysis against Monte Carlo");
    add_common(outage, f, outage_opts);
    add_common(capacity, f, capacity_opts);
    add_common(theta, f, theta_opts);
    add_common(validate, f, validate_opts);
    for (auto* sub : {outage, capacity}) {
        sub->add_option("--sweep", sweep_args, "PARAM VALUES; VALUES is start:step:stop or a comma list")
            ->expected(2);
        sub->add_option("--outputs", outputs_arg, "comma list of quantities");
    }
    theta->add_option("--scan", scan_points, "Monte Carlo grid points on [0.02, 0.98] (>= 11)");
    theta->add_flag("--scan-capacity", scan_capacity, "scan capacity instead of outage");
    validate->add_flag("--quick", quick, "fewer Monte Carlo samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const auto& opts = sub == outage     ? outage_opts
                           : sub == capacity ? capacity_opts
                           : sub == theta    ? theta_opts
                                             : validate_opts;
        Settings s = merge(f, sub, opts);
        if (!sweep_args.empty()) s.sweeps = {make_sweep(sweep_args[0], sweep_args[1])};
        if (!outputs_arg.empty()) s.outputs = split(outputs_arg, ',');

        std::ofstream file;
        std::ostringstream buffer;
        std::ostream& os = buffer;
        int code = kExitOk;
        if (sub == outage || sub == capacity) {
            std::vector<std::string> outs = s.outputs;
            if (outs.empty())
                outs = sub == outage ? std::vector<std::string>{"outage_mc", "outage_lb", "outage_hsnr", "outage_exact"}
                                     : std::vector<std::string>{"capacity_mc", "capacity_ub"};
            run_sweeps(s, outs, os);
        } else if (sub == theta) {
            if (scan_points != 0 && scan_points < 11) throw UsageError("scan: needs at least 11 grid points");
            run_theta(s, scan_points, scan_capacity, os);
        } else {
            code = run_validate(s, quick, os) == 0 ? kExitOk : kExitValidation;
        }
        // Written only after a complete run.
        if (s.out.empty()) {
            std::cout << buffer.str();
        } else {
            file.open(s.out, std::ios::binary);
            if (!file) throw UsageError("out: cannot open '" + s.out + "'");
            file << buffer.str();
        }
        return code;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
