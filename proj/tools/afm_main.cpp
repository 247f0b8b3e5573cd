// Copyright 2026 The afmsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the simulator exclusively through the
// C API in afm/afm.h and prints one JSON (or CSV) document per invocation.
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afm/afm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

bool g_quiet = false;

void progress(const std::string& msg) {
    if (!g_quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

[[noreturn]] void fail(int code, const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    std::exit(code);
}

int status_exit_code(afm_status st) {
    return st == AFM_ERR_INVALID_ARGUMENT ? kExitValidation : kExitNumerical;
}

void check(afm_status st) {
    if (st != AFM_OK) fail(status_exit_code(st), afm_last_error());
}

// ---- complex literals: RE | RE+IMi | RE-IMi | MAG@DEGdeg -------------------

bool parse_double(const std::string& s, double* out) {
    if (s.empty()) return false;
    char* end = nullptr;
    *out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

bool parse_complex(const std::string& text, afm_complex* out) {
    const auto at = text.find('@');
    if (at != std::string::npos) {
        const std::string mag_part = text.substr(0, at);
        std::string deg_part = text.substr(at + 1);
        if (deg_part.size() < 4 || deg_part.substr(deg_part.size() - 3) != "deg") return false;
        deg_part = deg_part.substr(0, deg_part.size() - 3);
        double mag = 0.0;
        double deg = 0.0;
        if (!parse_double(mag_part, &mag) || !parse_double(deg_part, &deg)) return false;
        const double rad = deg * 3.14159265358979323846 / 180.0;
        out->re = mag * std::cos(rad);
        out->im = mag * std::sin(rad);
        return true;
    }
    if (!text.empty() && text.back() == 'i') {
        const std::string body = text.substr(0, text.size() - 1);
        // Split on the last +/- that is not leading and not part of an exponent.
        for (std::size_t pos = body.size(); pos-- > 1;) {
            const char ch = body[pos];
            if ((ch == '+' || ch == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
                double re = 0.0;
                double im = 0.0;
                if (!parse_double(body.substr(0, pos), &re)) return false;
                std::string im_part = body.substr(pos);
                if (im_part == "+" || im_part == "-") im_part += "1";
                if (!parse_double(im_part, &im)) return false;
                out->re = re;
                out->im = im;
                return true;
            }
        }
        return false;
    }
    double re = 0.0;
    if (!parse_double(text, &re)) return false;
    out->re = re;
    out->im = 0.0;
    return true;
}

afm_complex require_complex(const std::string& text, const std::string& flag) {
    afm_complex z{0.0, 0.0};
    if (!parse_complex(text, &z)) {
        fail(kExitValidation, "cannot parse " + flag + " value '" + text +
                                  "': use RE, RE+IMi or MAG@DEGdeg");
    }
    return z;
}

// ---- JSON output (17 significant digits, fixed field order) ----------------

std::string jnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string jint(long v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%ld", v);
    return buf;
}

std::string jbool(int v) { return v ? "true" : "false"; }

std::string jcomplex(afm_complex z) {
    return "{\"re\": " + jnum(z.re) + ", \"im\": " + jnum(z.im) + "}";
}

void emit(const std::string& doc) { std::fwrite(doc.data(), 1, doc.size(), stdout); }

std::string pair_flags_json(const afm_pair_report& rep) {
    return std::string("{\"cs_applicable\": ") + jbool(rep.cs_applicable) +
           ", \"cs_holds\": " + jbool(rep.cs_holds) +
           ", \"final_holds\": " + jbool(rep.final_holds) +
           ", \"theorem_holds\": " + jbool(rep.theorem_holds) + "}";
}

// ---- schedule CSV (mirrors the library's schedule file format) -------------

void write_schedule(const std::string& path, const afm_schedule* schedule) {
    std::ofstream out(path);
    if (!out) fail(kExitValidation, "cannot open schedule file for writing: " + path);
    out << "# full rotation schedule; no run-in or tail angles omitted\n";
    out << "k,theta_radians\n";
    const long n = afm_schedule_size(schedule);
    char buf[64];
    for (long k = 0; k < n; ++k) {
        double angle = 0.0;
        check(afm_schedule_angle(schedule, k, &angle));
        std::snprintf(buf, sizeof(buf), "%ld,%.17g\n", k, angle);
        out << buf;
    }
    if (!out) fail(kExitNumerical, "failed writing schedule file: " + path);
}

struct ScheduleDeleter {
    void operator()(afm_schedule* s) const { afm_schedule_free(s); }
};
struct ProtocolDeleter {
    void operator()(afm_protocol* p) const { afm_protocol_free(p); }
};

// ---- subcommands ------------------------------------------------------------

int cmd_bound(const std::string& a1_text, const std::string& a2_text) {
    const afm_complex a1 = require_complex(a1_text, "--alpha1");
    const afm_complex a2 = require_complex(a2_text, "--alpha2");
    afm_bound_result res{};
    check(afm_bound(a1, a2, &res));
    emit("{\"eta\": " + jnum(res.eta) + ", \"eta_sq\": " + jnum(res.eta_sq) +
         ", \"identity_gap\": " + jnum(res.identity_gap) + "}\n");
    return kExitOk;
}

int cmd_ev(const std::string& alpha_text) {
    const afm_complex alpha = require_complex(alpha_text, "--alpha");
    std::unique_ptr<afm_protocol, ProtocolDeleter> protocol;
    {
        afm_protocol* raw = nullptr;
        check(afm_protocol_elitzur_vaidman(&raw));
        protocol.reset(raw);
    }
    const bool transparent = alpha.re == 1.0 && alpha.im == 0.0;
    afm_run_trace trace{};
    check(afm_protocol_run(protocol.get(), alpha,
                           transparent ? AFM_ROLE_OBJECT1 : AFM_ROLE_OBJECT2, &trace));
    afm_pair_report rep{};
    check(afm_protocol_run_pair(protocol.get(), afm_complex{1.0, 0.0}, alpha, &rep));
    emit("{\"p_ident\": " + jnum(trace.p_ident) + ", \"p_notident\": " + jnum(trace.p_notident) +
         ", \"p_interact\": " + jnum(trace.p_interact) +
         ", \"final_norm_sq\": " + jnum(trace.final_norm_sq) +
         ", \"f_final\": " + jcomplex(rep.f_final) + ", \"eta_sq\": " + jnum(rep.eta_sq) +
         ", \"product\": " + jnum(rep.product) + ", \"flags\": " + pair_flags_json(rep) + "}\n");
    return kExitOk;
}

int cmd_zeno(const std::string& alpha2_text, long n, const std::string& schedule_out) {
    const afm_complex alpha2 = require_complex(alpha2_text, "--alpha2");
    afm_zeno_info info{};
    check(afm_zeno_build_info(alpha2, n, &info));

    std::unique_ptr<afm_protocol, ProtocolDeleter> protocol;
    {
        afm_protocol* raw = nullptr;
        const bool real_case = alpha2.im == 0.0 && alpha2.re >= 0.0;
        check(real_case ? afm_protocol_zeno_real(alpha2.re, n, &raw)
                        : afm_protocol_zeno_complex(alpha2, n, &raw));
        protocol.reset(raw);
    }
    afm_run_trace absent{};
    check(afm_protocol_run(protocol.get(), afm_complex{1.0, 0.0}, AFM_ROLE_OBJECT1, &absent));
    afm_run_trace present{};
    check(afm_protocol_run(protocol.get(), alpha2, AFM_ROLE_OBJECT2, &present));

    if (!schedule_out.empty()) {
        afm_schedule* raw = nullptr;
        check(afm_zeno_schedule(alpha2, n, &raw));
        std::unique_ptr<afm_schedule, ScheduleDeleter> schedule(raw);
        write_schedule(schedule_out, schedule.get());
    }
    emit("{\"theta\": " + jnum(info.theta) + ", \"theta_prime\": " + jnum(info.theta_prime) +
         ", \"gamma\": " + jnum(info.gamma) + ", \"p_ident_1\": " + jnum(absent.p_ident) +
         ", \"p_ident_2\": " + jnum(present.p_ident) +
         ", \"p_interact_2\": " + jnum(present.p_interact) +
         ", \"predicted_p_ident_2\": " + jnum(info.predicted_p_ident_2) + "}\n");
    return kExitOk;
}

int cmd_optimize(double alpha1, double alpha2, double eps, double lambda_lo, double lambda_hi,
                 double orth_tol, long max_steps, const std::string& out_csv) {
    if (eps > 0.01) {
        progress("note: epsilon above 0.01 weakens the fixed-ratio construction");
    }
    afm_optimize_config cfg{};
    cfg.alpha1 = alpha1;
    cfg.alpha2 = alpha2;
    cfg.epsilon = eps;
    cfg.lambda_lo = lambda_lo;
    cfg.lambda_hi = lambda_hi;
    cfg.orth_tol = orth_tol;
    cfg.max_steps = max_steps;
    progress("searching lambda...");
    afm_optimize_report rep{};
    afm_schedule* raw = nullptr;
    check(afm_optimize(&cfg, &rep, out_csv.empty() ? nullptr : &raw));
    std::unique_ptr<afm_schedule, ScheduleDeleter> schedule(raw);
    if (!out_csv.empty()) write_schedule(out_csv, schedule.get());
    emit("{\"lambda_star\": " + jnum(rep.lambda_star) + ", \"n_steps\": " + jint(rep.n_steps) +
         ", \"p_ident_1\": " + jnum(rep.p_ident_1) + ", \"p_ident_2\": " + jnum(rep.p_ident_2) +
         ", \"product\": " + jnum(rep.product) + ", \"eta_sq\": " + jnum(rep.eta_sq) +
         ", \"final_overlap\": " + jnum(rep.final_overlap) +
         ", \"success\": " + jbool(rep.success) + "}\n");
    return kExitOk;
}

int cmd_fp(double c, const std::string& alpha_text, long cells, long pulse, long steps) {
    const afm_complex alpha = require_complex(alpha_text, "--alpha");
    afm_fp_config cfg{};
    cfg.mirror_c = c;
    cfg.lattice_halfwidth = cells;
    cfg.pulse_len = pulse;
    cfg.t_steps = steps;
    progress("running cavity simulation...");
    afm_fp_report rep{};
    check(afm_fp_simulate(&cfg, alpha, &rep));
    emit("{\"fL_sim\": " + jcomplex(rep.fL_sim) + ", \"fR_sim\": " + jcomplex(rep.fR_sim) +
         ", \"p_interact\": " + jnum(rep.p_interact) +
         ", \"fL_closed\": " + jcomplex(rep.fL_closed) + ", \"abs_err\": " + jnum(rep.abs_err) +
         "}\n");
    return kExitOk;
}

int cmd_fp_sweep(const std::string& c_list, const std::string& alpha_text, long cells, long pulse,
                 long steps) {
    const afm_complex alpha = require_complex(alpha_text, "--alpha");
    if (alpha.im != 0.0) {
        fail(kExitValidation, "fp-sweep emits real columns: --alpha must be real");
    }
    std::vector<double> cs;
    std::stringstream ss(c_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double c = 0.0;
        if (!parse_double(tok, &c)) fail(kExitValidation, "bad --c-list entry '" + tok + "'");
        cs.push_back(c);
    }
    if (cs.empty()) fail(kExitValidation, "--c-list must name at least one coefficient");

    std::string doc = "c,fL_sim,fL_closed,abs_err,p_interact\n";
    for (double c : cs) {
        progress("simulating c=" + jnum(c) + "...");
        afm_fp_config cfg{};
        cfg.mirror_c = c;
        cfg.lattice_halfwidth = cells;
        cfg.pulse_len = pulse;
        cfg.t_steps = steps;
        afm_fp_report rep{};
        check(afm_fp_simulate(&cfg, alpha, &rep));
        doc += jnum(c) + "," + jnum(rep.fL_sim.re) + "," + jnum(rep.fL_closed.re) + "," +
               jnum(rep.abs_err) + "," + jnum(rep.p_interact) + "\n";
    }
    emit(doc);
    return kExitOk;
}

int cmd_verify(long trials, long dim_max, unsigned long long seed) {
    if (const char* env_seed = std::getenv("AFM_SEED")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env_seed, &end, 10);
        if (end == env_seed || *end != '\0') {
            fail(kExitValidation, std::string("bad AFM_SEED value '") + env_seed + "'");
        }
        seed = parsed;
    }
    progress("sweeping random protocols...");
    afm_verify_report rep{};
    check(afm_verify_sweep(seed, trials, dim_max, &rep));
    emit("{\"trials\": " + jint(rep.trials) + ", \"failures\": " + jint(rep.failures) +
         ", \"worst_slack\": " + jnum(rep.worst_slack) + "}\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"absorption-free measurement protocol simulator"};
    app.require_subcommand(1);
    app.add_flag("--quiet", g_quiet, "suppress progress output on stderr");

    auto* bound = app.add_subcommand("bound", "discrimination bound for a transparency pair");
    std::string b_a1;
    std::string b_a2;
    bound->add_option("--alpha1", b_a1, "first transmission amplitude")->required();
    bound->add_option("--alpha2", b_a2, "second transmission amplitude")->required();

    auto* ev = app.add_subcommand("ev", "two-arm interferometer preset run");
    std::string ev_alpha = "0";
    ev->add_option("--alpha", ev_alpha, "object transparency (default 0: opaque)");

    auto* zeno = app.add_subcommand("zeno", "repeated-rotation protocol");
    std::string z_alpha2;
    long z_n = 0;
    std::string z_sched;
    zeno->add_option("--alpha2", z_alpha2, "object transmission amplitude")->required();
    zeno->add_option("--n", z_n, "round count")->required();
    zeno->add_option("--schedule-out", z_sched, "write the rotation schedule CSV here");

    auto* opt = app.add_subcommand("optimize", "near-optimal schedule search");
    double o_a1 = 0.0;
    double o_a2 = 0.0;
    double o_eps = 0.0;
    double o_llo = 0.0;
    double o_lhi = 0.0;
    double o_tol = 0.0;
    long o_max = 0;
    std::string o_out;
    opt->add_option("--alpha1", o_a1, "first transparency (real)")->required();
    opt->add_option("--alpha2", o_a2, "second transparency (real)")->required();
    opt->add_option("--eps", o_eps, "initial interacting amplitude")->required();
    opt->add_option("--lambda-lo", o_llo, "search range lower edge (default 0.5)");
    opt->add_option("--lambda-hi", o_lhi, "search range upper edge (default 2.0)");
    opt->add_option("--orth-tol", o_tol, "orthogonality tolerance (default 1e-8)");
    opt->add_option("--max-steps", o_max, "step cap per trajectory (default 1000000)");
    opt->add_option("--out", o_out, "write the winning schedule CSV here");

    auto* fp = app.add_subcommand("fp", "two-mirror cavity simulation");
    double f_c = 0.0;
    std::string f_alpha;
    long f_cells = 16;
    long f_pulse = 2048;
    long f_steps = 0;
    fp->add_option("--c", f_c, "mirror reflection coefficient")->required();
    fp->add_option("--alpha", f_alpha, "in-cavity transparency")->required();
    fp->add_option("--cells", f_cells, "lattice halfwidth (default 16)");
    fp->add_option("--pulse", f_pulse, "incoming pulse train length (default 2048)");
    fp->add_option("--steps", f_steps, "tick count (default: automatic)");

    auto* fps = app.add_subcommand("fp-sweep", "cavity sweep over mirror coefficients");
    std::string s_clist;
    std::string s_alpha;
    long s_cells = 16;
    long s_pulse = 2048;
    long s_steps = 0;
    fps->add_option("--c-list", s_clist, "comma-separated mirror coefficients")->required();
    fps->add_option("--alpha", s_alpha, "in-cavity transparency (real)")->required();
    fps->add_option("--cells", s_cells, "lattice halfwidth (default 16)");
    fps->add_option("--pulse", s_pulse, "incoming pulse train length (default 2048)");
    fps->add_option("--steps", s_steps, "tick count (default: automatic)");

    auto* verify = app.add_subcommand("verify", "randomized inequality sweep");
    long v_trials = 1000;
    long v_dim = 8;
    unsigned long long v_seed = 12345;
    verify->add_option("--trials", v_trials, "number of random protocols (default 1000)");
    verify->add_option("--dim-max", v_dim, "maximum state dimension (default 8)");
    verify->add_option("--seed", v_seed, "RNG seed (default 12345; AFM_SEED overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (bound->parsed()) return cmd_bound(b_a1, b_a2);
    if (ev->parsed()) return cmd_ev(ev_alpha);
    if (zeno->parsed()) return cmd_zeno(z_alpha2, z_n, z_sched);
    if (opt->parsed()) {
        return cmd_optimize(o_a1, o_a2, o_eps, o_llo, o_lhi, o_tol, o_max, o_out);
    }
    if (fp->parsed()) return cmd_fp(f_c, f_alpha, f_cells, f_pulse, f_steps);
    if (fps->parsed()) return cmd_fp_sweep(s_clist, s_alpha, s_cells, s_pulse, s_steps);
    if (verify->parsed()) return cmd_verify(v_trials, v_dim, v_seed);
    return kExitValidation;
}
