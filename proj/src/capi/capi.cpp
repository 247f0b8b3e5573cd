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

#include "afm/afm.h"

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "afm/engine.hpp"
#include "afm/fabry_perot.hpp"
#include "afm/optimizer.hpp"
#include "afm/protocol.hpp"
#include "afm/types.hpp"
#include "afm/verify.hpp"
#include "afm/zeno.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* msg) { g_last_error = msg ? msg : "unknown error"; }

afm::cplx to_cplx(afm_complex z) { return afm::cplx{z.re, z.im}; }
afm_complex from_cplx(afm::cplx z) { return afm_complex{z.real(), z.imag()}; }

/// Runs fn, translating exceptions into status codes.
template <typename Fn>
afm_status guarded(Fn&& fn) {
    try {
        fn();
        return AFM_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return AFM_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return AFM_ERR_INVALID_ARGUMENT;
    } catch (const std::logic_error& e) {
        set_error(e.what());
        return AFM_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return AFM_ERR_NUMERICAL;
    } catch (...) {
        set_error("unknown error");
        return AFM_ERR_NUMERICAL;
    }
}

afm_status require(bool ok, const char* msg) {
    if (!ok) {
        set_error(msg);
        return AFM_ERR_INVALID_ARGUMENT;
    }
    return AFM_OK;
}

void fill_pair_report(const afm::PairTrace& trace, const afm::BoundReport& bound,
                      afm_pair_report* out) {
    out->p_ident_1 = trace.trace1.p_ident;
    out->p_ident_2 = trace.trace2.p_ident;
    out->p_interact_1 = trace.trace1.p_interact;
    out->p_interact_2 = trace.trace2.p_interact;
    const afm::cplx f = trace.f_history.empty() ? afm::cplx{1.0, 0.0} : trace.f_history.back();
    out->f_final = from_cplx(f);
    out->lhs_cs = bound.lhs_cs;
    out->rhs_cs = bound.rhs_cs;
    out->lhs_final = bound.lhs_final;
    out->rhs_final = bound.rhs_final;
    out->product = bound.product;
    out->eta_sq = bound.eta_sq;
    out->cs_applicable = bound.cs_applicable ? 1 : 0;
    out->cs_holds = bound.cs_holds ? 1 : 0;
    out->final_holds = bound.final_holds ? 1 : 0;
    out->theorem_holds = bound.theorem_holds ? 1 : 0;
    out->recursion_max_dev = trace.recursion_max_dev;
    out->accounting_max_dev =
        std::max(trace.trace1.accounting_dev, trace.trace2.accounting_dev);
}

}  // namespace

struct afm_protocol {
    afm::Protocol protocol;
};

struct afm_schedule {
    std::vector<double> rotations;
};

extern "C" {

const char* afm_last_error(void) { return g_last_error.c_str(); }

afm_status afm_bound(afm_complex alpha1, afm_complex alpha2, afm_bound_result* out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] {
        const afm::DiscriminationPair pair = afm::make_pair(to_cplx(alpha1), to_cplx(alpha2));
        out->eta = afm::eta(pair);
        out->eta_sq = afm::bound_rhs(pair);
        out->identity_gap = afm::identity_gap(pair);
    });
}

afm_status afm_protocol_elitzur_vaidman(afm_protocol** out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] { *out = new afm_protocol{afm::elitzur_vaidman_preset()}; });
}

afm_status afm_protocol_zeno_real(double alpha2, long n, afm_protocol** out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] { *out = new afm_protocol{afm::build_zeno_real(alpha2, n).protocol}; });
}

afm_status afm_protocol_zeno_complex(afm_complex alpha2, long n, afm_protocol** out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded(
        [&] { *out = new afm_protocol{afm::build_zeno_complex(to_cplx(alpha2), n).protocol}; });
}

void afm_protocol_free(afm_protocol* protocol) { delete protocol; }

afm_status afm_protocol_run(const afm_protocol* protocol, afm_complex alpha, int role,
                            afm_run_trace* out) {
    if (afm_status st = require(protocol && out, "null pointer argument")) return st;
    if (afm_status st = require(role == AFM_ROLE_OBJECT1 || role == AFM_ROLE_OBJECT2,
                                "role must be AFM_ROLE_OBJECT1 or AFM_ROLE_OBJECT2")) {
        return st;
    }
    return guarded([&] {
        const afm::RunTrace trace =
            afm::run(protocol->protocol, afm::object_from_alpha(to_cplx(alpha)),
                     role == AFM_ROLE_OBJECT1 ? afm::Role::kObject1 : afm::Role::kObject2);
        out->p_ident = trace.p_ident;
        out->p_notident = trace.p_notident;
        out->p_interact = trace.p_interact;
        out->final_norm_sq = trace.final_norm_sq;
    });
}

afm_status afm_protocol_run_pair(const afm_protocol* protocol, afm_complex alpha1,
                                 afm_complex alpha2, afm_pair_report* out) {
    if (afm_status st = require(protocol && out, "null pointer argument")) return st;
    return guarded([&] {
        const afm::DiscriminationPair pair = afm::make_pair(to_cplx(alpha1), to_cplx(alpha2));
        const afm::PairTrace trace = afm::run_pair(protocol->protocol, pair);
        fill_pair_report(trace, afm::verify_bound(trace), out);
    });
}

afm_status afm_amplify(double p_ident, double p_notident, double p_interact, double* out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] { *out = afm::amplify(p_ident, p_notident, p_interact); });
}

void afm_schedule_free(afm_schedule* schedule) { delete schedule; }

long afm_schedule_size(const afm_schedule* schedule) {
    return schedule ? static_cast<long>(schedule->rotations.size()) : 0;
}

afm_status afm_schedule_angle(const afm_schedule* schedule, long index, double* out) {
    if (afm_status st = require(schedule && out, "null pointer argument")) return st;
    if (afm_status st = require(
            index >= 0 && index < static_cast<long>(schedule->rotations.size()),
            "schedule index out of range")) {
        return st;
    }
    *out = schedule->rotations[static_cast<std::size_t>(index)];
    return AFM_OK;
}

afm_status afm_zeno_analytics(double alpha2, long n, afm_zeno_info* out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] {
        const double theta = afm::solve_theta(alpha2, n);
        out->theta = theta;
        out->theta_prime = afm::theta_prime(theta, alpha2);
        out->gamma = afm::gamma(theta, alpha2);
        out->predicted_p_ident_2 = afm::predict_p_ident2(alpha2, n);
    });
}

afm_status afm_zeno_build_info(afm_complex alpha2, long n, afm_zeno_info* out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] {
        const afm::cplx a2 = to_cplx(alpha2);
        const afm::ZenoBuild build = (a2.imag() == 0.0 && a2.real() >= 0.0)
                                         ? afm::build_zeno_real(a2.real(), n)
                                         : afm::build_zeno_complex(a2, n);
        out->theta = build.schedule.theta;
        out->theta_prime = build.schedule.theta_prime;
        out->gamma = afm::gamma(build.schedule.theta, std::abs(a2));
        out->predicted_p_ident_2 = build.schedule.predicted_p_ident_2;
    });
}

afm_status afm_zeno_schedule(afm_complex alpha2, long n, afm_schedule** out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] {
        const afm::cplx a2 = to_cplx(alpha2);
        const afm::ZenoBuild build = (a2.imag() == 0.0 && a2.real() >= 0.0)
                                         ? afm::build_zeno_real(a2.real(), n)
                                         : afm::build_zeno_complex(a2, n);
        *out = new afm_schedule{build.schedule.rotations};
    });
}

afm_status afm_optimize(const afm_optimize_config* config, afm_optimize_report* out,
                        afm_schedule** schedule_out) {
    if (afm_status st = require(config && out, "null pointer argument")) return st;
    return guarded([&] {
        afm::OptimizerConfig cfg;
        cfg.alpha1 = config->alpha1;
        cfg.alpha2 = config->alpha2;
        cfg.epsilon = config->epsilon;
        if (config->lambda_lo > 0.0) cfg.lambda_lo = config->lambda_lo;
        if (config->lambda_hi > 0.0) cfg.lambda_hi = config->lambda_hi;
        if (config->orth_tol > 0.0) cfg.orth_tol = config->orth_tol;
        if (config->max_steps > 0) cfg.max_steps = config->max_steps;
        const afm::OptimizerReport rep = afm::search_lambda(cfg);
        out->lambda_star = rep.lambda_star;
        out->n_steps = rep.n_steps;
        out->p_ident_1 = rep.p_ident_1;
        out->p_ident_2 = rep.p_ident_2;
        out->product = rep.product;
        out->eta_sq = rep.eta_sq;
        out->final_overlap = rep.final_overlap;
        out->success = rep.success ? 1 : 0;
        if (schedule_out != nullptr) {
            *schedule_out = new afm_schedule{rep.schedule.rotations};
        }
    });
}

afm_status afm_fp_simulate(const afm_fp_config* config, afm_complex alpha, afm_fp_report* out) {
    if (afm_status st = require(config && out, "null pointer argument")) return st;
    return guarded([&] {
        afm::FPConfig cfg;
        cfg.mirror_c = config->mirror_c;
        if (config->lattice_halfwidth > 0) cfg.lattice_halfwidth = config->lattice_halfwidth;
        if (config->pulse_len > 0) cfg.pulse_len = config->pulse_len;
        if (config->t_steps > 0) cfg.t_steps = config->t_steps;
        const afm::FPReport rep =
            afm::simulate_fp(cfg, afm::object_from_alpha(to_cplx(alpha)));
        out->fL_sim = from_cplx(rep.fL_sim);
        out->fR_sim = from_cplx(rep.fR_sim);
        out->p_interact = rep.p_interact;
        out->fL_closed = from_cplx(rep.fL_closed);
        out->abs_err = rep.abs_err;
    });
}

afm_status afm_fp_closed_form(double mirror_c, afm_complex alpha, afm_complex* out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] { *out = from_cplx(afm::closed_form_fL(mirror_c, to_cplx(alpha))); });
}

afm_status afm_fp_discriminate(double mirror_c, afm_complex alpha2, long pulse_len,
                               afm_pair_report* out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] {
        const afm::FPDiscrimination rep =
            afm::fp_discrimination_report(mirror_c, to_cplx(alpha2), pulse_len);
        if (rep.degenerate_pair) {
            throw std::invalid_argument("alpha2 equals 1: the pair is degenerate, nothing to "
                                        "discriminate");
        }
        fill_pair_report(rep.trace, rep.bound, out);
    });
}

afm_status afm_verify_sweep(unsigned long long seed, long trials, long dim_max,
                            afm_verify_report* out) {
    if (afm_status st = require(out != nullptr, "null output pointer")) return st;
    return guarded([&] {
        afm::SweepOptions opts;
        opts.seed = seed;
        opts.trials = trials;
        opts.dim_max = static_cast<std::size_t>(dim_max);
        const afm::SweepReport rep = afm::verify_sweep(opts);
        out->trials = rep.trials;
        out->failures = rep.failures;
        out->worst_slack = rep.worst_slack;
    });
}

}  // extern "C"
