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

#include "afm/fabry_perot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afm {

namespace {

constexpr double kPlateauAgree = 1e-9;
constexpr std::size_t kPlateauMinRun = 16;

long ring_down_ticks(double c, double alpha_mag) {
    // Amplitude ratio per two-tick round trip inside the cavity.
    const double r = c * c * alpha_mag * alpha_mag;
    if (r < 1e-6) return 64;
    return 2 * static_cast<long>(std::ceil(std::log(1e-14) / std::log(r))) + 64;
}

}  // namespace

void FPConfig::validate() const {
    if (!(mirror_c >= 0.0 && mirror_c < 1.0)) {
        throw std::invalid_argument("mirror coefficient c must lie in [0, 1)");
    }
    if (lattice_halfwidth < 2) throw std::invalid_argument("lattice halfwidth must be >= 2");
    if (pulse_len < 1) throw std::invalid_argument("pulse length must be >= 1");
    if (t_steps < 0) throw std::invalid_argument("t_steps must be >= 0");
}

long FPConfig::auto_t_steps(const cplx& alpha) const {
    return pulse_len + 4 * lattice_halfwidth + ring_down_ticks(mirror_c, std::abs(alpha));
}

double fp_step(FPState& state, const FPConfig& config, const ObjectModel& obj,
               std::vector<cplx>& ledger_left, std::vector<cplx>& ledger_right) {
    const long m = config.lattice_halfwidth;
    const std::size_t cells = static_cast<std::size_t>(2 * m + 1);
    if (state.r_amps.size() != cells || state.l_amps.size() != cells) {
        throw std::invalid_argument("state size does not match the lattice");
    }
    const double c = config.mirror_c;
    const double s = std::sqrt(1.0 - c * c);
    const std::size_t cav = static_cast<std::size_t>(m);  // cell n = 0

    const double v_norm_sq = abs_sq(state.r_amps[cav]) + abs_sq(state.l_amps[cav]);
    state.r_amps[cav] *= obj.alpha;
    state.l_amps[cav] *= obj.alpha;

    std::vector<cplx> r_next(cells, cplx{0.0, 0.0});
    std::vector<cplx> l_next(cells, cplx{0.0, 0.0});
    const cplx is{0.0, s};

    // Mirror scattering around the cavity cell.
    l_next[cav] += c * state.r_amps[cav];
    r_next[cav + 1] += is * state.r_amps[cav];
    l_next[cav - 1] += c * state.r_amps[cav - 1];
    r_next[cav] += is * state.r_amps[cav - 1];
    r_next[cav + 1] += c * state.l_amps[cav + 1];
    l_next[cav] += is * state.l_amps[cav + 1];
    r_next[cav] += c * state.l_amps[cav];
    l_next[cav - 1] += is * state.l_amps[cav];

    // Free shifts; amplitudes leaving the lattice land in the ledgers.
    cplx out_left{0.0, 0.0};
    cplx out_right{0.0, 0.0};
    for (std::size_t i = 0; i < cells; ++i) {
        const long n = static_cast<long>(i) - m;
        if (n != -1 && n != 0) {
            if (i + 1 < cells) {
                r_next[i + 1] += state.r_amps[i];
            } else {
                out_right += state.r_amps[i];
            }
        }
        if (n != 0 && n != 1) {
            if (i > 0) {
                l_next[i - 1] += state.l_amps[i];
            } else {
                out_left += state.l_amps[i];
            }
        }
    }
    ledger_left.push_back(out_left);
    ledger_right.push_back(out_right);
    state.r_amps.swap(r_next);
    state.l_amps.swap(l_next);
    return v_norm_sq;
}

cplx closed_form_fL(double c, cplx alpha) {
    require_finite(alpha, "alpha");
    if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in [0, 1)");
    const cplx a_sq = alpha * alpha;
    const cplx den = 1.0 - c * c * a_sq;
    if (std::abs(den) < 1e-300) throw std::invalid_argument("geometric series diverges");
    return c * (1.0 - a_sq) / den;
}

std::pair<std::size_t, std::size_t> find_plateau(const std::vector<cplx>& vals) {
    std::size_t best_begin = 0;
    std::size_t best_len = 0;
    std::size_t i = 0;
    while (i < vals.size()) {
        std::size_t j = i;
        while (j + 1 < vals.size() && std::abs(vals[j + 1] - vals[j]) <= kPlateauAgree) ++j;
        if (j - i + 1 > best_len) {
            best_begin = i;
            best_len = j - i + 1;
        }
        i = j + 1;
    }
    if (best_len < kPlateauMinRun) {
        throw std::runtime_error("steady-state plateau not detected: increase t_steps "
                                 "or pulse_len");
    }
    return {best_begin, best_len};
}

FPReport simulate_fp(const FPConfig& config, const ObjectModel& obj) {
    config.validate();
    const long m = config.lattice_halfwidth;
    const long k_pulse = config.pulse_len;
    const long t_total = config.t_steps > 0 ? config.t_steps : config.auto_t_steps(obj.alpha);

    FPState state;
    state.r_amps.assign(static_cast<std::size_t>(2 * m + 1), cplx{0.0, 0.0});
    state.l_amps.assign(static_cast<std::size_t>(2 * m + 1), cplx{0.0, 0.0});
    const long prefill = std::min(k_pulse, m);
    for (long j = 1; j <= prefill; ++j) {
        state.r_amps[static_cast<std::size_t>(m - j)] = 1.0;
    }
    long injected = prefill;

    std::vector<cplx> ledger_left;
    std::vector<cplx> ledger_right;
    ledger_left.reserve(static_cast<std::size_t>(t_total));
    ledger_right.reserve(static_cast<std::size_t>(t_total));

    const double beta_sq = obj.beta_mag * obj.beta_mag;
    double p_interact = 0.0;
    double carry = 0.0;
    for (long t = 0; t < t_total; ++t) {
        const double v = fp_step(state, config, obj, ledger_left, ledger_right);
        const double y = beta_sq * v - carry;
        const double acc = p_interact + y;
        carry = (acc - p_interact) - y;
        p_interact = acc;
        if (injected < k_pulse) {
            state.r_amps[0] += 1.0;  // train continues entering at the far left
            ++injected;
        }
    }

    FPReport rep;
    const auto [lb, ll] = find_plateau(ledger_left);
    const auto [rb, rl] = find_plateau(ledger_right);
    cplx acc_l{0.0, 0.0};
    for (std::size_t idx = lb; idx < lb + ll; ++idx) acc_l += ledger_left[idx];
    cplx acc_r{0.0, 0.0};
    for (std::size_t idx = rb; idx < rb + rl; ++idx) acc_r += ledger_right[idx];
    rep.fL_sim = acc_l / static_cast<double>(ll);
    rep.fR_sim = acc_r / static_cast<double>(rl);
    rep.plateau_begin = lb;
    rep.plateau_len = ll;
    rep.fL_closed = closed_form_fL(config.mirror_c, obj.alpha);
    rep.abs_err = std::abs(rep.fL_sim - rep.fL_closed);
    rep.p_interact = p_interact / static_cast<double>(k_pulse);  // per unit input
    return rep;
}

FPDiscrimination fp_discrimination_report(double c, cplx alpha2, long pulse_len) {
    if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in [0, 1)");
    if (pulse_len < 8) throw std::invalid_argument("pulse_len must be >= 8");
    const ObjectModel obj2 = object_from_alpha(alpha2);

    FPDiscrimination out;
    if (std::abs(obj2.alpha - cplx{1.0, 0.0}) <= kAlphaEqualTol) {
        out.degenerate_pair = true;  // alpha1 == alpha2 == 1: nothing to discriminate
        return out;
    }

    // Size the lattice so nothing reaches an edge: the empty-cavity run rings
    // down with amplitude factor c^2 per tick pair.
    const long drain = c > 0.0
        ? static_cast<long>(std::ceil(std::log(1e-6) / (2.0 * std::log(std::max(c, 0.1))))) + 64
        : 64;
    const long t_total = pulse_len + drain;
    const long m = t_total + 2;
    const std::size_t cells = static_cast<std::size_t>(2 * m + 1);
    const std::size_t dim = 2 * cells;
    const auto r_idx = [&](long n) { return static_cast<std::size_t>(n + m); };
    const auto l_idx = [&](long n) { return cells + static_cast<std::size_t>(n + m); };

    const double s = std::sqrt(1.0 - c * c);
    const cplx is{0.0, s};
    auto tick = std::make_shared<SparseUnitary>(dim);
    for (long n = -m; n <= m; ++n) {
        if (n == 0) {
            tick->add(l_idx(0), r_idx(0), c);
            tick->add(r_idx(1), r_idx(0), is);
            tick->add(r_idx(0), l_idx(0), c);
            tick->add(l_idx(-1), l_idx(0), is);
        } else if (n == -1) {
            tick->add(l_idx(-1), r_idx(-1), c);
            tick->add(r_idx(0), r_idx(-1), is);
            tick->add(l_idx(-2), l_idx(-1), 1.0);
        } else if (n == 1) {
            tick->add(r_idx(1), l_idx(1), c);
            tick->add(l_idx(0), l_idx(1), is);
            tick->add(r_idx(2), r_idx(1), 1.0);
        } else {
            // Free shifts, wrapping at the edges (never populated: the lattice
            // is sized past the causal horizon).
            tick->add(n == m ? r_idx(-m) : r_idx(n + 1), r_idx(n), 1.0);
            tick->add(n == -m ? l_idx(m) : l_idx(n - 1), l_idx(n), 1.0);
        }
    }

    Protocol protocol;
    protocol.initial.assign(dim, cplx{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(pulse_len));
    for (long j = 1; j <= pulse_len; ++j) protocol.initial[r_idx(-j)] = amp;
    protocol.mask = make_mask({r_idx(0), l_idx(0)});
    const Step tick_step = unitary_step(std::shared_ptr<const SparseUnitary>(tick));
    protocol.steps.reserve(static_cast<std::size_t>(2 * t_total));
    for (long t = 0; t < t_total; ++t) {
        protocol.steps.push_back(interaction_step());
        protocol.steps.push_back(tick_step);
    }
    Projective proj;
    proj.labels.assign(dim, Outcome::kInconclusive);
    for (long n = 1; n <= m; ++n) proj.labels[r_idx(n)] = Outcome::kIdent1;
    for (long n = -m; n <= -1; ++n) proj.labels[l_idx(n)] = Outcome::kIdent2;
    protocol.measurement = std::move(proj);

    const DiscriminationPair pair{object_from_alpha(cplx{1.0, 0.0}), obj2};
    out.trace = run_pair(protocol, pair);
    out.bound = verify_bound(out.trace);
    return out;
}

}  // namespace afm
