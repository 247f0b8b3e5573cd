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

#include "afm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afm {

namespace {

constexpr double kNormDriftTol = 1e-9;
constexpr double kIstepNormTol = 1e-12;

/// In-mask probability mass and in-mask inner product of two states.
double mask_norm_sq(const StateVector& s, const InteractionMask& mask) {
    double acc = 0.0;
    for (std::size_t idx : mask.indices) acc += abs_sq(s[idx]);
    return acc;
}

cplx mask_inner(const StateVector& a, const StateVector& b, const InteractionMask& mask) {
    cplx acc{0.0, 0.0};
    for (std::size_t idx : mask.indices) acc += std::conj(a[idx]) * b[idx];
    return acc;
}

void contract(StateVector& s, const InteractionMask& mask, const cplx& alpha) {
    for (std::size_t idx : mask.indices) s[idx] *= alpha;
}

double projective_mass(const Projective& proj, const StateVector& s, Outcome want) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (proj.labels[i] == want) acc += abs_sq(s[i]);
    }
    return acc;
}

/// Kahan-compensated accumulator for the long interaction-probability sums.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct SingleRun {
    StateVector state;
    StateVector scratch;
    CompensatedSum v_sum;       // sum of in-mask masses
    std::vector<double> v_norms_sq;
    double norm = 1.0;          // tracked squared norm
    double accounting_dev = 0.0;

    void step_unitary(const UnitaryStep& u) {
        if (u.dense) {
            apply_into(*u.dense, state, scratch);
        } else {
            apply_into(*u.sparse, state, scratch);
        }
        state.swap(scratch);
        const double n = norm_sq(state);
        accounting_dev = std::max(accounting_dev, std::abs(n - norm));
        if (n > norm + kNormDriftTol) {
            throw std::logic_error("engine defect: unitary step increased the norm");
        }
        norm = n;
    }

    double step_interaction(const InteractionMask& mask, const ObjectModel& obj) {
        const double v = mask_norm_sq(state, mask);
        contract(state, mask, obj.alpha);
        v_norms_sq.push_back(v);
        v_sum.add(v);
        const double expected_drop = obj.beta_mag * obj.beta_mag * v;
        const double n = norm_sq(state);
        const double dev = std::abs((norm - n) - expected_drop);
        accounting_dev = std::max(accounting_dev, dev);
        // Norm recomputation noise grows with the summation length.
        const double tol = std::max(kIstepNormTol, 1e-15 * static_cast<double>(state.size()));
        if (dev > tol) {
            throw std::logic_error("engine defect: interaction step norm accounting violated");
        }
        norm = n;
        return v;
    }

    double p_interact(const ObjectModel& obj) const {
        return obj.beta_mag * obj.beta_mag * v_sum.sum;
    }
};

RunTrace finish_trace(SingleRun&& r, const ObjectModel& obj) {
    RunTrace t;
    t.v_norms_sq = std::move(r.v_norms_sq);
    t.p_interact = r.p_interact(obj);
    t.final_state = std::move(r.state);
    t.final_norm_sq = norm_sq(t.final_state);
    t.accounting_dev = std::max(r.accounting_dev,
                                std::abs(t.final_norm_sq + t.p_interact - 1.0));
    return t;
}

}  // namespace

StateVector apply_unitary(const StateVector& state, const Matrix& u) {
    if (u.dim != state.size()) throw std::invalid_argument("matrix/state dimension mismatch");
    if (!is_unitary(u)) throw std::invalid_argument("matrix is not unitary");
    return apply(u, state);
}

std::pair<StateVector, double> apply_istep(const StateVector& state,
                                           const InteractionMask& mask,
                                           const ObjectModel& obj) {
    for (std::size_t idx : mask.indices) {
        if (idx >= state.size()) throw std::invalid_argument("interaction mask index out of range");
    }
    StateVector out = state;
    const double v = mask_norm_sq(out, mask);
    contract(out, mask, obj.alpha);
    return {std::move(out), v};
}

RunTrace run(const Protocol& protocol, const ObjectModel& obj, Role role) {
    validate(protocol);
    const auto* proj = std::get_if<Projective>(&protocol.measurement);
    if (proj == nullptr) {
        throw std::invalid_argument("single-object run needs a projective measurement; "
                                    "pair measurements require run_pair");
    }
    SingleRun r;
    r.state = protocol.initial;
    for (const auto& step : protocol.steps) {
        if (const auto* u = std::get_if<UnitaryStep>(&step)) {
            r.step_unitary(*u);
        } else {
            r.step_interaction(protocol.mask, obj);
        }
    }
    RunTrace t = finish_trace(std::move(r), obj);
    const Outcome want = (role == Role::kObject1) ? Outcome::kIdent1 : Outcome::kIdent2;
    t.p_ident = projective_mass(*proj, t.final_state, want);
    t.p_notident = 1.0 - t.p_ident - t.p_interact;
    return t;
}

PairTrace run_pair(const Protocol& protocol, const DiscriminationPair& pair) {
    validate(protocol);
    PairTrace pt;
    pt.pair = pair;

    SingleRun r1;
    SingleRun r2;
    r1.state = protocol.initial;
    r2.state = protocol.initial;
    const cplx contraction = 1.0 - std::conj(pair.obj1.alpha) * pair.obj2.alpha;
    cplx f{1.0, 0.0};  // overlap of identical initial states

    for (const auto& step : protocol.steps) {
        if (const auto* u = std::get_if<UnitaryStep>(&step)) {
            r1.step_unitary(*u);
            r2.step_unitary(*u);
        } else {
            const cplx v12 = mask_inner(r1.state, r2.state, protocol.mask);
            r1.step_interaction(protocol.mask, pair.obj1);
            r2.step_interaction(protocol.mask, pair.obj2);
            const cplx f_next = inner(r1.state, r2.state);
            const double dev = std::abs(f_next - (f - contraction * v12));
            pt.recursion_max_dev = std::max(pt.recursion_max_dev, dev);
            if (dev > kRecursionHardTol) {
                throw std::logic_error("engine defect: overlap recursion violated");
            }
            f = f_next;
            pt.f_history.push_back(f);
        }
    }

    pt.trace1 = finish_trace(std::move(r1), pair.obj1);
    pt.trace2 = finish_trace(std::move(r2), pair.obj2);
    const auto [p1, p2] = discriminate(protocol, pt);
    pt.trace1.p_ident = p1;
    pt.trace1.p_notident = 1.0 - p1 - pt.trace1.p_interact;
    pt.trace2.p_ident = p2;
    pt.trace2.p_notident = 1.0 - p2 - pt.trace2.p_interact;
    return pt;
}

std::pair<double, double> discriminate(const Protocol& protocol, const PairTrace& trace) {
    if (const auto* proj = std::get_if<Projective>(&protocol.measurement)) {
        return {projective_mass(*proj, trace.trace1.final_state, Outcome::kIdent1),
                projective_mass(*proj, trace.trace2.final_state, Outcome::kIdent2)};
    }
    // Unambiguous discrimination of the two (sub-normalized) finals: each
    // succeeds with probability 1 - shat, shat being the normalized overlap.
    const double n1 = trace.trace1.final_norm_sq;
    const double n2 = trace.trace2.final_norm_sq;
    if (n1 < 1e-15 || n2 < 1e-15) {
        return {n1 < 1e-15 ? 0.0 : n1, n2 < 1e-15 ? 0.0 : n2};
    }
    const cplx f = inner(trace.trace1.final_state, trace.trace2.final_state);
    const double shat = std::min(1.0, std::abs(f) / std::sqrt(n1 * n2));
    return {n1 * (1.0 - shat), n2 * (1.0 - shat)};
}

BoundReport verify_bound(const PairTrace& trace) {
    BoundReport rep;
    const cplx f_final = trace.f_history.empty() ? cplx{1.0, 0.0} : trace.f_history.back();
    double sum_v1 = 0.0;
    double sum_v2 = 0.0;
    for (double v : trace.trace1.v_norms_sq) sum_v1 += v;
    for (double v : trace.trace2.v_norms_sq) sum_v2 += v;

    rep.eta_sq = bound_rhs(trace.pair);
    rep.product = (1.0 - trace.trace1.p_ident) * (1.0 - trace.trace2.p_ident);
    rep.theorem_holds = rep.product >= rep.eta_sq - kBoundSlack;

    rep.rhs_cs = sum_v1 * sum_v2;
    rep.rhs_final = trace.trace1.p_interact * trace.trace2.p_interact;
    if (alphas_equal(trace.pair)) {
        rep.cs_applicable = false;
        rep.lhs_cs = 0.0;
        rep.lhs_final = 0.0;
        rep.cs_holds = true;
        rep.final_holds = true;
        return rep;
    }
    const double den = abs_sq(1.0 - std::conj(trace.pair.obj1.alpha) * trace.pair.obj2.alpha);
    const double b1_sq = trace.pair.obj1.beta_mag * trace.pair.obj1.beta_mag;
    const double b2_sq = trace.pair.obj2.beta_mag * trace.pair.obj2.beta_mag;
    rep.lhs_cs = abs_sq(1.0 - f_final) / den;
    rep.lhs_final = rep.lhs_cs * b1_sq * b2_sq;
    rep.cs_holds = rep.lhs_cs <= rep.rhs_cs + kBoundSlack;
    rep.final_holds = rep.lhs_final <= rep.rhs_final + kBoundSlack;
    return rep;
}

double amplify(double p_ident, double p_notident, double p_interact) {
    if (p_ident < -1e-12 || p_notident < -1e-12 || p_interact < -1e-12 ||
        std::abs(p_ident + p_notident + p_interact - 1.0) > 1e-9) {
        throw std::invalid_argument("amplify expects a probability split summing to 1");
    }
    if (p_notident >= 1.0 - 1e-15) {
        throw std::domain_error("protocol never concludes: nothing to amplify");
    }
    return p_ident / (1.0 - p_notident);
}

}  // namespace afm
