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

#include "afm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace afm {

namespace {

cplx gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return cplx{re, im};
}

cplx random_disc_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double r = std::sqrt(uni(rng));
    const double phi = 2.0 * std::numbers::pi * uni(rng);
    return std::polar(r, phi);
}

}  // namespace

Matrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    Matrix m(dim);
    for (auto& z : m.a) z = gaussian(rng);
    // Modified Gram-Schmidt on the columns.
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t p = 0; p < j; ++p) {
            cplx proj{0.0, 0.0};
            for (std::size_t r = 0; r < dim; ++r) proj += std::conj(m.at(r, p)) * m.at(r, j);
            for (std::size_t r = 0; r < dim; ++r) m.at(r, j) -= proj * m.at(r, p);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < dim; ++r) nrm += abs_sq(m.at(r, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) return random_unitary(dim, rng);  // singular draw; retry
        for (std::size_t r = 0; r < dim; ++r) m.at(r, j) /= nrm;
    }
    return m;
}

Protocol random_protocol(std::mt19937_64& rng, std::size_t dim_max, std::size_t steps_max) {
    std::uniform_int_distribution<std::size_t> dim_dist(2, dim_max);
    const std::size_t dim = dim_dist(rng);

    Protocol p;
    p.initial.resize(dim);
    double nrm = 0.0;
    for (auto& z : p.initial) {
        z = gaussian(rng);
        nrm += abs_sq(z);
    }
    nrm = std::sqrt(nrm);
    for (auto& z : p.initial) z /= nrm;

    std::uniform_int_distribution<std::size_t> mask_count(1, dim);
    std::vector<std::size_t> all(dim);
    for (std::size_t i = 0; i < dim; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(mask_count(rng));
    p.mask = make_mask(all);

    std::uniform_int_distribution<std::size_t> step_count(1, steps_max);
    std::uniform_int_distribution<int> coin(0, 1);
    const std::size_t n_steps = step_count(rng);
    bool has_istep = false;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const bool last = (i + 1 == n_steps);
        if ((last && !has_istep) || coin(rng) == 0) {
            p.steps.push_back(interaction_step());
            has_istep = true;
        } else {
            p.steps.push_back(unitary_step(random_unitary(dim, rng)));
        }
    }
    p.measurement = UnambiguousPair{};
    validate(p);
    return p;
}

DiscriminationPair random_object_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double which = uni(rng);
    if (which < 0.15) {  // both real
        return make_pair(cplx{uni(rng), 0.0}, cplx{uni(rng), 0.0});
    }
    if (which < 0.30) {  // nearly degenerate pair
        const cplx base = random_disc_point(rng) * 0.999;
        const cplx nudge = gaussian(rng) * 1e-6;
        cplx other = base + nudge;
        if (std::abs(other) > 1.0) other /= std::abs(other);
        return make_pair(base, other);
    }
    return make_pair(random_disc_point(rng), random_disc_point(rng));
}

SweepReport verify_sweep(const SweepOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (options.dim_max < 2) throw std::invalid_argument("dim_max must be >= 2");
    std::mt19937_64 rng(options.seed);

    SweepReport rep;
    rep.trials = options.trials;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    for (long t = 0; t < options.trials; ++t) {
        const Protocol protocol = random_protocol(rng, options.dim_max, options.steps_max);
        const DiscriminationPair pair = random_object_pair(rng);
        const PairTrace trace = run_pair(protocol, pair);
        const BoundReport bound = verify_bound(trace);

        double slack = bound.product - bound.eta_sq;
        if (bound.cs_applicable) {
            slack = std::min(slack, bound.rhs_cs - bound.lhs_cs);
            slack = std::min(slack, bound.rhs_final - bound.lhs_final);
        }
        const bool accounting_ok =
            std::abs(trace.trace1.final_norm_sq + trace.trace1.p_interact - 1.0) <= 1e-9 &&
            std::abs(trace.trace2.final_norm_sq + trace.trace2.p_interact - 1.0) <= 1e-9;
        if (slack < rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_bound = bound;
        }
        rep.worst_recursion_dev = std::max(rep.worst_recursion_dev, trace.recursion_max_dev);
        rep.worst_accounting_dev = std::max(
            rep.worst_accounting_dev,
            std::max(trace.trace1.accounting_dev, trace.trace2.accounting_dev));
        if (!bound.cs_holds || !bound.final_holds || !bound.theorem_holds || !accounting_ok) {
            ++rep.failures;
        }
    }
    return rep;
}

}  // namespace afm
