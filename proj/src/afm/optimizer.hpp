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

#ifndef AFMSIM_OPTIMIZER_HPP
#define AFMSIM_OPTIMIZER_HPP

#include <vector>

#include "afm/engine.hpp"
#include "afm/protocol.hpp"
#include "afm/zeno.hpp"

namespace afm {

/// Generator of near-optimal rotation schedules for a real amplitude pair.
/// Fixing the ratio v2/v1 of the interacting components to a constant lambda
/// at every step is the equality condition of the Cauchy-Schwarz bound; the
/// lambda search then drives the final overlap to zero.

/// Real two-component amplitudes of both conditional states at one step.
struct OptState {
    double a1 = 1.0;
    double b1 = 0.0;
    double a2 = 1.0;
    double b2 = 0.0;
    long k = 0;
};

struct OptimizerConfig {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double epsilon = 1e-4;
    double lambda_lo = 0.5;
    double lambda_hi = 2.0;
    double orth_tol = 1e-8;
    long max_steps = 1000000;
    int grid_points = 200;

    void validate() const;
};

/// Rotation angle making the post-rotation interacting components satisfy
/// v2 = lambda v1: atan2(lambda b1 - b2, a2 - lambda a1), principal value.
/// Throws when numerator and denominator both vanish.
double step_angle(const OptState& state, double lambda);

enum class EvolveStatus { kHalted, kStalled, kMaxSteps, kDegenerate };

struct Evolution {
    std::vector<OptState> trajectory;  // states after each step (when recorded)
    std::vector<double> thetas;
    std::vector<double> f_history;
    double f_final = 1.0;
    long halted_at = 0;
    EvolveStatus status = EvolveStatus::kHalted;
};

/// Iterates rotation-then-interaction from a1 = a2 = sqrt(1 - eps^2),
/// b1 = b2 = eps, halting at the first step with overlap f <= orth_tol.
/// Stalled fixed points (overlap frozen above the tolerance) end the run
/// early; hitting max_steps is reported, never silently truncated.
Evolution evolve(const OptimizerConfig& config, double lambda, bool record = true);

struct OptimizerReport {
    double lambda_star = 0.0;
    ZenoSchedule schedule;
    long n_steps = 0;
    double p_ident_1 = 0.0;
    double p_ident_2 = 0.0;
    double product = 0.0;
    double eta_sq = 0.0;
    double final_overlap = 1.0;
    bool success = false;
    BoundReport bound;
    PairTrace trace;
};

/// Grid scan plus golden-section refinement of the terminal |f| over lambda,
/// followed by a signed-overlap bisection polish. The winning schedule is
/// replayed through the protocol engine with the unambiguous pair measurement.
OptimizerReport search_lambda(const OptimizerConfig& config);

/// Protocol equivalent to a rotation schedule: one rotation plus interaction
/// step per angle, starting from (sqrt(1-eps^2), eps), measured unambiguously.
Protocol schedule_protocol(const std::vector<double>& thetas, double epsilon);

}  // namespace afm

#endif
