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

#ifndef AFMSIM_ZENO_HPP
#define AFMSIM_ZENO_HPP

#include <vector>

#include "afm/protocol.hpp"
#include "afm/types.hpp"

namespace afm {

/// Repeated-rotation protocol on a two-level system (basis: v = 0, h = 1,
/// interaction on h). Each round rotates by theta, applies the interaction
/// step, and closes with a unitary returning the object-present state to v.

/// Angle of the object-present state after one rotation by theta followed by
/// the contraction of the h component by alpha2: tan(theta') = alpha2 tan(theta).
double theta_prime(double theta, double alpha2);

/// Norm of the object-present state after one round: sqrt(cos^2 + a2^2 sin^2).
double gamma(double theta, double alpha2);

/// Large-n estimate of gamma when theta solves the quarter-turn condition:
/// gamma ~= 1 - (1 + a2) pi^2 / (8 (1 - a2) n^2). Diagnostic only; the exact
/// gamma is authoritative.
double gamma_large_n_approx(double alpha2, long n);

/// Smallest theta with n (theta - theta'(theta)) = pi/2, by bisection on the
/// monotone branch below the residual's unique peak. Throws when no n rounds
/// of any theta can accumulate the quarter turn.
double solve_theta(double alpha2, long n);

/// Closed-form identification probability for the present object: gamma^(2n).
double predict_p_ident2(double alpha2, long n);

/// Signed rotation schedule plus the closing unitaries (trivial rotations for
/// the real-amplitude build). n_rounds counts interaction steps.
struct ZenoSchedule {
    std::vector<double> rotations;  // signed angles, one per pure-rotation step
    long n_rounds = 0;
    std::vector<double> omegas;     // per-round polar-angle advance of the no-object state
    double theta = 0.0;
    double theta_prime = 0.0;
    double chi_final = 0.0;         // accumulated advance; pi/2 when exactly attainable
    double predicted_p_ident_2 = 1.0;
};

struct ZenoBuild {
    Protocol protocol;
    ZenoSchedule schedule;
};

/// Real-amplitude build: n rounds of [rotate(theta), interact, rotate(-theta')]
/// with measurement h -> object absent, v -> object present.
ZenoBuild build_zeno_real(double alpha2, long n);

/// Complex-amplitude build (phase convention alpha1 = 1). Each round's closing
/// step is the determinant-1 unitary sending the normalized object-present
/// state to v while keeping the no-object state a real ray; full rounds run
/// while the per-round advance omega stays in [theta - theta', theta + theta']
/// and a final partial round tops the accumulated advance up to pi/2, exactly
/// when the phase allows it and to the closest approach otherwise.
ZenoBuild build_zeno_complex(cplx alpha2, long n);

}  // namespace afm

#endif
