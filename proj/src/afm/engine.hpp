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

#ifndef AFMSIM_ENGINE_HPP
#define AFMSIM_ENGINE_HPP

#include <cstddef>
#include <vector>

#include "afm/protocol.hpp"
#include "afm/types.hpp"

namespace afm {

/// Which identification label counts as correct for a single-object run.
enum class Role { kObject1 = 1, kObject2 = 2 };

/// Record of one conditional evolution. States are kept un-normalized: the
/// squared final norm is the probability that no absorption occurred, and
/// p_ident + p_notident + p_interact accounts for every history.
struct RunTrace {
    std::vector<double> v_norms_sq;  // in-mask probability mass before each contraction
    double p_interact = 0.0;
    StateVector final_state;
    double final_norm_sq = 1.0;
    double p_ident = 0.0;
    double p_notident = 0.0;
    /// Worst |final_norm_sq + p_interact - 1| style residual seen while stepping.
    double accounting_dev = 0.0;
};

struct PairTrace {
    RunTrace trace1;
    RunTrace trace2;
    std::vector<cplx> f_history;  // overlap after each interaction step
    double recursion_max_dev = 0.0;
    DiscriminationPair pair;
};

/// Everything the inequality chain produces for one pair run. The cs_* fields
/// are reported not-applicable when alpha1 == alpha2 (zero denominator); the
/// product bound is still checked against eta_sq = 1 in that case.
struct BoundReport {
    double lhs_cs = 0.0;
    double rhs_cs = 0.0;
    double lhs_final = 0.0;
    double rhs_final = 0.0;
    double product = 0.0;
    double eta_sq = 0.0;
    bool cs_applicable = true;
    bool cs_holds = true;
    bool final_holds = true;
    bool theorem_holds = true;
};

/// Slack allowed when checking the inequality chain (double accumulation over
/// runs of up to ~1e4 steps).
inline constexpr double kBoundSlack = 1e-9;
/// Per-step tolerance on the overlap recursion; deviations past 1e-8 are an
/// engine defect and raise.
inline constexpr double kRecursionTol = 1e-10;
inline constexpr double kRecursionHardTol = 1e-8;

/// Applies a unitary step to a state. Exposed mainly for tests; the matrix is
/// validated like a protocol step.
StateVector apply_unitary(const StateVector& state, const Matrix& u);

/// One interaction step: multiplies in-mask components by the object's alpha.
/// Returns the new state and the pre-contraction in-mask probability mass.
std::pair<StateVector, double> apply_istep(const StateVector& state,
                                           const InteractionMask& mask,
                                           const ObjectModel& obj);

/// Runs one object through the protocol. The measurement must be projective;
/// unambiguous pair discrimination is inherently pairwise (use run_pair).
RunTrace run(const Protocol& protocol, const ObjectModel& obj, Role role);

/// Runs both objects through identical steps in lockstep, recording the
/// overlap f^k after each interaction step and verifying the recursion
/// f^{k+1} = f^k - (1 - conj(a1) a2) <v1|v2> at every one of them.
PairTrace run_pair(const Protocol& protocol, const DiscriminationPair& pair);

/// Identification probabilities for both objects under the protocol's
/// measurement spec, evaluated on the recorded final states.
std::pair<double, double> discriminate(const Protocol& protocol, const PairTrace& trace);

/// Evaluates the Cauchy-Schwarz chain and the product bound on a finished
/// pair trace.
BoundReport verify_bound(const PairTrace& trace);

/// Limit of repeating the protocol whenever the outcome is inconclusive:
/// p_ident / (1 - p_notident). The three inputs must be a probability split.
double amplify(double p_ident, double p_notident, double p_interact);

}  // namespace afm

#endif
