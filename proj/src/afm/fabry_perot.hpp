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

#ifndef AFMSIM_FABRY_PEROT_HPP
#define AFMSIM_FABRY_PEROT_HPP

#include <cstddef>
#include <vector>

#include "afm/engine.hpp"
#include "afm/protocol.hpp"
#include "afm/types.hpp"

namespace afm {

/// Discretized two-mirror cavity. The lattice carries right- and left-moving
/// cell amplitudes R_n, L_n for n in [-M, M]; the cavity is the single cell
/// n = 0, bounded by mirrors between cells -1|0 and 0|1. One tick first
/// contracts the in-cavity amplitudes by alpha, then scatters:
///
///   R_0  -> c L_0  + is R_1        L_1 -> c R_1 + is L_0
///   R_-1 -> c L_-1 + is R_0        L_0 -> c R_0 + is L_-1
///
/// with free shifts everywhere else (c real reflection, s = sqrt(1 - c^2)).
struct FPConfig {
    double mirror_c = 0.9;
    long lattice_halfwidth = 16;  // cells -M..M
    long pulse_len = 2048;        // incoming unit-amplitude right-movers
    long t_steps = 0;             // 0: sized automatically from the ring-down

    void validate() const;
    long auto_t_steps(const cplx& alpha) const;
};

struct FPState {
    std::vector<cplx> r_amps;  // index n + M
    std::vector<cplx> l_amps;
};

struct FPReport {
    cplx fL_sim;
    cplx fR_sim;
    double p_interact = 0.0;
    cplx fL_closed;
    double abs_err = 0.0;
    std::size_t plateau_begin = 0;
    std::size_t plateau_len = 0;
};

/// One tick on a standalone lattice state. Amplitudes shifted past the lattice
/// edges are appended to the outgoing ledgers (one entry per tick per side).
/// Returns the pre-contraction cavity mass.
double fp_step(FPState& state, const FPConfig& config, const ObjectModel& obj,
               std::vector<cplx>& ledger_left, std::vector<cplx>& ledger_right);

/// Steady-state reflection amplitude per unit incoming cell:
/// c (1 - alpha^2) / (1 - c^2 alpha^2).
cplx closed_form_fL(double c, cplx alpha);

/// Drives a pulse train through the cavity and reads the per-cell outgoing
/// amplitudes off the steady plateau of each ledger. Throws when no plateau
/// of the required length exists (t_steps too small).
FPReport simulate_fp(const FPConfig& config, const ObjectModel& obj);

/// The same cavity dynamics as an engine protocol (lattice shifts as one
/// sparse unitary per tick), run as the pair (alpha1 = 1, alpha2) with
/// left-exiting cells labelled "object present" and right-exiting "absent".
struct FPDiscrimination {
    BoundReport bound;
    PairTrace trace;
    bool degenerate_pair = false;  // alpha2 == 1: nothing to discriminate
};
FPDiscrimination fp_discrimination_report(double c, cplx alpha2, long pulse_len);

/// Plateau detector: the longest run of consecutive ledger entries that agree
/// pairwise within 1e-9; runs shorter than 16 cells are rejected.
std::pair<std::size_t, std::size_t> find_plateau(const std::vector<cplx>& vals);

}  // namespace afm

#endif
