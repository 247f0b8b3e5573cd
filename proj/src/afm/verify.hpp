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

#ifndef AFMSIM_VERIFY_HPP
#define AFMSIM_VERIFY_HPP

#include <cstdint>
#include <random>

#include "afm/engine.hpp"
#include "afm/protocol.hpp"

namespace afm {

struct SweepOptions {
    std::uint64_t seed = 12345;
    long trials = 1000;
    std::size_t dim_max = 8;
    std::size_t steps_max = 20;
};

struct SweepReport {
    long trials = 0;
    long failures = 0;
    /// Smallest margin seen across the inequality chain; negative means a
    /// violation beyond tolerance was close.
    double worst_slack = 0.0;
    /// Largest per-step recursion and accounting deviations over the sweep.
    double worst_recursion_dev = 0.0;
    double worst_accounting_dev = 0.0;
    /// Pair report of the worst-slack trial (for diagnostics).
    BoundReport worst_bound;
};

/// Draws a Haar-ish random unitary (complex Gaussian matrix, Gram-Schmidt).
Matrix random_unitary(std::size_t dim, std::mt19937_64& rng);

/// Random protocol: dimension 2..dim_max, up to steps_max steps mixing
/// unitaries and interaction steps (at least one of the latter), a random
/// non-empty mask and the unambiguous pair measurement.
Protocol random_protocol(std::mt19937_64& rng, std::size_t dim_max, std::size_t steps_max);

/// Random transmission pair: mostly generic complex amplitudes in the unit
/// disc, with real and near-degenerate pairs mixed in.
DiscriminationPair random_object_pair(std::mt19937_64& rng);

/// Runs `trials` random protocol/pair combinations and checks the full
/// inequality chain plus the accounting invariants on every one.
SweepReport verify_sweep(const SweepOptions& options);

}  // namespace afm

#endif
