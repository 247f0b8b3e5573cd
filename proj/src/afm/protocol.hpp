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

#ifndef AFMSIM_PROTOCOL_HPP
#define AFMSIM_PROTOCOL_HPP

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "afm/matrix.hpp"
#include "afm/types.hpp"

namespace afm {

using StateVector = std::vector<cplx>;

/// Basis indices on which an interaction step can act.
struct InteractionMask {
    std::vector<std::size_t> indices;  // sorted, unique
};

InteractionMask make_mask(std::vector<std::size_t> indices);

/// One protocol step: a unitary (dense or sparse storage) or an interaction
/// step. The object's transmission amplitude is supplied at run time, so the
/// same protocol serves both members of a discrimination pair.
struct UnitaryStep {
    std::shared_ptr<const Matrix> dense;
    std::shared_ptr<const SparseUnitary> sparse;  // exactly one of the two is set
};
struct IStep {};

using Step = std::variant<UnitaryStep, IStep>;

/// Wraps a dense matrix as a step, validating unitarity once.
Step unitary_step(Matrix m);
Step unitary_step(std::shared_ptr<const Matrix> m);
Step unitary_step(std::shared_ptr<const SparseUnitary> m);
inline Step interaction_step() { return IStep{}; }

enum class Outcome { kIdent1, kIdent2, kInconclusive };

/// Final measurement: either a basis-projective labelling or the optimal
/// unambiguous discrimination of the two final pure states.
struct Projective {
    std::vector<Outcome> labels;  // one per basis index
};
struct UnambiguousPair {};

using MeasurementSpec = std::variant<Projective, UnambiguousPair>;

struct Protocol {
    StateVector initial;
    InteractionMask mask;
    std::vector<Step> steps;
    MeasurementSpec measurement;

    std::size_t dim() const { return initial.size(); }
};

/// Validates dimensions, the unit initial norm, mask bounds and projective
/// label coverage. Throws std::invalid_argument on violation.
void validate(const Protocol& protocol);

/// Two-arm interferometer with a 50/50 splitter on each side of a single
/// interaction step on arm 1. The dark port (index 1) is labelled "object
/// present"; the bright port stays inconclusive, so an absent object is never
/// positively identified.
Protocol elitzur_vaidman_preset();

}  // namespace afm

#endif
