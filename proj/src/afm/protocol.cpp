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

#include "afm/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace afm {

InteractionMask make_mask(std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.empty()) {
        throw std::invalid_argument("interaction mask must not be empty");
    }
    return InteractionMask{std::move(indices)};
}

Step unitary_step(Matrix m) {
    return unitary_step(std::make_shared<const Matrix>(std::move(m)));
}

Step unitary_step(std::shared_ptr<const Matrix> m) {
    if (!m || m->dim == 0) throw std::invalid_argument("null unitary");
    if (!is_unitary(*m)) throw std::invalid_argument("step matrix is not unitary");
    return UnitaryStep{std::move(m), nullptr};
}

Step unitary_step(std::shared_ptr<const SparseUnitary> m) {
    if (!m || m->dim == 0) throw std::invalid_argument("null unitary");
    if (!is_unitary(*m)) throw std::invalid_argument("sparse step matrix is not unitary");
    return UnitaryStep{nullptr, std::move(m)};
}

void validate(const Protocol& protocol) {
    const std::size_t d = protocol.dim();
    if (d == 0) throw std::invalid_argument("protocol has empty initial state");
    for (const auto& z : protocol.initial) require_finite(z, "initial state entry");
    if (std::abs(norm_sq(protocol.initial) - 1.0) > 1e-12) {
        throw std::invalid_argument("initial state is not normalized");
    }
    if (protocol.mask.indices.empty()) {
        throw std::invalid_argument("interaction mask must not be empty");
    }
    for (std::size_t idx : protocol.mask.indices) {
        if (idx >= d) throw std::invalid_argument("interaction mask index out of range");
    }
    for (const auto& step : protocol.steps) {
        if (const auto* u = std::get_if<UnitaryStep>(&step)) {
            const std::size_t sd = u->dense ? u->dense->dim : u->sparse->dim;
            if (sd != d) throw std::invalid_argument("unitary dimension mismatch");
        }
    }
    if (const auto* proj = std::get_if<Projective>(&protocol.measurement)) {
        if (proj->labels.size() != d) {
            throw std::invalid_argument("projective label map must cover every basis index");
        }
    }
}

Protocol elitzur_vaidman_preset() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix splitter(2);
    splitter.at(0, 0) = r;
    splitter.at(0, 1) = r;
    splitter.at(1, 0) = r;
    splitter.at(1, 1) = -r;

    Protocol p;
    p.initial = {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    p.mask = make_mask({1});
    auto bs = std::make_shared<const Matrix>(splitter);
    p.steps.push_back(unitary_step(bs));
    p.steps.push_back(interaction_step());
    p.steps.push_back(unitary_step(bs));
    p.measurement = Projective{{Outcome::kInconclusive, Outcome::kIdent2}};
    validate(p);
    return p;
}

}  // namespace afm
