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

#include "afm/types.hpp"

#include <algorithm>
#include <cmath>

namespace afm {

ObjectModel object_from_alpha(cplx alpha) {
    require_finite(alpha, "alpha");
    const double mag = std::abs(alpha);
    if (mag > 1.0 + 1e-12) {
        throw std::invalid_argument("alpha magnitude " + std::to_string(mag) +
                                    " exceeds 1: not a physical transparency");
    }
    if (mag > 1.0) {
        alpha /= mag;  // clamp onto the unit circle
    }
    ObjectModel obj;
    obj.alpha = alpha;
    obj.beta_mag = std::sqrt(std::max(0.0, 1.0 - abs_sq(obj.alpha)));
    return obj;
}

double eta(const DiscriminationPair& pair) {
    if (alphas_equal(pair)) {
        return 1.0;
    }
    const double num = pair.obj1.beta_mag * pair.obj2.beta_mag;
    const double den = std::abs(1.0 - std::conj(pair.obj1.alpha) * pair.obj2.alpha);
    return std::clamp(num / den, 0.0, 1.0);
}

double identity_gap(const DiscriminationPair& pair) {
    const cplx a1 = pair.obj1.alpha;
    const cplx a2 = pair.obj2.alpha;
    const double b1b2 = pair.obj1.beta_mag * pair.obj2.beta_mag;
    return abs_sq(1.0 - std::conj(a1) * a2) - b1b2 * b1b2 - abs_sq(a1 - a2);
}

double bound_rhs(const DiscriminationPair& pair) {
    const double e = eta(pair);
    return e * e;
}

}  // namespace afm
