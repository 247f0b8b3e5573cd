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

#ifndef AFMSIM_TYPES_HPP
#define AFMSIM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace afm {

using cplx = std::complex<double>;

/// Squared magnitude without the sqrt/round-trip of std::abs.
inline double abs_sq(const cplx& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

inline bool is_finite(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(const cplx& z, const char* what) {
    if (!is_finite(z)) {
        throw std::invalid_argument(std::string(what) + " must have finite components");
    }
}

/// A semi-transparent object: transmission amplitude alpha plus the derived
/// interaction magnitude |beta| with |alpha|^2 + |beta|^2 = 1. Only the
/// magnitude of beta is kept; no in-scope quantity depends on its phase.
struct ObjectModel {
    cplx alpha{1.0, 0.0};
    double beta_mag = 0.0;
};

/// Builds an ObjectModel from a transmission amplitude.
///
/// |alpha| must not exceed 1 by more than 1e-12; values within that slack are
/// clamped onto the unit circle so a transparent object gets beta == 0 exactly.
ObjectModel object_from_alpha(cplx alpha);

struct DiscriminationPair {
    ObjectModel obj1;
    ObjectModel obj2;
};

inline DiscriminationPair make_pair(cplx alpha1, cplx alpha2) {
    return DiscriminationPair{object_from_alpha(alpha1), object_from_alpha(alpha2)};
}

/// Tolerance under which two transmission amplitudes count as equal (the
/// degenerate discrimination case).
inline constexpr double kAlphaEqualTol = 1e-12;

inline bool alphas_equal(const DiscriminationPair& pair) {
    return std::abs(pair.obj1.alpha - pair.obj2.alpha) <= kAlphaEqualTol;
}

/// The discrimination bound parameter |beta1 beta2| / |1 - conj(alpha1) alpha2|,
/// defined as exactly 1 when alpha1 == alpha2 (continuity covers the 0/0 case
/// of two equal unit-modulus amplitudes). Always in [0, 1].
double eta(const DiscriminationPair& pair);

/// |1 - conj(a1) a2|^2 - |b1 b2|^2 - |a1 - a2|^2; identically zero for every
/// valid pair, so the returned value is a pure roundoff residual.
double identity_gap(const DiscriminationPair& pair);

/// eta squared: the right-hand side of (1 - P1)(1 - P2) >= eta^2.
double bound_rhs(const DiscriminationPair& pair);

}  // namespace afm

#endif
