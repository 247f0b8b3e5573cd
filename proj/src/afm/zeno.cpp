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

#include "afm/zeno.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace afm {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_domain(double theta, double alpha2) {
    if (!(theta >= 0.0 && theta <= kHalfPi)) {
        throw std::invalid_argument("theta must lie in [0, pi/2]");
    }
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) {
        throw std::invalid_argument("alpha2 must lie in [0, 1]");
    }
}

/// Polar angle of the no-object state after one aligned round: the state
/// (cos chi, sin chi) is rotated by t and projected against the object-present
/// direction (cos tp, e^{i phi2} sin tp).
double advance_to(double chi, double t, double mag, double phi2) {
    const double tp = theta_prime(t, mag);
    const cplx z = std::cos(tp) * std::cos(chi + t) +
                   std::polar(std::sin(tp) * std::sin(chi + t), -phi2);
    return std::acos(std::min(1.0, std::abs(z)));
}

/// Determinant-1 closing unitary for one round: sends the normalized
/// object-present state to e^{i delta} v and its orthogonal complement to
/// e^{-i delta} h. delta is chosen so the no-object state stays a real ray.
Matrix closing_unitary(double tp, double phi2, double delta) {
    const double ct = std::cos(tp);
    const double st = std::sin(tp);
    const cplx ed = std::polar(1.0, delta);
    Matrix v(2);
    v.at(0, 0) = ed * ct;
    v.at(0, 1) = ed * std::polar(st, -phi2);
    v.at(1, 0) = std::conj(ed) * std::polar(-st, phi2);
    v.at(1, 1) = std::conj(ed) * ct;
    return v;
}

double closer_delta(double chi, double t, double tp, double phi2) {
    const double cv = std::cos(chi + t);
    const double sv = std::sin(chi + t);
    const cplx overlap_v = std::cos(tp) * cv + std::polar(std::sin(tp) * sv, -phi2);
    const cplx overlap_h = std::polar(-std::sin(tp) * cv, phi2) + std::cos(tp) * sv;
    if (std::abs(overlap_v) < 1e-14 || std::abs(overlap_h) < 1e-14) {
        return 0.0;  // landing on a pole; any phase works
    }
    return 0.5 * (std::arg(overlap_h) - std::arg(overlap_v));
}

void append_round(ZenoBuild& build, double t, double mag, double phi2, double chi) {
    const double tp = theta_prime(t, mag);
    build.protocol.steps.push_back(unitary_step(Matrix::rotation2(t)));
    build.protocol.steps.push_back(interaction_step());
    build.protocol.steps.push_back(
        unitary_step(closing_unitary(tp, phi2, closer_delta(chi, t, tp, phi2))));
    build.schedule.rotations.push_back(t);
    const double g = gamma(t, mag);
    build.schedule.predicted_p_ident_2 *= g * g;
    build.schedule.n_rounds += 1;
}

}  // namespace

double theta_prime(double theta, double alpha2) {
    check_domain(theta, alpha2);
    return std::atan2(alpha2 * std::sin(theta), std::cos(theta));
}

double gamma(double theta, double alpha2) {
    check_domain(theta, alpha2);
    return std::hypot(std::cos(theta), alpha2 * std::sin(theta));
}

double gamma_large_n_approx(double alpha2, long n) {
    return 1.0 - (1.0 + alpha2) * std::numbers::pi * std::numbers::pi /
                     (8.0 * (1.0 - alpha2) * static_cast<double>(n) * static_cast<double>(n));
}

double solve_theta(double alpha2, long n) {
    if (!(alpha2 >= 0.0 && alpha2 < 1.0)) {
        throw std::invalid_argument("alpha2 must lie in [0, 1)");
    }
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    const double target = kHalfPi / static_cast<double>(n);
    if (alpha2 == 0.0) {
        return target;  // theta' vanishes identically
    }
    // theta - theta'(theta) has a single peak at cos^2(theta) = a2/(1+a2).
    const double peak = std::acos(std::sqrt(alpha2 / (1.0 + alpha2)));
    if (peak - theta_prime(peak, alpha2) < target) {
        throw std::invalid_argument("n is too small: no rotation angle accumulates a quarter "
                                    "turn in n rounds at this transparency");
    }
    double lo = 1e-15;
    double hi = peak;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid - theta_prime(mid, alpha2) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double predict_p_ident2(double alpha2, long n) {
    const double g = gamma(solve_theta(alpha2, n), alpha2);
    return std::pow(g, 2.0 * static_cast<double>(n));
}

ZenoBuild build_zeno_real(double alpha2, long n) {
    if (!(alpha2 >= 0.0 && alpha2 < 1.0)) {
        throw std::invalid_argument("alpha2 must lie in [0, 1)");
    }
    const double theta = solve_theta(alpha2, n);
    const double tp = theta_prime(theta, alpha2);

    ZenoBuild build;
    build.schedule.theta = theta;
    build.schedule.theta_prime = tp;
    build.protocol.initial = {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    build.protocol.mask = make_mask({1});
    auto open = std::make_shared<const Matrix>(Matrix::rotation2(theta));
    auto close = std::make_shared<const Matrix>(Matrix::rotation2(-tp));
    for (long k = 0; k < n; ++k) {
        build.protocol.steps.push_back(unitary_step(open));
        build.protocol.steps.push_back(interaction_step());
        build.protocol.steps.push_back(unitary_step(close));
        build.schedule.rotations.push_back(theta);
        build.schedule.rotations.push_back(-tp);
        build.schedule.omegas.push_back(theta - tp);
    }
    build.schedule.n_rounds = n;
    build.schedule.chi_final = static_cast<double>(n) * (theta - tp);
    const double g = gamma(theta, alpha2);
    build.schedule.predicted_p_ident_2 = std::pow(g, 2.0 * static_cast<double>(n));
    build.protocol.measurement = Projective{{Outcome::kIdent2, Outcome::kIdent1}};
    validate(build.protocol);
    return build;
}

ZenoBuild build_zeno_complex(cplx alpha2, long n) {
    require_finite(alpha2, "alpha2");
    const double mag = std::abs(alpha2);
    if (mag >= 1.0) throw std::invalid_argument("|alpha2| must be below 1");
    const double phi2 = std::arg(alpha2);
    const double theta = solve_theta(mag, n);
    const double tp = theta_prime(theta, mag);

    ZenoBuild build;
    build.schedule.theta = theta;
    build.schedule.theta_prime = tp;
    build.protocol.initial = {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    build.protocol.mask = make_mask({1});
    build.schedule.predicted_p_ident_2 = 1.0;

    double chi = 0.0;
    bool landed = false;
    for (long k = 0; k < n + 1; ++k) {
        const double nchi = advance_to(chi, theta, mag, phi2);
        if (nchi > kHalfPi + 1e-12) break;
        if (nchi < chi + (theta - tp) - 1e-9) break;  // advance folded back
        append_round(build, theta, mag, phi2, chi);
        build.schedule.omegas.push_back(nchi - chi);
        chi = nchi;
        if (chi >= kHalfPi - 1e-12) {
            landed = true;
            break;
        }
    }

    if (!landed) {
        // Final partial round. The advance over partial angles rises to a
        // single peak (capped at pi/2) and falls past the fold.
        double lo = 0.0;
        double hi = theta;
        for (int i = 0; i < 200; ++i) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (advance_to(chi, m1, mag, phi2) < advance_to(chi, m2, mag, phi2)) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        double part = 0.5 * (lo + hi);
        if (advance_to(chi, part, mag, phi2) >= kHalfPi - 1e-12) {
            // The quarter turn is exactly attainable: land on it from below.
            double blo = 0.0;
            double bhi = part;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (blo + bhi);
                if (advance_to(chi, mid, mag, phi2) < kHalfPi) {
                    blo = mid;
                } else {
                    bhi = mid;
                }
            }
            part = bhi;
        }
        const double ptp = theta_prime(part, mag);
        double omega = advance_to(chi, part, mag, phi2) - chi;
        if (omega < part - ptp - 1e-12) {
            // Fall back to the largest angle whose window bound is provable.
            double blo = 0.0;
            double bhi = part;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (blo + bhi);
                if (chi + mid + theta_prime(mid, mag) < kHalfPi) {
                    blo = mid;
                } else {
                    bhi = mid;
                }
            }
            part = blo;
            omega = advance_to(chi, part, mag, phi2) - chi;
        }
        if (part > 1e-15) {
            append_round(build, part, mag, phi2, chi);
            build.schedule.omegas.push_back(omega);
            chi += omega;
        }
    }

    build.schedule.chi_final = chi;
    build.protocol.measurement = Projective{{Outcome::kIdent2, Outcome::kIdent1}};
    validate(build.protocol);
    return build;
}

}  // namespace afm
