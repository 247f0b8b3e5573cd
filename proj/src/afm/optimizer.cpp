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

#include "afm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace afm {

namespace {

constexpr int kStallWindow = 2000;  // consecutive frozen steps before giving up

double terminal_abs_f(const OptimizerConfig& config, double lambda) {
    return std::abs(evolve(config, lambda, /*record=*/false).f_final);
}

double terminal_signed_f(const OptimizerConfig& config, double lambda) {
    return evolve(config, lambda, /*record=*/false).f_final;
}

}  // namespace

void OptimizerConfig::validate() const {
    if (!(alpha1 >= 0.0 && alpha1 < 1.0) || !(alpha2 >= 0.0 && alpha2 < 1.0)) {
        throw std::invalid_argument("schedule generation needs real alpha_i in [0, 1)");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (!(lambda_lo < lambda_hi)) {
        throw std::invalid_argument("lambda range must satisfy lo < hi");
    }
    if (!(orth_tol > 0.0)) throw std::invalid_argument("orth_tol must be positive");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");
}

double step_angle(const OptState& state, double lambda) {
    const double num = lambda * state.b1 - state.b2;
    const double den = state.a2 - lambda * state.a1;
    if (std::abs(num) < 1e-300 && std::abs(den) < 1e-300) {
        throw std::domain_error("degenerate configuration: rotation angle undetermined");
    }
    return std::atan2(num, den);
}

Evolution evolve(const OptimizerConfig& config, double lambda, bool record) {
    config.validate();
    Evolution ev;
    OptState s;
    s.a1 = s.a2 = std::sqrt(1.0 - config.epsilon * config.epsilon);
    s.b1 = s.b2 = config.epsilon;
    double f = s.a1 * s.a2 + s.b1 * s.b2;
    double prev_f = f;
    int stall = 0;

    for (long k = 0; k < config.max_steps; ++k) {
        double theta;
        try {
            theta = step_angle(s, lambda);
        } catch (const std::domain_error&) {
            ev.status = EvolveStatus::kDegenerate;
            ev.f_final = f;
            ev.halted_at = k;
            return ev;
        }
        const double c = std::cos(theta);
        const double sn = std::sin(theta);
        const double v1 = sn * s.a1 + c * s.b1;
        const double v2 = sn * s.a2 + c * s.b2;
        s.a1 = c * s.a1 - sn * s.b1;
        s.a2 = c * s.a2 - sn * s.b2;
        s.b1 = config.alpha1 * v1;
        s.b2 = config.alpha2 * v2;
        s.k = k + 1;
        f = s.a1 * s.a2 + s.b1 * s.b2;
        if (record) {
            ev.thetas.push_back(theta);
            ev.trajectory.push_back(s);
            ev.f_history.push_back(f);
        }
        ev.halted_at = k + 1;
        if (f <= config.orth_tol) {
            ev.status = EvolveStatus::kHalted;
            ev.f_final = f;
            return ev;
        }
        if (std::abs(f - prev_f) < 1e-17 * std::max(std::abs(f), 1e-300)) {
            if (++stall > kStallWindow) {
                ev.status = EvolveStatus::kStalled;
                ev.f_final = f;
                return ev;
            }
        } else {
            stall = 0;
        }
        prev_f = f;
    }
    ev.status = EvolveStatus::kMaxSteps;
    ev.f_final = f;
    return ev;
}

Protocol schedule_protocol(const std::vector<double>& thetas, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    Protocol p;
    p.initial = {cplx{std::sqrt(1.0 - epsilon * epsilon), 0.0}, cplx{epsilon, 0.0}};
    p.mask = make_mask({1});
    p.steps.reserve(2 * thetas.size());
    for (double t : thetas) {
        p.steps.push_back(unitary_step(Matrix::rotation2(t)));
        p.steps.push_back(interaction_step());
    }
    p.measurement = UnambiguousPair{};
    validate(p);
    return p;
}

OptimizerReport search_lambda(const OptimizerConfig& config) {
    config.validate();
    if (std::abs(config.alpha1 - config.alpha2) <= kAlphaEqualTol) {
        throw std::invalid_argument("equal transparencies cannot be discriminated");
    }

    double best_lambda = config.lambda_lo;
    double best_val = std::numeric_limits<double>::infinity();
    const auto consider = [&](double lambda) {
        const double val = terminal_abs_f(config, lambda);
        if (val < best_val) {
            best_val = val;
            best_lambda = lambda;
        }
        return val;
    };

    // Coarse grid.
    const int n = config.grid_points;
    std::vector<double> grid(n);
    std::vector<double> grid_val(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = config.lambda_lo +
                  (config.lambda_hi - config.lambda_lo) * static_cast<double>(i) /
                      static_cast<double>(n - 1);
        grid_val[i] = consider(grid[i]);
    }
    const int imin = static_cast<int>(std::min_element(grid_val.begin(), grid_val.end()) -
                                      grid_val.begin());

    // Golden-section refinement around the best grid point.
    double lo = grid[std::max(0, imin - 1)];
    double hi = grid[std::min(n - 1, imin + 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = consider(c);
    double fd = consider(d);
    while (hi - lo > 1e-9) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = consider(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = consider(d);
        }
    }

    // Polish: bisect a signed-overlap bracket around the best point if one
    // exists nearby (the terminal overlap is piecewise smooth in lambda).
    if (best_val > 0.0) {
        const double fb = terminal_signed_f(config, best_lambda);
        const double span = config.lambda_hi - config.lambda_lo;
        for (double off = 1e-9 * span; off <= 2e-3 * span; off *= 4.0) {
            for (double sgn : {1.0, -1.0}) {
                double other = best_lambda + sgn * off;
                if (other <= config.lambda_lo || other >= config.lambda_hi) continue;
                double fo = terminal_signed_f(config, other);
                if (std::abs(fo) < best_val) {
                    best_val = std::abs(fo);
                    best_lambda = other;
                }
                if (fb == 0.0 || fo == 0.0 || (fb < 0.0) == (fo < 0.0)) continue;
                double xa = best_lambda;
                double xb = other;
                double fa = fb;
                for (int i = 0; i < 200 && std::abs(xb - xa) > 1e-15; ++i) {
                    const double mid = 0.5 * (xa + xb);
                    const double fm = terminal_signed_f(config, mid);
                    if (std::abs(fm) < best_val) {
                        best_val = std::abs(fm);
                        best_lambda = mid;
                    }
                    if (fm == 0.0) break;
                    if ((fm < 0.0) == (fa < 0.0)) {
                        xa = mid;
                        fa = fm;
                    } else {
                        xb = mid;
                    }
                }
            }
            if (best_val <= config.orth_tol) break;
        }
    }

    // Replay the winner through the engine.
    OptimizerReport rep;
    rep.lambda_star = best_lambda;
    Evolution ev = evolve(config, best_lambda, /*record=*/true);
    rep.n_steps = ev.halted_at;
    rep.final_overlap = std::abs(ev.f_final);
    rep.success = rep.final_overlap <= config.orth_tol;
    rep.schedule.rotations = ev.thetas;
    rep.schedule.n_rounds = static_cast<long>(ev.thetas.size());

    const Protocol protocol = schedule_protocol(ev.thetas, config.epsilon);
    const DiscriminationPair pair = make_pair(cplx{config.alpha1, 0.0}, cplx{config.alpha2, 0.0});
    rep.trace = run_pair(protocol, pair);
    rep.bound = verify_bound(rep.trace);
    rep.p_ident_1 = rep.trace.trace1.p_ident;
    rep.p_ident_2 = rep.trace.trace2.p_ident;
    rep.product = rep.bound.product;
    rep.eta_sq = rep.bound.eta_sq;
    return rep;
}

}  // namespace afm
