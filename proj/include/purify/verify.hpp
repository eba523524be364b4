// Copyright 2026 The Purify Authors
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


// Sweep comparing the dense swap-test simulation against the closed-form gadget.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "purify/core.hpp"
#include "purify/dense_oracle.hpp"
#include "purify/gadget.hpp"

namespace purify {

inline constexpr double kEquivalenceTolerance = 1e-10;

struct EquivalenceReport {
    std::int64_t d = 0;
    std::int64_t trials = 0;
    double max_prob_error = 0.0;      ///< |p0 (dense) - swap_success_prob|
    double max_trace_distance = 0.0;  ///< T(omega0, rho(delta'))
    std::int64_t failures = 0;        ///< trials with either error above tolerance

    bool passed() const { return failures == 0; }
};

/// Trial t draws a Haar-random |psi> from seed.child(t).child(0) and
/// delta1, delta2 uniformly on [0,1] from seed.child(t).child(1).
inline EquivalenceReport verify_swap_equivalence(std::int64_t d, std::int64_t trials, Seed seed,
                                                 double tolerance = kEquivalenceTolerance) {
    dense::require_oracle_dimension(d);
    if (trials < 1) {
        throw std::invalid_argument("verify_swap_equivalence requires trials >= 1");
    }
    const Dimension dim = Dimension::finite(d);
    EquivalenceReport report;
    report.d = d;
    report.trials = trials;
    for (std::int64_t t = 0; t < trials; t++) {
        Seed trial = seed.child(static_cast<std::uint64_t>(t));
        dense::PureState psi = dense::random_pure_state(d, trial.child(0));
        Rng rng(trial.child(1));
        double delta1 = rng.uniform();
        double delta2 = rng.uniform();

        dense::SwapTestResult result =
            dense::swap_test_apply(dense::make_depolarized(psi, delta1), dense::make_depolarized(psi, delta2));
        GadgetOutcome expected = swap_gadget(delta1, delta2, dim);
        double prob_error = std::abs(result.p0 - expected.success_prob);
        double distance =
            dense::trace_distance(result.omega0, dense::make_depolarized(psi, expected.output_delta).matrix());

        report.max_prob_error = std::max(report.max_prob_error, prob_error);
        report.max_trace_distance = std::max(report.max_trace_distance, distance);
        if (prob_error > tolerance || distance > tolerance) {
            report.failures++;
        }
    }
    return report;
}

}  // namespace purify
