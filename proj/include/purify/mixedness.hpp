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

// Mixedness testing for depolarized pure states.
//
// Under the promise that the input is rho(delta) with delta = 1 or
// delta <= 1 - eta/2, run purification for 15 + 2/eta + 2 ln(2/eta) levels
// and look at the first swap test of the final level. For delta = 1 the
// stream stays maximally mixed and that test passes with probability
// (1 + 1/d)/2; otherwise the inputs to it are nearly pure and it passes almost
// surely.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "purify/core.hpp"
#include "purify/recurrence.hpp"
#include "purify/streaming.hpp"

namespace purify {

enum class MixednessVerdict { MaximallyMixed, FarFromMixed };

inline const char *to_string(MixednessVerdict v) {
    return v == MixednessVerdict::MaximallyMixed ? "maximally_mixed" : "far_from_mixed";
}

struct MixednessConfig {
    /// Declare MaximallyMixed when the empirical pass rate is below this.
    double threshold = 0.875;
    /// Upper limit on the expected number of stream copies a single repetition
    /// may simulate. Only the top levels that fit are executed on the stack
    /// machine; they are fed a stream of rho(delta_base) states, which is what
    /// the lower levels deliver.
    double max_simulated_copies_per_rep = 4096.0;
    bool checked = true;
};

struct MixednessResult {
    MixednessVerdict verdict;
    std::int64_t levels;             ///< full purification depth n
    std::int64_t simulated_levels;   ///< top levels executed on the stack machine
    std::int64_t reps;
    std::int64_t passes;             ///< reps whose first final-level swap test passed
    double pass_rate;
    double final_pass_probability;   ///< P(delta_{n-1}, d)
    double final_delta;              ///< delta_n
    double expected_raw_copies_per_rep;  ///< SC(n, d)
    std::uint64_t simulated_copies;
    std::int64_t max_stack_depth;
};

/// ceil(15 + 2/eta + 2 ln(2/eta)).
inline std::int64_t mixedness_levels(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("eta must lie in (0,1)");
    }
    return static_cast<std::int64_t>(std::ceil(15.0 + 2.0 / eta + 2.0 * std::log(2.0 / eta)));
}

inline void validate_mixedness_case(double case_delta, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("eta must lie in (0,1)");
    }
    if (!(case_delta >= 0.0 && case_delta <= 1.0)) {
        throw std::invalid_argument("case delta must lie in [0,1]");
    }
    if (case_delta != 1.0 && case_delta > 1.0 - eta / 2.0) {
        throw std::invalid_argument("case delta " + std::to_string(case_delta) +
                                    " lies in the excluded gap (1 - eta/2, 1)");
    }
}

inline MixednessResult mixedness_test(double case_delta, std::int64_t d, double eta, std::int64_t reps, Seed seed,
                                      const MixednessConfig &config = {}) {
    validate_mixedness_case(case_delta, eta);
    if (reps < 1) {
        throw std::invalid_argument("reps must be >= 1");
    }
    const std::int64_t n = mixedness_levels(eta);
    const Dimension dim = Dimension::finite(d);
    const RecurrenceTrace trace = iterate(case_delta, dim, n);

    // Deepest suffix of levels whose expected copy count stays within budget.
    std::int64_t top = 1;
    double cost = 2.0 / *trace.entries[static_cast<size_t>(n)].p;
    while (top < n) {
        double next = cost * 2.0 / *trace.entries[static_cast<size_t>(n - top)].p;
        if (next > config.max_simulated_copies_per_rep) {
            break;
        }
        cost = next;
        top++;
    }
    const double base_delta = trace.entries[static_cast<size_t>(n - top)].delta;

    MixednessResult r{};
    r.levels = n;
    r.simulated_levels = top;
    r.reps = reps;
    r.final_pass_probability = *trace.entries[static_cast<size_t>(n)].p;
    r.final_delta = trace.entries[static_cast<size_t>(n)].delta;
    r.expected_raw_copies_per_rep = expected_sample_complexity(case_delta, dim, n);

    for (std::int64_t rep = 0; rep < reps; rep++) {
        StreamStats s = purify_streaming(base_delta, d, top, seed.child(static_cast<std::uint64_t>(rep)),
                                         StreamOptions{config.checked});
        r.passes += s.first_final_test_passed.value_or(false) ? 1 : 0;
        r.simulated_copies += s.copies_consumed;
        r.max_stack_depth = std::max(r.max_stack_depth, s.max_stack_depth);
    }
    r.pass_rate = static_cast<double>(r.passes) / static_cast<double>(reps);
    r.verdict = r.pass_rate < config.threshold ? MixednessVerdict::MaximallyMixed : MixednessVerdict::FarFromMixed;
    return r;
}

struct MixednessTrials {
    double case_delta = 0.0;
    std::int64_t trials = 0;
    std::int64_t errors = 0;  ///< verdicts disagreeing with the true class
    std::vector<std::int64_t> pass_histogram;  ///< entry j counts trials with j passes out of reps
    std::int64_t levels = 0;
    std::int64_t simulated_levels = 0;
    std::int64_t max_stack_depth = 0;
    double final_pass_probability = 0.0;
    double expected_raw_copies_per_rep = 0.0;

    double error_rate() const { return trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0; }
};

/// Repeats mixedness_test; trial t uses the stream seed.child(t). The outcome
/// does not depend on `jobs`.
inline MixednessTrials run_mixedness_trials(double case_delta, std::int64_t d, double eta, std::int64_t reps,
                                            std::int64_t trials, Seed seed, const MixednessConfig &config = {},
                                            unsigned jobs = 1) {
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    std::vector<MixednessResult> results(static_cast<size_t>(trials));
    parallel_for(static_cast<std::uint64_t>(trials), jobs, [&](std::uint64_t t) {
        results[t] = mixedness_test(case_delta, d, eta, reps, seed.child(t), config);
    });

    MixednessTrials out;
    out.case_delta = case_delta;
    out.pass_histogram.assign(static_cast<size_t>(reps) + 1, 0);
    const MixednessVerdict truth = case_delta == 1.0 ? MixednessVerdict::MaximallyMixed : MixednessVerdict::FarFromMixed;
    for (const MixednessResult &r : results) {
        out.trials++;
        out.errors += r.verdict != truth ? 1 : 0;
        out.pass_histogram[static_cast<size_t>(r.passes)]++;
        out.levels = r.levels;
        out.simulated_levels = r.simulated_levels;
        out.max_stack_depth = std::max(out.max_stack_depth, r.max_stack_depth);
        out.final_pass_probability = r.final_pass_probability;
        out.expected_raw_copies_per_rep = r.expected_raw_copies_per_rep;
    }
    return out;
}

}  // namespace purify
