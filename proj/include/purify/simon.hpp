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

// Simon's problem with an oracle that depolarizes its input.
//
// One faulty query prepares rho' = (1 - delta)|Psi><Psi| + delta I / 2^(2m),
// which is a depolarized state of dimension 2^(2m). Measuring the first
// register of |Psi> yields y uniform on {y : y.s = 0}; measuring the maximally
// mixed part yields y uniform on {0,1}^m. Each Simon sample is drawn from a
// purified copy of rho', and s is recovered from m-1 independent samples.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "purify/core.hpp"
#include "purify/gf2.hpp"
#include "purify/recurrence.hpp"
#include "purify/streaming.hpp"

namespace purify {

inline constexpr int kMaxSimonBits = 30;  // keeps d = 2^(2m) inside int64 arithmetic

struct SimonInstance {
    SimonInstance(int m, BitString s, double oracle_delta) : m(m), s(s), oracle_delta(oracle_delta) {
        if (m < 2 || m > kMaxSimonBits) {
            throw std::invalid_argument("SimonInstance: m must lie in [2, " + std::to_string(kMaxSimonBits) + "]");
        }
        if (s == 0 || (s >> m) != 0) {
            throw std::invalid_argument("SimonInstance: s must be a nonzero m-bit string");
        }
        if (!(oracle_delta > 0.0 && oracle_delta < 1.0)) {
            throw std::invalid_argument("SimonInstance: oracle_delta must lie in (0,1)");
        }
    }

    /// Dimension of the state prepared by one query: 2^(2m).
    std::int64_t dimension() const { return std::int64_t{1} << (2 * m); }

    int m;
    BitString s;
    double oracle_delta;
};

/// Uniform sample from {y : y.s = 0}. Flipping the lowest set bit of s is a
/// bijection between the two cosets, so folding preserves uniformity.
inline BitString sample_orthogonal(BitString s, int m, Rng &rng) {
    BitString x = rng.below(std::uint64_t{1} << m);
    if (dot(x, s)) {
        x ^= s & (~s + 1);
    }
    return x;
}

/// Pr[y] when measuring the first register of rho(delta_final).
inline double simon_measurement_probability(BitString s, int m, double delta_final, BitString y) {
    double full = std::ldexp(1.0, -m);
    double ideal = dot(y, s) == 0 ? 2.0 * full : 0.0;
    return (1.0 - delta_final) * ideal + delta_final * full;
}

inline BitString sample_simon_measurement(BitString s, int m, double delta_final, Rng &rng) {
    if (rng.bernoulli(1.0 - delta_final)) {
        return sample_orthogonal(s, m, rng);
    }
    return rng.below(std::uint64_t{1} << m);
}

struct PurifiedSample {
    BitString y;
    std::uint64_t queries_used;
    double final_delta;
    std::int64_t levels;
    std::int64_t max_stack_depth;
};

/// Purification depth used for Simon samples: smallest n with delta_n <= eps_target.
inline std::int64_t simon_levels(const SimonInstance &instance, double eps_target) {
    if (!(eps_target > 0.0 && eps_target < instance.oracle_delta)) {
        throw std::invalid_argument("eps_target must lie in (0, oracle_delta)");
    }
    return iterations_to(instance.oracle_delta, Dimension::finite(instance.dimension()), eps_target);
}

/// Purifies a stream of faulty-query outputs, then measures the first register.
/// Every raw copy costs exactly one oracle query.
inline PurifiedSample sample_purified_y(const SimonInstance &instance, double eps_target, Rng &rng) {
    std::int64_t n = simon_levels(instance, eps_target);
    StreamStats stats = purify_streaming(instance.oracle_delta, instance.dimension(), n, Seed{rng.next_u64(), 0});
    BitString y = sample_simon_measurement(instance.s, instance.m, stats.final_delta, rng);
    return PurifiedSample{y, stats.copies_consumed, stats.final_delta, n, stats.max_stack_depth};
}

struct SimonResult {
    std::optional<BitString> s_hat;  ///< empty when the budget ran out
    std::uint64_t total_oracle_queries = 0;
    std::uint64_t samples_collected = 0;
    std::uint64_t restarts = 0;
    std::int64_t levels = 0;
    std::int64_t max_stack_depth = 0;
    bool success = false;
    bool budget_exhausted = false;
};

inline double default_simon_eps(int m) { return 1.0 / (10.0 * m); }

/// Collects purified samples until they span an (m-1)-dimensional space, takes
/// the unique nonzero null vector as the candidate, and accepts it only if two
/// fresh samples are orthogonal to it. A full-rank span or a failed check
/// discards the collected rows and starts over. `budget` caps the number of
/// purified samples, including the confirmatory ones.
inline SimonResult solve_simon(const SimonInstance &instance, double eps_target, std::uint64_t budget, Rng &rng) {
    if (budget < 1) {
        throw std::invalid_argument("solve_simon: budget must be >= 1");
    }
    SimonResult result;
    result.levels = simon_levels(instance, eps_target);
    Gf2Basis basis(instance.m);

    auto draw = [&]() -> std::optional<BitString> {
        if (result.samples_collected >= budget) {
            return std::nullopt;
        }
        PurifiedSample sample = sample_purified_y(instance, eps_target, rng);
        result.samples_collected++;
        result.total_oracle_queries += sample.queries_used;
        result.max_stack_depth = std::max(result.max_stack_depth, sample.max_stack_depth);
        return sample.y;
    };

    while (true) {
        std::optional<BitString> y = draw();
        if (!y) {
            break;
        }
        basis.insert(*y);
        if (basis.rank() == instance.m) {
            // Only a corrupted sample can escape s-perp.
            basis.clear();
            result.restarts++;
            continue;
        }
        if (basis.rank() < instance.m - 1) {
            continue;
        }
        BitString candidate = basis.nullspace().front();
        bool confirmed = true;
        for (int check = 0; check < 2; check++) {
            std::optional<BitString> z = draw();
            if (!z) {
                result.budget_exhausted = true;
                return result;
            }
            if (dot(*z, candidate) != 0) {
                confirmed = false;
                break;
            }
        }
        if (confirmed) {
            result.s_hat = candidate;
            result.success = candidate == instance.s;
            return result;
        }
        basis.clear();
        result.restarts++;
    }
    result.budget_exhausted = true;
    return result;
}

struct SimonTrialsSummary {
    int m = 0;
    double oracle_delta = 0.0;
    double eps_target = 0.0;
    std::uint64_t budget = 0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    std::int64_t budget_exhausted = 0;
    std::uint64_t restarts = 0;
    double mean_oracle_queries = 0.0;
    double mean_samples = 0.0;
    std::int64_t levels = 0;
    std::int64_t max_stack_depth = 0;

    double success_rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

/// Independent Simon instances. Trial t draws a uniformly random nonzero s and
/// then solves, all from the stream seed.child(t); the outcome does not depend
/// on `jobs`.
inline SimonTrialsSummary run_simon_trials(int m, double oracle_delta, double eps_target, std::uint64_t budget,
                                           std::int64_t trials, Seed seed, unsigned jobs = 1) {
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    SimonInstance probe(m, 1, oracle_delta);
    std::vector<SimonResult> results(static_cast<size_t>(trials));
    parallel_for(static_cast<std::uint64_t>(trials), jobs, [&](std::uint64_t t) {
        Rng rng(seed.child(t));
        BitString s = 1 + rng.below((std::uint64_t{1} << m) - 1);
        results[t] = solve_simon(SimonInstance(m, s, oracle_delta), eps_target, budget, rng);
    });

    SimonTrialsSummary out;
    out.m = m;
    out.oracle_delta = oracle_delta;
    out.eps_target = eps_target;
    out.budget = budget;
    out.trials = trials;
    out.levels = simon_levels(probe, eps_target);
    long double queries = 0.0L;
    long double samples = 0.0L;
    for (const SimonResult &r : results) {
        out.successes += r.success ? 1 : 0;
        out.budget_exhausted += r.budget_exhausted ? 1 : 0;
        out.restarts += r.restarts;
        out.max_stack_depth = std::max(out.max_stack_depth, r.max_stack_depth);
        queries += static_cast<long double>(r.total_oracle_queries);
        samples += static_cast<long double>(r.samples_collected);
    }
    out.mean_oracle_queries = static_cast<double>(queries / trials);
    out.mean_samples = static_cast<double>(samples / trials);
    return out;
}

}  // namespace purify
