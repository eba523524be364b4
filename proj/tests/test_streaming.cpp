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


#include "purify/streaming.hpp"

#include <atomic>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace purify;

TEST(purify_streaming, zero_levels) {
    for (StreamStats s : {purify_streaming(0.4, 3, 0, Seed{1, 0}), purify_recursive(0.4, 3, 0, Seed{1, 0})}) {
        ASSERT_EQ(s.copies_consumed, 1u);
        ASSERT_EQ(s.swap_attempts, 0u);
        ASSERT_EQ(s.max_stack_depth, 1);
        ASSERT_DOUBLE_EQ(s.final_delta, 0.4);
        ASSERT_FALSE(s.first_final_test_passed.has_value());
    }
}

TEST(purify_streaming, failure_free_runs) {
    StreamStats one = purify_streaming(0.3, 2, 1, AlwaysSucceed{});
    ASSERT_EQ(one.copies_consumed, 2u);
    ASSERT_EQ(one.swap_attempts, 1u);
    ASSERT_EQ(one.max_stack_depth, 2);
    ASSERT_EQ(purify_recursive(0.3, 2, 2, AlwaysSucceed{}).copies_consumed, 4u);
    for (std::int64_t n = 1; n <= 12; n++) {
        StreamStats s = purify_streaming(0.3, 5, n, AlwaysSucceed{});
        ASSERT_EQ(s.copies_consumed, std::uint64_t{1} << n);
        ASSERT_EQ(s.swap_attempts, (std::uint64_t{1} << n) - 1);
        ASSERT_EQ(s.max_stack_depth, n + 1);
        ASSERT_EQ(s.gate_count, static_cast<std::int64_t>(s.swap_attempts) * gates_per_swap_test(5));
        ASSERT_EQ(s, purify_recursive(0.3, 5, n, AlwaysSucceed{}));
    }
}

TEST(purify_streaming, scripted_path) {
    // Fail at level 0, then pass three times: 6 copies and 4 tests.
    ScriptedOutcomes script({false, true, true, true});
    StackMachine<ScriptedOutcomes> machine(PurifyPlan::make(0.3, 2, 2), script);
    StreamStats s = machine.run();
    ASSERT_EQ(machine.source().consumed(), 4u);
    ASSERT_EQ(s.copies_consumed, 6u);
    ASSERT_EQ(s.swap_attempts, 4u);
    ASSERT_EQ(s.max_stack_depth, 3);
    ASSERT_EQ(s.level_attempts, (std::vector<std::uint64_t>{3, 1}));
    ASSERT_EQ(s.level_successes, (std::vector<std::uint64_t>{2, 1}));
    ASSERT_EQ(s.first_final_test_passed, std::optional<bool>(true));

    // A failure at the top level throws away both level-1 cells.
    StreamStats t = purify_streaming(0.3, 2, 2, ScriptedOutcomes({true, true, false, true, true, true}));
    ASSERT_EQ(t.copies_consumed, 8u);
    ASSERT_EQ(t.first_final_test_passed, std::optional<bool>(false));
    ASSERT_EQ(t, purify_recursive(0.3, 2, 2, ScriptedOutcomes({true, true, false, true, true, true})));

    ASSERT_THROW(purify_streaming(0.3, 2, 3, ScriptedOutcomes({true, true})), std::out_of_range);
}

TEST(purify_streaming, stack_and_recursion_agree_pathwise) {
    for (std::uint64_t r = 0; r < 300; r++) {
        double delta0 = 0.05 + 0.9 * (r % 10) / 10.0;
        std::int64_t d = 2 + static_cast<std::int64_t>(r % 7);
        std::int64_t n = 1 + static_cast<std::int64_t>(r % 6);
        Seed seed = Seed{77, 0}.child(r);
        ASSERT_EQ(purify_streaming(delta0, d, n, seed), purify_recursive(delta0, d, n, seed)) << r;
    }
}

TEST(purify_streaming, resource_invariants) {
    for (std::uint64_t r = 0; r < 2000; r++) {
        std::int64_t n = 1 + static_cast<std::int64_t>(r % 7);
        StreamStats s = purify_streaming(0.45, 3, n, Seed{5, 0}.child(r));
        ASSERT_EQ(s.copies_consumed % 2, 0u);
        ASSERT_GE(s.copies_consumed, std::uint64_t{1} << n);
        ASSERT_LE(s.max_stack_depth, n + 1);
        // Every level-0 test consumes exactly the two copies fetched before it.
        ASSERT_EQ(s.copies_consumed, 2 * s.level_attempts[0]);
        ASSERT_GE(s.level_attempts[n - 1], 1u);
        ASSERT_EQ(s.level_successes[n - 1], 1u);
        ASSERT_DOUBLE_EQ(s.final_delta, iterate(0.45, Dimension::finite(3), n).entries.back().delta);
    }
}

TEST(purify_streaming, deterministic) {
    ASSERT_EQ(purify_streaming(0.6, 8, 6, Seed{3, 9}), purify_streaming(0.6, 8, 6, Seed{3, 9}));
}

TEST(purify_streaming, rejects_bad_input) {
    ASSERT_THROW(purify_streaming(0.5, 1, 2, Seed{}), std::invalid_argument);
    ASSERT_THROW(purify_streaming(1.5, 2, 2, Seed{}), std::invalid_argument);
    ASSERT_THROW(purify_streaming(0.5, 2, -1, Seed{}), std::invalid_argument);
    ASSERT_THROW(purify_recursive(0.5, 2, kMaxRecursionDepth + 1, Seed{}), std::invalid_argument);
}

TEST(purify_plan, maximally_mixed_fixed_point) {
    PurifyPlan plan = PurifyPlan::make(1.0, 4, 30);
    for (double v : plan.delta) {
        ASSERT_EQ(v, 1.0);
    }
    for (double p : plan.level_success) {
        ASSERT_DOUBLE_EQ(p, (1.0 + 0.25) / 2.0);
    }
}

TEST(monte_carlo, mean_matches_expected_cost) {
    MonteCarloResult mc = monte_carlo(0.3, 2, 5, 20000, Seed{2024, 0}, 1);
    double sc = expected_sample_complexity(0.3, Dimension::finite(2), 5);
    ASSERT_LE(std::abs(mc.summary.mean_copies - sc), 4.0 * mc.summary.standard_error());
    ASSERT_LE(mc.summary.max_stack_depth, 6);
    ASSERT_GE(mc.summary.min_copies, 32u);

    // Per-level success frequencies are unbiased estimates of p_{i+1}.
    PurifyPlan plan = PurifyPlan::make(0.3, 2, 5);
    for (size_t i = 0; i < 5; i++) {
        double trials = static_cast<double>(mc.summary.level_attempts[i]);
        ASSERT_GE(trials, 10000.0);
        double freq = static_cast<double>(mc.summary.level_successes[i]) / trials;
        double p = plan.level_success[i];
        ASSERT_LE(std::abs(freq - p), 4.0 * std::sqrt(p * (1.0 - p) / trials)) << i;
    }
}

TEST(monte_carlo, independent_of_thread_count) {
    MonteCarloResult a = monte_carlo(0.6, 8, 4, 3001, Seed{8, 0}, 1);
    MonteCarloResult b = monte_carlo(0.6, 8, 4, 3001, Seed{8, 0}, 3);
    ASSERT_EQ(a.summary.mean_copies, b.summary.mean_copies);
    ASSERT_EQ(a.summary.variance_copies, b.summary.variance_copies);
    ASSERT_EQ(a.summary.level_attempts, b.summary.level_attempts);
    for (size_t r = 0; r < a.records.size(); r++) {
        ASSERT_EQ(a.records[r].copies_consumed, b.records[r].copies_consumed);
    }
}

TEST(monte_carlo, single_run_matches_direct_call) {
    Seed seed{31, 0};
    MonteCarloResult mc = monte_carlo(0.4, 3, 4, 1, seed);
    StreamStats s = purify_streaming(0.4, 3, 4, seed.child(0));
    ASSERT_EQ(mc.summary.mean_copies, static_cast<double>(s.copies_consumed));
    ASSERT_EQ(mc.summary.min_copies, s.copies_consumed);
    ASSERT_EQ(mc.summary.max_copies, s.copies_consumed);
    ASSERT_EQ(mc.summary.variance_copies, 0.0);
    ASSERT_EQ(mc.summary.max_stack_depth, s.max_stack_depth);
    ASSERT_THROW(monte_carlo(0.4, 3, 4, 0, seed), std::invalid_argument);
}

TEST(purify_recursive, same_distribution_as_stack_machine) {
    const int runs = 10000;
    std::vector<std::uint64_t> stack;
    std::vector<std::uint64_t> recursive;
    for (int r = 0; r < runs; r++) {
        stack.push_back(purify_streaming(0.3, 2, 5, Seed{1001, 0}.child(r)).copies_consumed);
        recursive.push_back(purify_recursive(0.3, 2, 5, Seed{2002, 0}.child(r)).copies_consumed);
    }
    double ks = purify_test::ks_statistic(stack, recursive);
    ASSERT_LT(ks, purify_test::ks_critical(runs, runs, 0.01));
}

TEST(parallel_for, covers_range_and_propagates_errors) {
    std::vector<int> hits(1000, 0);
    parallel_for(1000, 4, [&](std::uint64_t i) { hits[i]++; });
    for (int h : hits) {
        ASSERT_EQ(h, 1);
    }
    parallel_for(0, 4, [&](std::uint64_t) { FAIL(); });
    ASSERT_THROW(parallel_for(10, 3,
                              [](std::uint64_t i) {
                                  if (i == 7) {
                                      throw std::runtime_error("boom");
                                  }
                              }),
                 std::runtime_error);
}
