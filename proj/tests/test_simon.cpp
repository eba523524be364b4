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


#include "purify/simon.hpp"

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace purify;

TEST(simon_instance, validation) {
    SimonInstance ok(3, parse_bits("101"), 0.5);
    ASSERT_EQ(ok.dimension(), 64);
    ASSERT_THROW(SimonInstance(1, 1, 0.5), std::invalid_argument);
    ASSERT_THROW(SimonInstance(3, 0, 0.5), std::invalid_argument);
    ASSERT_THROW(SimonInstance(3, 0b1000, 0.5), std::invalid_argument);
    ASSERT_THROW(SimonInstance(3, 1, 0.0), std::invalid_argument);
    ASSERT_THROW(SimonInstance(3, 1, 1.0), std::invalid_argument);
}

TEST(simon_sampling, orthogonal_samples_are_uniform) {
    const int m = 3;
    const BitString s = parse_bits("101");
    Rng rng(Seed{1, 0});
    std::vector<double> counts(8, 0.0);
    const int n = 10000;
    for (int k = 0; k < n; k++) {
        BitString y = sample_orthogonal(s, m, rng);
        ASSERT_EQ(dot(y, s), 0);
        counts[y] += 1.0;
    }
    std::vector<double> observed;
    std::vector<double> expected;
    for (BitString y = 0; y < 8; y++) {
        if (dot(y, s) == 0) {
            observed.push_back(counts[y]);
            expected.push_back(n / 4.0);
        }
    }
    ASSERT_EQ(observed.size(), 4u);
    ASSERT_LT(purify_test::chi_square(observed, expected), purify_test::chi_square_critical_99(3));
}

TEST(simon_sampling, marginal_matches_dense_state) {
    const int m = 2;
    for (BitString s : {0b01u, 0b10u, 0b11u}) {
        for (double delta : {0.0, 0.2, 0.5, 1.0}) {
            auto dense = purify_test::simon_first_register_marginal(m, s, delta);
            double total = 0.0;
            for (BitString y = 0; y < 4; y++) {
                ASSERT_NEAR(simon_measurement_probability(s, m, delta, y), dense[y], 1e-14) << s << " " << delta;
                total += simon_measurement_probability(s, m, delta, y);
            }
            ASSERT_NEAR(total, 1.0, 1e-15);
        }
    }
}

TEST(simon_sampling, noisy_measurement_distribution) {
    const int m = 3;
    const BitString s = parse_bits("011");
    for (double delta : {0.3, 1.0}) {
        Rng rng(Seed{2, 0});
        const int n = 20000;
        std::vector<double> observed(8, 0.0);
        for (int k = 0; k < n; k++) {
            observed[sample_simon_measurement(s, m, delta, rng)] += 1.0;
        }
        std::vector<double> expected;
        for (BitString y = 0; y < 8; y++) {
            expected.push_back(n * simon_measurement_probability(s, m, delta, y));
        }
        ASSERT_LT(purify_test::chi_square(observed, expected), purify_test::chi_square_critical_99(7));
    }
}

TEST(simon_sampling, purified_samples_rarely_corrupted) {
    SimonInstance instance(2, parse_bits("11"), 0.5);
    const double eps = 0.05;
    Rng rng(Seed{3, 0});
    const int n = 10000;
    int good = 0;
    for (int k = 0; k < n; k++) {
        PurifiedSample p = sample_purified_y(instance, eps, rng);
        ASSERT_LE(p.final_delta, eps);
        ASSERT_LE(p.max_stack_depth, p.levels + 1);
        good += dot(p.y, instance.s) == 0;
    }
    ASSERT_GE(good / double(n), 1.0 - eps / 2.0);
    ASSERT_THROW(sample_purified_y(instance, 0.5, rng), std::invalid_argument);
}

TEST(simon_sampling, one_query_per_copy) {
    SimonInstance instance(3, parse_bits("110"), 0.4);
    double eps = default_simon_eps(3);
    Rng a(Seed{4, 0});
    Rng b(Seed{4, 0});
    PurifiedSample p = sample_purified_y(instance, eps, a);
    StreamStats s = purify_streaming(0.4, 64, simon_levels(instance, eps), Seed{b.next_u64(), 0});
    ASSERT_EQ(p.queries_used, s.copies_consumed);
}

TEST(solve_simon, query_accounting) {
    SimonInstance instance(4, parse_bits("1011"), 0.5);
    double eps = default_simon_eps(4);
    Rng a(Seed{5, 0});
    SimonResult r = solve_simon(instance, eps, 100, a);
    ASSERT_TRUE(r.success);
    ASSERT_EQ(r.s_hat, std::optional<BitString>(instance.s));
    Rng b(Seed{5, 0});
    std::uint64_t queries = 0;
    for (std::uint64_t k = 0; k < r.samples_collected; k++) {
        queries += sample_purified_y(instance, eps, b).queries_used;
    }
    ASSERT_EQ(r.total_oracle_queries, queries);
    ASSERT_GE(r.samples_collected, 5u);  // m - 1 spanning samples plus two checks
}

TEST(solve_simon, nearly_noiseless) {
    Rng rng(Seed{6, 0});
    for (BitString s = 1; s < 8; s++) {
        SimonResult r = solve_simon(SimonInstance(3, s, 0.01), 1e-6, 1000, rng);
        ASSERT_TRUE(r.success);
        ASSERT_EQ(*r.s_hat, s);
        ASSERT_FALSE(r.budget_exhausted);
    }
}

TEST(solve_simon, budget_exhaustion) {
    Rng rng(Seed{7, 0});
    SimonResult r = solve_simon(SimonInstance(4, 0b0110, 0.5), 0.025, 1, rng);
    ASSERT_TRUE(r.budget_exhausted);
    ASSERT_FALSE(r.s_hat.has_value());
    ASSERT_FALSE(r.success);
    ASSERT_EQ(r.samples_collected, 1u);
    ASSERT_GT(r.total_oracle_queries, 0u);
    ASSERT_THROW(solve_simon(SimonInstance(4, 1, 0.5), 0.025, 0, rng), std::invalid_argument);
}

TEST(run_simon_trials, success_and_determinism) {
    SimonTrialsSummary a = run_simon_trials(3, 0.5, default_simon_eps(3), 60, 100, Seed{8, 0}, 1);
    SimonTrialsSummary b = run_simon_trials(3, 0.5, default_simon_eps(3), 60, 100, Seed{8, 0}, 4);
    ASSERT_GE(a.success_rate(), 0.9);
    ASSERT_EQ(a.successes, b.successes);
    ASSERT_EQ(a.mean_oracle_queries, b.mean_oracle_queries);
    ASSERT_EQ(a.restarts, b.restarts);
    ASSERT_LE(a.max_stack_depth, a.levels + 1);
}
