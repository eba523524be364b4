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


#include "purify/core.hpp"

#include <set>

#include "gtest/gtest.h"

using namespace purify;

TEST(dimension, finite_and_infinite) {
    Dimension d = Dimension::finite(5);
    ASSERT_TRUE(d.is_finite());
    ASSERT_EQ(d.finite_value(), 5);
    ASSERT_DOUBLE_EQ(d.inverse(), 0.2);
    ASSERT_EQ(d.to_string(), "5");

    Dimension inf = Dimension::infinite();
    ASSERT_TRUE(inf.is_infinite());
    ASSERT_EQ(inf.inverse(), 0.0);
    ASSERT_EQ(inf.to_string(), "inf");
    ASSERT_THROW(inf.finite_value(), std::invalid_argument);
    ASSERT_NE(d, inf);
    ASSERT_EQ(Dimension::finite(5), d);
}

TEST(dimension, rejects_small) {
    ASSERT_THROW(Dimension::finite(1), std::invalid_argument);
    ASSERT_THROW(Dimension::finite(0), std::invalid_argument);
    ASSERT_THROW(Dimension::finite(-3), std::invalid_argument);
}

TEST(error_param, range) {
    ASSERT_EQ(ErrorParam(0.0).delta(), 0.0);
    ASSERT_EQ(ErrorParam(1.0).kappa(), 0.0);
    ASSERT_DOUBLE_EQ(ErrorParam(0.25).kappa(), 0.75);
    ASSERT_THROW(ErrorParam(-1e-9), std::invalid_argument);
    ASSERT_THROW(ErrorParam(1.0 + 1e-9), std::invalid_argument);
    ASSERT_THROW(ErrorParam(std::nan("")), std::invalid_argument);
}

TEST(depolarized_state, needs_finite_dimension) {
    DepolarizedState s(ErrorParam(0.1), Dimension::finite(3));
    ASSERT_EQ(s.dim.finite_value(), 3);
    ASSERT_THROW(DepolarizedState(ErrorParam(0.1), Dimension::infinite()), std::invalid_argument);
}

TEST(fidelity, closed_form) {
    ASSERT_DOUBLE_EQ(fidelity_of_output(ErrorParam(0.0), Dimension::finite(7)), 1.0);
    ASSERT_DOUBLE_EQ(fidelity_of_output(ErrorParam(1.0), Dimension::finite(4)), 0.25);
    ASSERT_DOUBLE_EQ(fidelity_of_output(ErrorParam(0.5), Dimension::finite(2)), 0.75);
}

TEST(rng, deterministic_per_seed) {
    Rng a(Seed{42, 3});
    Rng b(Seed{42, 3});
    for (int k = 0; k < 100; k++) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
    Rng c(Seed{42, 4});
    Rng d(Seed{42, 3});
    int same = 0;
    for (int k = 0; k < 100; k++) {
        same += c.next_u64() == d.next_u64();
    }
    ASSERT_EQ(same, 0);
}

TEST(rng, child_streams_are_distinct) {
    Seed root{7, 0};
    std::set<std::uint64_t> firsts;
    for (std::uint64_t i = 0; i < 1000; i++) {
        firsts.insert(Rng(root.child(i)).next_u64());
    }
    ASSERT_EQ(firsts.size(), 1000u);
    ASSERT_EQ(root.child(5), root.child(5));
    ASSERT_NE(root.child(5), root.child(6));
    ASSERT_NE(root.child(5).child(0), root.child(6).child(0));
}

TEST(rng, uniform_moments) {
    Rng rng(Seed{1, 0});
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 0; k < n; k++) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum_sq += u * u;
    }
    // Mean 1/2 with sd sqrt(1/12 n); variance 1/12.
    ASSERT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
    ASSERT_NEAR(sum_sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 2e-3);
}

TEST(rng, bernoulli_rate) {
    Rng rng(Seed{2, 0});
    const int n = 100000;
    int hits = 0;
    for (int k = 0; k < n; k++) {
        hits += rng.bernoulli(0.3);
    }
    ASSERT_NEAR(hits / double(n), 0.3, 5.0 * std::sqrt(0.21 / n));
    Rng edge(Seed{2, 1});
    for (int k = 0; k < 1000; k++) {
        ASSERT_FALSE(edge.bernoulli(0.0));
        ASSERT_TRUE(edge.bernoulli(1.0));
    }
}

TEST(rng, below_is_uniform) {
    Rng rng(Seed{3, 0});
    std::vector<int> counts(6, 0);
    const int n = 60000;
    for (int k = 0; k < n; k++) {
        std::uint64_t x = rng.below(6);
        ASSERT_LT(x, 6u);
        counts[x]++;
    }
    for (int c : counts) {
        ASSERT_NEAR(c, n / 6.0, 5.0 * std::sqrt(n * (1.0 / 6) * (5.0 / 6)));
    }
    ASSERT_THROW(rng.below(0), std::invalid_argument);
}

TEST(rng, normal_moments) {
    Rng rng(Seed{4, 0});
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 0; k < n; k++) {
        double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    ASSERT_NEAR(sum / n, 0.0, 0.015);
    ASSERT_NEAR(sum_sq / n, 1.0, 0.02);
}
