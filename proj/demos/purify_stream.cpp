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


// Purifies a depolarized qubit stream and compares the copies it used with the
// closed-form expectation.

#include <cstdio>

#include "purify/purify.hpp"

int main() {
    const double delta0 = 0.3;
    const std::int64_t d = 2;
    const purify::Dimension dim = purify::Dimension::finite(d);
    const double eps = 0.01;

    std::int64_t n = purify::iterations_to(delta0, dim, eps);
    purify::RecurrenceTrace trace = purify::iterate(delta0, dim, n);
    std::printf("delta0 = %.3f, d = %lld, target eps = %.3f -> n = %lld levels\n", delta0,
                static_cast<long long>(d), eps, static_cast<long long>(n));
    for (const auto &e : trace.entries) {
        std::printf("  level %2lld  delta = %.6f\n", static_cast<long long>(e.index), e.delta);
    }

    purify::StreamStats one = purify::purify_streaming(delta0, d, n, purify::Seed{2026, 0});
    std::printf("single run: %llu copies, %llu swap tests, peak stack depth %lld (bound %lld)\n",
                static_cast<unsigned long long>(one.copies_consumed),
                static_cast<unsigned long long>(one.swap_attempts), static_cast<long long>(one.max_stack_depth),
                static_cast<long long>(n + 1));

    purify::MonteCarloResult mc = purify::monte_carlo(delta0, d, n, 20000, purify::Seed{2026, 1});
    double sc = purify::expected_sample_complexity(delta0, dim, n);
    std::printf("20000 runs: mean copies %.2f +- %.2f, expected %.2f\n", mc.summary.mean_copies,
                mc.summary.standard_error(), sc);
    return 0;
}
