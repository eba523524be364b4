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


// Recovers a hidden Simon string through an oracle that depolarizes every query.

#include <cstdio>

#include "purify/purify.hpp"

int main() {
    const int m = 5;
    const purify::BitString s = purify::parse_bits("10110");
    purify::SimonInstance instance(m, s, 0.5);
    double eps = purify::default_simon_eps(m);
    purify::Rng rng(purify::Seed{7, 0});

    purify::SimonResult r = purify::solve_simon(instance, eps, 100, rng);
    std::printf("hidden s = %s\n", purify::format_bits(s, m).c_str());
    if (r.s_hat) {
        std::printf("found  s = %s (%s)\n", purify::format_bits(*r.s_hat, m).c_str(), r.success ? "correct" : "wrong");
    } else {
        std::printf("budget exhausted\n");
    }
    std::printf("purified samples %llu, oracle queries %llu, restarts %llu, %lld levels per sample\n",
                static_cast<unsigned long long>(r.samples_collected),
                static_cast<unsigned long long>(r.total_oracle_queries), static_cast<unsigned long long>(r.restarts),
                static_cast<long long>(r.levels));
    return r.success ? 0 : 1;
}
