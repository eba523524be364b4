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

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace purify {

/// Qudit dimension: a finite integer d >= 2, or the formal d -> infinity limit.
///
/// The infinite variant is only meaningful for the analytic recurrences and
/// gadget formulas. Simulation and dense linear algebra call `finite_value()`,
/// which throws on the infinite variant.
class Dimension {
   public:
    static Dimension finite(std::int64_t d) {
        if (d < 2) {
            throw std::invalid_argument("Dimension must be >= 2, got " + std::to_string(d));
        }
        return Dimension(d);
    }
    static constexpr Dimension infinite() { return Dimension(); }

    constexpr bool is_infinite() const { return d_ == 0; }
    constexpr bool is_finite() const { return d_ != 0; }

    std::int64_t finite_value() const {
        if (is_infinite()) {
            throw std::invalid_argument("operation requires a finite dimension");
        }
        return d_;
    }

    /// 1/d, or exactly 0 for the infinite limit. Every closed form in this
    /// library is written in terms of 1/d so the limit falls out for free.
    constexpr double inverse() const { return is_infinite() ? 0.0 : 1.0 / static_cast<double>(d_); }

    std::string to_string() const { return is_infinite() ? std::string("inf") : std::to_string(d_); }

    constexpr bool operator==(const Dimension &) const = default;

   private:
    constexpr Dimension() = default;
    constexpr explicit Dimension(std::int64_t d) : d_(d) {}
    std::int64_t d_ = 0;  // 0 encodes the infinite limit
};

/// Depolarization weight delta in [0,1] of rho(delta) = (1-delta)|psi><psi| + delta I/d.
class ErrorParam {
   public:
    explicit ErrorParam(double delta) : delta_(delta) {
        if (!(delta >= 0.0 && delta <= 1.0)) {
            throw std::invalid_argument("error parameter must lie in [0,1], got " + std::to_string(delta));
        }
    }
    double delta() const { return delta_; }
    double kappa() const { return 1.0 - delta_; }

   private:
    double delta_;
};

/// rho(delta) in a finite dimension. The pure component |psi> is never stored:
/// every protocol-level quantity is independent of it.
struct DepolarizedState {
    DepolarizedState(ErrorParam delta, Dimension dim) : delta(delta), dim(dim) {
        (void)dim.finite_value();
    }
    ErrorParam delta;
    Dimension dim;
};

/// Fidelity <psi| rho(delta) |psi> = 1 - (1 - 1/d) delta.
inline double fidelity_of_output(ErrorParam delta, Dimension dim) {
    double inv_d = 1.0 / static_cast<double>(dim.finite_value());
    return 1.0 - (1.0 - inv_d) * delta.delta();
}

/// Identifies one reproducible pseudo-random stream.
struct Seed {
    std::uint64_t root_seed = 0;
    std::uint64_t stream_index = 0;

    /// Derives the seed of sub-stream `index` (e.g. one Monte Carlo run) of this stream.
    Seed child(std::uint64_t index) const;
    constexpr bool operator==(const Seed &) const = default;
};

namespace detail {

/// SplitMix64 output function (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

inline Seed Seed::child(std::uint64_t index) const {
    return Seed{detail::splitmix64(root_seed ^ detail::splitmix64(stream_index)), index};
}

/// Portable PRNG stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Its 64-bit seed is splitmix64(root_seed ^ splitmix64(stream_index)),
/// so distinct (root, index) pairs give decorrelated streams. Distributions are
/// implemented here rather than with <random>'s distribution classes, whose
/// output is implementation-defined.
class Rng {
   public:
    explicit Rng(Seed seed) : engine_(mix(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("Rng::below requires n > 0");
        }
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller (cosine branch only, so each call is stateless).
    double normal() {
        double u1 = 1.0 - uniform();  // (0,1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

   private:
    static std::uint64_t mix(Seed s) { return detail::splitmix64(s.root_seed ^ detail::splitmix64(s.stream_index)); }
    std::mt19937_64 engine_;
};

}  // namespace purify
