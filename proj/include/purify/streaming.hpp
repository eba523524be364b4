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

// Stochastic simulation of streaming purification.
//
// A cell at purity level i always holds exactly rho(delta_i), so cells are
// represented by their level alone and a swap test between two level-i cells
// is a Bernoulli trial with success probability P(delta_i, d). The dense
// oracle tests certify the state-form claim this relies on.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "purify/core.hpp"
#include "purify/recurrence.hpp"

namespace purify {

/// Resource counters of one purification run.
struct StreamStats {
    std::uint64_t copies_consumed = 0;
    std::uint64_t swap_attempts = 0;
    std::int64_t max_stack_depth = 0;
    double final_delta = 0.0;
    std::int64_t gate_count = 0;
    /// Entry i counts swap tests between two level-i cells.
    std::vector<std::uint64_t> level_attempts;
    std::vector<std::uint64_t> level_successes;
    /// Outcome of the first swap test between two level-(n-1) cells. Empty for n = 0.
    std::optional<bool> first_final_test_passed;

    bool operator==(const StreamStats &) const = default;
};

inline std::int64_t gate_count_estimate(const StreamStats &stats, std::int64_t d) {
    return gate_count_estimate(stats.swap_attempts, d);
}

/// Decides swap-test outcomes. Called as `source(level, p)` for a test between
/// two level-`level` cells that succeeds with probability `p`; returns true on
/// outcome 0.
template <class T>
concept SwapOutcomeSource = requires(T &source, std::int64_t level, double p) {
    { source(level, p) } -> std::convertible_to<bool>;
};

class BernoulliOutcomes {
   public:
    explicit BernoulliOutcomes(Seed seed) : rng_(seed) {}
    bool operator()(std::int64_t, double p) { return rng_.bernoulli(p); }

   private:
    Rng rng_;
};

struct AlwaysSucceed {
    bool operator()(std::int64_t, double) const { return true; }
};

/// Replays a fixed outcome sequence; throws once it runs out.
class ScriptedOutcomes {
   public:
    explicit ScriptedOutcomes(std::vector<bool> script) : script_(std::move(script)) {}
    bool operator()(std::int64_t, double) {
        if (pos_ >= script_.size()) {
            throw std::out_of_range("ScriptedOutcomes: script exhausted");
        }
        return script_[pos_++];
    }
    size_t consumed() const { return pos_; }

   private:
    std::vector<bool> script_;
    size_t pos_ = 0;
};

/// Precomputed delta_0..delta_n and per-level success probabilities for one run shape.
struct PurifyPlan {
    std::int64_t d = 2;
    std::int64_t levels = 0;
    std::vector<double> delta;          ///< delta[i] = delta_i, i = 0..levels
    std::vector<double> level_success;  ///< level_success[i] = P(delta_i, d) = p_{i+1}, i = 0..levels-1

    /// delta0 may be 0 or 1 (both fixed points); d must be finite.
    static PurifyPlan make(double delta0, std::int64_t d, std::int64_t levels) {
        Dimension dim = Dimension::finite(d);
        if (levels < 0) {
            throw std::invalid_argument("number of levels must be >= 0");
        }
        RecurrenceTrace trace = iterate(delta0, dim, levels);
        PurifyPlan plan;
        plan.d = d;
        plan.levels = levels;
        for (const auto &e : trace.entries) {
            plan.delta.push_back(e.delta);
            if (e.p) {
                plan.level_success.push_back(*e.p);
            }
        }
        return plan;
    }
};

/// The stack-based purification procedure.
///
/// purity_[0] is a -1 sentinel and k_ is the stack pointer. With `checked`
/// set, the ordering invariant (purity_[1] >= ... >= purity_[k], at most one
/// equality) is verified after every mutation and a violation throws
/// std::logic_error.
template <SwapOutcomeSource Source>
class StackMachine {
   public:
    StackMachine(PurifyPlan plan, Source source, bool checked = true)
        : plan_(std::move(plan)), source_(std::move(source)), checked_(checked) {}

    StreamStats run() {
        const std::int64_t n = plan_.levels;
        StreamStats stats;
        stats.final_delta = plan_.delta.back();
        stats.level_attempts.assign(static_cast<size_t>(n), 0);
        stats.level_successes.assign(static_cast<size_t>(n), 0);
        if (n == 0) {
            stats.copies_consumed = 1;
            stats.max_stack_depth = 1;
            return stats;
        }

        purity_.assign(static_cast<size_t>(n) + 2, 0);
        purity_[0] = -1;
        k_ = 0;
        do {
            fetch_new_copy(stats);
            fetch_new_copy(stats);
            bool passed;
            do {
                std::int64_t level = purity_[k_];
                if (purity_[k_ - 1] != level) {
                    throw std::logic_error("StackMachine: swap test on cells of unequal purity");
                }
                passed = source_(level, plan_.level_success[static_cast<size_t>(level)]);
                stats.swap_attempts++;
                stats.level_attempts[static_cast<size_t>(level)]++;
                if (level == n - 1 && !stats.first_final_test_passed) {
                    stats.first_final_test_passed = passed;
                }
                if (passed) {
                    stats.level_successes[static_cast<size_t>(level)]++;
                    k_ -= 1;
                    purity_[k_]++;
                } else {
                    k_ -= 2;
                }
                check();
            } while (passed && purity_[k_ - 1] == purity_[k_]);
        } while (!(k_ >= 1 && purity_[1] == n));

        stats.gate_count = gate_count_estimate(stats.swap_attempts, plan_.d);
        return stats;
    }

    const Source &source() const { return source_; }

   private:
    void fetch_new_copy(StreamStats &stats) {
        k_++;
        if (static_cast<size_t>(k_) >= purity_.size()) {
            throw std::logic_error("StackMachine: stack exceeded n+1 cells");
        }
        purity_[k_] = 0;
        stats.copies_consumed++;
        stats.max_stack_depth = std::max(stats.max_stack_depth, k_);
        check();
    }

    void check() const {
        if (!checked_) {
            return;
        }
        if (k_ < 0 || purity_[0] != -1) {
            throw std::logic_error("StackMachine: corrupted stack base");
        }
        int equalities = 0;
        for (std::int64_t j = 1; j < k_; j++) {
            if (purity_[j] < purity_[j + 1]) {
                throw std::logic_error("StackMachine: purity order violated");
            }
            if (purity_[j] == purity_[j + 1]) {
                equalities++;
            }
        }
        if (equalities > 1) {
            throw std::logic_error("StackMachine: more than one equal-purity pair on the stack");
        }
    }

    PurifyPlan plan_;
    Source source_;
    bool checked_;
    std::vector<std::int64_t> purity_;
    std::int64_t k_ = 0;
};

struct StreamOptions {
    bool checked = true;
};

template <SwapOutcomeSource Source>
StreamStats purify_streaming(double delta0, std::int64_t d, std::int64_t n, Source source,
                             StreamOptions options = {}) {
    return StackMachine<Source>(PurifyPlan::make(delta0, d, n), std::move(source), options.checked).run();
}

/// One n-level streaming run with outcomes drawn from the PRNG stream `seed`.
inline StreamStats purify_streaming(double delta0, std::int64_t d, std::int64_t n, Seed seed,
                                    StreamOptions options = {}) {
    return purify_streaming(delta0, d, n, BernoulliOutcomes(seed), options);
}

inline constexpr std::int64_t kMaxRecursionDepth = 4096;

namespace detail {

template <SwapOutcomeSource Source>
class RecursivePurifier {
   public:
    RecursivePurifier(const PurifyPlan &plan, Source &source, StreamStats &stats)
        : plan_(plan), source_(source), stats_(stats) {}

    /// Produces one level-`level` state.
    void purify(std::int64_t level) {
        if (level == 0) {
            stats_.copies_consumed++;
            live_++;
            stats_.max_stack_depth = std::max(stats_.max_stack_depth, live_);
            return;
        }
        const std::int64_t below = level - 1;
        while (true) {
            purify(below);
            purify(below);
            bool passed = source_(below, plan_.level_success[static_cast<size_t>(below)]);
            stats_.swap_attempts++;
            stats_.level_attempts[static_cast<size_t>(below)]++;
            if (below == plan_.levels - 1 && !stats_.first_final_test_passed) {
                stats_.first_final_test_passed = passed;
            }
            if (passed) {
                stats_.level_successes[static_cast<size_t>(below)]++;
                live_ -= 1;
                return;
            }
            live_ -= 2;
        }
    }

   private:
    const PurifyPlan &plan_;
    Source &source_;
    StreamStats &stats_;
    std::int64_t live_ = 0;
};

}  // namespace detail

/// The recursive formulation: Purify(n) = Swap(Purify(n-1), Purify(n-1)),
/// restarting both sub-calls until the gadget succeeds. Realizes the same
/// process as the stack machine; fed the same outcome sequence, it produces
/// identical statistics.
template <SwapOutcomeSource Source>
StreamStats purify_recursive(double delta0, std::int64_t d, std::int64_t n, Source source) {
    if (n > kMaxRecursionDepth) {
        throw std::invalid_argument("purify_recursive: depth " + std::to_string(n) + " exceeds " +
                                    std::to_string(kMaxRecursionDepth));
    }
    PurifyPlan plan = PurifyPlan::make(delta0, d, n);
    StreamStats stats;
    stats.final_delta = plan.delta.back();
    stats.level_attempts.assign(static_cast<size_t>(n), 0);
    stats.level_successes.assign(static_cast<size_t>(n), 0);
    detail::RecursivePurifier<Source> purifier(plan, source, stats);
    purifier.purify(n);
    stats.gate_count = n == 0 ? 0 : gate_count_estimate(stats.swap_attempts, d);
    return stats;
}

inline StreamStats purify_recursive(double delta0, std::int64_t d, std::int64_t n, Seed seed) {
    return purify_recursive(delta0, d, n, BernoulliOutcomes(seed));
}

/// Per-run record kept by the Monte Carlo driver.
struct RunRecord {
    std::uint64_t copies_consumed;
    std::uint64_t swap_attempts;
    std::int64_t max_stack_depth;
};

struct MonteCarloSummary {
    std::uint64_t runs = 0;
    double mean_copies = 0.0;
    double variance_copies = 0.0;  ///< unbiased sample variance (0 for a single run)
    std::uint64_t min_copies = 0;
    std::uint64_t max_copies = 0;
    double mean_swap_attempts = 0.0;
    std::int64_t max_stack_depth = 0;
    std::vector<std::uint64_t> level_attempts;
    std::vector<std::uint64_t> level_successes;

    double standard_error() const {
        return runs > 1 ? std::sqrt(variance_copies / static_cast<double>(runs)) : 0.0;
    }
};

struct MonteCarloResult {
    MonteCarloSummary summary;
    std::vector<RunRecord> records;
};

inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) {
        return jobs;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls fn(i) for i in [0, count) on up to `jobs` threads (0 = all cores),
/// each thread taking a contiguous block. The first exception thrown by any
/// worker is rethrown after all threads join.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned jobs, Fn fn) {
    if (count == 0) {
        return;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_jobs(jobs), count));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            std::uint64_t begin = count * w / workers;
            std::uint64_t end = count * (w + 1) / workers;
            for (std::uint64_t i = begin; i < end; i++) {
                fn(i);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; w++) {
            threads.emplace_back(work, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

/// Independent streaming runs; run r uses the stream seed.child(r). The result
/// does not depend on `jobs` (0 = all available cores).
inline MonteCarloResult monte_carlo(double delta0, std::int64_t d, std::int64_t n, std::uint64_t runs, Seed seed,
                                    unsigned jobs = 0, StreamOptions options = {}) {
    if (runs < 1) {
        throw std::invalid_argument("monte_carlo requires runs >= 1");
    }
    const PurifyPlan plan = PurifyPlan::make(delta0, d, n);
    MonteCarloResult out;
    out.records.resize(runs);

    unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_jobs(jobs), runs));
    std::vector<std::vector<std::uint64_t>> attempts(workers, std::vector<std::uint64_t>(static_cast<size_t>(n), 0));
    std::vector<std::vector<std::uint64_t>> successes = attempts;
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](unsigned w) {
        try {
            std::uint64_t begin = runs * w / workers;
            std::uint64_t end = runs * (w + 1) / workers;
            for (std::uint64_t r = begin; r < end; r++) {
                StackMachine<BernoulliOutcomes> machine(plan, BernoulliOutcomes(seed.child(r)), options.checked);
                StreamStats s = machine.run();
                out.records[r] = RunRecord{s.copies_consumed, s.swap_attempts, s.max_stack_depth};
                for (size_t i = 0; i < s.level_attempts.size(); i++) {
                    attempts[w][i] += s.level_attempts[i];
                    successes[w][i] += s.level_successes[i];
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; w++) {
            threads.emplace_back(work, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    MonteCarloSummary &s = out.summary;
    s.runs = runs;
    s.min_copies = std::numeric_limits<std::uint64_t>::max();
    s.level_attempts.assign(static_cast<size_t>(n), 0);
    s.level_successes.assign(static_cast<size_t>(n), 0);
    for (unsigned w = 0; w < workers; w++) {
        for (size_t i = 0; i < static_cast<size_t>(n); i++) {
            s.level_attempts[i] += attempts[w][i];
            s.level_successes[i] += successes[w][i];
        }
    }
    long double sum = 0.0L;
    long double sum_attempts = 0.0L;
    for (const RunRecord &r : out.records) {
        sum += static_cast<long double>(r.copies_consumed);
        sum_attempts += static_cast<long double>(r.swap_attempts);
        s.min_copies = std::min(s.min_copies, r.copies_consumed);
        s.max_copies = std::max(s.max_copies, r.copies_consumed);
        s.max_stack_depth = std::max(s.max_stack_depth, r.max_stack_depth);
    }
    long double mean = sum / static_cast<long double>(runs);
    long double ss = 0.0L;
    for (const RunRecord &r : out.records) {
        long double dev = static_cast<long double>(r.copies_consumed) - mean;
        ss += dev * dev;
    }
    s.mean_copies = static_cast<double>(mean);
    s.variance_copies = runs > 1 ? static_cast<double>(ss / static_cast<long double>(runs - 1)) : 0.0;
    s.mean_swap_attempts = static_cast<double>(sum_attempts / static_cast<long double>(runs));
    return out;
}

}  // namespace purify
