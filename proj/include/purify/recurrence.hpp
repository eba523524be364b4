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

// Error-parameter recurrence of repeated swap-test purification, together
// with the iteration-count bounds, sample-complexity formulas and reference
// formulas built on top of it.
//
// A level-i state is rho(delta_i) with
//
//     p_i     = P(delta_{i-1}, d)     = 1 - (1-1/d) delta + (1/2)(1-1/d) delta^2
//     delta_i = Delta(delta_{i-1}, d) = (delta + delta^2/d) / (2 P(delta, d))
//
// and the d -> infinity limit is obtained by setting 1/d = 0.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "purify/core.hpp"

namespace purify {

/// Raised when an iterative search exceeds its iteration cap.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultIterationCap = 1'000'000;

namespace detail {

inline void require_unit_interval(double x, const char *what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
    }
}

inline void require_open_unit_interval(double x, const char *what) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in (0,1), got " + std::to_string(x));
    }
}

}  // namespace detail

/// Probability that the swap test on two copies of rho(delta) returns outcome 0.
inline double success_prob(double delta, Dimension dim) {
    detail::require_unit_interval(delta, "delta");
    double c = 1.0 - dim.inverse();
    return 1.0 - c * delta + 0.5 * c * delta * delta;
}

/// Error parameter after one successful swap test on two copies of rho(delta).
inline double delta_map(double delta, Dimension dim) {
    detail::require_unit_interval(delta, "delta");
    double inv_d = dim.inverse();
    double c = 1.0 - inv_d;
    return (delta + delta * delta * inv_d) / (2.0 - 2.0 * c * delta + c * delta * delta);
}

/// The same update written for kappa = 1 - delta:
///
///     kappa' = ((1+2/d) kappa + (1-2/d) kappa^2) / ((1+1/d) + (1-1/d) kappa^2)
///
/// Near delta = 1 this keeps full relative precision in kappa.
inline double kappa_map(double kappa, Dimension dim) {
    detail::require_unit_interval(kappa, "kappa");
    double inv_d = dim.inverse();
    double k2 = kappa * kappa;
    return ((1.0 + 2.0 * inv_d) * kappa + (1.0 - 2.0 * inv_d) * k2) / ((1.0 + inv_d) + (1.0 - inv_d) * k2);
}

/// Success probability expressed in kappa: ((1+1/d) + (1-1/d) kappa^2) / 2.
inline double success_prob_from_kappa(double kappa, Dimension dim) {
    double inv_d = dim.inverse();
    return 0.5 * ((1.0 + inv_d) + (1.0 - inv_d) * kappa * kappa);
}

/// Steps the recurrence, carrying kappa instead of delta while delta > 1/2.
class RecurrenceStepper {
   public:
    RecurrenceStepper(double delta0, Dimension dim) : dim_(dim), value_(delta0), kappa_mode_(delta0 > 0.5) {
        detail::require_unit_interval(delta0, "delta0");
        if (kappa_mode_) {
            value_ = 1.0 - delta0;
        }
    }

    double delta() const { return kappa_mode_ ? 1.0 - value_ : value_; }
    double kappa() const { return kappa_mode_ ? value_ : 1.0 - value_; }

    /// Success probability of the next swap test, P(delta_current, d).
    double next_success_prob() const {
        return kappa_mode_ ? success_prob_from_kappa(value_, dim_) : success_prob(value_, dim_);
    }

    /// Advances one level and returns the success probability used.
    double step() {
        double p = next_success_prob();
        if (kappa_mode_) {
            value_ = kappa_map(value_, dim_);
            if (value_ >= 0.5) {
                kappa_mode_ = false;
                value_ = 1.0 - value_;
            }
        } else {
            value_ = delta_map(value_, dim_);
        }
        return p;
    }

   private:
    Dimension dim_;
    double value_;
    bool kappa_mode_;
};

struct RecurrenceEntry {
    std::int64_t index;
    double delta;
    double kappa;
    std::optional<double> p;  ///< absent for index 0
};

/// The sequence (i, delta_i, p_i) for i = 0..n.
struct RecurrenceTrace {
    Dimension dim;
    double delta0;
    std::vector<RecurrenceEntry> entries;

    std::vector<double> deltas() const {
        std::vector<double> out;
        out.reserve(entries.size());
        for (const auto &e : entries) {
            out.push_back(e.delta);
        }
        return out;
    }
};

/// Iterates the recurrence n times from delta0. Accepts the fixed points 0
/// and 1 as well, which simply reproduce themselves.
inline RecurrenceTrace iterate(double delta0, Dimension dim, std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("iterate: n must be >= 0");
    }
    RecurrenceStepper stepper(delta0, dim);
    RecurrenceTrace trace{dim, delta0, {}};
    trace.entries.reserve(static_cast<size_t>(n) + 1);
    trace.entries.push_back({0, stepper.delta(), stepper.kappa(), std::nullopt});
    for (std::int64_t i = 1; i <= n; i++) {
        double p = stepper.step();
        trace.entries.push_back({i, stepper.delta(), stepper.kappa(), p});
    }
    return trace;
}

/// Smallest n with delta_n <= eps. Returns 0 when delta0 <= eps already.
inline std::int64_t iterations_to(double delta0, Dimension dim, double eps,
                                  std::int64_t cap = kDefaultIterationCap) {
    detail::require_open_unit_interval(eps, "eps");
    detail::require_unit_interval(delta0, "delta0");
    RecurrenceStepper stepper(delta0, dim);
    for (std::int64_t n = 0; n <= cap; n++) {
        if (stepper.delta() <= eps) {
            return n;
        }
        stepper.step();
    }
    throw ConvergenceError("iterations_to: no convergence to eps=" + std::to_string(eps) + " within " +
                           std::to_string(cap) + " iterations");
}

/// Smallest i with delta_{i+1} < 2/3, for delta0 in (2/3, 1).
inline std::int64_t i_star(double delta0, Dimension dim, std::int64_t cap = kDefaultIterationCap) {
    if (!(delta0 > 2.0 / 3.0 && delta0 < 1.0)) {
        throw std::invalid_argument("i_star requires delta0 in (2/3, 1)");
    }
    RecurrenceStepper stepper(delta0, dim);
    for (std::int64_t i = 0; i <= cap; i++) {
        stepper.step();
        if (stepper.delta() < 2.0 / 3.0) {
            return i;
        }
    }
    throw ConvergenceError("i_star: iteration cap exceeded");
}

/// Closed-form envelope delta / (2^i (1 - 2 delta) + 2 delta), valid for delta <= 1/2.
inline double eta_bound(double delta, std::int64_t i) {
    if (!(delta >= 0.0 && delta <= 0.5)) {
        throw std::invalid_argument("eta_bound requires 0 <= delta <= 1/2");
    }
    if (i < 0) {
        throw std::invalid_argument("eta_bound requires i >= 0");
    }
    return delta / (std::ldexp(1.0 - 2.0 * delta, static_cast<int>(std::min<std::int64_t>(i, 4096))) + 2.0 * delta);
}

/// g(x) = (x + x^2) / (1 + x^2): the d = infinity kappa update.
inline double g_inf(double x) { return (x + x * x) / (1.0 + x * x); }

namespace detail {

inline double h_inf_unchecked(double y) { return (-1.0 + std::sqrt(1.0 + 4.0 * y * (1.0 - y))) / (2.0 * (1.0 - y)); }

}  // namespace detail

/// Inverse of g_inf on (0, 1/3).
inline double h_inf(double y) {
    if (!(y > 0.0 && y < 1.0 / 3.0)) {
        throw std::invalid_argument("h_inf requires y in (0, 1/3)");
    }
    return detail::h_inf_unchecked(y);
}

/// mu_0..mu_n with mu_i = h_inf(mu_{i-1}): the d = infinity kappa sequence run backwards.
///
/// mu0 may equal 1/3 itself; the closed form for h_inf is valid there even
/// though the public h_inf keeps the open interval.
inline std::vector<double> mu_inf_sequence(double mu0, std::int64_t n) {
    if (!(mu0 > 0.0 && mu0 <= 1.0 / 3.0)) {
        throw std::invalid_argument("mu_inf_sequence requires mu0 in (0, 1/3]");
    }
    if (n < 0) {
        throw std::invalid_argument("mu_inf_sequence requires n >= 0");
    }
    std::vector<double> mu;
    mu.reserve(static_cast<size_t>(n) + 1);
    mu.push_back(mu0);
    for (std::int64_t i = 1; i <= n; i++) {
        mu.push_back(detail::h_inf_unchecked(mu.back()));
    }
    return mu;
}

/// 1/i + 2 ln(i) / i^2.
inline double mu_inf_bound(std::int64_t i) {
    if (i < 1) {
        throw std::invalid_argument("mu_inf_bound requires i >= 1");
    }
    double x = static_cast<double>(i);
    return 1.0 / x + 2.0 * std::log(x) / (x * x);
}

namespace detail {

inline void require_high_noise(double delta, const char *fn) {
    if (!(delta > 2.0 / 3.0 && delta < 1.0)) {
        throw std::invalid_argument(std::string(fn) + " requires delta in (2/3, 1)");
    }
}

/// 1/(1-delta) + 2 ln(1/(1-delta)), the unrounded d = infinity iteration bound.
inline double n_star_inf(double delta) {
    double inv = 1.0 / (1.0 - delta);
    return inv + 2.0 * std::log(inv);
}

}  // namespace detail

/// ceil(1/(1-delta) + 2 ln(1/(1-delta))): after one more iteration than this, delta_n < 2/3 for every d.
inline std::int64_t n_upper_inf(double delta) {
    detail::require_high_noise(delta, "n_upper_inf");
    return static_cast<std::int64_t>(std::ceil(detail::n_star_inf(delta)));
}

struct FiniteDCoefficients {
    std::int64_t d;
    double a;
    double b;
    double c;
    double alpha;
    double beta;
};

inline FiniteDCoefficients finite_d_coeffs(std::int64_t d, double delta) {
    if (d < 2) {
        throw std::invalid_argument("finite_d_coeffs requires d >= 2");
    }
    detail::require_high_noise(delta, "finite_d_coeffs");
    double x = static_cast<double>(d);
    FiniteDCoefficients k{};
    k.d = d;
    k.a = (x + 1.0) / (x + 2.0);
    k.b = (x - 2.0) / (x + 2.0);
    k.c = d == 2 ? 1.0 / 7.0 : (x * x * x) / ((x + 2.0) * (x + 2.0) * (x + 2.0));
    k.alpha = (x - 2.0) * (x + 1.0) / (x + 2.0);
    double log_term = std::log(std::min(x, detail::n_star_inf(delta)));
    k.beta = k.alpha - 2.0 * k.c * k.a * log_term + 3.0 - 7.2 * k.c * k.a;
    return k;
}

/// Smallest integer n strictly above the finite-d iteration bound; delta_n < 2/3 is then guaranteed.
inline std::int64_t n_upper_finite_d(double delta, std::int64_t d) {
    FiniteDCoefficients k = finite_d_coeffs(d, delta);
    double kappa = 1.0 - delta;
    double x;
    if (d == 2) {
        x = std::log(1.0 / (kappa * k.beta)) / std::log(4.0 / 3.0);
    } else {
        x = (std::log1p(1.0 / (k.alpha * kappa)) + std::log(k.alpha / k.beta)) /
            std::log1p(1.0 / (static_cast<double>(d) + 1.0));
    }
    return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(x)) + 1);
}

/// SC(n, d) = 2^n / prod_{i=1..n} p_i: the expected number of raw copies consumed by an n-level run.
inline double expected_sample_complexity(double delta0, Dimension dim, std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("expected_sample_complexity requires n >= 0");
    }
    RecurrenceStepper stepper(delta0, dim);
    double sc = 1.0;
    for (std::int64_t i = 1; i <= n; i++) {
        sc *= 2.0 / stepper.step();
    }
    return sc;
}

/// Upper bound on the expected copies needed to reach error eps from delta:
///
///   delta < 1/3:         2 delta / (eps (1 - 2 delta)^2)
///   1/3 <= delta < 2/3:  3630 / eps
///   delta >= 2/3:        4^min{1/(1-delta) + 2 ln(1/(1-delta)), (d+2) ln(1/(1-delta))} * 3630 / eps
inline double sc_theorem_bound(double delta, std::int64_t d, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("sc_theorem_bound requires eps in (0,1)");
    }
    detail::require_open_unit_interval(delta, "delta");
    if (d < 2) {
        throw std::invalid_argument("sc_theorem_bound requires d >= 2");
    }
    if (delta < 1.0 / 3.0) {
        double g = 1.0 - 2.0 * delta;
        return 2.0 * delta / (eps * g * g);
    }
    if (delta < 2.0 / 3.0) {
        return 3630.0 / eps;
    }
    double log_inv = std::log(1.0 / (1.0 - delta));
    double exponent = std::min(detail::n_star_inf(delta), (static_cast<double>(d) + 2.0) * log_inv);
    return std::pow(4.0, exponent) * 3630.0 / eps;
}

/// Gates per swap test: two Hadamards, ceil(log2 d) controlled qubit swaps, one measurement.
inline std::int64_t gates_per_swap_test(std::int64_t d) {
    if (d < 2) {
        throw std::invalid_argument("gates_per_swap_test requires d >= 2");
    }
    std::int64_t qubits = 0;
    while ((std::int64_t{1} << qubits) < d) {
        qubits++;
    }
    return qubits + 3;
}

inline std::int64_t gate_count_estimate(std::uint64_t swap_attempts, std::int64_t d) {
    return static_cast<std::int64_t>(swap_attempts) * gates_per_swap_test(d);
}

/// Copies any protocol needs to reach error eps: delta (d - (d-2) delta) / (d^2 (1-delta)^2 eps).
inline double lower_bound_samples(double delta, std::int64_t d, double eps) {
    detail::require_open_unit_interval(delta, "delta");
    detail::require_open_unit_interval(eps, "eps");
    if (d < 2) {
        throw std::invalid_argument("lower_bound_samples requires d >= 2");
    }
    double x = static_cast<double>(d);
    double k = 1.0 - delta;
    return delta * (x - (x - 2.0) * delta) / (x * x * k * k * eps);
}

/// First-order asymptotic optimal fidelity 1 - ((d-1)/d) delta / ((1-delta)^2 (N+1)).
/// The O(1/N^2) remainder is dropped.
inline double optimal_fidelity_asymptotic(double delta, std::int64_t d, std::int64_t copies) {
    detail::require_open_unit_interval(delta, "delta");
    if (copies < 1 || d < 2) {
        throw std::invalid_argument("optimal_fidelity_asymptotic requires N >= 1 and d >= 2");
    }
    double x = static_cast<double>(d);
    double k = 1.0 - delta;
    return 1.0 - ((x - 1.0) / x) * delta / (k * k * (static_cast<double>(copies) + 1.0));
}

/// Copies N at which the asymptotic optimal fidelity reaches 1 - eps: ((d-1)/d) delta / (eps (1-delta)^2).
inline double optimal_samples_asymptotic(double delta, std::int64_t d, double eps) {
    detail::require_open_unit_interval(delta, "delta");
    detail::require_open_unit_interval(eps, "eps");
    double x = static_cast<double>(d);
    double k = 1.0 - delta;
    return ((x - 1.0) / x) * delta / (eps * k * k);
}

/// Sample-count estimate for purifying via state tomography plus principal
/// eigenvector: C d^2 / eta^2 (collective) or C d^3 / eta^2 (single-copy),
/// with tomography accuracy eta = (1 - delta) eps^2 / 2. The big-O constant C
/// is a convention, 1 by default.
inline double tomography_sample_estimate(std::int64_t d, double delta, double eps, bool collective,
                                         double constant = 1.0) {
    detail::require_open_unit_interval(delta, "delta");
    detail::require_open_unit_interval(eps, "eps");
    double x = static_cast<double>(d);
    double eta = (1.0 - delta) * eps * eps / 2.0;
    double dims = collective ? x * x : x * x * x;
    return constant * dims / (eta * eta);
}

}  // namespace purify
