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

// Closed-form algebra of one repeat-until-success swap test on depolarized
// inputs rho(delta1), rho(delta2) sharing the same pure component.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "purify/core.hpp"
#include "purify/recurrence.hpp"

namespace purify {

struct GadgetOutcome {
    double success_prob;
    double output_delta;
    double expected_copies_each;  ///< 2 / success_prob
};

/// Outcome-0 probability (1 + Tr(rho sigma)) / 2 = ((1+1/d) + (1-1/d)(1-delta1)(1-delta2)) / 2.
inline double swap_success_prob(double delta1, double delta2, Dimension dim) {
    detail::require_unit_interval(delta1, "delta1");
    detail::require_unit_interval(delta2, "delta2");
    double inv_d = dim.inverse();
    return 0.5 * ((1.0 + inv_d) + (1.0 - inv_d) * (1.0 - delta1) * (1.0 - delta2));
}

/// Error parameter of the outcome-0 output state.
inline double swap_output_delta(double delta1, double delta2, Dimension dim) {
    detail::require_unit_interval(delta1, "delta1");
    detail::require_unit_interval(delta2, "delta2");
    double inv_d = 1.0 / static_cast<double>(dim.finite_value());
    double numerator = 0.5 * (delta1 + delta2) + delta1 * delta2 * inv_d;
    double denominator = (1.0 + inv_d) + (1.0 - inv_d) * (1.0 - delta1) * (1.0 - delta2);
    return numerator / denominator;
}

inline GadgetOutcome swap_gadget(double delta1, double delta2, Dimension dim) {
    double p = swap_success_prob(delta1, delta2, dim);
    return GadgetOutcome{p, swap_output_delta(delta1, delta2, dim), 2.0 / p};
}

namespace detail {

/// Width of the improvement band above delta1: (1-x) 2x(d-(d-1)x) / (d + 2x(d-(d-1)x)).
inline double improvement_width(double x, double d) {
    double t = 2.0 * x * (d - (d - 1.0) * x);
    return (1.0 - x) * t / (d + t);
}

}  // namespace detail

/// True iff the gadget output is strictly purer than both inputs.
/// Argument order does not matter; points on the boundary count as not improving.
inline bool improves_both(double delta1, double delta2, Dimension dim) {
    detail::require_open_unit_interval(delta1, "delta1");
    detail::require_open_unit_interval(delta2, "delta2");
    auto [lo, hi] = std::minmax(delta1, delta2);
    double d = static_cast<double>(dim.finite_value());
    return hi - lo < detail::improvement_width(lo, d);
}

/// Supremum of the delta2 >= delta1 for which the gadget still improves both inputs.
inline double region_boundary(double delta1, Dimension dim) {
    detail::require_open_unit_interval(delta1, "delta1");
    double d = static_cast<double>(dim.finite_value());
    return std::min(1.0, delta1 + detail::improvement_width(delta1, d));
}

}  // namespace purify
