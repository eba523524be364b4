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

// Subcommand implementations for the purify command-line tool.
//
// Each command turns a parameter struct into an output document (CSV or JSON)
// plus an exit code. Documents carry a schema tag, the tool version, the full
// parameter echo and the root seed, and nothing time- or host-dependent, so
// re-running with the echoed parameters reproduces the same bytes.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "purify/purify.hpp"

namespace purify::cli {

inline constexpr const char *kToolName = "purify";
inline constexpr const char *kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitBudget = 3,
};

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class Format { Csv, Json };

inline Format parse_format(const std::string &token) {
    if (token == "csv") {
        return Format::Csv;
    }
    if (token == "json") {
        return Format::Json;
    }
    throw UsageError("unknown format '" + token + "' (expected csv or json)");
}

/// Flags shared by every subcommand.
struct Common {
    std::uint64_t seed = 1;
    std::optional<Format> format;
    unsigned jobs = 0;
};

struct Document {
    std::string text;
    int exit_code = kExitOk;
    /// Secondary outputs (path, contents), e.g. per-run records.
    std::vector<std::pair<std::string, std::string>> extra_files;
};

using nlohmann::ordered_json;

/// %.17g, enough digits to round-trip a double.
inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    if (out.empty()) {
        throw UsageError("empty list '" + text + "'");
    }
    return out;
}

inline std::int64_t parse_int(const std::string &token, const char *what) {
    size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(token, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != token.size()) {
        throw UsageError(std::string("bad ") + what + " '" + token + "'");
    }
    return v;
}

/// Accepts an integer d >= 2, or "inf" when `allow_infinite` is set.
inline Dimension parse_dimension(const std::string &token, bool allow_infinite) {
    if (token == "inf" || token == "infinity") {
        if (!allow_infinite) {
            throw UsageError("dimension 'inf' is only accepted by analytic commands; simulations need a finite d");
        }
        return Dimension::infinite();
    }
    std::int64_t d = parse_int(token, "dimension");
    if (d < 2) {
        throw UsageError("dimension must be >= 2, got " + token);
    }
    return Dimension::finite(d);
}

inline ordered_json dimension_json(Dimension dim) {
    return dim.is_infinite() ? ordered_json("inf") : ordered_json(dim.finite_value());
}

inline ordered_json nullable(const std::optional<double> &x) { return x ? ordered_json(*x) : ordered_json(nullptr); }
inline ordered_json nullable(const std::optional<std::int64_t> &x) {
    return x ? ordered_json(*x) : ordered_json(nullptr);
}

inline std::string schema_tag(const std::string &command) {
    return std::string(kToolName) + "." + command + ".v" + std::to_string(kSchemaVersion);
}

inline ordered_json json_document(const std::string &command, const ordered_json &params, std::uint64_t seed,
                                  ordered_json result) {
    ordered_json doc;
    doc["schema"] = schema_tag(command);
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["command"] = command;
    doc["params"] = params;
    doc["seed"] = seed;
    doc["result"] = std::move(result);
    return doc;
}

/// Comment block that opens every CSV file.
inline std::string csv_preamble(const std::string &command, const ordered_json &params, std::uint64_t seed) {
    std::string out;
    out += "# schema: " + schema_tag(command) + "\n";
    out += std::string("# tool: ") + kToolName + " " + kToolVersion + "\n";
    out += "# params: " + params.dump() + "\n";
    out += "# seed: " + std::to_string(seed) + "\n";
    return out;
}

/// Renders a JSON object as two-column (key, value) CSV. Nested values are
/// flattened with '.' separators and array indices.
inline void flatten_json(const ordered_json &value, const std::string &prefix, std::string &out) {
    if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it) {
            flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else if (value.is_array()) {
        for (size_t i = 0; i < value.size(); i++) {
            flatten_json(value[i], prefix + "." + std::to_string(i), out);
        }
    } else if (value.is_null()) {
        out += prefix + ",NA\n";
    } else if (value.is_number_float()) {
        out += prefix + "," + num(value.get<double>()) + "\n";
    } else if (value.is_string()) {
        out += prefix + "," + value.get<std::string>() + "\n";
    } else {
        out += prefix + "," + value.dump() + "\n";
    }
}

inline std::string render_summary(const std::string &command, const ordered_json &params, std::uint64_t seed,
                                  const ordered_json &result, Format format) {
    if (format == Format::Json) {
        return json_document(command, params, seed, result).dump(2) + "\n";
    }
    std::string out = csv_preamble(command, params, seed);
    out += "key,value\n";
    flatten_json(result, "", out);
    return out;
}

inline void require_range(double x, double lo, double hi, const char *what) {
    if (!(x >= lo && x <= hi)) {
        throw UsageError(std::string(what) + " must lie in [" + num(lo) + ", " + num(hi) + "], got " + num(x));
    }
}

// ---------------------------------------------------------------------------
// recurrence

struct RecurrenceArgs {
    std::string dims = "20,50,100,inf";
    double delta0 = 0.99;
    std::int64_t iters = 60;
};

inline Document cmd_recurrence(const RecurrenceArgs &args, const Common &common) {
    require_range(args.delta0, 0.0, 1.0, "delta0");
    if (args.iters < 0) {
        throw UsageError("iters must be >= 0");
    }
    std::vector<Dimension> dims;
    for (const auto &token : split_list(args.dims)) {
        dims.push_back(parse_dimension(token, true));
    }
    ordered_json params = {{"dims", args.dims}, {"delta0", args.delta0}, {"iters", args.iters}};

    Format format = common.format.value_or(Format::Csv);
    Document doc;
    if (format == Format::Csv) {
        doc.text = csv_preamble("recurrence", params, common.seed);
        doc.text += "d,i,delta,p\n";
        for (Dimension dim : dims) {
            RecurrenceTrace trace = iterate(args.delta0, dim, args.iters);
            for (const RecurrenceEntry &e : trace.entries) {
                doc.text += dim.to_string() + "," + std::to_string(e.index) + "," + num(e.delta) + "," +
                            (e.p ? num(*e.p) : std::string()) + "\n";
            }
        }
        return doc;
    }
    ordered_json curves = ordered_json::array();
    for (Dimension dim : dims) {
        RecurrenceTrace trace = iterate(args.delta0, dim, args.iters);
        ordered_json delta = ordered_json::array();
        ordered_json p = ordered_json::array();
        for (const RecurrenceEntry &e : trace.entries) {
            delta.push_back(e.delta);
            p.push_back(e.p ? ordered_json(*e.p) : ordered_json(nullptr));
        }
        std::optional<std::int64_t> istar;
        if (args.delta0 > 2.0 / 3.0 && args.delta0 < 1.0) {
            istar = i_star(args.delta0, dim);
        }
        curves.push_back({{"d", dimension_json(dim)}, {"i_star", nullable(istar)}, {"delta", delta}, {"p", p}});
    }
    doc.text = json_document("recurrence", params, common.seed, {{"curves", curves}}).dump(2) + "\n";
    return doc;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
    std::string d = "2";
    double delta0 = 0.25;
    double eps = 1e-3;
};

inline Document cmd_bounds(const BoundsArgs &args, const Common &common) {
    Dimension dim = parse_dimension(args.d, true);
    if (!(args.delta0 > 0.0 && args.delta0 < 1.0)) {
        throw UsageError("delta0 must lie in (0,1)");
    }
    if (!(args.eps > 0.0 && args.eps < 1.0)) {
        throw UsageError("eps must lie in (0,1)");
    }
    ordered_json params = {{"d", args.d}, {"delta0", args.delta0}, {"eps", args.eps}};

    const bool high_noise = args.delta0 > 2.0 / 3.0;
    std::int64_t n = iterations_to(args.delta0, dim, args.eps);
    double delta_n = iterate(args.delta0, dim, n).entries.back().delta;
    // The theorem bound only depends on d through min(n*, (d+2) ln(1/(1-delta))).
    std::int64_t d_for_bound = dim.is_finite() ? dim.finite_value() : std::numeric_limits<std::int64_t>::max();

    std::optional<std::int64_t> upper_inf;
    std::optional<std::int64_t> upper_finite;
    if (high_noise) {
        upper_inf = n_upper_inf(args.delta0);
        if (dim.is_finite()) {
            upper_finite = n_upper_finite_d(args.delta0, dim.finite_value());
        }
    }
    std::optional<double> lower;
    std::optional<double> optimal_n;
    std::optional<double> tomo_collective;
    std::optional<double> tomo_single;
    if (dim.is_finite()) {
        std::int64_t d = dim.finite_value();
        lower = lower_bound_samples(args.delta0, d, args.eps);
        optimal_n = optimal_samples_asymptotic(args.delta0, d, args.eps);
        tomo_collective = tomography_sample_estimate(d, args.delta0, args.eps, true);
        tomo_single = tomography_sample_estimate(d, args.delta0, args.eps, false);
    }

    ordered_json result;
    result["d"] = dimension_json(dim);
    result["n_direct"] = n;
    result["delta_n"] = delta_n;
    result["n_upper_inf"] = nullable(upper_inf);
    result["n_upper_finite_d"] = nullable(upper_finite);
    result["sc_exact"] = expected_sample_complexity(args.delta0, dim, n);
    result["sc_theorem_bound"] = sc_theorem_bound(args.delta0, d_for_bound, args.eps);
    result["lower_bound_samples"] = nullable(lower);
    result["optimal_samples_asymptotic"] = nullable(optimal_n);
    result["tomography_collective"] = nullable(tomo_collective);
    result["tomography_single_copy"] = nullable(tomo_single);

    Document doc;
    doc.text = render_summary("bounds", params, common.seed, result, common.format.value_or(Format::Json));
    return doc;
}

// ---------------------------------------------------------------------------
// region

/// Stand-in for d = inf in the region predicate, which needs a finite d.
inline constexpr std::int64_t kRegionLargeDimension = 1'000'000;

struct RegionArgs {
    std::string dims = "2,3,6,inf";
    std::int64_t resolution = 200;
};

inline Document cmd_region(const RegionArgs &args, const Common &common) {
    if (args.resolution < 1) {
        throw UsageError("resolution must be >= 1");
    }
    std::vector<std::pair<std::string, Dimension>> dims;
    for (const auto &token : split_list(args.dims)) {
        Dimension dim = parse_dimension(token, true);
        dims.emplace_back(dim.to_string(),
                          dim.is_infinite() ? Dimension::finite(kRegionLargeDimension) : dim);
    }
    ordered_json params = {{"dims", args.dims}, {"resolution", args.resolution}};

    auto grid = [&](std::int64_t k) { return static_cast<double>(k) / static_cast<double>(args.resolution + 1); };
    Format format = common.format.value_or(Format::Csv);
    Document doc;
    if (format == Format::Csv) {
        doc.text = csv_preamble("region", params, common.seed);
        doc.text += "d,delta1,delta2_boundary\n";
        for (const auto &[label, dim] : dims) {
            for (std::int64_t k = 1; k <= args.resolution; k++) {
                doc.text += label + "," + num(grid(k)) + "," + num(region_boundary(grid(k), dim)) + "\n";
            }
        }
        return doc;
    }
    ordered_json curves = ordered_json::array();
    for (const auto &[label, dim] : dims) {
        ordered_json d1 = ordered_json::array();
        ordered_json d2 = ordered_json::array();
        for (std::int64_t k = 1; k <= args.resolution; k++) {
            d1.push_back(grid(k));
            d2.push_back(region_boundary(grid(k), dim));
        }
        curves.push_back({{"d", label}, {"d_used", dim.finite_value()}, {"delta1", d1}, {"delta2_boundary", d2}});
    }
    doc.text = json_document("region", params, common.seed, {{"curves", curves}}).dump(2) + "\n";
    return doc;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string d = "2";
    double delta0 = 0.3;
    std::int64_t levels = 5;
    std::uint64_t runs = 1000;
    std::string records_path;  ///< optional per-run CSV
    bool checked = true;
};

inline Document cmd_simulate(const SimulateArgs &args, const Common &common) {
    Dimension dim = parse_dimension(args.d, false);
    require_range(args.delta0, 0.0, 1.0, "delta0");
    if (args.levels < 0) {
        throw UsageError("levels must be >= 0");
    }
    if (args.runs < 1) {
        throw UsageError("runs must be >= 1");
    }
    ordered_json params = {{"d", args.d},         {"delta0", args.delta0},   {"levels", args.levels},
                           {"runs", args.runs},   {"checked", args.checked}};

    std::int64_t d = dim.finite_value();
    MonteCarloResult mc = monte_carlo(args.delta0, d, args.levels, args.runs, Seed{common.seed, 0}, common.jobs,
                                      StreamOptions{args.checked});
    const MonteCarloSummary &s = mc.summary;
    double sc = expected_sample_complexity(args.delta0, dim, args.levels);
    double se = s.standard_error();
    PurifyPlan plan = PurifyPlan::make(args.delta0, d, args.levels);

    ordered_json result;
    result["runs"] = s.runs;
    result["mean_copies"] = s.mean_copies;
    result["variance_copies"] = s.variance_copies;
    result["standard_error"] = se;
    result["min_copies"] = s.min_copies;
    result["max_copies"] = s.max_copies;
    result["sc_theoretical"] = sc;
    result["z_score"] = se > 0.0 ? ordered_json((s.mean_copies - sc) / se) : ordered_json(nullptr);
    result["mean_swap_attempts"] = s.mean_swap_attempts;
    result["mean_gate_count"] = s.mean_swap_attempts * static_cast<double>(gates_per_swap_test(d));
    result["max_stack_depth"] = s.max_stack_depth;
    result["stack_depth_bound"] = args.levels + 1;
    result["final_delta"] = plan.delta.back();
    result["level_attempts"] = s.level_attempts;
    result["level_successes"] = s.level_successes;
    result["level_success_prob"] = plan.level_success;

    Document doc;
    doc.text = render_summary("simulate", params, common.seed, result, common.format.value_or(Format::Json));
    if (!args.records_path.empty()) {
        std::string records = csv_preamble("simulate_records", params, common.seed);
        records += "run,copies_consumed,swap_attempts,max_stack_depth\n";
        for (size_t r = 0; r < mc.records.size(); r++) {
            const RunRecord &rec = mc.records[r];
            records += std::to_string(r) + "," + std::to_string(rec.copies_consumed) + "," +
                       std::to_string(rec.swap_attempts) + "," + std::to_string(rec.max_stack_depth) + "\n";
        }
        doc.extra_files.emplace_back(args.records_path, std::move(records));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string d = "2";
    std::int64_t trials = 100;
    double tolerance = kEquivalenceTolerance;
};

inline Document cmd_verify(const VerifyArgs &args, const Common &common) {
    Dimension dim = parse_dimension(args.d, false);
    if (dim.finite_value() > dense::kMaxDimension) {
        throw UsageError("verify supports d <= " + std::to_string(dense::kMaxDimension) + ", got " + args.d);
    }
    if (args.trials < 1) {
        throw UsageError("trials must be >= 1");
    }
    if (!(args.tolerance > 0.0)) {
        throw UsageError("tolerance must be positive");
    }
    ordered_json params = {{"d", args.d}, {"trials", args.trials}, {"tolerance", args.tolerance}};
    EquivalenceReport report =
        verify_swap_equivalence(dim.finite_value(), args.trials, Seed{common.seed, 0}, args.tolerance);

    ordered_json result;
    result["d"] = report.d;
    result["trials"] = report.trials;
    result["max_prob_error"] = report.max_prob_error;
    result["max_trace_distance"] = report.max_trace_distance;
    result["failures"] = report.failures;
    result["passed"] = report.passed();

    Document doc;
    doc.text = render_summary("verify", params, common.seed, result, common.format.value_or(Format::Json));
    doc.exit_code = report.passed() ? kExitOk : kExitValidation;
    return doc;
}

// ---------------------------------------------------------------------------
// simon

struct SimonArgs {
    std::string ms = "4";
    double delta = 0.5;
    std::optional<double> eps;  ///< defaults to 1/(10m) per m
    std::int64_t trials = 200;
    std::uint64_t budget = 0;   ///< purified samples per trial; 0 means 20m
};

inline Document cmd_simon(const SimonArgs &args, const Common &common) {
    if (!(args.delta > 0.0 && args.delta < 1.0)) {
        throw UsageError("delta must lie in (0,1)");
    }
    if (args.trials < 1) {
        throw UsageError("trials must be >= 1");
    }
    std::vector<int> ms;
    for (const auto &token : split_list(args.ms)) {
        std::int64_t m = parse_int(token, "m");
        if (m < 2 || m > kMaxSimonBits) {
            throw UsageError("m must lie in [2, " + std::to_string(kMaxSimonBits) + "], got " + token);
        }
        ms.push_back(static_cast<int>(m));
    }
    ordered_json params = {{"m", args.ms},
                           {"delta", args.delta},
                           {"eps", args.eps ? ordered_json(*args.eps) : ordered_json("1/(10m)")},
                           {"trials", args.trials},
                           {"budget", args.budget == 0 ? ordered_json("20m") : ordered_json(args.budget)}};

    ordered_json table = ordered_json::array();
    bool exhausted = false;
    for (size_t k = 0; k < ms.size(); k++) {
        int m = ms[k];
        double eps = args.eps.value_or(default_simon_eps(m));
        if (!(eps > 0.0 && eps < args.delta)) {
            throw UsageError("eps must lie in (0, delta)");
        }
        std::uint64_t budget = args.budget == 0 ? static_cast<std::uint64_t>(20 * m) : args.budget;
        SimonTrialsSummary s =
            run_simon_trials(m, args.delta, eps, budget, args.trials, Seed{common.seed, 0}.child(k), common.jobs);
        exhausted = exhausted || s.budget_exhausted > 0;
        double m2 = static_cast<double>(m) * static_cast<double>(m);
        table.push_back({{"m", m},
                         {"eps", eps},
                         {"budget", budget},
                         {"levels", s.levels},
                         {"trials", s.trials},
                         {"success_rate", s.success_rate()},
                         {"budget_exhausted", s.budget_exhausted},
                         {"restarts", s.restarts},
                         {"mean_samples", s.mean_samples},
                         {"mean_oracle_queries", s.mean_oracle_queries},
                         {"queries_over_m_squared", s.mean_oracle_queries / m2},
                         {"max_stack_depth", s.max_stack_depth}});
    }

    Document doc;
    doc.text = render_summary("simon", params, common.seed, {{"per_m", table}}, common.format.value_or(Format::Json));
    doc.exit_code = exhausted ? kExitBudget : kExitOk;
    return doc;
}

// ---------------------------------------------------------------------------
// mixedness

struct MixednessArgs {
    std::string d = "2";
    double eta = 0.5;
    std::string which = "both";  ///< mixed, far or both
    double far_delta = 0.5;
    std::int64_t reps = 20;
    std::int64_t trials = 400;
    double threshold = 0.875;
    double max_simulated_copies = 4096.0;
};

inline Document cmd_mixedness(const MixednessArgs &args, const Common &common) {
    Dimension dim = parse_dimension(args.d, false);
    if (args.which != "mixed" && args.which != "far" && args.which != "both") {
        throw UsageError("case must be mixed, far or both");
    }
    if (!(args.eta > 0.0 && args.eta < 1.0)) {
        throw UsageError("eta must lie in (0,1)");
    }
    if (args.reps < 1 || args.trials < 1) {
        throw UsageError("reps and trials must be >= 1");
    }
    if (!(args.max_simulated_copies >= 2.0)) {
        throw UsageError("max-simulated-copies must be >= 2");
    }
    ordered_json params = {{"d", args.d},
                           {"eta", args.eta},
                           {"case", args.which},
                           {"far_delta", args.far_delta},
                           {"reps", args.reps},
                           {"trials", args.trials},
                           {"threshold", args.threshold},
                           {"max_simulated_copies", args.max_simulated_copies}};

    MixednessConfig config;
    config.threshold = args.threshold;
    config.max_simulated_copies_per_rep = args.max_simulated_copies;

    // The mixed class always draws from seed.child(0) and the far class from
    // seed.child(1), so running one class alone reproduces its half of "both".
    std::vector<std::pair<std::string, double>> classes;
    if (args.which != "far") {
        classes.emplace_back("mixed", 1.0);
    }
    if (args.which != "mixed") {
        validate_mixedness_case(args.far_delta, args.eta);
        if (args.far_delta == 1.0) {
            throw UsageError("far-delta must be below 1");
        }
        classes.emplace_back("far", args.far_delta);
    }
    ordered_json out = ordered_json::object();
    for (const auto &[name, delta] : classes) {
        Seed class_seed = Seed{common.seed, 0}.child(name == "mixed" ? 0 : 1);
        MixednessTrials t = run_mixedness_trials(delta, dim.finite_value(), args.eta, args.reps, args.trials,
                                                 class_seed, config, common.jobs);
        out[name] = {{"case_delta", delta},
                     {"levels", t.levels},
                     {"simulated_levels", t.simulated_levels},
                     {"final_pass_probability", t.final_pass_probability},
                     {"expected_raw_copies_per_rep", t.expected_raw_copies_per_rep},
                     {"trials", t.trials},
                     {"errors", t.errors},
                     {"error_rate", t.error_rate()},
                     {"max_stack_depth", t.max_stack_depth},
                     {"pass_histogram", t.pass_histogram}};
    }

    Document doc;
    doc.text = render_summary("mixedness", params, common.seed, out, common.format.value_or(Format::Json));
    return doc;
}

}  // namespace purify::cli
