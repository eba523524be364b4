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

#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "cli_commands.hpp"

namespace {

using namespace purify::cli;

struct GlobalFlags {
    std::uint64_t seed = 1;
    std::string out;
    std::string format;
    unsigned jobs = 0;
};

void add_common(CLI::App *sub, GlobalFlags &flags) {
    sub->add_option("--seed", flags.seed, "Root seed (u64)");
    sub->add_option("--out", flags.out, "Write the output here instead of stdout");
    sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", flags.jobs, "Worker threads for trial loops (0 = all cores)");
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open '" + path + "' for writing");
    }
    f << text;
    if (!f) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Purification of depolarized quantum states: recurrences, bounds and simulations"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    GlobalFlags flags;
    std::function<Document(const Common &)> run;

    RecurrenceArgs recurrence;
    auto *rec = app.add_subcommand("recurrence", "Error-parameter recurrence curves (CSV)");
    rec->add_option("--dims", recurrence.dims, "Comma-separated dimensions; 'inf' allowed");
    rec->add_option("--delta0", recurrence.delta0, "Initial error parameter");
    rec->add_option("--iters", recurrence.iters, "Number of iterations");
    rec->callback([&] { run = [&](const Common &c) { return cmd_recurrence(recurrence, c); }; });

    BoundsArgs bounds;
    auto *bnd = app.add_subcommand("bounds", "Iteration counts and sample-complexity bounds");
    bnd->add_option("--d", bounds.d, "Dimension; 'inf' allowed");
    bnd->add_option("--delta0", bounds.delta0, "Initial error parameter");
    bnd->add_option("--eps", bounds.eps, "Target error parameter");
    bnd->callback([&] { run = [&](const Common &c) { return cmd_bounds(bounds, c); }; });

    RegionArgs region;
    auto *reg = app.add_subcommand("region", "Outer boundary of the improvement region (CSV)");
    reg->add_option("--dims", region.dims, "Comma-separated dimensions; 'inf' maps to 10^6");
    reg->add_option("--resolution", region.resolution, "Grid points in (0,1)");
    reg->callback([&] { run = [&](const Common &c) { return cmd_region(region, c); }; });

    SimulateArgs simulate;
    bool unchecked = false;
    auto *sim = app.add_subcommand("simulate", "Monte Carlo runs of the stack-based protocol");
    sim->add_option("--d", simulate.d, "Finite dimension");
    sim->add_option("--delta0", simulate.delta0, "Initial error parameter");
    sim->add_option("--levels", simulate.levels, "Purification depth n");
    sim->add_option("--runs", simulate.runs, "Number of independent runs");
    sim->add_option("--records", simulate.records_path, "Optional per-run CSV output");
    sim->add_flag("--unchecked", unchecked, "Skip the per-step stack invariant check");
    sim->callback([&] {
        simulate.checked = !unchecked;
        run = [&](const Common &c) { return cmd_simulate(simulate, c); };
    });

    VerifyArgs verify;
    auto *ver = app.add_subcommand("verify", "Dense swap-test check of the closed forms");
    ver->add_option("--d", verify.d, "Dimension, at most 16");
    ver->add_option("--trials", verify.trials, "Random (psi, delta1, delta2) tuples");
    ver->add_option("--tolerance", verify.tolerance, "Maximum allowed error");
    ver->callback([&] { run = [&](const Common &c) { return cmd_verify(verify, c); }; });

    SimonArgs simon;
    double simon_eps = 0.0;
    auto *smn = app.add_subcommand("simon", "Simon's problem with a depolarizing oracle");
    smn->add_option("--m", simon.ms, "Comma-separated bit lengths");
    smn->add_option("--delta", simon.delta, "Oracle depolarization");
    auto *eps_opt = smn->add_option("--eps", simon_eps, "Purification target (default 1/(10m))");
    smn->add_option("--trials", simon.trials, "Trials per m");
    smn->add_option("--budget", simon.budget, "Purified samples per trial (default 20m)");
    smn->callback([&] {
        if (eps_opt->count() > 0) {
            simon.eps = simon_eps;
        }
        run = [&](const Common &c) { return cmd_simon(simon, c); };
    });

    MixednessArgs mixed;
    auto *mix = app.add_subcommand("mixedness", "Maximally-mixed versus far-from-mixed testing");
    mix->add_option("--d", mixed.d, "Finite dimension");
    mix->add_option("--eta", mixed.eta, "Trace-distance gap");
    mix->add_option("--case", mixed.which, "mixed, far or both")->check(CLI::IsMember({"mixed", "far", "both"}));
    mix->add_option("--far-delta", mixed.far_delta, "Error parameter of the far class");
    mix->add_option("--reps", mixed.reps, "Repetitions per verdict");
    mix->add_option("--trials", mixed.trials, "Verdicts per class");
    mix->add_option("--threshold", mixed.threshold, "Pass-rate threshold");
    mix->add_option("--max-simulated-copies", mixed.max_simulated_copies,
                    "Expected stream copies simulated per repetition");
    mix->callback([&] { run = [&](const Common &c) { return cmd_mixedness(mixed, c); }; });

    for (auto *sub : {rec, bnd, reg, sim, ver, smn, mix}) {
        add_common(sub, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Common common;
        common.seed = flags.seed;
        common.jobs = flags.jobs;
        if (!flags.format.empty()) {
            common.format = parse_format(flags.format);
        }
        Document doc = run(common);
        if (flags.out.empty()) {
            std::cout << doc.text;
        } else {
            write_file(flags.out, doc.text);
        }
        for (const auto &[path, text] : doc.extra_files) {
            write_file(path, text);
        }
        return doc.exit_code;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
