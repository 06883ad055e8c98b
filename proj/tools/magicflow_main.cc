// Copyright 2026 The magicflow Authors
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

#include <cstdio>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "magicflow/errors.h"

using namespace magicflow;
using namespace magicflow::cli;

namespace {

void add_simulate(CLI::App &app, SimulateOptions &opt, std::string &initial, std::string &schedule,
                  std::string &observables, std::string &plot_log) {
    ExperimentConfig &c = opt.config;
    app.add_option("--n", c.n, "Number of qubits")->check(CLI::Range(1, 30));
    app.add_option("--theta", c.theta_m, "Measurement angle parameter theta_M in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--steps", c.steps, "Measurement rounds per trajectory")->check(CLI::PositiveNumber);
    app.add_option("--traj", c.trajectories, "Number of trajectories")->check(CLI::PositiveNumber);
    app.add_option("--initial", initial, "Initial state")
        ->check(CLI::IsMember({"haar", "t", "gue", "zero"}));
    app.add_option("--gue-time", c.gue_time, "Evolution time of the GUE initial state")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", c.master_seed, "Master seed");
    app.add_option("--schedule", schedule, "Checkpoint schedule: dense or log:K");
    app.add_option("--observables", observables, "Comma list of nullity, sreA (e.g. sre2), entropy");
    app.add_option("--cut", c.observables.cut, "Entanglement cut (default n/2)")->check(CLI::NonNegativeNumber);
    app.add_option("--workers", c.workers, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", opt.out, "JSON summary path");
    app.add_option("--csv", opt.csv, "CSV table path");
    app.add_option("--plot", opt.plot, "SVG plot path");
    app.add_option("--plot-log", plot_log, "Log axes of the plot")->check(CLI::IsMember({"none", "x", "y", "xy"}));
    app.add_flag("--records", opt.records, "Include per-trajectory records in the JSON");
    app.add_flag("--quiet", opt.quiet, "Do not print the summary table");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"magicflow: magic dynamics under monitored random Clifford circuits"};
    app.set_version_flag("--version", std::string(MAGICFLOW_VERSION));
    app.require_subcommand(1);

    SimulateOptions sim;
    std::string initial = "haar";
    std::string schedule = "log:20";
    std::string observables = "nullity,sre2";
    std::string plot_log = "x";
    CLI::App *simulate = app.add_subcommand("simulate", "Run a trajectory ensemble");
    add_simulate(*simulate, sim, initial, schedule, observables, plot_log);

    ModelOptions model;
    CLI::App *model_cmd = app.add_subcommand("model", "Evaluate the Markov-chain and continuous models");
    model_cmd->add_option("--n", model.n, "Number of qubits")->check(CLI::Range(1, 60));
    auto *mb = model_cmd->add_flag("--magic-basis", model.magic_basis, "Rotated-basis chain and steady state");
    auto *an = model_cmd->add_flag("--analytic", model.analytic, "Computational-basis chain vs closed forms");
    mb->excludes(an);
    model_cmd->add_option("--steps", model.steps, "Steps to evaluate (default depends on mode)")
        ->check(CLI::PositiveNumber);
    model_cmd->add_option("--out", model.out, "CSV path");
    model_cmd->add_option("--plot", model.plot, "SVG plot path");

    FitOptions fit;
    CLI::App *fit_cmd = app.add_subcommand("fit", "Fit a model to the ensemble means of a simulate output");
    fit_cmd->add_option("--input", fit.input, "JSON written by simulate --out")->required();
    fit_cmd->add_option("--model", fit.model, "Fit model")
        ->check(CLI::IsMember({"nullity_fit", "m2_nu_fit", "gen_fit"}));
    fit_cmd->add_option("--observable", fit.observable, "Observable column (default by model)");
    fit_cmd->add_option("--time-shift", fit.time_shift, "Fit against step + shift");
    fit_cmd->add_option("--guess", fit.guess, "Initial parameters (A y0 [C])");

    ReproduceOptions rep;
    CLI::App *rep_cmd = app.add_subcommand("reproduce", "Regenerate a figure's data and plots at desk scale");
    rep_cmd->add_option("figure", rep.figure, "Figure id")->required()->check(CLI::IsMember(figure_ids()));
    rep_cmd->add_option("--outdir", rep.outdir, "Output directory");
    rep_cmd->add_flag("--quick", rep.quick, "Smaller ensembles");
    rep_cmd->add_option("--workers", rep.workers, "Worker threads")->check(CLI::NonNegativeNumber);
    rep_cmd->add_option("--seed", rep.seed, "Master seed");

    SelftestOptions self;
    CLI::App *self_cmd = app.add_subcommand("selftest", "Run built-in consistency suites");
    self_cmd->add_option("--inject-failure", self.inject_failure)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) {
            sim.config.initial = parse_initial_state(initial);
            sim.config.schedule = Schedule::parse(schedule);
            int cut = sim.config.observables.cut;
            sim.config.observables = ObservableSet::parse(observables);
            sim.config.observables.cut = cut;
            sim.plot_log_x = plot_log == "x" || plot_log == "xy";
            sim.plot_log_y = plot_log == "y" || plot_log == "xy";
            return cmd_simulate(sim);
        }
        if (*model_cmd) {
            if (!model.magic_basis && !model.analytic) {
                std::cerr << "model: pass --magic-basis or --analytic\n";
                return kExitUsage;
            }
            return cmd_model(model);
        }
        if (*fit_cmd) {
            return cmd_fit(fit);
        }
        if (*rep_cmd) {
            return cmd_reproduce(rep);
        }
        if (*self_cmd) {
            return cmd_selftest(self);
        }
    } catch (const CapExceeded &e) {
        std::cerr << "error: " << e.what() << " (set MAGICFLOW_MAX_QUBITS to raise the cap)\n";
        return kExitCap;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
