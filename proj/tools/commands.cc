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

#include "commands.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "magicflow/fit.h"
#include "magicflow/model.h"
#include "magicflow/output.h"
#include "magicflow/svg.h"

namespace magicflow::cli {

namespace {

constexpr int kMaxAnalyticSteps = 4000000;

std::vector<int> log_grid(int steps, int per_decade) { return Schedule::log_spaced(per_decade).checkpoints(steps); }

void print_summary(const EnsembleSummary &summary) {
    std::printf("%10s", "step");
    for (const std::string &name : summary.observables) {
        std::printf(" %14s %10s", (name + "_mean").c_str(), "stderr");
    }
    std::printf("\n");
    for (size_t c = 0; c < summary.steps.size(); c++) {
        std::printf("%10d", summary.steps[c]);
        for (size_t k = 0; k < summary.observables.size(); k++) {
            std::printf(" %14.6f %10.6f", summary.stats[k][c].mean, summary.stats[k][c].stderr_);
        }
        std::printf("\n");
    }
}

}  // namespace

void write_run_outputs(const ExperimentConfig &config, const EnsembleResult &result, const std::string &json_path,
                       const std::string &csv_path, const std::string &plot_path, bool include_records,
                       double wall_time_seconds, bool log_x, bool log_y) {
    Json config_json = config_to_json(config);
    if (!json_path.empty()) {
        Json bundle = summary_bundle(config, result.summary, include_records ? &result.records : nullptr,
                                     make_provenance(config.master_seed, wall_time_seconds));
        write_text_file(json_path, bundle.dump(2) + "\n");
    }
    if (!csv_path.empty()) {
        write_text_file(csv_path, csv_string(summary_table(result.summary), config_json));
    }
    if (!plot_path.empty()) {
        PlotSpec spec;
        spec.title = "n=" + std::to_string(config.n) + ", theta_M=" + std::to_string(config.theta_m) + ", " +
                     to_string(config.initial) + " start";
        spec.x_label = "t";
        spec.y_label = "ensemble mean";
        spec.log_x = log_x;
        spec.log_y = log_y;
        spec.metadata = config_json.dump();
        std::vector<PlotSeries> series;
        for (const std::string &name : result.summary.observables) {
            PlotSeries s;
            s.label = name;
            for (int step : result.summary.steps) {
                s.x.push_back(step);
            }
            s.y = result.summary.means(name);
            s.err = result.summary.stderrs(name);
            series.push_back(std::move(s));
        }
        write_text_file(plot_path, render_svg(spec, series));
    }
}

int cmd_simulate(const SimulateOptions &options) {
    options.config.validate();
    auto start = std::chrono::steady_clock::now();
    EnsembleResult result = run_ensemble(options.config, options.records);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_run_outputs(options.config, result, options.out, options.csv, options.plot, options.records, wall,
                      options.plot_log_x, options.plot_log_y);
    if (!options.quiet) {
        print_summary(result.summary);
    }
    return kExitOk;
}

int cmd_model(const ModelOptions &options) {
    int n = options.n;
    Json config = {{"command", "model"}, {"n", n}, {"mode", options.magic_basis ? "magic_basis" : "analytic"}};
    Table table;
    std::vector<PlotSeries> series;
    PlotSpec spec;
    spec.x_label = "t";
    spec.y_label = "mean nullity";
    spec.log_x = true;

    if (options.magic_basis) {
        int steps = options.steps > 0 ? options.steps : std::max(200, 20 * n);
        config["steps"] = steps;
        auto dists = model::markov_evolve(model::NullityDistribution::point_mass(n, 0), steps, true);
        table.columns = {"step", "mean_nu"};
        for (int nu = 0; nu <= n; nu++) {
            table.columns.push_back("rho_" + std::to_string(nu));
        }
        PlotSeries s{"chain from nu=0", {}, {}, {}, false};
        for (int t = 0; t <= steps; t++) {
            std::vector<double> row = {static_cast<double>(t), dists[t].mean()};
            row.insert(row.end(), dists[t].rho.begin(), dists[t].rho.end());
            table.add_row(std::move(row));
            if (t > 0) {
                s.x.push_back(t);
                s.y.push_back(dists[t].mean());
            }
        }
        series.push_back(std::move(s));
        const model::NullityDistribution &last = dists.back();
        model::SteadyState ss = model::steady_state_distribution();
        std::printf("tail mean nu = %.4f (N %+.4f)\n", last.mean(), last.mean() - n);
        std::printf("large-N steady state: N %+.4f, weights", ss.nu_offset);
        for (const auto &p : ss.points) {
            std::printf(" %.4f", p.probability);
        }
        std::printf(" at nu = N-1, N-2, ...\n");
        std::printf("chain weights at N-1, N-2, N-3:");
        for (int k = 1; k <= 3 && n - k >= 0; k++) {
            std::printf(" %.4f", last.rho[n - k]);
        }
        std::printf("\n");
        spec.title = "rotated-basis chain, N=" + std::to_string(n);
    } else {
        double default_steps = std::min(20.0 * std::exp2(n), static_cast<double>(kMaxAnalyticSteps));
        int steps = options.steps > 0 ? options.steps : static_cast<int>(default_steps);
        config["steps"] = steps;
        std::vector<double> chain =
            model::markov_mean_trajectory(model::NullityDistribution::point_mass(n, n), steps, false);
        model::ModelParams params = model::ModelParams::from_nullity(n, n);
        table.columns = {"step", "tau", "chain_nu", "analytic_nu", "asymptotic_nu", "large_n_nu"};
        PlotSeries s_chain{"chain", {}, {}, {}, false};
        PlotSeries s_an{"continuous model", {}, {}, {}, false};
        for (int t : log_grid(steps, 20)) {
            double an = model::analytic_nullity(t, params);
            double asym = t > 0 ? model::nullity_asymptotics(t, n) : std::nan("");
            double large = t > 0 ? std::log2(model::large_n_y(t, n)) : std::nan("");
            table.add_row({static_cast<double>(t), params.a_n * (t + 1.0), chain[t], an, asym, large});
            if (t > 0) {
                s_chain.x.push_back(t);
                s_chain.y.push_back(chain[t]);
                s_an.x.push_back(t);
                s_an.y.push_back(an);
            }
        }
        std::printf("t=0: chain nu = %.4f, analytic nu = %.4f\n", chain[0], model::analytic_nullity(0, params));
        series.push_back(std::move(s_chain));
        series.push_back(std::move(s_an));
        spec.title = "computational-basis decay, N=" + std::to_string(n);
    }
    if (!options.out.empty()) {
        write_text_file(options.out, csv_string(table, config));
    }
    if (!options.plot.empty()) {
        spec.metadata = config.dump();
        write_text_file(options.plot, render_svg(spec, series));
    }
    return kExitOk;
}

int cmd_fit(const FitOptions &options) {
    std::ifstream in(options.input);
    if (!in) {
        throw std::invalid_argument("cannot read '" + options.input + "'");
    }
    Json bundle = Json::parse(in);
    FitModel model = parse_fit_model(options.model);
    std::string observable =
        !options.observable.empty() ? options.observable : (model == FitModel::NullityFit ? "nullity" : "sre2");
    int n = bundle.at("config").at("n").get<int>();
    const Json &steps = bundle.at("arrays").at("step");
    const Json &obs = bundle.at("arrays").at("observables");
    if (!obs.contains(observable)) {
        throw std::invalid_argument("observable '" + observable + "' not in input");
    }
    const Json &means = obs.at(observable).at("mean");
    std::vector<DataPoint> data;
    for (size_t i = 0; i < steps.size(); i++) {
        data.push_back({steps[i].get<double>() + options.time_shift, means[i].get<double>()});
    }
    std::vector<double> guess = options.guess.empty() ? default_initial_guess(model, n) : options.guess;
    FitResult r = fit_least_squares(model, data, guess);
    std::printf("model %s on %s (n=%d, %zu points)\n", options.model.c_str(), observable.c_str(), n, data.size());
    for (size_t i = 0; i < r.names.size(); i++) {
        std::printf("  %-3s = %.8g\n", r.names[i].c_str(), r.values[i]);
    }
    std::printf("  A_N = %.8g, 2^N = %.8g\n", model::a_n(n), std::exp2(n));
    std::printf("  rss = %.6g, iterations = %d, converged = %s\n", r.rss, r.iterations,
                r.converged ? "yes" : "no");
    return kExitOk;
}

}  // namespace magicflow::cli
