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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <stdexcept>

#include "commands.h"
#include "magicflow/fit.h"
#include "magicflow/model.h"
#include "magicflow/output.h"
#include "magicflow/svg.h"

namespace magicflow::cli {

namespace {

struct Context {
    std::string outdir;
    bool quick;
    int workers;
    uint64_t seed;

    int scale(int full, int quick_value) const { return quick ? quick_value : full; }
    std::string path(const std::string &file) const { return (std::filesystem::path(outdir) / file).string(); }
};

ExperimentConfig preset(const Context &ctx, int n, double theta, int steps, int traj, InitialState initial,
                        const std::string &schedule, const std::string &observables) {
    ExperimentConfig c;
    c.n = n;
    c.theta_m = theta;
    c.steps = steps;
    c.trajectories = traj;
    c.initial = initial;
    c.schedule = Schedule::parse(schedule);
    c.observables = ObservableSet::parse(observables);
    c.master_seed = ctx.seed;
    c.workers = ctx.workers;
    return c;
}

EnsembleResult run_saved(const Context &ctx, const ExperimentConfig &config, const std::string &stem,
                         bool keep_records = false) {
    auto start = std::chrono::steady_clock::now();
    EnsembleResult r = run_ensemble(config, keep_records);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_run_outputs(config, r, ctx.path(stem + ".json"), ctx.path(stem + ".csv"), "", false, wall, true, false);
    std::printf("  %-28s n=%-2d theta=%-6g %-4s traj=%-4d steps=%-6d %.1fs\n", stem.c_str(), config.n,
                config.theta_m, to_string(config.initial).c_str(), config.trajectories, config.steps, wall);
    return r;
}

void save_plot(const Context &ctx, const std::string &file, const std::string &title, const std::string &x_label,
               const std::string &y_label, bool log_x, bool log_y, const std::vector<PlotSeries> &series,
               const Json &config) {
    PlotSpec spec;
    spec.title = title;
    spec.x_label = x_label;
    spec.y_label = y_label;
    spec.log_x = log_x;
    spec.log_y = log_y;
    spec.metadata = config.dump();
    write_text_file(ctx.path(file), render_svg(spec, series));
}

void save_table(const Context &ctx, const std::string &file, const Table &table, const Json &config) {
    write_text_file(ctx.path(file), csv_string(table, config));
}

Json base_config(const Context &ctx, const std::string &figure) {
    return {{"figure", figure}, {"quick", ctx.quick}, {"seed", ctx.seed}, {"version", MAGICFLOW_VERSION}};
}

// Single trajectories and the time-averaged entanglement fluctuations.
void fig1(const Context &ctx) {
    Json cfg = base_config(ctx, "fig1");
    for (double theta : {0.0, 1.0}) {
        ExperimentConfig c = preset(ctx, 6, theta, ctx.scale(300, 120), 3, InitialState::Haar, "dense",
                                    "nullity,sre2,entropy");
        EnsembleResult r = run_ensemble(c, true);
        std::string tag = theta == 0 ? "theta0" : "theta1";
        Table t;
        t.columns = {"step"};
        for (size_t k = 0; k < r.records.size(); k++) {
            for (const char *obs : {"nu", "m2", "entropy", "outcome"}) {
                t.columns.push_back("traj" + std::to_string(k) + "_" + obs);
            }
        }
        for (size_t i = 0; i < r.records[0].checkpoints.size(); i++) {
            std::vector<double> row = {static_cast<double>(r.records[0].checkpoints[i].step)};
            for (const TrajectoryRecord &rec : r.records) {
                const Checkpoint &cp = rec.checkpoints[i];
                row.insert(row.end(), {cp.values[0], cp.values[1], cp.values[2], static_cast<double>(cp.outcome)});
            }
            t.add_row(std::move(row));
        }
        Json tc = config_to_json(c);
        save_table(ctx, "fig1_trajectories_" + tag + ".csv", t, tc);
        std::vector<PlotSeries> series;
        for (size_t k = 0; k < r.records.size(); k++) {
            PlotSeries s{"nu, trajectory " + std::to_string(k), {}, {}, {}, false};
            PlotSeries m{"M2, trajectory " + std::to_string(k), {}, {}, {}, false};
            for (const Checkpoint &cp : r.records[k].checkpoints) {
                s.x.push_back(cp.step + 1.0);
                s.y.push_back(cp.values[0]);
                m.x.push_back(cp.step + 1.0);
                m.y.push_back(cp.values[1]);
            }
            series.push_back(std::move(s));
            series.push_back(std::move(m));
        }
        save_plot(ctx, "fig1_trajectories_" + tag + ".svg", "single trajectories, N=6, theta_M=" + std::to_string(theta), "t+1", "value", true, false,
                  series, tc);
    }

    Table t;
    t.columns = {"theta_m", "time_averaged_entropy_stderr"};
    int steps = ctx.scale(300, 60);
    for (double theta : {0.0001, 0.1, 1.0}) {
        ExperimentConfig c =
            preset(ctx, 6, theta, steps, ctx.scale(200, 40), InitialState::Haar, "log:20", "entropy");
        EnsembleResult r = run_saved(ctx, c, "fig1_entropy_theta" + std::to_string(theta));
        double avg = time_averaged_std(r.summary.steps, r.summary.stderrs("entropy"), c.n, steps);
        t.add_row({theta, avg});
        std::printf("  time-averaged entropy stderr at theta=%g: %.5f\n", theta, avg);
    }
    save_table(ctx, "fig1_entropy_std.csv", t, cfg);
}

// Nullity decay against rescaled time tau = A_N (t + 1).
void fig2(const Context &ctx) {
    Json cfg = base_config(ctx, "fig2");
    Table t;
    t.columns = {"source_is_simulation", "n", "step", "tau", "nu_mean", "nu_stderr"};
    std::vector<PlotSeries> series;
    for (int n : {4, 6, 8}) {
        int steps = 20 << n;
        std::vector<double> chain =
            model::markov_mean_trajectory(model::NullityDistribution::point_mass(n, n), steps, false);
        PlotSeries s{"chain N=" + std::to_string(n), {}, {}, {}, false};
        for (int step : Schedule::log_spaced(20).checkpoints(steps)) {
            double tau = model::a_n(n) * (step + 1.0);
            t.add_row({0, static_cast<double>(n), static_cast<double>(step), tau, chain[step], 0});
            s.x.push_back(tau);
            s.y.push_back(chain[step]);
        }
        series.push_back(std::move(s));
    }
    for (int n : {4, 6}) {
        ExperimentConfig c = preset(ctx, n, 0.0, 10 << n, ctx.scale(400, 60), InitialState::Haar, "log:20", "nullity");
        EnsembleResult r = run_saved(ctx, c, "fig2_sim_n" + std::to_string(n));
        PlotSeries s{"simulation N=" + std::to_string(n), {}, {}, {}, true};
        auto means = r.summary.means("nullity");
        auto errs = r.summary.stderrs("nullity");
        for (size_t i = 0; i < means.size(); i++) {
            double tau = model::a_n(n) * (r.summary.steps[i] + 1.0);
            t.add_row({1, static_cast<double>(n), static_cast<double>(r.summary.steps[i]), tau, means[i], errs[i]});
            s.x.push_back(tau);
            s.y.push_back(means[i]);
            s.err.push_back(errs[i]);
        }
        series.push_back(std::move(s));
    }
    save_table(ctx, "fig2.csv", t, cfg);
    save_plot(ctx, "fig2.svg", "nullity collapse", "tau = A_N (t+1)", "mean nullity", true, false, series, cfg);
}

// SRE drop per nullity decrement, plus rare SRE increases for GUE starts.
void fig3a(const Context &ctx) {
    Json cfg = base_config(ctx, "fig3a");
    int n = 6;
    ExperimentConfig c =
        preset(ctx, n, 0.0, ctx.scale(800, 300), ctx.scale(100, 15), InitialState::Haar, "dense", "nullity,sre2");
    EnsembleResult r = run_saved(ctx, c, "fig3a_haar_dense", true);
    auto drops = sre_drops_by_nullity(r.records, n, 1, 0);
    Table t;
    t.columns = {"nu", "count", "mean_delta_m2", "stderr", "model_delta_m2"};
    PlotSeries data{"simulation", {}, {}, {}, true};
    PlotSeries guide{"ln((3+2^(nu+1))/(3+2^nu))", {}, {}, {}, false};
    for (int nu = 0; nu < n; nu++) {
        const auto &d = drops[nu];
        double mean = 0, var = 0;
        for (double v : d) {
            mean += v;
        }
        mean = d.empty() ? NAN : mean / d.size();
        for (double v : d) {
            var += (v - mean) * (v - mean);
        }
        double err = d.size() > 1 ? std::sqrt(var / (d.size() - 1) / d.size()) : NAN;
        double m = model::m2_haar(nu + 1) - model::m2_haar(nu);
        t.add_row({static_cast<double>(nu), static_cast<double>(d.size()), mean, err, m});
        data.x.push_back(nu);
        data.y.push_back(mean);
        data.err.push_back(err);
        guide.x.push_back(nu);
        guide.y.push_back(m);
    }
    save_table(ctx, "fig3a_delta_m2.csv", t, config_to_json(c));
    save_plot(ctx, "fig3a_delta_m2.svg", "SRE drop per nullity decrement, N=6", "nu after step", "Delta M2", false, false,
              {data, guide}, config_to_json(c));

    ExperimentConfig g =
        preset(ctx, n, 0.0, ctx.scale(800, 300), ctx.scale(100, 15), InitialState::Gue, "dense", "nullity,sre2");
    EnsembleResult gr = run_saved(ctx, g, "fig3a_gue_dense", true);
    std::vector<RareEvent> events = rare_event_scan(gr.records, 1, 0);
    std::vector<RareEvent> haar_events = rare_event_scan(r.records, 1, 0);
    Table e;
    e.columns = {"trajectory", "step", "delta_m2", "delta_nu"};
    for (const RareEvent &ev : events) {
        e.add_row({static_cast<double>(ev.trajectory), static_cast<double>(ev.step), ev.delta_m2, ev.delta_nu});
    }
    save_table(ctx, "fig3a_rare_events_gue.csv", e, config_to_json(g));
    double total_steps = static_cast<double>(g.steps) * g.trajectories;
    std::printf("  rare SRE increases: gue %zu (%.2e per step), haar %zu\n", events.size(),
                events.size() / total_steps, haar_events.size());
}

// Mean SRE decay with the Haar mapping of the nullity models.
void fig3b(const Context &ctx) {
    Json cfg = base_config(ctx, "fig3b");
    Table t;
    t.columns = {"n", "step", "m2_mean", "m2_stderr", "m2_from_chain", "m2_from_analytic"};
    std::vector<PlotSeries> series;
    for (int n : {4, 6}) {
        ExperimentConfig c = preset(ctx, n, 0.0, 10 << n, ctx.scale(300, 40), InitialState::Haar, "log:20", "sre2");
        EnsembleResult r = run_saved(ctx, c, "fig3b_n" + std::to_string(n));
        std::vector<double> chain =
            model::markov_mean_trajectory(model::NullityDistribution::point_mass(n, n), c.steps, false);
        model::ModelParams p = model::ModelParams::from_nullity(n, n);
        auto means = r.summary.means("sre2");
        auto errs = r.summary.stderrs("sre2");
        PlotSeries sim{"simulation N=" + std::to_string(n), {}, {}, {}, true};
        PlotSeries mc{"chain mapping N=" + std::to_string(n), {}, {}, {}, false};
        for (size_t i = 0; i < means.size(); i++) {
            int step = r.summary.steps[i];
            double from_chain = model::m2_haar(chain[step]);
            double from_an = model::m2_haar(model::analytic_nullity(step, p));
            t.add_row({static_cast<double>(n), static_cast<double>(step), means[i], errs[i], from_chain, from_an});
            sim.x.push_back(step + 1.0);
            sim.y.push_back(means[i]);
            sim.err.push_back(errs[i]);
            mc.x.push_back(step + 1.0);
            mc.y.push_back(from_chain);
        }
        series.push_back(std::move(sim));
        series.push_back(std::move(mc));
    }
    save_table(ctx, "fig3b.csv", t, cfg);
    save_plot(ctx, "fig3b.svg", "mean SRE decay, theta_M=0", "t+1", "mean M2", true, false, series, cfg);
}

// Mean SRE against mean nullity for several initial ensembles.
void fig3c(const Context &ctx) {
    Json cfg = base_config(ctx, "fig3c");
    int n = 6;
    Table t;
    t.columns = {"initial_index", "step", "nu_mean", "m2_mean", "m2_haar_of_nu"};
    std::vector<PlotSeries> series;
    int idx = 0;
    for (InitialState s : {InitialState::Haar, InitialState::TProduct, InitialState::Gue}) {
        ExperimentConfig c = preset(ctx, n, 0.0, 10 << n, ctx.scale(300, 40), s, "log:20", "nullity,sre2");
        EnsembleResult r = run_saved(ctx, c, "fig3c_" + to_string(s));
        auto nu = r.summary.means("nullity");
        auto m2 = r.summary.means("sre2");
        PlotSeries ps{to_string(s), nu, m2, {}, true};
        for (size_t i = 0; i < nu.size(); i++) {
            t.add_row({static_cast<double>(idx), static_cast<double>(r.summary.steps[i]), nu[i], m2[i],
                       model::m2_haar(nu[i])});
        }
        series.push_back(std::move(ps));
        idx++;
    }
    PlotSeries guide{"ln((3+2^nu)/4)", {}, {}, {}, false};
    for (int k = 0; k <= 60; k++) {
        double nu = n * k / 60.0;
        guide.x.push_back(nu);
        guide.y.push_back(model::m2_haar(nu));
    }
    series.push_back(std::move(guide));
    cfg["initial_index"] = {"haar", "t", "gue"};
    save_table(ctx, "fig3c.csv", t, cfg);
    save_plot(ctx, "fig3c.svg", "mean SRE vs mean nullity, N=6", "mean nu", "mean M2", false, false, series, cfg);
}

// Rotated-basis nullity from both sides of the steady state.
void fig4(const Context &ctx) {
    Json cfg = base_config(ctx, "fig4");
    Table t;
    t.columns = {"n", "haar_start", "step", "nu_mean", "nu_stderr", "chain_nu"};
    std::vector<PlotSeries> series;
    for (int n : {4, 6, 8}) {
        for (InitialState s : {InitialState::Zero, InitialState::Haar}) {
            ExperimentConfig c = preset(ctx, n, 1.0, ctx.scale(200, 60), ctx.scale(300, 40), s, "log:20", "nullity");
            EnsembleResult r = run_saved(ctx, c, "fig4_n" + std::to_string(n) + "_" + to_string(s));
            int nu0 = s == InitialState::Zero ? 0 : n;
            std::vector<double> chain =
                model::markov_mean_trajectory(model::NullityDistribution::point_mass(n, nu0), c.steps, true);
            auto means = r.summary.means("nullity");
            auto errs = r.summary.stderrs("nullity");
            PlotSeries ps{"N=" + std::to_string(n) + " " + to_string(s), {}, {}, {}, true};
            for (size_t i = 0; i < means.size(); i++) {
                int step = r.summary.steps[i];
                t.add_row({static_cast<double>(n), s == InitialState::Haar ? 1.0 : 0.0, static_cast<double>(step),
                           means[i], errs[i], chain[step]});
                ps.x.push_back(step + 1.0);
                ps.y.push_back(means[i]);
                ps.err.push_back(errs[i]);
            }
            Estimate e = steady_state_estimate(r.summary, "nullity", 0.25, default_burn_in(n));
            std::printf("    tail nu = %.3f +- %.3f (N - %.3f)\n", e.mean, e.error, n - e.mean);
            series.push_back(std::move(ps));
        }
        double offset = model::steady_state_distribution().nu_offset;
        series.push_back({"N" + std::to_string(offset).substr(0, 6) + ", N=" + std::to_string(n),
                          {1.0, ctx.scale(200, 60) + 1.0}, {n + offset, n + offset}, {}, false});
    }
    save_table(ctx, "fig4.csv", t, cfg);
    save_plot(ctx, "fig4.svg", "nullity, theta_M=1", "t+1", "mean nu", true, false, series, cfg);
}

// SRE density for several angles and initial ensembles.
void fig5(const Context &ctx) {
    Json cfg = base_config(ctx, "fig5");
    int n = 6;
    Table t;
    t.columns = {"theta_m", "initial_index", "step", "m2_density_mean", "m2_density_stderr"};
    cfg["initial_index"] = {"haar", "t", "gue", "zero"};
    for (double theta : {0.01, 0.2, 1.0}) {
        std::vector<PlotSeries> series;
        int idx = 0;
        for (InitialState s : {InitialState::Haar, InitialState::TProduct, InitialState::Gue, InitialState::Zero}) {
            ExperimentConfig c = preset(ctx, n, theta, ctx.scale(3000, 300), ctx.scale(150, 20), s, "log:20", "sre2");
            char stem[64];
            std::snprintf(stem, sizeof(stem), "fig5_theta%g_%s", theta, to_string(s).c_str());
            EnsembleResult r = run_saved(ctx, c, stem);
            auto means = r.summary.means("sre2");
            auto errs = r.summary.stderrs("sre2");
            PlotSeries ps{to_string(s), {}, {}, {}, false};
            for (size_t i = 0; i < means.size(); i++) {
                t.add_row({theta, static_cast<double>(idx), static_cast<double>(r.summary.steps[i]), means[i] / n,
                           errs[i] / n});
                ps.x.push_back(r.summary.steps[i] + 1.0);
                ps.y.push_back(means[i] / n);
                ps.err.push_back(errs[i] / n);
            }
            series.push_back(std::move(ps));
            idx++;
        }
        char file[64];
        std::snprintf(file, sizeof(file), "fig5_theta%g.svg", theta);
        save_plot(ctx, file, "SRE density, N=6, theta_M=" + std::to_string(theta), "t+1", "m2", true, false,
                  series, cfg);
    }
    save_table(ctx, "fig5.csv", t, cfg);
}

// Steady-state SRE density against the angle with a quadratic guide.
void fig6(const Context &ctx) {
    Json cfg = base_config(ctx, "fig6");
    Table t;
    t.columns = {"n", "theta_m", "m2_density", "error", "quadratic_guide"};
    std::vector<PlotSeries> series;
    std::vector<double> thetas = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
    for (int n : {4, 6}) {
        std::vector<std::pair<double, Estimate>> points;
        for (double theta : thetas) {
            ExperimentConfig c =
                preset(ctx, n, theta, ctx.scale(3000, 400), ctx.scale(150, 20), InitialState::Zero, "log:20", "sre2");
            char stem[64];
            std::snprintf(stem, sizeof(stem), "fig6_n%d_theta%g", n, theta);
            EnsembleResult r = run_saved(ctx, c, stem, true);
            Estimate e = steady_state_from_records(r.records, 0, 0.25, default_burn_in(n));
            points.push_back({theta, {e.mean / n, e.error / n}});
        }
        // Least-squares c theta^2 over the small-angle points.
        double num = 0, den = 0;
        for (const auto &[theta, e] : points) {
            if (theta <= 0.05) {
                num += e.mean * theta * theta;
                den += std::pow(theta, 4);
            }
        }
        double coef = num / den;
        PlotSeries data{"N=" + std::to_string(n), {}, {}, {}, true};
        PlotSeries guide{"c theta^2, N=" + std::to_string(n), {}, {}, {}, false};
        for (const auto &[theta, e] : points) {
            t.add_row({static_cast<double>(n), theta, e.mean, e.error, coef * theta * theta});
            data.x.push_back(theta);
            data.y.push_back(e.mean);
            data.err.push_back(e.error);
            guide.x.push_back(theta);
            guide.y.push_back(coef * theta * theta);
        }
        std::printf("  N=%d quadratic coefficient %.4f\n", n, coef);
        series.push_back(std::move(data));
        series.push_back(std::move(guide));
    }
    save_table(ctx, "fig6.csv", t, cfg);
    save_plot(ctx, "fig6.svg", "steady-state SRE density", "theta_M", "m2 steady state", true, true, series, cfg);
}

// Fits of the continuous-time forms to ensemble means.
void app_fits(const Context &ctx) {
    Json cfg = base_config(ctx, "app_fits");
    Table t;
    t.columns = {"model_index", "n", "theta_m", "initial_index", "A_f", "y0_f", "C", "A_N", "two_pow_n", "rss", "converged"};
    cfg["model_index"] = {"nullity_fit", "m2_nu_fit", "gen_fit"};
    cfg["initial_index"] = {"haar", "t", "gue", "zero"};
    auto initial_index = [](InitialState s) { return static_cast<double>(static_cast<int>(s)); };
    auto record = [&](FitModel m, const ExperimentConfig &c, const FitResult &f) {
        double cval = f.names.size() > 2 ? f.values[2] : 0.0;
        t.add_row({static_cast<double>(static_cast<int>(m)), static_cast<double>(c.n), c.theta_m, initial_index(c.initial),
                   f.values[0], f.values[1], cval, model::a_n(c.n), std::exp2(c.n), f.rss, f.converged ? 1.0 : 0.0});
        std::printf("    %-11s A_f=%.5g (A_N=%.5g) y0_f=%.5g (2^N=%g)%s rss=%.3g\n", to_string(m).c_str(), f.values[0],
                    model::a_n(c.n), f.values[1], std::exp2(c.n),
                    f.names.size() > 2 ? (" C=" + std::to_string(cval)).c_str() : "", f.rss);
    };
    auto data_of = [](const EnsembleSummary &s, const std::string &obs) {
        std::vector<DataPoint> d;
        auto means = s.means(obs);
        for (size_t i = 0; i < means.size(); i++) {
            d.push_back({s.steps[i] + 1.0, means[i]});
        }
        return d;
    };
    for (int n : {4, 6, 8}) {
        ExperimentConfig c =
            preset(ctx, n, 0.0, 10 << n, ctx.scale(300, 40), InitialState::Haar, "log:20", "nullity,sre2");
        EnsembleResult r = run_saved(ctx, c, "app_fits_haar_n" + std::to_string(n));
        record(FitModel::NullityFit, c, fit_least_squares(FitModel::NullityFit, data_of(r.summary, "nullity"),
                                                          default_initial_guess(FitModel::NullityFit, n)));
    }
    for (InitialState s : {InitialState::TProduct, InitialState::Gue}) {
        ExperimentConfig c = preset(ctx, 6, 0.0, 10 << 6, ctx.scale(300, 40), s, "log:20", "sre2");
        EnsembleResult r = run_saved(ctx, c, "app_fits_" + to_string(s));
        record(FitModel::M2NuFit, c, fit_least_squares(FitModel::M2NuFit, data_of(r.summary, "sre2"),
                                                       default_initial_guess(FitModel::M2NuFit, 6)));
    }
    for (double theta : {0.01, 0.2}) {
        ExperimentConfig c = preset(ctx, 6, theta, 10 << 6, ctx.scale(300, 40), InitialState::Haar, "log:20", "sre2");
        char stem[64];
        std::snprintf(stem, sizeof(stem), "app_fits_gen_theta%g", theta);
        EnsembleResult r = run_saved(ctx, c, stem);
        record(FitModel::GenFit, c, fit_least_squares(FitModel::GenFit, data_of(r.summary, "sre2"),
                                                      default_initial_guess(FitModel::GenFit, 6)));
    }
    save_table(ctx, "app_fits.csv", t, cfg);
}

const std::map<std::string, void (*)(const Context &)> &figures() {
    static const std::map<std::string, void (*)(const Context &)> table = {
        {"fig1", fig1}, {"fig2", fig2}, {"fig3a", fig3a}, {"fig3b", fig3b}, {"fig3c", fig3c},
        {"fig4", fig4}, {"fig5", fig5}, {"fig6", fig6},   {"app_fits", app_fits},
    };
    return table;
}

}  // namespace

const std::vector<std::string> &figure_ids() {
    static const std::vector<std::string> ids = {"fig1", "fig2",  "fig3a", "fig3b",   "fig3c",
                                                 "fig4", "fig5", "fig6",  "app_fits"};
    return ids;
}

int cmd_reproduce(const ReproduceOptions &options) {
    auto it = figures().find(options.figure);
    if (it == figures().end()) {
        throw std::invalid_argument("unknown figure '" + options.figure + "'");
    }
    std::filesystem::create_directories(options.outdir);
    Context ctx{options.outdir, options.quick, options.workers, options.seed};
    std::printf("%s -> %s%s\n", options.figure.c_str(), options.outdir.c_str(), options.quick ? " (quick)" : "");
    it->second(ctx);
    return kExitOk;
}

}  // namespace magicflow::cli
