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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "magicflow/fit.h"
#include "magicflow/harness.h"
#include "magicflow/model.h"
#include "magicflow/pauli.h"
#include "magicflow/random.h"
#include "magicflow/spectrum.h"
#include "magicflow/state.h"

using namespace magicflow;

namespace {

constexpr uint64_t kSeed = 7;
const double kLn2 = std::numbers::ln2;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

// Every (nu, M2) pair seen by any ensemble, for the M2 <= nu ln2 property.
struct BoundTally {
    long evaluated = 0;
    long violations = 0;
    double worst = -1e300;

    void add(const std::vector<TrajectoryRecord> &records, size_t nu_col, size_t m2_col) {
        for (const auto &r : records) {
            for (const auto &cp : r.checkpoints) {
                double excess = cp.values[m2_col] - cp.values[nu_col] * kLn2;
                evaluated++;
                worst = std::max(worst, excess);
                if (excess > 1e-9) {
                    violations++;
                }
            }
        }
    }
};

BoundTally g_bound;

ExperimentConfig base_config(int n, double theta, int steps, int trajectories, InitialState initial,
                             const std::string &observables, Schedule schedule = Schedule::log_spaced(20)) {
    ExperimentConfig c;
    c.n = n;
    c.theta_m = theta;
    c.steps = steps;
    c.trajectories = trajectories;
    c.initial = initial;
    c.master_seed = kSeed;
    c.schedule = schedule;
    c.observables = ObservableSet::parse(observables);
    c.workers = 1;
    return c;
}

EnsembleResult run_tracked(const ExperimentConfig &c) {
    EnsembleResult r = run_ensemble(c, true);
    const auto &names = r.summary.observables;
    if (c.observables.nullity && std::find(names.begin(), names.end(), "sre2") != names.end()) {
        g_bound.add(r.records, r.summary.column("nullity"), r.summary.column("sre2"));
    }
    return r;
}

Outcome criterion_1() {
    Rng rng(kSeed);
    double worst = 0;
    for (int n : {2, 3, 4}) {
        for (int k = 0; k < 50; k++) {
            StateVector s = haar_state(n, rng);
            PauliSpectrum fast = pauli_spectrum(s);
            PauliSpectrum slow = brute_force_spectrum(s);
            for (size_t i = 0; i < fast.xi.size(); i++) {
                worst = std::max(worst, std::abs(fast.xi[i] - slow.xi[i]));
            }
        }
    }
    return {worst < 1e-10, fmt("max |fast - brute force| = %.3g over 150 states (tol 1e-10)", worst)};
}

Outcome criterion_2() {
    Rng rng(kSeed);
    double worst = 0;
    for (int k = 0; k < 100; k++) {
        int n = 1 + static_cast<int>(uniform_below(rng, 8));
        StateVector s = haar_state(n, rng);
        MeasurementFrame f = sample_frame(n, rng);
        double theta = uniform01(rng);
        auto [plus, minus] = frame_outcome_probabilities(s, f, theta);
        worst = std::max(worst, std::abs(plus + minus - 1));
    }
    return {worst < 1e-12, fmt("max |p+ + p- - 1| = %.3g over 100 draws (tol 1e-12)", worst)};
}

Outcome criterion_3() {
    std::string detail;
    bool pass = true;
    for (int n : {4, 6}) {
        auto c = base_config(n, 0.0, 1, 500, InitialState::Haar, "nullity", Schedule::every_step());
        EnsembleResult r = run_tracked(c);
        int hits = 0;
        for (const auto &rec : r.records) {
            hits += rec.checkpoints.back().values[0] == n - 1;
        }
        pass = pass && hits == 500;
        detail += fmt("n=%d: %d/500 at N-1; ", n, hits);
    }
    return {pass, detail};
}

Outcome criterion_4() {
    const int n = 6;
    const int steps = 10 << n;
    auto c = base_config(n, 0.0, steps, 500, InitialState::Haar, "nullity");
    EnsembleSummary s = run_tracked(c).summary;
    auto chain = model::markov_evolve(model::NullityDistribution::point_mass(n, n), steps, false);
    auto means = s.means("nullity");
    auto errs = s.stderrs("nullity");
    double worst = 0;
    int worst_step = 0;
    for (size_t i = 0; i < s.steps.size(); i++) {
        const auto &d = chain[s.steps[i]];
        double mu = d.mean();
        double var = 0;
        for (int nu = 0; nu <= n; nu++) {
            var += d.rho[nu] * (nu - mu) * (nu - mu);
        }
        double se = std::max(errs[i], std::sqrt(var / c.trajectories));
        double z = se > 0 ? std::abs(means[i] - mu) / se : (std::abs(means[i] - mu) < 1e-9 ? 0.0 : 1e300);
        if (z > worst) {
            worst = z;
            worst_step = s.steps[i];
        }
    }
    return {worst <= 3.0, fmt("max |mean - chain| / stderr = %.2f at t=%d over %zu checkpoints (tol 3)", worst,
                              worst_step, s.steps.size())};
}

Outcome criterion_5() {
    std::vector<int> sizes = {6, 8, 10};
    std::vector<std::vector<double>> chains;
    for (int n : sizes) {
        chains.push_back(model::markov_mean_trajectory(model::NullityDistribution::point_mass(n, n), 4 << n, false));
    }
    auto at_tau = [&](size_t k, double tau) {
        double t = tau / model::a_n(sizes[k]) - 1;
        int lo = static_cast<int>(std::floor(t));
        double frac = t - lo;
        return chains[k][lo] * (1 - frac) + chains[k][lo + 1] * frac;
    };
    double worst = 0;
    for (int i = 0; i <= 90; i++) {
        double tau = 0.1 * std::pow(10.0, i / 90.0);
        std::vector<double> v;
        for (size_t k = 0; k < sizes.size(); k++) {
            v.push_back(at_tau(k, tau));
        }
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        worst = std::max(worst, (hi - lo) / hi);
    }
    return {worst < 0.03, fmt("max relative spread over tau in [0.1, 1] = %.4f (tol 0.03)", worst)};
}

Outcome criterion_6() {
    std::string detail;
    bool pass = true;
    Rng rng(kSeed);
    const std::vector<double> alphas = {2.0};
    for (int n : {4, 6}) {
        double sum = 0;
        for (int k = 0; k < 200; k++) {
            sum += magic_report(haar_state(n, rng), alphas).sre_at(2.0);
        }
        double rel = std::abs(sum / 200 / model::m2_haar(n) - 1);
        pass = pass && rel < 0.03;
        detail += fmt("Haar n=%d rel dev %.4f; ", n, rel);
    }
    for (int n : {4, 6}) {
        auto c = base_config(n, 0.0, 10 << n, 300, InitialState::Haar, "nullity,sre2");
        EnsembleResult r = run_tracked(c);
        const EnsembleSummary &s = r.summary;
        auto nu = s.means("nullity");
        auto m2 = s.means("sre2");
        double worst = 0, worst_mapped = 0;
        int worst_step = 0;
        for (size_t i = 0; i < nu.size(); i++) {
            if (nu[i] < 1) {
                continue;
            }
            double rel = std::abs(m2[i] / model::m2_haar(nu[i]) - 1);
            if (rel > worst) {
                worst = rel;
                worst_step = s.steps[i];
            }
            // Diagnostic only: the map applied per trajectory before averaging.
            double mapped = 0;
            for (const auto &rec : r.records) {
                mapped += model::m2_haar(rec.checkpoints[i].values[0]);
            }
            mapped /= static_cast<double>(r.records.size());
            worst_mapped = std::max(worst_mapped, std::abs(m2[i] / mapped - 1));
        }
        pass = pass && worst < 0.03;
        detail += fmt("decay n=%d max rel dev %.4f at t=%d (mean of per-trajectory map: %.4f); ", n, worst,
                      worst_step, worst_mapped);
    }
    return {pass, detail + "(tol 0.03)"};
}

struct SteadyRun {
    int n;
    double theta;
    Estimate nu;
    std::map<int, long> histogram;
    long samples = 0;
};

std::vector<SteadyRun> g_steady;

void run_magic_basis_ensembles() {
    for (int n : {6, 8}) {
        const std::vector<double> thetas = {0.001, 0.5, 1.0};
        for (size_t j = 0; j < thetas.size(); j++) {
            double theta = thetas[j];
            auto c = base_config(n, theta, 200, 500, InitialState::Haar, "nullity");
            // Independent samples per angle, so the pairwise comparison is not trivially exact.
            c.master_seed = kSeed + 1000 * (j + 1);
            EnsembleResult r = run_tracked(c);
            int burn_in = default_burn_in(n);
            SteadyRun run{n, theta, steady_state_from_records(r.records, 0, 0.25, burn_in), {}, 0};
            const auto &steps = r.summary.steps;
            size_t total = steps.size();
            size_t eligible = steps.end() - std::lower_bound(steps.begin(), steps.end(), burn_in);
            size_t first = total - static_cast<size_t>(std::ceil(0.25 * eligible));
            for (const auto &rec : r.records) {
                for (size_t i = first; i < total; i++) {
                    run.histogram[static_cast<int>(rec.checkpoints[i].values[0])]++;
                    run.samples++;
                }
            }
            g_steady.push_back(run);
        }
    }
}

Outcome criterion_7() {
    bool pass = true;
    std::string detail;
    for (int n : {6, 8}) {
        std::vector<const SteadyRun *> runs;
        for (const auto &r : g_steady) {
            if (r.n == n) {
                runs.push_back(&r);
                double offset = r.nu.mean - n;
                pass = pass && std::abs(offset + 1.46) <= 0.1;
                detail += fmt("n=%d theta=%g: N%+.3f+-%.3f; ", n, r.theta, offset, r.nu.error);
            }
        }
        for (size_t a = 0; a < runs.size(); a++) {
            for (size_t b = a + 1; b < runs.size(); b++) {
                double diff = std::abs(runs[a]->nu.mean - runs[b]->nu.mean);
                double comb = std::hypot(runs[a]->nu.error, runs[b]->nu.error);
                if (diff > 3 * comb) {
                    pass = false;
                    detail += fmt("n=%d theta %g vs %g differ by %.3f (3 sigma %.3f); ", n, runs[a]->theta,
                                  runs[b]->theta, diff, 3 * comb);
                }
            }
        }
    }
    return {pass, detail + "(tol 0.1, pairwise 3 combined stderr)"};
}

Outcome criterion_8() {
    const double expected[3] = {0.578, 0.385, 0.037};
    bool pass = true;
    std::string detail;
    for (int n : {6, 8}) {
        std::map<int, long> hist;
        long samples = 0;
        for (const auto &r : g_steady) {
            if (r.n == n) {
                for (auto [nu, count] : r.histogram) {
                    hist[nu] += count;
                }
                samples += r.samples;
            }
        }
        double outside = 1;
        detail += fmt("n=%d weights", n);
        for (int k = 0; k < 3; k++) {
            double w = static_cast<double>(hist[n - 1 - k]) / samples;
            outside -= w;
            pass = pass && std::abs(w - expected[k]) <= 0.05;
            detail += fmt(" %.4f", w);
        }
        pass = pass && outside <= 0.05;
        detail += fmt(", outside %.4f; ", outside);
    }
    return {pass, detail + "(tol 0.05)"};
}

Outcome criterion_9() {
    const double target_offset = -1.46;
    std::vector<double> ns, zero_steps;
    std::vector<int> haar_steps;
    bool found = true;
    for (int n : {4, 6, 8}) {
        for (InitialState init : {InitialState::Zero, InitialState::Haar}) {
            auto c = base_config(n, 1.0, 40, 500, init, "nullity", Schedule::every_step());
            EnsembleSummary s = run_tracked(c).summary;
            auto m = s.means("nullity");
            int hit = -1;
            for (size_t i = 0; i < m.size() && hit < 0; i++) {
                if (std::abs(m[i] - (n + target_offset)) <= 0.25) {
                    hit = s.steps[i];
                }
            }
            found = found && hit >= 0;
            if (init == InitialState::Zero) {
                ns.push_back(n);
                zero_steps.push_back(hit);
            } else {
                haar_steps.push_back(hit);
            }
        }
    }
    double mx = (ns[0] + ns[1] + ns[2]) / 3, my = (zero_steps[0] + zero_steps[1] + zero_steps[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; i++) {
        sxy += (ns[i] - mx) * (zero_steps[i] - my);
        sxx += (ns[i] - mx) * (ns[i] - mx);
    }
    double slope = sxy / sxx;
    int spread = *std::max_element(haar_steps.begin(), haar_steps.end()) -
                 *std::min_element(haar_steps.begin(), haar_steps.end());
    bool pass = found && std::abs(slope - kLn2) <= 0.5 * kLn2 && spread <= 1;
    return {pass, fmt("zero start steps %g/%g/%g slope %.3f (ln2 +-50%%); Haar start steps %d/%d/%d spread %d (tol 1)",
                      zero_steps[0], zero_steps[1], zero_steps[2], slope, haar_steps[0], haar_steps[1],
                      haar_steps[2], spread)};
}

std::map<double, Estimate> g_m2_steady;

void run_angle_ensembles() {
    for (double theta : {0.05, 0.1, 0.2, 1.0}) {
        auto c = base_config(8, theta, 6000, 300, InitialState::Zero, "nullity,sre2");
        EnsembleResult r = run_tracked(c);
        g_m2_steady[theta] = steady_state_from_records(r.records, r.summary.column("sre2"), 0.25, default_burn_in(8));
    }
}

Outcome criterion_10() {
    bool pass = true;
    std::string detail;
    const std::vector<double> thetas = {0.05, 0.1, 0.2};
    for (double t : thetas) {
        detail += fmt("m2(%g)=%.4f+-%.4f; ", t, g_m2_steady[t].mean, g_m2_steady[t].error);
    }
    for (size_t i = 0; i + 1 < thetas.size(); i++) {
        double ratio = g_m2_steady[thetas[i + 1]].mean / g_m2_steady[thetas[i]].mean;
        double expected = std::pow(thetas[i + 1] / thetas[i], 2);
        double rel = ratio / expected - 1;
        pass = pass && std::abs(rel) <= 0.2;
        detail += fmt("ratio %g/%g = %.3f vs %.3f (%+.1f%%); ", thetas[i + 1], thetas[i], ratio, expected, 100 * rel);
    }
    return {pass, detail + "(tol 20%)"};
}

Outcome criterion_11() {
    double ref = model::m2_haar(6);
    double rel = g_m2_steady[1.0].mean / ref - 1;
    return {std::abs(rel) <= 0.05, fmt("M2_ss(theta=1, n=8) = %.4f+-%.4f vs %.4f (%+.2f%%, tol 5%%)",
                                       g_m2_steady[1.0].mean, g_m2_steady[1.0].error, ref, 100 * rel)};
}

Outcome criterion_12() {
    const int n = 6;
    auto c = base_config(n, 0.0, 1000, 100, InitialState::Haar, "nullity,entropy");
    EnsembleResult r = run_tracked(c);
    size_t nu_col = r.summary.column("nullity");
    size_t s_col = r.summary.column("entropy");
    long checked = 0;
    int decayed = 0;
    double worst = 0;
    for (const auto &rec : r.records) {
        decayed += rec.checkpoints.back().values[nu_col] == 0;
        for (const auto &cp : rec.checkpoints) {
            if (cp.values[nu_col] != 0) {
                continue;
            }
            double k = std::round(cp.values[s_col] / kLn2);
            worst = std::max(worst, std::abs(cp.values[s_col] - k * kLn2));
            checked++;
        }
    }
    bool pass = checked > 0 && decayed == c.trajectories && worst <= 1e-6;
    return {pass, fmt("%d/%d trajectories at nu=0 by t=%d; %ld nu=0 checkpoints, max |S - k ln2| = %.3g (tol 1e-6)",
                      decayed, c.trajectories, c.steps, checked, worst)};
}

Outcome criterion_13() {
    const int n = 8;
    model::ModelParams p = model::ModelParams::from_nullity(n, n);
    Rng rng(kSeed);
    std::vector<DataPoint> data;
    for (int k = 0; k <= 68; k++) {
        double t = std::pow(10.0, k / 20.0);
        double y = model::analytic_y(t, p) * (1 + 0.01 * standard_normal(rng));
        data.push_back({t, std::log2(y)});
    }
    FitResult f = fit_least_squares(FitModel::NullityFit, data, default_initial_guess(FitModel::NullityFit, n));
    double a_rel = f.at("A") / p.a_n - 1;
    double y_ratio = f.at("y0") / std::ldexp(1.0, n);
    bool pass = std::abs(a_rel) <= 0.05 && y_ratio >= 0.5 && y_ratio <= 2.0;
    return {pass, fmt("A_f/A_N - 1 = %+.4f (tol 0.05), y0_f/2^N = %.3f (tol [0.5, 2])", a_rel, y_ratio)};
}

Outcome criterion_14() {
    Rng rng(kSeed);
    double additivity = 0;
    for (int k = 0; k < 20; k++) {
        int na = 1 + static_cast<int>(uniform_below(rng, 3));
        int nb = 1 + static_cast<int>(uniform_below(rng, 3));
        StateVector a = haar_state(na, rng);
        StateVector b = haar_state(nb, rng);
        for (double alpha : {0.5, 2.0, 3.0}) {
            additivity = std::max(additivity, sre_additivity_check(a, b, alpha));
        }
    }
    double stochastic = 0;
    for (int n = 1; n <= 20; n++) {
        for (bool magic : {false, true}) {
            for (const auto &row : model::transition_matrix(n, magic)) {
                double sum = 0;
                for (double v : row) {
                    sum += v;
                    if (v < 0) {
                        stochastic = std::max(stochastic, -v);
                    }
                }
                stochastic = std::max(stochastic, std::abs(sum - 1));
            }
        }
    }
    auto c = base_config(5, 0.3, 60, 24, InitialState::TProduct, "nullity,sre2,entropy");
    EnsembleResult serial = run_tracked(c);
    c.workers = 3;
    EnsembleResult parallel = run_ensemble(c, true);
    bool deterministic = true;
    for (size_t i = 0; i < serial.records.size(); i++) {
        for (size_t k = 0; k < serial.records[i].checkpoints.size(); k++) {
            deterministic = deterministic &&
                            serial.records[i].checkpoints[k].values == parallel.records[i].checkpoints[k].values;
        }
    }
    for (size_t o = 0; o < serial.summary.stats.size(); o++) {
        for (size_t i = 0; i < serial.summary.stats[o].size(); i++) {
            deterministic = deterministic && serial.summary.stats[o][i].mean == parallel.summary.stats[o][i].mean &&
                            serial.summary.stats[o][i].std == parallel.summary.stats[o][i].std;
        }
    }
    bool pass = additivity < 1e-8 && g_bound.violations == 0 && g_bound.evaluated > 0 && stochastic < 1e-12 &&
                deterministic;
    return {pass, fmt("additivity %.3g (tol 1e-8); M2 <= nu ln2 violated %ld of %ld states (max excess %.3g); "
                      "stochastic dev %.3g (tol 1e-12); parallel == serial: %s",
                      additivity, g_bound.violations, g_bound.evaluated, g_bound.worst, stochastic,
                      deterministic ? "yes" : "no")};
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    struct Entry {
        int id;
        std::function<void()> prepare;
        std::function<Outcome()> check;
        double budget_seconds;  // 0: no hard runtime bound
    };
    std::vector<Entry> entries = {
        {1, nullptr, criterion_1, 10},
        {2, nullptr, criterion_2, 5},
        {3, nullptr, criterion_3, 60},
        {4, nullptr, criterion_4, 0},
        {5, nullptr, criterion_5, 60},
        {6, nullptr, criterion_6, 0},
        {7, run_magic_basis_ensembles, criterion_7, 0},
        {8, nullptr, criterion_8, 0},
        {9, nullptr, criterion_9, 0},
        {10, run_angle_ensembles, criterion_10, 0},
        {11, nullptr, criterion_11, 0},
        {12, nullptr, criterion_12, 0},
        {13, nullptr, criterion_13, 10},
        {14, nullptr, criterion_14, 60},
    };
    int failures = 0;
    for (const auto &e : entries) {
        auto start = Clock::now();
        Outcome out;
        try {
            if (e.prepare) {
                e.prepare();
            }
            out = e.check();
        } catch (const std::exception &ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (e.budget_seconds > 0 && seconds >= e.budget_seconds) {
            out.pass = false;
            out.detail += fmt(" [over runtime budget %.0f s]", e.budget_seconds);
        }
        failures += !out.pass;
        std::printf("%s criterion %d: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", e.id, out.detail.c_str(), seconds);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failures, entries.size());
    return failures == 0 ? 0 : 1;
}
