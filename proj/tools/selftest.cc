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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "commands.h"
#include "magicflow/model.h"
#include "magicflow/pauli.h"
#include "magicflow/random.h"
#include "magicflow/spectrum.h"
#include "magicflow/state.h"

namespace magicflow::cli {

namespace {

struct SuiteResult {
    int checks = 0;
    double max_error = 0;
};

struct Suite {
    std::string name;
    double tolerance;
    std::function<SuiteResult()> run;
};

void track(SuiteResult &r, double error) {
    r.checks++;
    r.max_error = std::max(r.max_error, std::isfinite(error) ? error : INFINITY);
}

SuiteResult spectrum_suite() {
    SuiteResult r;
    Rng rng(11);
    for (int n = 2; n <= 4; n++) {
        for (int k = 0; k < 10; k++) {
            StateVector s = haar_state(n, rng);
            PauliSpectrum fast = pauli_spectrum(s);
            PauliSpectrum slow = brute_force_spectrum(s);
            double err = 0;
            for (size_t i = 0; i < fast.xi.size(); i++) {
                err = std::max(err, std::abs(fast.xi[i] - slow.xi[i]));
            }
            track(r, err);
        }
    }
    return r;
}

SuiteResult pvm_suite() {
    SuiteResult r;
    Rng rng(12);
    for (int k = 0; k < 50; k++) {
        int n = 1 + static_cast<int>(uniform_below(rng, 6));
        StateVector s = haar_state(n, rng);
        MeasurementFrame f = sample_frame(n, rng);
        double theta = uniform01(rng);
        auto [p_plus, p_minus] = frame_outcome_probabilities(s, f, theta);
        track(r, std::abs(p_plus + p_minus - 1.0));
    }
    return r;
}

SuiteResult stochastic_suite() {
    SuiteResult r;
    for (int n = 1; n <= 16; n++) {
        for (bool magic : {false, true}) {
            auto t = model::transition_matrix(n, magic);
            for (const auto &row : t) {
                double sum = 0;
                double negative = 0;
                for (double v : row) {
                    sum += v;
                    negative = std::max(negative, -v);
                }
                track(r, std::max(std::abs(sum - 1.0), negative));
            }
        }
    }
    return r;
}

SuiteResult additivity_suite() {
    SuiteResult r;
    Rng rng(13);
    for (int k = 0; k < 12; k++) {
        int na = 1 + static_cast<int>(uniform_below(rng, 3));
        int nb = 1 + static_cast<int>(uniform_below(rng, 3));
        StateVector a = haar_state(na, rng);
        StateVector b = haar_state(nb, rng);
        for (double alpha : {0.5, 2.0, 3.0}) {
            track(r, sre_additivity_check(a, b, alpha));
        }
    }
    return r;
}

SuiteResult determinism_suite() {
    SuiteResult r;
    ExperimentConfig c;
    c.n = 4;
    c.theta_m = 0.3;
    c.steps = 40;
    c.trajectories = 12;
    c.master_seed = 99;
    c.observables.entropy = true;
    TrajectoryRecord a = run_trajectory(c, 5);
    TrajectoryRecord b = run_trajectory(c, 5);
    double diff = 0;
    for (size_t i = 0; i < a.checkpoints.size(); i++) {
        for (size_t k = 0; k < a.checkpoints[i].values.size(); k++) {
            diff = std::max(diff, std::abs(a.checkpoints[i].values[k] - b.checkpoints[i].values[k]));
        }
    }
    track(r, diff);
    c.workers = 1;
    EnsembleSummary serial = run_ensemble(c).summary;
    c.workers = 3;
    EnsembleSummary parallel = run_ensemble(c).summary;
    diff = 0;
    for (size_t k = 0; k < serial.stats.size(); k++) {
        for (size_t i = 0; i < serial.stats[k].size(); i++) {
            diff = std::max(diff, std::abs(serial.stats[k][i].mean - parallel.stats[k][i].mean));
            diff = std::max(diff, std::abs(serial.stats[k][i].std - parallel.stats[k][i].std));
        }
    }
    track(r, diff);
    return r;
}

}  // namespace

int cmd_selftest(const SelftestOptions &options) {
    std::vector<Suite> suites = {
        {"spectrum", 1e-10, spectrum_suite},   {"pvm", 1e-12, pvm_suite},
        {"stochastic", 1e-12, stochastic_suite}, {"additivity", 1e-8, additivity_suite},
        {"determinism", 0.0, determinism_suite},
    };
    bool known = options.inject_failure.empty();
    for (Suite &s : suites) {
        if (s.name == options.inject_failure) {
            s.tolerance = -1.0;
            known = true;
        }
    }
    if (!known) {
        throw std::invalid_argument("unknown suite '" + options.inject_failure + "'");
    }

    std::printf("%-12s %7s %12s %10s %8s %6s\n", "suite", "checks", "max_error", "tolerance", "seconds", "status");
    bool ok = true;
    for (const Suite &s : suites) {
        auto start = std::chrono::steady_clock::now();
        SuiteResult r;
        std::string status;
        try {
            r = s.run();
            status = r.max_error <= s.tolerance ? "PASS" : "FAIL";
        } catch (const std::exception &e) {
            status = "ERROR";
            std::fprintf(stderr, "%s: %s\n", s.name.c_str(), e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%-12s %7d %12.3e %10.1e %8.2f %6s\n", s.name.c_str(), r.checks, r.max_error, s.tolerance,
                    secs, status.c_str());
        if (status != "PASS") {
            ok = false;
            std::printf("failed suite: %s\n", s.name.c_str());
        }
    }
    return ok ? kExitOk : kExitSelftest;
}

}  // namespace magicflow::cli
