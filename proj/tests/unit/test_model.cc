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

#include <gtest/gtest.h>

#include <cmath>

#include "magicflow/model.h"
#include "magicflow/spectrum.h"
#include "magicflow/state.h"
#include "oracles.h"

using namespace magicflow;
using namespace magicflow::model;
using namespace magicflow::testing;

namespace {

// |T>^nu (x) |0>^(n-nu): nullity nu.
StateVector nullity_state(int n, int nu) {
    StateVector s = nu > 0 ? t_product_state(nu) : zero_state(1);
    if (nu == 0) {
        return zero_state(n);
    }
    return nu == n ? s : tensor_product(s, zero_state(n - nu));
}

// Generic nullity-nu state: Haar on nu qubits (x) |0>^(n-nu). Product T
// states are too symmetric, e.g. measuring ZZ on |T>|T> lands on a stabilizer state.
StateVector generic_nullity_state(int n, int nu, Rng &rng) {
    if (nu == 0) {
        return zero_state(n);
    }
    StateVector s = haar_state(nu, rng);
    return nu == n ? s : tensor_product(s, zero_state(n - nu));
}

// Exact probability, over uniform non-identity P and Born outcomes, that a
// projective measurement of P lowers the nullity by one.
double enumerated_decay_probability(int n, int nu) {
    Rng rng(100 * n + nu);
    StateVector s = generic_nullity_state(n, nu, rng);
    double total = 0;
    int count = 0;
    for (const auto &p : all_paulis(n)) {
        if (p.is_unsigned_identity()) {
            continue;
        }
        count++;
        for (int sign : {+1, -1}) {
            double prob = 0.5 * (1 + sign * expectation(s, p).real());
            if (prob < 1e-12) {
                continue;
            }
            StateVector post = project_pauli(s, p, sign).state;
            if (nullity(pauli_spectrum(post)).nullity == nu - 1) {
                total += prob;
            }
        }
    }
    return total / count;
}

}  // namespace

TEST(PrZ, Examples) {
    for (int n = 1; n <= 20; n++) {
        EXPECT_NEAR(pr_z_decay(n, n), 1.0, 1e-15);
        EXPECT_EQ(pr_z_decay(0, n), 0.0);
    }
    EXPECT_NEAR(pr_z_decay(1, 2), 0.4, 1e-15);
    EXPECT_THROW(pr_z_decay(3, 2), std::out_of_range);
    EXPECT_THROW(pr_z_decay(-1, 2), std::out_of_range);
}

TEST(PrZ, MatchesEnumeratedMeasurements) {
    for (int n = 1; n <= 3; n++) {
        for (int nu = 0; nu <= n; nu++) {
            EXPECT_NEAR(pr_z_decay(nu, n), enumerated_decay_probability(n, nu), 1e-10) << n << " " << nu;
        }
    }
}

TEST(PrR, Examples) {
    for (int n = 1; n <= 10; n++) {
        EXPECT_NEAR(pr_r_keep(n, n), 1.0, 1e-15);
        for (int nu = 0; nu <= n; nu++) {
            EXPECT_NEAR(pr_r_keep(nu, n) + pr_r_up(nu, n), 1.0, 1e-15);
        }
    }
    EXPECT_NEAR(pr_r_keep(0, 2), 0.2, 1e-15);
}

TEST(PrR, KeepCountsCommutingOrStabilizerStrings) {
    // A rotation about P keeps nu when P commutes with the whole stabilizer
    // group or lies in it up to sign. Count such strings for |T>^nu|0>^(n-nu).
    for (int n = 1; n <= 3; n++) {
        for (int nu = 0; nu <= n; nu++) {
            StateVector s = nullity_state(n, nu);
            std::vector<PauliString> stab;
            for (const auto &p : all_paulis(n)) {
                if (std::abs(std::abs(expectation(s, p).real()) - 1) < 1e-12) {
                    stab.push_back(p);
                }
            }
            int keep = 0, total = 0;
            for (const auto &p : all_paulis(n)) {
                if (p.is_unsigned_identity()) {
                    continue;
                }
                total++;
                bool all_commute = true;
                for (const auto &g : stab) {
                    all_commute = all_commute && commutes(p, g);
                }
                if (all_commute) {
                    keep++;
                }
            }
            EXPECT_NEAR(pr_r_keep(nu, n), static_cast<double>(keep) / total, 1e-12) << n << " " << nu;
        }
    }
}

TEST(PrF, CompositionAndStochasticity) {
    for (int n = 1; n <= 10; n++) {
        for (int nu = 0; nu <= n; nu++) {
            if (nu > 0) {
                EXPECT_NEAR(pr_f(nu, nu - 1, n), pr_r_keep(nu, n) * pr_z_decay(nu, n), 1e-15);
            }
            double sum = 0;
            for (int to = 0; to <= n; to++) {
                double p = pr_f(nu, to, n);
                EXPECT_GE(p, 0.0);
                if (std::abs(to - nu) > 1) {
                    EXPECT_EQ(p, 0.0);
                }
                sum += p;
            }
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(PrF, LargeNLimit) {
    int n = 20;
    for (int nu = n - 6; nu < n; nu++) {
        double w = std::exp2(nu - n);
        EXPECT_NEAR(pr_f(nu, nu, n), w_pr_stay(w), 1e-5);
        EXPECT_NEAR(pr_f(nu, nu + 1, n), w_pr_up(w), 1e-5);
        EXPECT_NEAR(pr_f(nu, nu - 1, n), w_pr_down(w), 1e-5);
    }
}

TEST(TransitionMatrix, RowStochasticAndTridiagonal) {
    for (int n = 1; n <= 20; n++) {
        for (bool magic : {false, true}) {
            auto t = transition_matrix(n, magic);
            ASSERT_EQ(t.size(), static_cast<size_t>(n + 1));
            for (int i = 0; i <= n; i++) {
                double sum = 0;
                for (int j = 0; j <= n; j++) {
                    EXPECT_GE(t[i][j], 0.0);
                    if (std::abs(i - j) > 1) {
                        EXPECT_EQ(t[i][j], 0.0);
                    }
                    sum += t[i][j];
                }
                EXPECT_NEAR(sum, 1.0, 1e-12);
            }
        }
    }
}

TEST(MarkovEvolve, FirstStepFromMaximalNullity) {
    auto d = markov_evolve(NullityDistribution::point_mass(6, 6), 1, false);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NEAR(d[1].rho[5], 1.0, 1e-15);
}

TEST(MarkovEvolve, MatchesDenseMatrixPower) {
    int n = 5;
    auto t = transition_matrix(n, true);
    std::vector<double> rho(n + 1, 0.0);
    rho[2] = 1;
    auto d = markov_evolve(NullityDistribution::point_mass(n, 2), 30, true);
    for (int s = 1; s <= 30; s++) {
        std::vector<double> next(n + 1, 0.0);
        for (int i = 0; i <= n; i++) {
            for (int j = 0; j <= n; j++) {
                next[j] += rho[i] * t[i][j];
            }
        }
        rho = next;
        for (int j = 0; j <= n; j++) {
            EXPECT_NEAR(d[s].rho[j], rho[j], 1e-14);
        }
        EXPECT_NEAR(d[s].total(), 1.0, 1e-12);
    }
    auto means = markov_mean_trajectory(NullityDistribution::point_mass(n, 2), 30, true);
    EXPECT_NEAR(means[30], d[30].mean(), 1e-12);
}

TEST(MarkovEvolve, MagicBasisSteadyState) {
    int n = 10;
    auto d = markov_evolve(NullityDistribution::point_mass(n, 0), 3000, true).back();
    EXPECT_NEAR(d.mean(), n - 1.46, 0.02);
    SteadyState ss = steady_state_distribution();
    for (int k = 0; k < 3; k++) {
        EXPECT_NEAR(d.rho[n - 1 - k], ss.points[k].probability, 0.02);
    }
    double outside = 1.0 - d.rho[n - 1] - d.rho[n - 2] - d.rho[n - 3];
    EXPECT_LT(outside, 0.01);
}

TEST(AnalyticY, BoundaryValues) {
    ModelParams p = ModelParams::from_nullity(8, 8);
    EXPECT_NEAR(analytic_y(0, p), 256.0, 1e-12);
    EXPECT_NEAR(analytic_y(1e7, p), 1.0, 1e-12);
    EXPECT_NEAR(p.a_n, 256.0 / 65535.0, 1e-15);
    EXPECT_NEAR(p.b, -255.0 / 257.0, 1e-15);
    EXPECT_THROW(analytic_y(-1, p), std::invalid_argument);
}

TEST(AnalyticY, SolvesTheOde) {
    // dy/dt = A (1 - y^2) / 2 for the logistic-type solution.
    ModelParams p = ModelParams::from_nullity(6, 6);
    for (double t : {1.0, 10.0, 60.0, 300.0}) {
        double h = 1e-3;
        double dydt = (analytic_y(t + h, p) - analytic_y(t - h, p)) / (2 * h);
        double y = analytic_y(t, p);
        EXPECT_NEAR(dydt, p.a_n * (1 - y * y) / 2, 1e-6 * std::abs(dydt) + 1e-12);
    }
}

TEST(LargeNForm, IsHyperbolicCotangentAtHalfRate) {
    int n = 10;
    ModelParams p = ModelParams::from_nullity(n, n);
    for (double f = 0.1; f <= 10.0; f *= 1.3) {
        double t = f * 1024;
        double coth = 1.0 / std::tanh(t / 2048.0);
        EXPECT_NEAR(large_n_y(t, n), coth, 1e-12 * coth);
    }
    // Finite y0 shifts 1/y by 1/y0, so compare where y0 = 2^16 is effectively infinite.
    ModelParams big = ModelParams::from_nullity(16, 16);
    for (double f = 0.1; f <= 10.0; f *= 1.3) {
        double t = f * 65536;
        EXPECT_NEAR(analytic_y(t, big), large_n_y(t, 16), 0.01 * large_n_y(t, 16));
    }
}

TEST(NullityAsymptotics, Examples) {
    EXPECT_NEAR(nullity_asymptotics(1, 10), 10.0, 1e-12);
    EXPECT_NEAR(nullity_asymptotics(4096, 10), 2 / std::log(2.0) * std::exp(-4.0), 1e-12);
    EXPECT_NEAR(nullity_asymptotics(4096, 10), 0.0528, 1e-4);
}

TEST(NullityAsymptotics, LateRegimeTracksModel) {
    int n = 10;
    ModelParams p = ModelParams::from_nullity(n, n);
    for (double f = 3; f <= 12; f += 1) {
        double t = f * 1024;
        double exact = analytic_nullity(t, p);
        EXPECT_NEAR(nullity_asymptotics(t, n), exact, 0.1 * exact);
    }
}

TEST(NullityAsymptotics, EarlyRegimeIsOneBitBelowModel) {
    // The exact early behaviour is log2(2^(N+1)/t); the leading-order form
    // N - log2 t sits one bit lower.
    int n = 16;
    ModelParams p = ModelParams::from_nullity(n, n);
    for (double t = 256; t <= 2048; t *= 2) {
        EXPECT_NEAR(analytic_nullity(t, p) - nullity_asymptotics(t, n), 1.0, 0.05);
    }
}

TEST(ChainVsContinuous, MeanStaysBelowModelWithinOneBit) {
    // The continuous model closes the moment hierarchy with E[y^2] = E[y]^2,
    // so log2 of its y bounds the chain mean from above.
    for (int n : {6, 8, 10}) {
        ModelParams p = ModelParams::from_nullity(n, n);
        int steps = 10 << n;
        auto chain = markov_mean_trajectory(NullityDistribution::point_mass(n, n), steps, false);
        for (int t = 1; t <= steps; t++) {
            double gap = analytic_nullity(t, p) - chain[t];
            ASSERT_GE(gap, -1e-9) << "n=" << n << " t=" << t;
            ASSERT_LT(gap, 0.75) << "n=" << n << " t=" << t;
        }
    }
}

TEST(ChainVsContinuous, RescaledTimeCollapse) {
    std::vector<int> sizes = {6, 8, 10};
    std::vector<std::vector<double>> chains;
    for (int n : sizes) {
        chains.push_back(markov_mean_trajectory(NullityDistribution::point_mass(n, n), 4 << n, false));
    }
    auto at_tau = [&](size_t k, double tau) {
        int n = sizes[k];
        double t = tau / a_n(n) - 1;
        int lo = static_cast<int>(std::floor(t));
        double frac = t - lo;
        return chains[k][lo] * (1 - frac) + chains[k][lo + 1] * frac;
    };
    for (double tau = 0.1; tau <= 1.0; tau += 0.05) {
        double ref = at_tau(2, tau);
        for (size_t k = 0; k < 2; k++) {
            EXPECT_LT(std::abs(at_tau(k, tau) - ref) / ref, 0.03) << "tau=" << tau << " n=" << sizes[k];
        }
    }
}

TEST(WModel, FixedPointAndStability) {
    double w = w_fixed_point();
    EXPECT_NEAR(w, 1 - 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(w, 0.423, 1e-3);
    EXPECT_NEAR(w_ode_rhs(w), 0.0, 1e-15);
    EXPECT_GT(w_ode_rhs(1e-6), 0.0);
    double h = 1e-6;
    double fd = (w_ode_rhs(w + h) - w_ode_rhs(w - h)) / (2 * h);
    EXPECT_NEAR(w_ode_rhs_derivative(w), fd, 1e-8);
    EXPECT_LT(w_ode_rhs_derivative(w), 0.0);
    EXPECT_NEAR(w_ode_rhs_derivative(w), -(std::sqrt(3.0) - 1), 1e-12);
    EXPECT_THROW(w_ode_rhs(0.0), std::out_of_range);
    EXPECT_THROW(w_ode_rhs(1.5), std::out_of_range);
}

TEST(WModel, UpdateRule) {
    EXPECT_NEAR(w_update_exact(WMoments::point_mass(w_fixed_point())), w_fixed_point(), 1e-15);
    EXPECT_NEAR(w_update_exact(WMoments::point_mass(0.5)), 0.4375, 1e-15);
    double w = std::exp2(-10);
    for (int k = 0; k < 200; k++) {
        w = w_update_exact(WMoments::point_mass(w));
    }
    EXPECT_NEAR(w, 0.423, 1e-3);
}

TEST(WModel, UpdateMatchesLargeNProbabilities) {
    // E[w'] = w (stay) + 2w (up) + w/2 (down) for a point mass.
    for (double w : {0.05, 0.2, 0.45, 0.7}) {
        double direct = w * w_pr_stay(w) + 2 * w * w_pr_up(w) + 0.5 * w * w_pr_down(w);
        EXPECT_NEAR(w_update_exact(WMoments::point_mass(w)), direct, 1e-14);
        EXPECT_NEAR(w_pr_stay(w) + w_pr_up(w) + w_pr_down(w), 1.0, 1e-14);
    }
}

TEST(ConvergenceTime, Examples) {
    double k = 1 / (std::sqrt(3.0) - 1);
    EXPECT_NEAR(convergence_time(1.0, 0.01, Direction::Down, ConvergenceForm::Simplified), 6.29, 0.01);
    EXPECT_NEAR(convergence_time(1.0, 0.01, Direction::Down),
                k * std::log((1.0 - w_fixed_point()) / 0.01), 1e-12);
    double w0 = std::exp2(-10);
    EXPECT_NEAR(convergence_time(w0, 0.01, Direction::Up, ConvergenceForm::Simplified), 13.22, 0.01);
    EXPECT_NEAR(convergence_time(w0, 0.01, Direction::Up),
                std::log(w_fixed_point() / w0) + k * std::log((w_fixed_point() - w0) / 0.01), 1e-12);
    double near = w_fixed_point() - 0.01;
    EXPECT_LT(convergence_time(near, 0.01, Direction::Up), 0.03);
    EXPECT_THROW(convergence_time(0.9, 0.01, Direction::Up), std::invalid_argument);
    EXPECT_THROW(convergence_time(0.1, 0.01, Direction::Down), std::invalid_argument);
}

TEST(ConvergenceTime, UpGrowsLinearlyInN) {
    double prev = convergence_time(std::exp2(-4), 0.01, Direction::Up, ConvergenceForm::Simplified);
    for (int n = 5; n <= 12; n++) {
        double t = convergence_time(std::exp2(-n), 0.01, Direction::Up, ConvergenceForm::Simplified);
        EXPECT_NEAR(t - prev, std::log(2.0), 1e-12);
        prev = t;
    }
}

TEST(SteadyState, Weights) {
    SteadyState ss = steady_state_distribution();
    ASSERT_EQ(ss.points.size(), 3u);
    EXPECT_NEAR(ss.points[0].w, 0.5, 0);
    EXPECT_NEAR(ss.points[0].probability, 0.578, 5e-4);
    EXPECT_NEAR(ss.points[1].probability, 0.385, 5e-4);
    EXPECT_NEAR(ss.points[2].probability, 0.037, 5e-4);
    EXPECT_NEAR(ss.mean_w, 0.39, 5e-3);
    EXPECT_NEAR(ss.nu_offset, -1.46, 5e-3);
}

TEST(SteadyState, SatisfiesLargeNBalance) {
    // Stationarity of the truncated chain away from the truncation edge:
    // rho(w) = rho(w) stay(w) + rho(2w) down(2w) + rho(w/2) up(w/2).
    SteadyState ss = steady_state_distribution(8);
    auto rho = [&](double w) {
        for (const auto &p : ss.points) {
            if (std::abs(p.w - w) < 1e-15) {
                return p.probability;
            }
        }
        return 0.0;
    };
    double w = 0.25;
    double balance = rho(w) * w_pr_stay(w) + rho(2 * w) * w_pr_down(2 * w) + rho(w / 2) * w_pr_up(w / 2);
    EXPECT_NEAR(balance, rho(w), 1e-9);
    EXPECT_THROW(steady_state_distribution(0), std::invalid_argument);
}

TEST(M2Haar, Examples) {
    EXPECT_EQ(m2_haar(0), 0.0);
    EXPECT_NEAR(m2_haar(2), std::log(7.0 / 4.0), 1e-15);
    EXPECT_NEAR(m2_haar(2), 0.5596, 1e-4);
    EXPECT_NEAR(m2_haar(30) - m2_haar(29), std::log(2.0), 1e-8);
    for (double nu = 0; nu <= 20; nu += 0.25) {
        EXPECT_LE(m2_haar(nu), nu * std::log(2.0) + 1e-15);
    }
    EXPECT_THROW(m2_haar(-0.5), std::invalid_argument);
}
