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

#include "magicflow/fit.h"
#include "magicflow/model.h"
#include "magicflow/random.h"

using namespace magicflow;

TEST(NelderMead, Rosenbrock) {
    auto f = [](const std::vector<double> &x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    MinimizeResult r = nelder_mead(f, {-1.2, 1.0});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1.0, 1e-6);
    EXPECT_NEAR(r.x[1], 1.0, 1e-6);
    EXPECT_LE(r.evaluations, 100000);
}

TEST(NelderMead, BudgetExhaustionIsFlagged) {
    auto f = [](const std::vector<double> &x) { return std::pow(x[0] - 3, 2) + std::pow(x[1] + 1, 2); };
    NelderMeadOptions opt;
    opt.max_evaluations = 15;
    MinimizeResult r = nelder_mead(f, {0, 0}, opt);
    EXPECT_FALSE(r.converged);
    EXPECT_LE(r.value, f({0, 0}));
}

TEST(Fit, ModelValuesMatchClosedForms) {
    model::ModelParams p = model::ModelParams::from_values(6, 0.02, 40.0);
    std::vector<double> params = {0.02, 40.0};
    for (double t : {0.0, 5.0, 50.0}) {
        double y = model::analytic_y(t, p);
        EXPECT_NEAR(fit_model_value(FitModel::NullityFit, params, t), std::log2(y), 1e-12);
        EXPECT_NEAR(fit_model_value(FitModel::M2NuFit, params, t), model::m2_haar(std::log2(y)), 1e-12);
        EXPECT_NEAR(fit_model_value(FitModel::GenFit, {0.02, 40.0, 1.0}, t), model::m2_haar(std::log2(y) + 1),
                    1e-12);
    }
}

TEST(Fit, NoiselessRecovery) {
    int n = 6;
    std::vector<double> truth = {1.7 * model::a_n(n), 50.0};
    for (FitModel m : {FitModel::NullityFit, FitModel::M2NuFit}) {
        std::vector<DataPoint> data;
        for (int k = 0; k <= 60; k++) {
            double t = std::pow(10.0, k / 20.0);
            data.push_back({t, fit_model_value(m, truth, t)});
        }
        FitResult r = fit_least_squares(m, data, default_initial_guess(m, n));
        EXPECT_TRUE(r.converged);
        EXPECT_LT(r.rss, 1e-12);
        EXPECT_NEAR(r.at("A") / truth[0], 1.0, 1e-4);
        EXPECT_NEAR(r.at("y0") / truth[1], 1.0, 1e-3);
    }
}

TEST(Fit, GenFitRecoversOffset) {
    int n = 6;
    std::vector<double> truth = {model::a_n(n), 64.0, -1.3};
    std::vector<DataPoint> data;
    for (int k = 0; k <= 60; k++) {
        double t = std::pow(10.0, k / 20.0);
        data.push_back({t, fit_model_value(FitModel::GenFit, truth, t)});
    }
    FitResult r = fit_least_squares(FitModel::GenFit, data, default_initial_guess(FitModel::GenFit, n));
    EXPECT_LT(r.rss, 1e-10);
    EXPECT_NEAR(r.at("C"), -1.3, 1e-3);
}

TEST(Fit, NoisyRecoveryAtEightQubits) {
    int n = 8;
    model::ModelParams p = model::ModelParams::from_nullity(n, n);
    Rng rng(21);
    std::vector<DataPoint> data;
    for (int k = 0; k <= 80; k++) {
        double t = std::pow(10.0, k / 20.0);
        double y = model::analytic_y(t, p) * (1 + 0.01 * standard_normal(rng));
        data.push_back({t, std::log2(y)});
    }
    FitResult r = fit_least_squares(FitModel::NullityFit, data, default_initial_guess(FitModel::NullityFit, n));
    EXPECT_NEAR(r.at("A") / p.a_n, 1.0, 0.05);
    EXPECT_GT(r.at("y0"), 128.0);
    EXPECT_LT(r.at("y0"), 512.0);
}

TEST(Fit, Errors) {
    EXPECT_THROW(fit_least_squares(FitModel::NullityFit, {}, {1, 1}), std::invalid_argument);
    EXPECT_THROW(fit_least_squares(FitModel::GenFit, {{1, 1}}, {1, 1}), std::invalid_argument);
    EXPECT_THROW(fit_least_squares(FitModel::NullityFit, {{1, 1}}, {-1, 1}), std::invalid_argument);
    EXPECT_THROW(parse_fit_model("cubic"), std::invalid_argument);
    EXPECT_EQ(parse_fit_model("gen_fit"), FitModel::GenFit);
}
