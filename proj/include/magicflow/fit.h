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

#ifndef MAGICFLOW_FIT_H
#define MAGICFLOW_FIT_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace magicflow {

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    /// Stop once every vertex lies within this distance (max norm) of the best.
    double spread_tolerance = 1e-10;
    int max_evaluations = 100000;
    /// Relative size of the initial simplex steps.
    double initial_step = 0.1;
};

struct MinimizeResult {
    std::vector<double> x;
    double value = 0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization. Restarts once from the converged
/// point to guard against a collapsed simplex.
MinimizeResult nelder_mead(const std::function<double(const std::vector<double> &)> &f,
                           std::vector<double> x0, const NelderMeadOptions &options = {});

enum class FitModel {
    /// nu(t) = log2(1 - 2b/(e^{A t} + b)), b = (1 - y0)/(1 + y0). Parameters A, y0.
    NullityFit,
    /// M2(t) = ln((2^{nu(t)} + 3)/4) with nu(t) as above. Parameters A, y0.
    M2NuFit,
    /// M2(t) = ln((2^{nu(t)} 2^C + 3)/4). Parameters A, y0, C.
    GenFit,
};

std::string to_string(FitModel model);
FitModel parse_fit_model(const std::string &text);

struct DataPoint {
    double t;
    double value;
};

struct FitResult {
    std::vector<std::string> names;
    std::vector<double> values;
    double rss = 0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;

    double at(const std::string &name) const;
};

/// Model prediction at time t for parameters in FitResult order.
double fit_model_value(FitModel model, const std::vector<double> &params, double t);

/// Default starting point: A = A_N, y0 = 2^N, C = 0.
std::vector<double> default_initial_guess(FitModel model, int n);

/// Least-squares fit by simplex descent. A and y0 are searched in log space so
/// they stay positive. Throws std::invalid_argument on empty data or a guess of
/// the wrong size.
FitResult fit_least_squares(FitModel model, const std::vector<DataPoint> &data,
                            const std::vector<double> &initial_guess, const NelderMeadOptions &options = {});

}  // namespace magicflow

#endif
