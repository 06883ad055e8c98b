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

#include "magicflow/fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "magicflow/model.h"

namespace magicflow {

namespace {

struct Simplex {
    std::vector<std::vector<double>> x;
    std::vector<double> f;
};

double max_spread(const Simplex &s, size_t best) {
    double spread = 0;
    for (size_t i = 0; i < s.x.size(); i++) {
        for (size_t j = 0; j < s.x[i].size(); j++) {
            spread = std::max(spread, std::abs(s.x[i][j] - s.x[best][j]));
        }
    }
    return spread;
}

MinimizeResult run_simplex(const std::function<double(const std::vector<double> &)> &f,
                           const std::vector<double> &x0, const NelderMeadOptions &opt, int budget) {
    size_t dim = x0.size();
    MinimizeResult result;
    auto eval = [&](const std::vector<double> &x) {
        result.evaluations++;
        double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    Simplex s;
    s.x.push_back(x0);
    s.f.push_back(eval(x0));
    for (size_t j = 0; j < dim; j++) {
        std::vector<double> v = x0;
        v[j] += x0[j] != 0 ? opt.initial_step * std::abs(x0[j]) : opt.initial_step;
        s.x.push_back(v);
        s.f.push_back(eval(v));
    }

    std::vector<size_t> order(dim + 1);
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return s.f[a] < s.f[b]; });
        size_t best = order.front();
        size_t worst = order.back();
        size_t second = dim > 0 ? order[dim - 1] : best;
        if (dim == 0 || max_spread(s, best) < opt.spread_tolerance) {
            result.converged = true;
            break;
        }
        if (result.evaluations >= budget) {
            break;
        }
        result.iterations++;

        std::vector<double> centroid(dim, 0.0);
        for (size_t i : order) {
            if (i == worst) {
                continue;
            }
            for (size_t j = 0; j < dim; j++) {
                centroid[j] += s.x[i][j] / static_cast<double>(dim);
            }
        }
        auto along = [&](double coef) {
            std::vector<double> v(dim);
            for (size_t j = 0; j < dim; j++) {
                v[j] = centroid[j] + coef * (s.x[worst][j] - centroid[j]);
            }
            return v;
        };

        std::vector<double> xr = along(-opt.reflection);
        double fr = eval(xr);
        if (fr < s.f[best]) {
            std::vector<double> xe = along(-opt.reflection * opt.expansion);
            double fe = eval(xe);
            if (fe < fr) {
                s.x[worst] = xe;
                s.f[worst] = fe;
            } else {
                s.x[worst] = xr;
                s.f[worst] = fr;
            }
            continue;
        }
        if (fr < s.f[second]) {
            s.x[worst] = xr;
            s.f[worst] = fr;
            continue;
        }
        bool outside = fr < s.f[worst];
        std::vector<double> xc = outside ? along(-opt.reflection * opt.contraction) : along(opt.contraction);
        double fc = eval(xc);
        if (fc < (outside ? fr : s.f[worst])) {
            s.x[worst] = xc;
            s.f[worst] = fc;
            continue;
        }
        for (size_t i : order) {
            if (i == best) {
                continue;
            }
            for (size_t j = 0; j < dim; j++) {
                s.x[i][j] = s.x[best][j] + opt.shrink * (s.x[i][j] - s.x[best][j]);
            }
            s.f[i] = eval(s.x[i]);
        }
    }
    size_t best = static_cast<size_t>(std::min_element(s.f.begin(), s.f.end()) - s.f.begin());
    result.x = s.x[best];
    result.value = s.f[best];
    return result;
}

std::vector<std::string> param_names(FitModel model) {
    switch (model) {
        case FitModel::NullityFit:
        case FitModel::M2NuFit:
            return {"A", "y0"};
        case FitModel::GenFit:
            return {"A", "y0", "C"};
    }
    return {};
}

}  // namespace

MinimizeResult nelder_mead(const std::function<double(const std::vector<double> &)> &f,
                           std::vector<double> x0, const NelderMeadOptions &options) {
    MinimizeResult first = run_simplex(f, x0, options, options.max_evaluations);
    if (!first.converged) {
        return first;
    }
    MinimizeResult second = run_simplex(f, first.x, options, options.max_evaluations - first.evaluations);
    second.iterations += first.iterations;
    second.evaluations += first.evaluations;
    if (first.value < second.value) {
        second.x = first.x;
        second.value = first.value;
    }
    return second;
}

std::string to_string(FitModel model) {
    switch (model) {
        case FitModel::NullityFit:
            return "nullity_fit";
        case FitModel::M2NuFit:
            return "m2_nu_fit";
        case FitModel::GenFit:
            return "gen_fit";
    }
    return "?";
}

FitModel parse_fit_model(const std::string &text) {
    if (text == "nullity_fit") {
        return FitModel::NullityFit;
    }
    if (text == "m2_nu_fit") {
        return FitModel::M2NuFit;
    }
    if (text == "gen_fit") {
        return FitModel::GenFit;
    }
    throw std::invalid_argument("unknown fit model '" + text + "'");
}

double FitResult::at(const std::string &name) const {
    for (size_t i = 0; i < names.size(); i++) {
        if (names[i] == name) {
            return values[i];
        }
    }
    throw std::out_of_range("no fit parameter '" + name + "'");
}

double fit_model_value(FitModel model, const std::vector<double> &params, double t) {
    double a = params.at(0);
    double y0 = params.at(1);
    double b = (1.0 - y0) / (1.0 + y0);
    double y = 1.0 - 2.0 * b / (std::exp(a * t) + b);
    double nu = std::log2(y);
    switch (model) {
        case FitModel::NullityFit:
            return nu;
        case FitModel::M2NuFit:
            return std::log((y + 3.0) / 4.0);
        case FitModel::GenFit:
            return std::log((y * std::exp2(params.at(2)) + 3.0) / 4.0);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> default_initial_guess(FitModel model, int n) {
    std::vector<double> guess = {model::a_n(n), std::exp2(n)};
    if (model == FitModel::GenFit) {
        guess.push_back(0.0);
    }
    return guess;
}

FitResult fit_least_squares(FitModel model, const std::vector<DataPoint> &data,
                            const std::vector<double> &initial_guess, const NelderMeadOptions &options) {
    if (data.empty()) {
        throw std::invalid_argument("fit needs at least one data point");
    }
    std::vector<std::string> names = param_names(model);
    if (initial_guess.size() != names.size()) {
        throw std::invalid_argument("initial guess for " + to_string(model) + " needs " +
                                    std::to_string(names.size()) + " values");
    }
    if (!(initial_guess[0] > 0) || !(initial_guess[1] > 0)) {
        throw std::invalid_argument("A and y0 must be positive");
    }

    auto to_params = [&](const std::vector<double> &u) {
        std::vector<double> p = u;
        p[0] = std::exp(u[0]);
        p[1] = std::exp(u[1]);
        return p;
    };
    auto rss = [&](const std::vector<double> &u) {
        std::vector<double> p = to_params(u);
        double sum = 0;
        for (const DataPoint &d : data) {
            double r = fit_model_value(model, p, d.t) - d.value;
            sum += r * r;
        }
        return sum;
    };

    std::vector<double> u0 = initial_guess;
    u0[0] = std::log(initial_guess[0]);
    u0[1] = std::log(initial_guess[1]);
    MinimizeResult m = nelder_mead(rss, u0, options);

    FitResult result;
    result.names = names;
    result.values = to_params(m.x);
    result.rss = m.value;
    result.iterations = m.iterations;
    result.evaluations = m.evaluations;
    result.converged = m.converged;
    return result;
}

}  // namespace magicflow
