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

#include "magicflow/model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace magicflow::model {

namespace {

void check_n(int n) {
    if (n < 1 || n > kMaxModelQubits) {
        throw std::invalid_argument("model: system size " + std::to_string(n) + " outside [1, " +
                                    std::to_string(kMaxModelQubits) + "]");
    }
}

void check_nu(int nu, int n) {
    check_n(n);
    if (nu < 0 || nu > n) {
        throw std::out_of_range("model: nullity " + std::to_string(nu) + " outside [0, " +
                                std::to_string(n) + "]");
    }
}

const double kInvSqrt3Minus1 = 1.0 / (std::numbers::sqrt3 - 1.0);

}  // namespace

NullityDistribution NullityDistribution::point_mass(int n, int nu) {
    check_nu(nu, n);
    NullityDistribution d;
    d.n = n;
    d.rho.assign(n + 1, 0.0);
    d.rho[nu] = 1.0;
    return d;
}

double NullityDistribution::mean() const {
    double m = 0;
    for (size_t nu = 0; nu < rho.size(); nu++) {
        m += static_cast<double>(nu) * rho[nu];
    }
    return m;
}

double NullityDistribution::total() const {
    double t = 0;
    for (double r : rho) {
        t += r;
    }
    return t;
}

double a_n(int n) {
    check_n(n);
    // 2^N / (4^N - 1) = 1 / (2^N - 2^-N)
    return 1.0 / (std::ldexp(1.0, n) - std::ldexp(1.0, -n));
}

ModelParams ModelParams::from_nullity(int n, double nu0) {
    if (nu0 < 0 || nu0 > n) {
        throw std::out_of_range("ModelParams: initial nullity outside [0, n]");
    }
    return from_values(n, model::a_n(n), std::exp2(nu0));
}

ModelParams ModelParams::from_values(int n, double a, double y0) {
    if (!(a > 0) || !(y0 >= 1)) {
        throw std::invalid_argument("ModelParams: need A > 0 and y0 >= 1");
    }
    return {n, a, y0, (1.0 - y0) / (1.0 + y0)};
}

double pr_z_decay(int nu, int n) {
    check_nu(nu, n);
    return (std::ldexp(1.0, nu) - std::ldexp(1.0, -nu)) / (std::ldexp(1.0, n) - std::ldexp(1.0, -n));
}

double pr_r_keep(int nu, int n) {
    check_nu(nu, n);
    // (2^(N+nu) - 1) / (4^N - 1), divided through by 4^N.
    return (std::ldexp(1.0, nu - n) - std::ldexp(1.0, -2 * n)) / (1.0 - std::ldexp(1.0, -2 * n));
}

double pr_r_up(int nu, int n) {
    check_nu(nu, n);
    return (1.0 - std::ldexp(1.0, nu - n)) / (1.0 - std::ldexp(1.0, -2 * n));
}

double pr_f(int nu_from, int nu_to, int n) {
    check_nu(nu_from, n);
    check_nu(nu_to, n);
    const int delta = nu_to - nu_from;
    if (delta < -1 || delta > 1) {
        return 0.0;
    }
    const double down = pr_r_keep(nu_from, n) * pr_z_decay(nu_from, n);
    const double up = nu_from < n ? pr_r_up(nu_from, n) * (1.0 - pr_z_decay(nu_from + 1, n)) : 0.0;
    if (delta == -1) {
        return down;
    }
    if (delta == 1) {
        return up;
    }
    return 1.0 - down - up;
}

std::vector<std::vector<double>> transition_matrix(int n, bool magic_basis) {
    check_n(n);
    std::vector<std::vector<double>> t(n + 1, std::vector<double>(n + 1, 0.0));
    for (int nu = 0; nu <= n; nu++) {
        for (int to = std::max(0, nu - 1); to <= std::min(n, nu + 1); to++) {
            if (magic_basis) {
                t[nu][to] = pr_f(nu, to, n);
            } else if (to == nu - 1) {
                t[nu][to] = pr_z_decay(nu, n);
            } else if (to == nu) {
                t[nu][to] = 1.0 - pr_z_decay(nu, n);
            }
        }
    }
    return t;
}

namespace {

struct Tridiagonal {
    std::vector<double> down, stay, up;
};

Tridiagonal tridiagonal(int n, bool magic_basis) {
    auto full = transition_matrix(n, magic_basis);
    Tridiagonal t{std::vector<double>(n + 1), std::vector<double>(n + 1), std::vector<double>(n + 1)};
    for (int nu = 0; nu <= n; nu++) {
        t.down[nu] = nu > 0 ? full[nu][nu - 1] : 0.0;
        t.stay[nu] = full[nu][nu];
        t.up[nu] = nu < n ? full[nu][nu + 1] : 0.0;
    }
    return t;
}

void step_inplace(const Tridiagonal &t, const std::vector<double> &rho, std::vector<double> &out) {
    const int n = static_cast<int>(rho.size()) - 1;
    double total = 0;
    for (int nu = 0; nu <= n; nu++) {
        double v = rho[nu] * t.stay[nu];
        if (nu + 1 <= n) {
            v += rho[nu + 1] * t.down[nu + 1];
        }
        if (nu - 1 >= 0) {
            v += rho[nu - 1] * t.up[nu - 1];
        }
        out[nu] = v;
        total += v;
    }
    for (double &v : out) {
        v /= total;
    }
}

void check_distribution(const NullityDistribution &rho) {
    check_n(rho.n);
    if (rho.rho.size() != static_cast<size_t>(rho.n + 1)) {
        throw std::invalid_argument("NullityDistribution: expected n + 1 entries");
    }
    for (double r : rho.rho) {
        if (!(r >= 0)) {
            throw std::invalid_argument("NullityDistribution: negative or NaN entry");
        }
    }
    if (std::abs(rho.total() - 1.0) > 1e-12) {
        throw std::invalid_argument("NullityDistribution: entries do not sum to 1");
    }
}

}  // namespace

NullityDistribution markov_step(const NullityDistribution &rho, bool magic_basis) {
    check_distribution(rho);
    NullityDistribution out{rho.n, std::vector<double>(rho.n + 1)};
    step_inplace(tridiagonal(rho.n, magic_basis), rho.rho, out.rho);
    return out;
}

std::vector<NullityDistribution> markov_evolve(const NullityDistribution &rho0, int steps, bool magic_basis) {
    check_distribution(rho0);
    if (steps < 0) {
        throw std::invalid_argument("markov_evolve: steps must be >= 0");
    }
    Tridiagonal t = tridiagonal(rho0.n, magic_basis);
    std::vector<NullityDistribution> out;
    out.reserve(static_cast<size_t>(steps) + 1);
    out.push_back(rho0);
    for (int s = 0; s < steps; s++) {
        NullityDistribution next{rho0.n, std::vector<double>(rho0.n + 1)};
        step_inplace(t, out.back().rho, next.rho);
        out.push_back(std::move(next));
    }
    return out;
}

std::vector<double> markov_mean_trajectory(const NullityDistribution &rho0, int steps, bool magic_basis) {
    check_distribution(rho0);
    if (steps < 0) {
        throw std::invalid_argument("markov_mean_trajectory: steps must be >= 0");
    }
    Tridiagonal t = tridiagonal(rho0.n, magic_basis);
    std::vector<double> means;
    means.reserve(static_cast<size_t>(steps) + 1);
    std::vector<double> rho = rho0.rho;
    std::vector<double> next(rho.size());
    means.push_back(rho0.mean());
    for (int s = 0; s < steps; s++) {
        step_inplace(t, rho, next);
        rho.swap(next);
        double m = 0;
        for (size_t nu = 0; nu < rho.size(); nu++) {
            m += static_cast<double>(nu) * rho[nu];
        }
        means.push_back(m);
    }
    return means;
}

double analytic_y(double t, const ModelParams &params) {
    if (t < 0) {
        throw std::invalid_argument("analytic_y: t must be >= 0");
    }
    return 1.0 - 2.0 * params.b / (std::exp(params.a_n * t) + params.b);
}

double analytic_nullity(double t, const ModelParams &params) {
    return std::log2(analytic_y(t, params));
}

double large_n_y(double t, int n) {
    check_n(n);
    if (!(t > 0)) {
        throw std::invalid_argument("large_n_y: t must be > 0");
    }
    return 1.0 + 2.0 / std::expm1(t / std::ldexp(1.0, n));
}

double nullity_asymptotics(double t, int n) {
    check_n(n);
    if (!(t > 0)) {
        throw std::invalid_argument("nullity_asymptotics: t must be > 0");
    }
    const double scale = std::ldexp(1.0, n);
    if (t < scale) {
        return n - std::log2(t);
    }
    return 2.0 / std::numbers::ln2 * std::exp(-t / scale);
}

double w_ode_rhs(double w) {
    if (!(w > 0 && w <= 1)) {
        throw std::out_of_range("w_ode_rhs: w must lie in (0, 1]");
    }
    return w - 3 * w * w + 1.5 * w * w * w;
}

double w_ode_rhs_derivative(double w) {
    return 1 - 6 * w + 4.5 * w * w;
}

double w_fixed_point() {
    return 1.0 - 1.0 / std::numbers::sqrt3;
}

double w_update_exact(const WMoments &m) {
    return 2 * m.m1 - 3 * m.m2 + 1.5 * m.m3;
}

double w_pr_stay(double w) {
    return 3 * w - 3 * w * w;
}

double w_pr_up(double w) {
    return 1 - 3 * w + 2 * w * w;
}

double w_pr_down(double w) {
    return w * w;
}

double convergence_time(double w0, double epsilon, Direction direction, ConvergenceForm form) {
    if (!(w0 > 0 && w0 <= 1) || !(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("convergence_time: need w0 in (0, 1] and epsilon in (0, 1)");
    }
    const double w_inf = w_fixed_point();
    if (direction == Direction::Down) {
        if (!(w0 > w_inf)) {
            throw std::invalid_argument("convergence_time: downward convergence needs w0 > w_inf");
        }
        double gap = form == ConvergenceForm::Full ? w0 - w_inf : 1.0;
        return kInvSqrt3Minus1 * std::log(gap / epsilon);
    }
    if (!(w0 < w_inf)) {
        throw std::invalid_argument("convergence_time: upward convergence needs w0 < w_inf");
    }
    if (form == ConvergenceForm::Simplified) {
        return std::log(1.0 / w0) + kInvSqrt3Minus1 * std::log(1.0 / epsilon);
    }
    return std::log(w_inf / w0) + kInvSqrt3Minus1 * std::log((w_inf - w0) / epsilon);
}

SteadyState steady_state_distribution(int depth) {
    if (depth < 1 || depth > 8) {
        throw std::invalid_argument("steady_state_distribution: depth must lie in [1, 8]");
    }
    // Unknowns rho(w) at w = 1/2, ..., 2^-depth with rho(1) = 0. Balance at
    //   rho(w) (1 - stay(w)) = down(2w) rho(2w) + up(w/2) rho(w/2)
    // holds at every level but the deepest, whose row is the normalization.
    std::vector<double> w(depth);
    for (int k = 0; k < depth; k++) {
        w[k] = std::ldexp(1.0, -(k + 1));
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(depth, depth);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(depth);
    for (int k = 0; k + 1 < depth; k++) {
        m(k, k) = 1.0 - w_pr_stay(w[k]);
        if (k > 0) {
            m(k, k - 1) = -w_pr_down(w[k - 1]);
        }
        m(k, k + 1) = -w_pr_up(w[k + 1]);
    }
    m.row(depth - 1).setOnes();
    rhs(depth - 1) = 1.0;
    Eigen::VectorXd rho = m.partialPivLu().solve(rhs);
    SteadyState ss{{}, 0.0, 0.0};
    for (int k = 0; k < depth; k++) {
        double p = rho(k);
        ss.points.push_back({w[k], p});
        ss.mean_w += p * w[k];
        ss.nu_offset += p * std::log2(w[k]);
    }
    return ss;
}

double m2_haar(double nu) {
    if (!(nu >= 0)) {
        throw std::invalid_argument("m2_haar: nullity must be >= 0");
    }
    return std::log((3.0 + std::exp2(nu)) / 4.0);
}

}  // namespace magicflow::model
