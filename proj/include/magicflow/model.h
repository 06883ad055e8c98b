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

#ifndef MAGICFLOW_MODEL_H
#define MAGICFLOW_MODEL_H

#include <vector>

namespace magicflow::model {

/// Largest system size accepted by the closed-form transition probabilities.
inline constexpr int kMaxModelQubits = 60;

/// Probability distribution rho(nu) over nu in {0, ..., n}.
struct NullityDistribution {
    int n = 0;
    std::vector<double> rho;

    static NullityDistribution point_mass(int n, int nu);
    double mean() const;
    double total() const;
};

/// A_N = 2^N / (4^N - 1).
double a_n(int n);

/// Constants of the continuous-time decay model started from nullity nu0.
struct ModelParams {
    int n = 0;
    double a_n = 0;  // A_N
    double y0 = 1;   // 2^nu0
    double b = 0;    // (1 - y0) / (1 + y0)

    static ModelParams from_nullity(int n, double nu0);
    static ModelParams from_values(int n, double a_n, double y0);
};

/// Probability that a Clifford-basis measurement lowers nu by one:
/// 2^N (2^nu - 2^-nu) / (4^N - 1).
double pr_z_decay(int nu, int n);

/// Probability that a rotation about a random Pauli leaves nu unchanged:
/// (2^(N+nu) - 1) / (4^N - 1).
double pr_r_keep(int nu, int n);
double pr_r_up(int nu, int n);

/// Rotation followed by measurement, composed over the intermediate nullity.
/// Zero unless |nu_to - nu_from| <= 1.
double pr_f(int nu_from, int nu_to, int n);

/// Dense row-stochastic transition matrix over nu in {0..n}; entry
/// [from][to]. Tridiagonal by construction.
std::vector<std::vector<double>> transition_matrix(int n, bool magic_basis);

/// rho_{t+1}(nu) = sum_nu' rho_t(nu') T(nu' -> nu).
NullityDistribution markov_step(const NullityDistribution &rho, bool magic_basis);

/// Distributions after 0, 1, ..., steps updates (steps + 1 entries).
std::vector<NullityDistribution> markov_evolve(const NullityDistribution &rho0, int steps, bool magic_basis);

/// Mean nullity after 0, 1, ..., steps updates, without storing the
/// distributions.
std::vector<double> markov_mean_trajectory(const NullityDistribution &rho0, int steps, bool magic_basis);

/// ybar(t) = 1 - 2b / (e^{A_N t} + b).
double analytic_y(double t, const ModelParams &params);

/// log2 of analytic_y.
double analytic_nullity(double t, const ModelParams &params);

/// 1 + 2 / (e^{t/2^N} - 1), the large-N form for ybar(0) >> 1. Equals
/// coth(t / 2^(N+1)).
double large_n_y(double t, int n);

/// Leading-order nullity: N - log2 t for t < 2^N, (2/ln 2) e^{-t/2^N}
/// otherwise.
double nullity_asymptotics(double t, int n);

/// Right-hand side of the continuous w model: w - 3w^2 + (3/2)w^3.
double w_ode_rhs(double w);
double w_ode_rhs_derivative(double w);

/// Stable fixed point 1 - 1/sqrt(3).
double w_fixed_point();

/// First three raw moments of a distribution over w.
struct WMoments {
    double m1;
    double m2;
    double m3;

    static WMoments point_mass(double w) { return {w, w * w, w * w * w}; }
};

/// One Markov step of wbar: 2 m1 - 3 m2 + (3/2) m3.
double w_update_exact(const WMoments &moments);

/// Large-N transition probabilities in w = 2^(nu - N).
double w_pr_stay(double w);  // 3w - 3w^2
double w_pr_up(double w);    // 1 - 3w + 2w^2
double w_pr_down(double w);  // w^2

enum class Direction { Down, Up };
enum class ConvergenceForm { Full, Simplified };

/// Time for the continuous w model to come within epsilon of the fixed point.
///   Down (w0 > w_inf): (1/(sqrt3 - 1)) ln((w0 - w_inf)/eps); simplified
///     form drops the (w0 - w_inf) factor.
///   Up (w0 < w_inf):   ln(w_inf/w0) + (1/(sqrt3 - 1)) ln((w_inf - w0)/eps);
///     simplified form is ln(1/w0) + (1/(sqrt3 - 1)) ln(1/eps).
double convergence_time(double w0, double epsilon, Direction direction,
                        ConvergenceForm form = ConvergenceForm::Full);

struct SteadyStatePoint {
    double w;
    double probability;
};

/// Truncated steady state of the large-N w chain.
struct SteadyState {
    std::vector<SteadyStatePoint> points;  // w = 1/2, 1/4, ...
    double mean_w;
    double nu_offset;  // sum rho(w) log2 w, so nu_ss = N + nu_offset
};

/// Steady state of the w-chain on w = 1/2 ... 2^-depth with rho(1) = 0. The
/// balance equation at the deepest level is replaced by normalization.
SteadyState steady_state_distribution(int depth = 3);

/// Average M_2 of a Haar state on nu qubits: ln((3 + 2^nu)/4). nu may be
/// fractional.
double m2_haar(double nu);

}  // namespace magicflow::model

#endif
