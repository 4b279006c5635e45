#pragma once

#include "dacs/scenario.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dacs {

/// Full closed-loop state at one instant.
struct SimState {
    double t = 0.0;
    Eigen::VectorXd p;
    Eigen::VectorXd v;     // empty for first-order runs
    Eigen::VectorXd w_hat; // concatenated estimates
};

/// Uniformly sampled trajectory plus derived metrics and run metadata.
/// quad is the integrated disagreement energy int_0^t ||x||_R^2 dt, carried
/// as an extra quadrature state (it feeds dissipation checks; it is not a
/// CSV column and never feeds back into the dynamics).
struct TrajectoryLog {
    // metadata
    std::string scenario_name;
    std::uint64_t scenario_hash = 0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::Ideal;
    int order = 2;
    int n = 0;
    int total_m = 0;
    double step = 0.0;
    double horizon = 0.0;
    bool diverged = false;
    double t_diverged = 0.0;

    // samples (parallel arrays, one entry per logged row)
    std::vector<double> t;
    std::vector<Eigen::VectorXd> p;
    std::vector<Eigen::VectorXd> v;     // zero vectors for first-order runs
    std::vector<Eigen::VectorXd> w_hat;
    std::vector<double> dis_p;
    std::vector<double> dis_v;
    std::vector<double> V;
    std::vector<double> U;
    std::vector<double> znorm;
    std::vector<double> quad;

    std::size_t rows() const { return t.size(); }
};

/// One classical fourth-order Runge-Kutta step of a time-invariant field.
Eigen::VectorXd rk4_step(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& field,
                         const Eigen::VectorXd& state, double h);

/// Integrate the scenario from its seeded initial draw. Samples every
/// sample_every steps (plus the final state). On divergence (non-finite or
/// |entry| > 1e9) the offending step is not committed; the log is truncated
/// at the last good sample and flagged.
TrajectoryLog run(const ScenarioSpec& spec);

/// Same, with the initial draw supplied by the caller (paired comparisons
/// and invariance tests reuse one draw across schemes).
TrajectoryLog run(const ScenarioSpec& spec, const InitialDraw& draw);

/// Mean and max of dis_p + dis_v over the trailing `fraction` of the rows.
/// Rejects diverged logs, empty windows, and fraction outside (0, 1].
std::pair<double, double> tail_metrics(const TrajectoryLog& log, double fraction);

} // namespace dacs
