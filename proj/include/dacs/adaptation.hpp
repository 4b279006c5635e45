#pragma once

#include "dacs/scenario.hpp"

#include <Eigen/Dense>

namespace dacs {

/// Concatenated estimate vector plus the scheme that produced it.
struct EstimatorState {
    Eigen::VectorXd w_hat;
    Scheme scheme = Scheme::Distributed;
};

/// Manifold coordinates z_i = rho_i(v_i) - w_hat_i + w_i, concatenated.
/// Diagnostic only: computing z requires the true w, which controllers
/// never see.
struct ManifoldCoords {
    Eigen::VectorXd z;
};

/// Lyapunov pair for the distributed scheme:
///   V = x^T R^T P R x,  U = V + sigma/(4(1-k)) sum_i z_i^T z_i / (2 lambda_i).
struct CompositeEnergy {
    double V = 0.0;
    double U = 0.0;
    double k = 0.5;
};

/// Everything one agent's controller may read: its own state and estimate
/// plus the neighbor-relative sums (row i of L applied to p and v). The
/// distributed law is implemented strictly against this view, so locality
/// is enforced by the type system rather than by convention.
struct LocalView {
    double p_i = 0.0;
    double v_i = 0.0; // zero for first-order scenarios
    Eigen::VectorXd w_hat_i;
    double Lp_i = 0.0;
    double Lv_i = 0.0; // zero for first-order scenarios
};

/// Output block of one agent's distributed update.
struct AgentUpdate {
    Eigen::VectorXd mu_i;
    Eigen::VectorXd w_hat_dot_i;
};

/// Result of a full-network distributed update.
struct DistributedUpdate {
    Eigen::VectorXd mu;
    Eigen::VectorXd w_hat_dot;
};

/// One agent's slice of the distributed manifold law.
/// Second order: mu_i = w_hat_i - rho_i(v_i),
///               w_hat_dot_i = -lambda_i zeta_i^T(v_i)
///                             [alpha1 p_i + alpha2 v_i - gamma1 Lp_i - gamma2 Lv_i].
/// First order:  mu_i = w_hat_i - rho_i(p_i),
///               w_hat_dot_i = lambda_i zeta_i^T(p_i) Lp_i
/// (so that z_i obeys zdot_i = -lambda_i zeta_i^T zeta_i z_i in both cases).
AgentUpdate agent_distributed_update(const AgentParams& agent, const LocalView& local,
                                     int order, double alpha1, double alpha2,
                                     double gamma1, double gamma2);

/// Assemble neighbor sums and apply agent_distributed_update per agent.
DistributedUpdate distributed_update(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                                     const Eigen::VectorXd& v, const Eigen::VectorXd& w_hat);

/// Literal centralized gradient law: w_hat_dot = lambda H^T (dV/dx)^T.
/// Requires the full network state through V_gradient; reference scheme only.
Eigen::VectorXd centralized_update(const Eigen::VectorXd& V_gradient, const Eigen::MatrixXd& H,
                                   double lambda);

/// Scenario-level centralized law with per-agent lambda_i. The gradient is
/// dV/dx for the scenario's Lyapunov function: V = x^T R^T P R x (order 2),
/// x^T L x / 2 (order 1 symmetric), x^T R^T P_diag R x / 2 (order 1 leader).
Eigen::VectorXd centralized_update(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                                   const Eigen::VectorXd& v);

/// First-order undirected gradient law: w_hat_dot_i = lambda h_i^T(x_i) (L x)_i.
/// Rejects an asymmetric Laplacian.
Eigen::VectorXd example1_update(const Laplacian& lap_symmetric, const Eigen::VectorXd& x,
                                const std::vector<RegressorSpec>& h_list, double lambda);

/// Per-agent-lambda variant bound to a validated first-order scenario.
Eigen::VectorXd example1_update(const ScenarioSpec& spec, const Eigen::VectorXd& x);

/// Leader-following baseline with leakage:
/// w_hat_dot_i = lambda_i (d_i + b_i) pdiag_i h_i^T(x_i) (L x)_i - lambda_i kappa w_hat_i
/// for followers i = 2..n; the leader carries no parameters. Rejects kappa <= 0.
Eigen::VectorXd zhang_update(const ZhangParams& zp, const std::vector<RegressorSpec>& regs,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& w_hat);

/// Scenario-level wrapper (requires the validated leader form).
Eigen::VectorXd zhang_update(const ScenarioSpec& spec, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& w_hat);

/// z_i = rho_i(s_i) - w_hat_i + w_i with s the regressor argument (v for
/// second order, x for first order).
ManifoldCoords manifold_coords(const ScenarioSpec& spec, const Eigen::VectorXd& s,
                               const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w_true);

/// Composite adaptation energy for second-order scenarios. Rejects k outside
/// (0,1) and first-order scenarios (their energies use different pairs).
CompositeEnergy composite_energy(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& v, const Eigen::VectorXd& w_hat,
                                 const Eigen::VectorXd& w_true, double k);

} // namespace dacs
