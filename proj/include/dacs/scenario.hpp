#pragma once

#include "dacs/graph.hpp"
#include "dacs/regressor.hpp"
#include "dacs/stability.hpp"
#include "dacs/transform.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dacs {

enum class Scheme { Ideal, Distributed, Centralized, Example1, Zhang };

std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

/// Plant data for one agent. alpha1/alpha2 are validated uniform across the
/// network (the nominal model has a single A matrix); they are kept per-agent
/// here because the file format declares them per-agent.
struct AgentParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    RegressorSpec regressor;
    std::optional<Eigen::VectorXd> w_true; // explicit ground truth; else drawn
};

/// Leader-following decomposition of a Laplacian with block form
/// [[0, 0], [-b, L_o + B]] (agent 1 is the leader), plus the diagonal
/// Lyapunov scaling P_diag solving (L_o+B)^T q = 1.
struct ZhangParams {
    double kappa = 1.0;
    Eigen::VectorXd b;      // n-1 leader weights
    Eigen::MatrixXd L_o;    // follower sub-Laplacian (D - E)
    Eigen::MatrixXd B;      // diag(b)
    Eigen::MatrixXd D;      // follower in-degree diagonal
    Eigen::MatrixXd E;      // follower adjacency (off-diagonal part)
    Eigen::VectorXd P_diag; // q > 0 with P(L_o+B) + (L_o+B)^T P > 0

    Eigen::MatrixXd Lo_plus_B() const { return L_o + B; }
    /// R = [-b, L_o+B], the (n-1) x n disagreement map of the leader case.
    Eigen::MatrixXd R_leader() const;
};

/// Which first-order Lyapunov construction applies to the topology.
enum class Order1Form { None, Symmetric, Leader };

/// Fully validated, immutable description of one simulation setup.
struct ScenarioSpec {
    std::string name;
    int order = 2; // 1: single integrators, 2: double integrators
    DirectedNetwork net;
    Laplacian lap;
    ConsensusTransform tf;
    std::vector<AgentParams> agents;
    double alpha1 = 0.0; // network-global copies (order 2)
    double alpha2 = 0.0;
    bool gains_auto = false;
    GainCertificate cert;                  // order 2 only; sigma completed
    std::optional<AppendixScratch> scratch; // present when gains were auto
    Scheme scheme = Scheme::Ideal;
    double step = 1e-3;
    double horizon = 30.0;
    int sample_every = 10;
    std::uint64_t seed = 1;
    double ic_range = 5.0;
    bool on_manifold_init = false;
    double kappa = 1.0;    // zhang leakage
    double k_margin = 0.5; // energy margin k in (0,1)
    Order1Form o1form = Order1Form::None;
    std::optional<ZhangParams> zhang; // built whenever the leader form holds

    int n() const { return net.n; }
    int total_m = 0;          // sum of regressor dimensions
    std::vector<int> offsets; // per-agent offset into the concatenated estimate
};

/// One run's realized random draws.
struct InitialDraw {
    Eigen::VectorXd p0;
    Eigen::VectorXd v0;     // empty for order 1
    Eigen::VectorXd what0;  // zeros, or on-manifold w + rho
    Eigen::VectorXd w_true; // concatenated ground truth (quarantined)
};

/// Optional CLI overrides applied to the file before validation.
struct RunOverrides {
    std::optional<std::string> scheme;
    std::optional<std::uint64_t> seed;
    std::optional<double> step;
    std::optional<double> horizon;
    std::optional<double> k_margin;
    std::optional<double> kappa;
};

/// Parse + validate a scenario JSON file. SchemaError for malformed input,
/// AssumptionError for failed model assumptions (spanning tree, Hurwitz
/// gains, scheme/topology mismatch, leader-form requirements).
ScenarioSpec load_scenario(const std::string& path, const RunOverrides& ov = {});

/// Same, from an in-memory JSON string (used by tests).
ScenarioSpec load_scenario_text(const std::string& json_text, const RunOverrides& ov = {});

/// Draw w_true, initial conditions, and the initial estimate in the fixed
/// order (per-agent w, then p, then v) from mt19937_64(seed).
InitialDraw draw_initial(const ScenarioSpec& spec);

/// FNV-1a 64-bit hash of the canonical structural JSON (graph, agents,
/// gains, order, ic_range, estimator init, kappa, k). Runtime-variant fields
/// (scheme, seed, step, horizon, sample_every) are recorded separately in
/// the metadata and do not enter the hash.
std::uint64_t scenario_hash(const ScenarioSpec& spec);

/// Canonical structural JSON text used by scenario_hash.
std::string scenario_canonical_json(const ScenarioSpec& spec);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace dacs
