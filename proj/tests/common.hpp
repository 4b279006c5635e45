#pragma once

#include "dacs/adaptation.hpp"
#include "dacs/agents.hpp"
#include "dacs/errors.hpp"
#include "dacs/graph.hpp"
#include "dacs/logio.hpp"
#include "dacs/regressor.hpp"
#include "dacs/rng.hpp"
#include "dacs/scenario.hpp"
#include "dacs/simulator.hpp"
#include "dacs/stability.hpp"
#include "dacs/transform.hpp"

#include <json.hpp>

#include <Eigen/Dense>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace tt {

inline std::string preset_path(const std::string& name) {
    return std::string(DACS_PRESET_DIR) + "/" + name + ".json";
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline dacs::ScenarioSpec load_preset(const std::string& name,
                                      const dacs::RunOverrides& ov = {}) {
    return dacs::load_scenario(preset_path(name), ov);
}

/// The six-agent network: edge list (from, to, weight) matching the displayed
/// Laplacian rows.
inline std::vector<dacs::Edge> fig2_edges() {
    return {{2, 1, 2}, {3, 2, 3}, {1, 3, 3}, {3, 4, 5},
            {4, 5, 4}, {6, 5, 5}, {1, 6, 1}, {3, 6, 2}};
}

inline Eigen::MatrixXd fig2_laplacian_matrix() {
    Eigen::MatrixXd L(6, 6);
    L << 2, -2, 0, 0, 0, 0,
         0, 3, -3, 0, 0, 0,
        -3, 0, 3, 0, 0, 0,
         0, 0, -5, 5, 0, 0,
         0, 0, 0, -4, 9, -5,
        -1, 0, -2, 0, 0, 3;
    return L;
}

/// A random digraph that is guaranteed to contain a directed spanning tree:
/// a random permutation is wired as a tree (each new node attached from an
/// already-reachable one), then extra edges are sprinkled in. Weights are
/// uniform in (0, 5].
inline dacs::DirectedNetwork random_network(dacs::SeededRng& rng) {
    const int n = static_cast<int>(rng.integer(2, 8));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.integer(0, static_cast<std::uint64_t>(i))]);
    auto weight = [&] { return 5.0 - 5.0 * rng.unit(); };
    std::vector<dacs::Edge> edges;
    Eigen::MatrixXd present = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int k = 1; k < n; ++k) {
        const int parent =
            perm[rng.integer(0, static_cast<std::uint64_t>(k - 1))];
        edges.push_back({parent, perm[k], weight()});
        present(parent, perm[k]) = 1.0;
    }
    for (int from = 1; from <= n; ++from)
        for (int to = 1; to <= n; ++to) {
            if (from == to || present(from, to) != 0.0) continue;
            if (rng.unit() < 0.25) {
                edges.push_back({from, to, weight()});
                present(from, to) = 1.0;
            }
        }
    return dacs::build_network(n, edges);
}

/// A regressor with 1-4 monomial terms, exponents 0..6, lambda in (0, 10].
inline dacs::RegressorSpec random_regressor(dacs::SeededRng& rng) {
    dacs::RegressorSpec reg;
    const int m = static_cast<int>(rng.integer(1, 4));
    for (int j = 0; j < m; ++j)
        reg.exponents.push_back(static_cast<int>(rng.integer(0, 6)));
    reg.lambda = 10.0 - 10.0 * rng.unit();
    return reg;
}

/// The paper_fig2 scenario restated in a step/IC regime where fixed-step
/// RK4 is faithful (the estimator's fast mode stays inside the stability
/// region): same graph, gains, and regressors.
inline std::string fig2_small_text(double step = 2.5e-4, double ic_range = 0.5,
                                   double horizon = 30.0, int sample_every = 10,
                                   const std::string& what_init = "zero") {
    nlohmann::json j = nlohmann::json::parse(slurp(preset_path("paper_fig2")));
    j["name"] = "fig2_small";
    j["step"] = step;
    j["ic_range"] = ic_range;
    j["horizon"] = horizon;
    j["sample_every"] = sample_every;
    j["w_hat_init"] = what_init;
    return j.dump();
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace tt
