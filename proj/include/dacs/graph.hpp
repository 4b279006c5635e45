#pragma once

#include <Eigen/Dense>
#include <optional>
#include <tuple>
#include <vector>

namespace dacs {

/// One directed edge: information flows from `from` to `to` with positive
/// weight, i.e. a_{to,from} = weight. Indices are 1-based in files and in
/// this struct; matrices are 0-based.
struct Edge {
    int from = 0;
    int to = 0;
    double weight = 0.0;
};

/// Weighted directed communication graph on n agents.
/// weights(i, j) = a_ij > 0 means agent i receives information from agent j.
struct DirectedNetwork {
    int n = 0;
    Eigen::MatrixXd weights; // n x n, zero diagonal, nonnegative
};

/// Graph Laplacian: L_ii = sum_{j != i} a_ij, L_ij = -a_ij. Rows sum to zero.
struct Laplacian {
    Eigen::MatrixXd L;
    int n() const { return static_cast<int>(L.rows()); }
};

/// Validate an edge list and assemble the adjacency matrix.
/// Rejects self-edges, nonpositive weights, duplicate edges, and indices
/// outside 1..n.
DirectedNetwork build_network(int n, const std::vector<Edge>& edges);

/// Assemble the Laplacian of a network.
Laplacian laplacian(const DirectedNetwork& net);

/// True iff some node has a directed path to every other node; also returns
/// one such root (1-based). BFS reachability from each candidate.
std::pair<bool, std::optional<int>> has_spanning_tree(const Laplacian& lap);

/// Left null vector of L: r^T L = 0, r^T 1 = 1, entries >= 0.
/// Requires the zero eigenvalue to be simple (spanning tree); rejects
/// otherwise.
Eigen::VectorXd left_null_vector(const Laplacian& lap);

} // namespace dacs
