#include "dacs/graph.hpp"

#include "dacs/errors.hpp"

#include <queue>
#include <string>

namespace dacs {

DirectedNetwork build_network(int n, const std::vector<Edge>& edges) {
    if (n < 2) throw SchemaError("network needs at least 2 agents, got n=" + std::to_string(n));
    DirectedNetwork net;
    net.n = n;
    net.weights = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : edges) {
        if (e.from < 1 || e.from > n || e.to < 1 || e.to > n)
            throw SchemaError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                              ") outside 1.." + std::to_string(n));
        if (e.from == e.to)
            throw SchemaError("self-edge at node " + std::to_string(e.from));
        if (!(e.weight > 0.0))
            throw SchemaError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                              ") has nonpositive weight");
        double& slot = net.weights(e.to - 1, e.from - 1);
        if (slot != 0.0)
            throw SchemaError("duplicate edge (" + std::to_string(e.from) + "," +
                              std::to_string(e.to) + ")");
        slot = e.weight;
    }
    return net;
}

Laplacian laplacian(const DirectedNetwork& net) {
    const int n = net.n;
    Laplacian lap;
    lap.L = -net.weights;
    for (int i = 0; i < n; ++i) lap.L(i, i) = net.weights.row(i).sum();
    return lap;
}

namespace {

// Nodes reachable from `root` (0-based) along edges j->i, i.e. L(i, j) < 0.
int count_reachable(const Eigen::MatrixXd& L, int root) {
    const int n = static_cast<int>(L.rows());
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    seen[root] = 1;
    q.push(root);
    int count = 1;
    while (!q.empty()) {
        const int j = q.front();
        q.pop();
        for (int i = 0; i < n; ++i) {
            if (!seen[i] && L(i, j) < 0.0) {
                seen[i] = 1;
                ++count;
                q.push(i);
            }
        }
    }
    return count;
}

} // namespace

std::pair<bool, std::optional<int>> has_spanning_tree(const Laplacian& lap) {
    const int n = lap.n();
    for (int root = 0; root < n; ++root)
        if (count_reachable(lap.L, root) == n) return {true, root + 1};
    return {false, std::nullopt};
}

Eigen::VectorXd left_null_vector(const Laplacian& lap) {
    const int n = lap.n();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lap.L.transpose());
    lu.setThreshold(1e-10);
    if (lu.rank() != n - 1)
        throw AssumptionError("zero eigenvalue of L is not simple (rank of L^T is " +
                              std::to_string(lu.rank()) + ", expected " + std::to_string(n - 1) +
                              "); network lacks a directed spanning tree");
    Eigen::VectorXd r = lu.kernel().col(0);
    const double total = r.sum();
    if (total == 0.0) throw AssumptionError("left null vector has zero sum; cannot normalize");
    r /= total;
    // Theory gives r >= 0 under the spanning-tree assumption; clamp roundoff.
    for (int i = 0; i < n; ++i) {
        if (r(i) < 0.0) {
            if (r(i) < -1e-10)
                throw AssumptionError("left null vector has a negative entry; Laplacian is not "
                                      "a spanning-tree graph Laplacian");
            r(i) = 0.0;
        }
    }
    return r;
}

} // namespace dacs
