#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dacs {

/// Per-agent uncertainty basis: an ordered list of monomials v^k plus the
/// adaptation gain lambda. The antiderivative rho satisfies
/// d rho / dv = -lambda * zeta^T(v) with rho(0) = 0, term by term:
/// zeta_j = v^{k_j}  ->  rho_j = -lambda * v^{k_j + 1} / (k_j + 1).
struct RegressorSpec {
    std::vector<int> exponents; // k_j >= 0, declared order
    double lambda = 1.0;        // > 0

    int m() const { return static_cast<int>(exponents.size()); }
};

/// zeta(v): row vector of the monomials in declared order.
Eigen::RowVectorXd eval_zeta(const RegressorSpec& reg, double v);

/// rho(v): column vector with d rho / dv = -lambda * zeta^T, rho(0) = 0.
Eigen::VectorXd eval_rho(const RegressorSpec& reg, double v);

/// Validate exponents (0 <= k <= 12) and lambda > 0; throws SchemaError.
void validate_regressor(const RegressorSpec& reg);

/// Deterministic integer power by repeated multiplication (std::pow's
/// accuracy for integer exponents is not pinned by the standard).
double ipow(double v, int k);

} // namespace dacs
