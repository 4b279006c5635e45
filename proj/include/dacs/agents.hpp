#pragma once

#include "dacs/scenario.hpp"

#include <Eigen/Dense>
#include <utility>

namespace dacs {

/// Time derivative pair of the plant under the nominal (ideal) protocol.
/// Second order:  pdot = v,  vdot = alpha1 p + alpha2 v - gamma1 L p - gamma2 L v.
/// First order:   pdot = -L p, vdot empty (the state is x = p).
std::pair<Eigen::VectorXd, Eigen::VectorXd> nominal_field(const ScenarioSpec& spec,
                                                          const Eigen::VectorXd& p,
                                                          const Eigen::VectorXd& v);

/// nominal_field plus the per-agent uncertainty channel zeta_i (w_i - mu_i)
/// on the integrator input: the vdot component for second order, pdot for
/// first order. w and mu are concatenated in the scenario's block layout.
std::pair<Eigen::VectorXd, Eigen::VectorXd> uncertain_field(const ScenarioSpec& spec,
                                                            const Eigen::VectorXd& p,
                                                            const Eigen::VectorXd& v,
                                                            const Eigen::VectorXd& w,
                                                            const Eigen::VectorXd& mu);

/// Uncertainty input matrix H(x): column t (owned by agent i, exponent k)
/// has the single entry v_i^k in the row of agent i's driven integrator
/// (row n+i for second order, row i for first order). The uncertain plant
/// is xdot = f(x) + H(x) (w - mu).
Eigen::MatrixXd build_H(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                        const Eigen::VectorXd& v);

} // namespace dacs
