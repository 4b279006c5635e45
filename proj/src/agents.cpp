#include "dacs/agents.hpp"

#include "dacs/errors.hpp"

namespace dacs {

std::pair<Eigen::VectorXd, Eigen::VectorXd> nominal_field(const ScenarioSpec& spec,
                                                          const Eigen::VectorXd& p,
                                                          const Eigen::VectorXd& v) {
    const int n = spec.n();
    if (p.size() != n) throw SchemaError("nominal_field: p has wrong dimension");
    if (spec.order == 1) {
        return {-(spec.lap.L * p), Eigen::VectorXd()};
    }
    if (v.size() != n) throw SchemaError("nominal_field: v has wrong dimension");
    Eigen::VectorXd pdot = v;
    Eigen::VectorXd vdot = spec.alpha1 * p + spec.alpha2 * v -
                           spec.cert.gamma1 * (spec.lap.L * p) -
                           spec.cert.gamma2 * (spec.lap.L * v);
    return {std::move(pdot), std::move(vdot)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> uncertain_field(const ScenarioSpec& spec,
                                                            const Eigen::VectorXd& p,
                                                            const Eigen::VectorXd& v,
                                                            const Eigen::VectorXd& w,
                                                            const Eigen::VectorXd& mu) {
    if (w.size() != spec.total_m || mu.size() != spec.total_m)
        throw SchemaError("uncertain_field: parameter vector dimension mismatch");
    auto [pdot, vdot] = nominal_field(spec, p, v);
    Eigen::VectorXd& driven = spec.order == 2 ? vdot : pdot;
    for (int i = 0; i < spec.n(); ++i) {
        const RegressorSpec& reg = spec.agents[i].regressor;
        if (reg.m() == 0) continue;
        const double s = spec.order == 2 ? v(i) : p(i);
        const auto seg = [&](const Eigen::VectorXd& u) {
            return u.segment(spec.offsets[i], reg.m());
        };
        driven(i) += eval_zeta(reg, s) * (seg(w) - seg(mu));
    }
    return {std::move(pdot), std::move(vdot)};
}

Eigen::MatrixXd build_H(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                        const Eigen::VectorXd& v) {
    const int n = spec.n();
    const int rows = spec.order == 2 ? 2 * n : n;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(rows, spec.total_m);
    for (int i = 0; i < n; ++i) {
        const RegressorSpec& reg = spec.agents[i].regressor;
        if (reg.m() == 0) continue;
        const double s = spec.order == 2 ? v(i) : p(i);
        const int row = spec.order == 2 ? n + i : i;
        H.block(row, spec.offsets[i], 1, reg.m()) = eval_zeta(reg, s);
    }
    return H;
}

} // namespace dacs
