#include "dacs/adaptation.hpp"

#include "dacs/agents.hpp"
#include "dacs/errors.hpp"

namespace dacs {

AgentUpdate agent_distributed_update(const AgentParams& agent, const LocalView& local,
                                     int order, double alpha1, double alpha2,
                                     double gamma1, double gamma2) {
    const RegressorSpec& reg = agent.regressor;
    if (local.w_hat_i.size() != reg.m())
        throw SchemaError("agent_distributed_update: estimate block dimension mismatch");
    AgentUpdate out;
    if (order == 2) {
        const double u_nom = alpha1 * local.p_i + alpha2 * local.v_i - gamma1 * local.Lp_i -
                             gamma2 * local.Lv_i;
        out.mu_i = local.w_hat_i - eval_rho(reg, local.v_i);
        out.w_hat_dot_i = -reg.lambda * eval_zeta(reg, local.v_i).transpose() * u_nom;
    } else {
        out.mu_i = local.w_hat_i - eval_rho(reg, local.p_i);
        out.w_hat_dot_i = reg.lambda * eval_zeta(reg, local.p_i).transpose() * local.Lp_i;
    }
    return out;
}

DistributedUpdate distributed_update(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                                     const Eigen::VectorXd& v, const Eigen::VectorXd& w_hat) {
    const int n = spec.n();
    if (p.size() != n || w_hat.size() != spec.total_m ||
        (spec.order == 2 && v.size() != n))
        throw SchemaError("distributed_update: state dimension mismatch");
    const Eigen::VectorXd Lp = spec.lap.L * p;
    const Eigen::VectorXd Lv = spec.order == 2 ? (spec.lap.L * v).eval()
                                               : Eigen::VectorXd::Zero(n).eval();
    DistributedUpdate out;
    out.mu = Eigen::VectorXd::Zero(spec.total_m);
    out.w_hat_dot = Eigen::VectorXd::Zero(spec.total_m);
    for (int i = 0; i < n; ++i) {
        const int m = spec.agents[i].regressor.m();
        if (m == 0) continue;
        LocalView local;
        local.p_i = p(i);
        local.v_i = spec.order == 2 ? v(i) : 0.0;
        local.w_hat_i = w_hat.segment(spec.offsets[i], m);
        local.Lp_i = Lp(i);
        local.Lv_i = Lv(i);
        AgentUpdate u = agent_distributed_update(spec.agents[i], local, spec.order, spec.alpha1,
                                                 spec.alpha2, spec.cert.gamma1,
                                                 spec.cert.gamma2);
        out.mu.segment(spec.offsets[i], m) = u.mu_i;
        out.w_hat_dot.segment(spec.offsets[i], m) = u.w_hat_dot_i;
    }
    return out;
}

Eigen::VectorXd centralized_update(const Eigen::VectorXd& V_gradient, const Eigen::MatrixXd& H,
                                   double lambda) {
    if (H.rows() != V_gradient.size())
        throw SchemaError("centralized_update: gradient/H dimension mismatch");
    return lambda * H.transpose() * V_gradient;
}

namespace {

Eigen::VectorXd scenario_v_gradient(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                                    const Eigen::VectorXd& v) {
    if (spec.order == 2) {
        const int n = spec.n();
        Eigen::VectorXd x(2 * n);
        x << p, v;
        return 2.0 * spec.tf.R.transpose() *
               (spec.cert.P * (spec.tf.R * x));
    }
    if (spec.o1form == Order1Form::Symmetric) return spec.lap.L * p;
    if (spec.o1form == Order1Form::Leader) {
        const Eigen::MatrixXd R = spec.zhang->R_leader();
        return R.transpose() * (spec.zhang->P_diag.asDiagonal() * (R * p));
    }
    throw AssumptionError("no Lyapunov gradient is defined for a general directed "
                          "first-order network");
}

} // namespace

Eigen::VectorXd centralized_update(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                                   const Eigen::VectorXd& v) {
    const Eigen::VectorXd g = scenario_v_gradient(spec, p, v);
    const Eigen::MatrixXd H = build_H(spec, p, v);
    Eigen::VectorXd w_hat_dot = H.transpose() * g;
    for (int i = 0; i < spec.n(); ++i)
        w_hat_dot.segment(spec.offsets[i], spec.agents[i].regressor.m()) *=
            spec.agents[i].regressor.lambda;
    return w_hat_dot;
}

Eigen::VectorXd example1_update(const Laplacian& lap_symmetric, const Eigen::VectorXd& x,
                                const std::vector<RegressorSpec>& h_list, double lambda) {
    const int n = lap_symmetric.n();
    if ((lap_symmetric.L - lap_symmetric.L.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw AssumptionError("example1_update requires a symmetric Laplacian");
    if (x.size() != n || static_cast<int>(h_list.size()) != n)
        throw SchemaError("example1_update: dimension mismatch");
    const Eigen::VectorXd Lx = lap_symmetric.L * x;
    int M = 0;
    for (const RegressorSpec& r : h_list) M += r.m();
    Eigen::VectorXd w_hat_dot = Eigen::VectorXd::Zero(M);
    int off = 0;
    for (int i = 0; i < n; ++i) {
        const int m = h_list[i].m();
        if (m > 0)
            w_hat_dot.segment(off, m) =
                lambda * eval_zeta(h_list[i], x(i)).transpose() * Lx(i);
        off += m;
    }
    return w_hat_dot;
}

Eigen::VectorXd example1_update(const ScenarioSpec& spec, const Eigen::VectorXd& x) {
    if (spec.order != 1 || spec.o1form != Order1Form::Symmetric)
        throw AssumptionError("the example1 law requires a first-order undirected scenario");
    const Eigen::VectorXd Lx = spec.lap.L * x;
    Eigen::VectorXd w_hat_dot = Eigen::VectorXd::Zero(spec.total_m);
    for (int i = 0; i < spec.n(); ++i) {
        const RegressorSpec& reg = spec.agents[i].regressor;
        if (reg.m() > 0)
            w_hat_dot.segment(spec.offsets[i], reg.m()) =
                reg.lambda * eval_zeta(reg, x(i)).transpose() * Lx(i);
    }
    return w_hat_dot;
}

Eigen::VectorXd zhang_update(const ZhangParams& zp, const std::vector<RegressorSpec>& regs,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& w_hat) {
    if (!(zp.kappa > 0.0)) throw SchemaError("zhang_update: kappa must be positive");
    const int n = static_cast<int>(x.size());
    const int nf = static_cast<int>(zp.b.size());
    if (nf != n - 1 || static_cast<int>(regs.size()) != n)
        throw SchemaError("zhang_update: dimension mismatch");
    if (regs[0].m() != 0)
        throw AssumptionError("zhang_update: the leader must be uncertainty-free");
    int M = 0;
    for (const RegressorSpec& r : regs) M += r.m();
    if (w_hat.size() != M) throw SchemaError("zhang_update: estimate dimension mismatch");
    const Eigen::MatrixXd LoB = zp.Lo_plus_B();
    Eigen::VectorXd w_hat_dot = Eigen::VectorXd::Zero(M);
    int off = 0;
    for (int f = 0; f < nf; ++f) {
        const RegressorSpec& reg = regs[f + 1];
        const int m = reg.m();
        if (m > 0) {
            // Row f+1 of the full Laplacian applied to x: -b_f x_1 + (L_o+B)_f x_followers.
            const double Lx_i = -zp.b(f) * x(0) + LoB.row(f).dot(x.tail(nf));
            const double gain = reg.lambda * (zp.D(f, f) + zp.b(f)) * zp.P_diag(f);
            w_hat_dot.segment(off, m) =
                gain * eval_zeta(reg, x(f + 1)).transpose() * Lx_i -
                reg.lambda * zp.kappa * w_hat.segment(off, m);
        }
        off += m;
    }
    return w_hat_dot;
}

Eigen::VectorXd zhang_update(const ScenarioSpec& spec, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& w_hat) {
    if (spec.order != 1 || !spec.zhang)
        throw AssumptionError("the zhang law requires the first-order leader-following form");
    std::vector<RegressorSpec> regs;
    regs.reserve(spec.agents.size());
    for (const AgentParams& a : spec.agents) regs.push_back(a.regressor);
    return zhang_update(*spec.zhang, regs, x, w_hat);
}

ManifoldCoords manifold_coords(const ScenarioSpec& spec, const Eigen::VectorXd& s,
                               const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w_true) {
    if (s.size() != spec.n() || w_hat.size() != spec.total_m ||
        w_true.size() != spec.total_m)
        throw SchemaError("manifold_coords: dimension mismatch");
    ManifoldCoords out;
    out.z = Eigen::VectorXd::Zero(spec.total_m);
    for (int i = 0; i < spec.n(); ++i) {
        const RegressorSpec& reg = spec.agents[i].regressor;
        if (reg.m() == 0) continue;
        out.z.segment(spec.offsets[i], reg.m()) =
            eval_rho(reg, s(i)) - w_hat.segment(spec.offsets[i], reg.m()) +
            w_true.segment(spec.offsets[i], reg.m());
    }
    return out;
}

CompositeEnergy composite_energy(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& v, const Eigen::VectorXd& w_hat,
                                 const Eigen::VectorXd& w_true, double k) {
    if (!(k > 0.0 && k < 1.0)) throw SchemaError("composite_energy: k must lie in (0,1)");
    if (spec.order != 2)
        throw SchemaError("composite_energy is defined for second-order scenarios; "
                          "first-order energies use the scenario's own Lyapunov pair");
    const int n = spec.n();
    Eigen::VectorXd x(2 * n);
    x << p, v;
    const Eigen::VectorXd Rx = spec.tf.R * x;
    CompositeEnergy e;
    e.k = k;
    e.V = Rx.dot(spec.cert.P * Rx);
    const ManifoldCoords mc = manifold_coords(spec, v, w_hat, w_true);
    double zsum = 0.0;
    for (int i = 0; i < n; ++i) {
        const int m = spec.agents[i].regressor.m();
        if (m == 0) continue;
        zsum += mc.z.segment(spec.offsets[i], m).squaredNorm() /
                (2.0 * spec.agents[i].regressor.lambda);
    }
    e.U = e.V + spec.cert.sigma / (4.0 * (1.0 - k)) * zsum;
    return e;
}

} // namespace dacs
