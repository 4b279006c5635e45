#include "dacs/simulator.hpp"

#include "dacs/adaptation.hpp"
#include "dacs/agents.hpp"
#include "dacs/errors.hpp"

#include <cmath>

namespace dacs {

Eigen::VectorXd rk4_step(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& field,
                         const Eigen::VectorXd& state, double h) {
    const Eigen::VectorXd k1 = field(state);
    const Eigen::VectorXd k2 = field(state + 0.5 * h * k1);
    const Eigen::VectorXd k3 = field(state + 0.5 * h * k2);
    const Eigen::VectorXd k4 = field(state + h * k3);
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

/// Layout of the integrated vector: [p (n); v (n, order 2 only); w_hat (M); quad (1)].
struct Layout {
    int n = 0;
    int order = 2;
    int M = 0;
    int dim() const { return (order == 2 ? 2 * n : n) + M + 1; }
    int voff() const { return n; }
    int woff() const { return order == 2 ? 2 * n : n; }
    int qoff() const { return woff() + M; }
};

/// Per-row derived metrics. The Lyapunov pair depends on order, topology
/// form, and scheme:
///   order 2:            V = x^T R^T P R x
///   order 1 symmetric:  V = x^T L x / 2
///   order 1 leader:     V = x^T R^T P_diag R x / 2
///   order 1 general:    V = ||W x||^2 (ideal runs only)
///   U: ideal -> V; distributed (order 2) -> composite energy;
///      distributed (order 1) -> V + sum ||z_i||^2/(2 lambda_i), diagnostic;
///      centralized/example1/zhang -> V + sum ||w_i - what_i||^2/(2 lambda_i).
struct Metrics {
    double dis_p, dis_v, V, U, znorm;
};

Metrics compute_metrics(const ScenarioSpec& spec, const Eigen::VectorXd& p,
                        const Eigen::VectorXd& v, const Eigen::VectorXd& w_hat,
                        const Eigen::VectorXd& w_true) {
    Metrics m{};
    m.dis_p = (spec.tf.W * p).norm();
    m.dis_v = spec.order == 2 ? (spec.tf.W * v).norm() : 0.0;

    if (spec.order == 2) {
        Eigen::VectorXd x(2 * spec.n());
        x << p, v;
        const Eigen::VectorXd Rx = spec.tf.R * x;
        m.V = Rx.dot(spec.cert.P * Rx);
    } else if (spec.o1form == Order1Form::Symmetric) {
        m.V = 0.5 * p.dot(spec.lap.L * p);
    } else if (spec.o1form == Order1Form::Leader) {
        const Eigen::VectorXd Rx = spec.zhang->R_leader() * p;
        m.V = 0.5 * Rx.dot(spec.zhang->P_diag.asDiagonal() * Rx);
    } else {
        m.V = (spec.tf.W * p).squaredNorm();
    }

    auto block_weighted = [&](const Eigen::VectorXd& e) {
        double s = 0.0;
        for (int i = 0; i < spec.n(); ++i) {
            const int mi = spec.agents[i].regressor.m();
            if (mi == 0) continue;
            s += e.segment(spec.offsets[i], mi).squaredNorm() /
                 (2.0 * spec.agents[i].regressor.lambda);
        }
        return s;
    };

    switch (spec.scheme) {
        case Scheme::Ideal:
            m.U = m.V;
            m.znorm = 0.0;
            break;
        case Scheme::Distributed: {
            const Eigen::VectorXd s = spec.order == 2 ? v : p;
            const ManifoldCoords mc = manifold_coords(spec, s, w_hat, w_true);
            m.znorm = mc.z.norm();
            if (spec.order == 2)
                m.U = composite_energy(spec, p, v, w_hat, w_true, spec.k_margin).U;
            else
                m.U = m.V + block_weighted(mc.z);
            break;
        }
        case Scheme::Centralized:
        case Scheme::Example1:
        case Scheme::Zhang: {
            const Eigen::VectorXd werr = w_true - w_hat;
            m.znorm = werr.norm();
            m.U = m.V + block_weighted(werr);
            break;
        }
    }
    return m;
}

Eigen::VectorXd closed_loop_field(const ScenarioSpec& spec, const Eigen::VectorXd& w_true,
                                  const Layout& lay, const Eigen::VectorXd& y) {
    const Eigen::VectorXd p = y.head(lay.n);
    const Eigen::VectorXd v =
        lay.order == 2 ? y.segment(lay.voff(), lay.n).eval() : Eigen::VectorXd();
    const Eigen::VectorXd w_hat = y.segment(lay.woff(), lay.M);

    Eigen::VectorXd dy = Eigen::VectorXd::Zero(lay.dim());
    Eigen::VectorXd pdot, vdot;
    Eigen::VectorXd w_hat_dot = Eigen::VectorXd::Zero(lay.M);

    switch (spec.scheme) {
        case Scheme::Ideal:
            std::tie(pdot, vdot) = nominal_field(spec, p, v);
            break;
        case Scheme::Distributed: {
            DistributedUpdate du = distributed_update(spec, p, v, w_hat);
            std::tie(pdot, vdot) = uncertain_field(spec, p, v, w_true, du.mu);
            w_hat_dot = std::move(du.w_hat_dot);
            break;
        }
        case Scheme::Centralized:
            std::tie(pdot, vdot) = uncertain_field(spec, p, v, w_true, w_hat);
            w_hat_dot = centralized_update(spec, p, v);
            break;
        case Scheme::Example1:
            std::tie(pdot, vdot) = uncertain_field(spec, p, v, w_true, w_hat);
            w_hat_dot = example1_update(spec, p);
            break;
        case Scheme::Zhang:
            std::tie(pdot, vdot) = uncertain_field(spec, p, v, w_true, w_hat);
            w_hat_dot = zhang_update(spec, p, w_hat);
            break;
    }

    dy.head(lay.n) = pdot;
    if (lay.order == 2) dy.segment(lay.voff(), lay.n) = vdot;
    dy.segment(lay.woff(), lay.M) = w_hat_dot;

    // Quadrature channel: d/dt int ||x||_R^2.
    if (lay.order == 2) {
        Eigen::VectorXd x(2 * lay.n);
        x << p, v;
        dy(lay.qoff()) = (spec.tf.R * x).squaredNorm();
    } else {
        dy(lay.qoff()) = (spec.tf.W * p).squaredNorm();
    }
    return dy;
}

bool state_ok(const Eigen::VectorXd& y) {
    for (int i = 0; i < y.size(); ++i)
        if (!std::isfinite(y(i)) || std::abs(y(i)) > 1e9) return false;
    return true;
}

} // namespace

TrajectoryLog run(const ScenarioSpec& spec, const InitialDraw& draw) {
    Layout lay;
    lay.n = spec.n();
    lay.order = spec.order;
    lay.M = spec.total_m;

    TrajectoryLog log;
    log.scenario_name = spec.name;
    log.scenario_hash = scenario_hash(spec);
    log.seed = spec.seed;
    log.scheme = spec.scheme;
    log.order = spec.order;
    log.n = spec.n();
    log.total_m = spec.total_m;
    log.step = spec.step;
    log.horizon = spec.horizon;

    Eigen::VectorXd y = Eigen::VectorXd::Zero(lay.dim());
    y.head(lay.n) = draw.p0;
    if (spec.order == 2) y.segment(lay.voff(), lay.n) = draw.v0;
    y.segment(lay.woff(), lay.M) = draw.what0;

    const auto field = [&](const Eigen::VectorXd& s) {
        return closed_loop_field(spec, draw.w_true, lay, s);
    };

    const long long steps = std::llround(spec.horizon / spec.step);
    const Eigen::VectorXd vzero = Eigen::VectorXd::Zero(lay.n);

    auto sample = [&](long long j, const Eigen::VectorXd& state) {
        const Eigen::VectorXd p = state.head(lay.n);
        const Eigen::VectorXd vv =
            lay.order == 2 ? state.segment(lay.voff(), lay.n).eval() : vzero;
        const Eigen::VectorXd wh = state.segment(lay.woff(), lay.M);
        const Metrics mm = compute_metrics(spec, p, vv, wh, draw.w_true);
        log.t.push_back(static_cast<double>(j) * spec.step);
        log.p.push_back(p);
        log.v.push_back(vv);
        log.w_hat.push_back(wh);
        log.dis_p.push_back(mm.dis_p);
        log.dis_v.push_back(mm.dis_v);
        log.V.push_back(mm.V);
        log.U.push_back(mm.U);
        log.znorm.push_back(mm.znorm);
        log.quad.push_back(state(lay.qoff()));
    };

    for (long long j = 0; j < steps; ++j) {
        if (j % spec.sample_every == 0) sample(j, y);
        Eigen::VectorXd y_next = rk4_step(field, y, spec.step);
        if (!state_ok(y_next)) {
            log.diverged = true;
            log.t_diverged = static_cast<double>(j + 1) * spec.step;
            return log;
        }
        y = std::move(y_next);
    }
    sample(steps, y);
    return log;
}

TrajectoryLog run(const ScenarioSpec& spec) { return run(spec, draw_initial(spec)); }

std::pair<double, double> tail_metrics(const TrajectoryLog& log, double fraction) {
    if (log.diverged) throw AssumptionError("tail_metrics: diverged log");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw SchemaError("tail_metrics: fraction must lie in (0, 1]");
    const std::size_t nrows = log.rows();
    if (nrows == 0) throw SchemaError("tail_metrics: empty log");
    std::size_t start = nrows - static_cast<std::size_t>(std::ceil(fraction * nrows));
    if (start >= nrows) start = nrows - 1;
    double sum = 0.0, mx = 0.0;
    for (std::size_t r = start; r < nrows; ++r) {
        const double d = log.dis_p[r] + log.dis_v[r];
        sum += d;
        if (d > mx) mx = d;
    }
    return {sum / static_cast<double>(nrows - start), mx};
}

} // namespace dacs
