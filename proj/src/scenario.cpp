#include "dacs/scenario.hpp"

#include "dacs/errors.hpp"
#include "dacs/rng.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace dacs {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Ideal: return "ideal";
        case Scheme::Distributed: return "distributed";
        case Scheme::Centralized: return "centralized";
        case Scheme::Example1: return "example1";
        case Scheme::Zhang: return "zhang";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "ideal") return Scheme::Ideal;
    if (name == "distributed") return Scheme::Distributed;
    if (name == "centralized") return Scheme::Centralized;
    if (name == "example1") return Scheme::Example1;
    if (name == "zhang") return Scheme::Zhang;
    throw SchemaError("unknown scheme \"" + name + "\" (expected ideal | distributed | "
                      "centralized | example1 | zhang)");
}

Eigen::MatrixXd ZhangParams::R_leader() const {
    const int nf = static_cast<int>(b.size());
    Eigen::MatrixXd R(nf, nf + 1);
    R.col(0) = -b;
    R.rightCols(nf) = L_o + B;
    return R;
}

namespace {

double require_number(const json& j, const std::string& key, std::optional<double> dflt = {}) {
    if (!j.contains(key)) {
        if (dflt) return *dflt;
        throw SchemaError("missing field \"" + key + "\"");
    }
    if (!j.at(key).is_number()) throw SchemaError("field \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

ZhangParams build_leader_form(const Laplacian& lap, double kappa) {
    const int n = lap.n();
    const int nf = n - 1;
    ZhangParams zp;
    zp.kappa = kappa;
    zp.b = -lap.L.block(1, 0, nf, 1);
    Eigen::MatrixXd LoB = lap.L.block(1, 1, nf, nf);
    zp.B = zp.b.asDiagonal();
    zp.D = Eigen::MatrixXd::Zero(nf, nf);
    zp.E = Eigen::MatrixXd::Zero(nf, nf);
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) {
            if (i == j)
                zp.D(i, i) = LoB(i, i) - zp.b(i);
            else
                zp.E(i, j) = -LoB(i, j);
        }
    zp.L_o = zp.D - zp.E;

    // Diagonal Lyapunov scaling: (L_o+B)^T q = 1, q > 0 for a nonsingular
    // M-matrix; the definiteness of the symmetrized product is verified, not
    // assumed.
    Eigen::FullPivLU<Eigen::MatrixXd> lu(LoB.transpose());
    if (!lu.isInvertible())
        throw AssumptionError("L_o + B is singular; the leader does not root a spanning tree");
    zp.P_diag = lu.solve(Eigen::VectorXd::Ones(nf));
    if (zp.P_diag.minCoeff() <= 0.0)
        throw AssumptionError("diagonal Lyapunov weights are not all positive");
    Eigen::MatrixXd twoQ =
        zp.P_diag.asDiagonal() * LoB + LoB.transpose() * zp.P_diag.asDiagonal().toDenseMatrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(twoQ, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw AssumptionError("P(L_o+B) + (L_o+B)^T P is not positive definite");
    return zp;
}

} // namespace

static ScenarioSpec build_from_json(const json& root, const RunOverrides& ov) {
    if (!root.is_object()) throw SchemaError("scenario must be a JSON object");
    ScenarioSpec spec;
    spec.name = root.value("name", std::string("scenario"));

    if (root.contains("order")) {
        if (!root.at("order").is_number_integer())
            throw SchemaError("\"order\" must be 1 or 2");
        spec.order = root.at("order").get<int>();
    }
    if (spec.order != 1 && spec.order != 2) throw SchemaError("\"order\" must be 1 or 2");

    // ---- graph ----
    if (!root.contains("graph") || !root.at("graph").is_object())
        throw SchemaError("missing \"graph\" object");
    const json& g = root.at("graph");
    if (!g.contains("n") || !g.at("n").is_number_integer())
        throw SchemaError("graph needs integer \"n\"");
    const int n = g.at("n").get<int>();
    std::vector<Edge> edges;
    if (g.contains("edges")) {
        if (!g.at("edges").is_array()) throw SchemaError("graph \"edges\" must be an array");
        for (const json& e : g.at("edges")) {
            if (!e.is_array() || e.size() != 3)
                throw SchemaError("each edge must be [from, to, weight]");
            edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
        }
    }
    spec.net = build_network(n, edges);
    spec.lap = laplacian(spec.net);

    // ---- agents ----
    if (!root.contains("agents") || !root.at("agents").is_array())
        throw SchemaError("missing \"agents\" array");
    const json& agents = root.at("agents");
    if (static_cast<int>(agents.size()) != n)
        throw SchemaError("agents array has " + std::to_string(agents.size()) +
                          " entries, expected n=" + std::to_string(n));
    spec.total_m = 0;
    for (const json& a : agents) {
        if (!a.is_object()) throw SchemaError("each agent must be an object");
        AgentParams ap;
        ap.alpha1 = require_number(a, "alpha1", spec.order == 1 ? std::optional<double>(0.0)
                                                                : std::nullopt);
        ap.alpha2 = require_number(a, "alpha2", spec.order == 1 ? std::optional<double>(0.0)
                                                                : std::nullopt);
        if (a.contains("terms")) {
            if (!a.at("terms").is_array()) throw SchemaError("agent \"terms\" must be an array");
            for (const json& t : a.at("terms")) {
                if (!t.is_number_integer())
                    throw SchemaError("regressor terms are integer exponents");
                ap.regressor.exponents.push_back(t.get<int>());
            }
        }
        ap.regressor.lambda = require_number(a, "lambda", 1.0);
        validate_regressor(ap.regressor);
        if (a.contains("w_true")) {
            if (!a.at("w_true").is_array() ||
                static_cast<int>(a.at("w_true").size()) != ap.regressor.m())
                throw SchemaError("agent \"w_true\" length must match its term count");
            Eigen::VectorXd w(ap.regressor.m());
            for (int j = 0; j < ap.regressor.m(); ++j) w(j) = a.at("w_true").at(j).get<double>();
            ap.w_true = w;
        }
        spec.offsets.push_back(spec.total_m);
        spec.total_m += ap.regressor.m();
        spec.agents.push_back(std::move(ap));
    }

    // Uniform plant coefficients: the nominal model has one A matrix.
    spec.alpha1 = spec.agents[0].alpha1;
    spec.alpha2 = spec.agents[0].alpha2;
    for (const AgentParams& ap : spec.agents)
        if (ap.alpha1 != spec.alpha1 || ap.alpha2 != spec.alpha2)
            throw SchemaError("alpha1/alpha2 must be identical across agents");
    if (spec.order == 1 && (spec.alpha1 != 0.0 || spec.alpha2 != 0.0))
        throw SchemaError("first-order scenarios take alpha1 = alpha2 = 0");

    // ---- run parameters (with CLI overrides) ----
    spec.step = require_number(root, "step", 1e-3);
    spec.horizon = require_number(root, "horizon", 30.0);
    if (root.contains("sample_every")) spec.sample_every = root.at("sample_every").get<int>();
    if (root.contains("seed")) spec.seed = root.at("seed").get<std::uint64_t>();
    spec.ic_range = require_number(root, "ic_range", 5.0);
    spec.kappa = require_number(root, "kappa", 1.0);
    spec.k_margin = require_number(root, "k", 0.5);
    std::string scheme_str = root.value("scheme", std::string("ideal"));
    std::string what_init = root.value("w_hat_init", std::string("zero"));

    if (ov.scheme) scheme_str = *ov.scheme;
    if (ov.seed) spec.seed = *ov.seed;
    if (ov.step) spec.step = *ov.step;
    if (ov.horizon) spec.horizon = *ov.horizon;
    if (ov.k_margin) spec.k_margin = *ov.k_margin;
    if (ov.kappa) spec.kappa = *ov.kappa;

    spec.scheme = parse_scheme(scheme_str);
    if (what_init == "zero")
        spec.on_manifold_init = false;
    else if (what_init == "on_manifold")
        spec.on_manifold_init = true;
    else
        throw SchemaError("\"w_hat_init\" must be \"zero\" or \"on_manifold\"");

    if (!(spec.step > 0.0)) throw SchemaError("step must be positive");
    if (!(spec.horizon > 0.0)) throw SchemaError("horizon must be positive");
    if (spec.sample_every < 1) throw SchemaError("sample_every must be >= 1");
    if (!(spec.ic_range >= 0.0)) throw SchemaError("ic_range must be nonnegative");
    if (!(spec.k_margin > 0.0 && spec.k_margin < 1.0))
        throw SchemaError("k must lie strictly between 0 and 1");
    if (spec.scheme == Scheme::Zhang && !(spec.kappa > 0.0))
        throw SchemaError("kappa must be positive for the zhang scheme");

    // ---- assumptions: spanning tree, transform ----
    auto [has_tree, root_node] = has_spanning_tree(spec.lap);
    if (!has_tree) throw AssumptionError("no directed spanning tree");
    (void)root_node;
    spec.tf = build_transform(spec.lap, left_null_vector(spec.lap));

    // ---- gains (order 2) ----
    if (spec.order == 2) {
        if (!root.contains("gains")) throw SchemaError("second-order scenarios need \"gains\"");
        const json& gains = root.at("gains");
        if (gains.is_string() && gains.get<std::string>() == "auto") {
            spec.gains_auto = true;
            auto [cert, scratch] = select_gains(spec.tf.J, spec.alpha1, spec.alpha2);
            spec.cert = std::move(cert);
            spec.scratch = std::move(scratch);
        } else if (gains.is_object()) {
            spec.gains_auto = false;
            const double g1 = require_number(gains, "gamma1");
            const double g2 = require_number(gains, "gamma2");
            spec.cert = certify_gains(spec.tf.J, spec.alpha1, spec.alpha2, g1, g2);
        } else {
            throw SchemaError("\"gains\" must be \"auto\" or {gamma1, gamma2}");
        }
        spec.cert.sigma = assumption1_sigma(spec.cert.P, spec.tf.R);
    }

    // ---- first-order topology forms and scheme validity ----
    if (spec.order == 1) {
        const bool symmetric =
            (spec.lap.L - spec.lap.L.transpose()).cwiseAbs().maxCoeff() <= 1e-12;
        const bool leader_row = spec.lap.L.row(0).cwiseAbs().maxCoeff() == 0.0;
        if (symmetric)
            spec.o1form = Order1Form::Symmetric;
        else if (leader_row)
            spec.o1form = Order1Form::Leader;
        else
            spec.o1form = Order1Form::None;

        if (spec.o1form == Order1Form::Leader)
            spec.zhang = build_leader_form(spec.lap, spec.kappa);

        switch (spec.scheme) {
            case Scheme::Ideal: break;
            case Scheme::Example1:
                if (spec.o1form != Order1Form::Symmetric)
                    throw AssumptionError("the example1 law requires a symmetric (undirected) "
                                          "Laplacian");
                break;
            case Scheme::Zhang:
                if (spec.o1form != Order1Form::Leader)
                    throw AssumptionError(
                        "the zhang scheme requires the leader-following block Laplacian "
                        "[[0, 0], [-b, L_o+B]] with agent 1 as leader");
                if (spec.agents[0].regressor.m() != 0)
                    throw AssumptionError("the zhang scheme requires an uncertainty-free leader "
                                          "(agent 1 must have no regressor terms)");
                break;
            case Scheme::Distributed:
            case Scheme::Centralized:
                if (spec.o1form == Order1Form::None)
                    throw AssumptionError(
                        "first-order " + scheme_name(spec.scheme) +
                        " runs need a symmetric or leader-following Laplacian (no Lyapunov "
                        "construction exists for the general directed first-order case)");
                break;
        }
    } else {
        if (spec.scheme == Scheme::Example1)
            throw AssumptionError("the example1 law is a first-order construction; use "
                                  "scheme=distributed for second-order scenarios");
        if (spec.scheme == Scheme::Zhang)
            throw AssumptionError("the zhang scheme is a first-order leader-following "
                                  "construction; not defined for second-order scenarios");
    }

    return spec;
}

ScenarioSpec load_scenario_text(const std::string& json_text, const RunOverrides& ov) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("JSON parse error: ") + e.what());
    }
    try {
        return build_from_json(root, ov);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("bad scenario field: ") + e.what());
    }
}

ScenarioSpec load_scenario(const std::string& path, const RunOverrides& ov) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario_text(ss.str(), ov);
}

InitialDraw draw_initial(const ScenarioSpec& spec) {
    SeededRng rng(spec.seed);
    InitialDraw d;
    d.w_true = Eigen::VectorXd::Zero(spec.total_m);
    for (int i = 0; i < spec.n(); ++i) {
        const AgentParams& ap = spec.agents[i];
        if (ap.w_true) {
            d.w_true.segment(spec.offsets[i], ap.regressor.m()) = *ap.w_true;
        } else {
            for (int j = 0; j < ap.regressor.m(); ++j)
                d.w_true(spec.offsets[i] + j) = rng.uniform(-1.0, 1.0);
        }
    }
    d.p0 = Eigen::VectorXd::Zero(spec.n());
    for (int i = 0; i < spec.n(); ++i) d.p0(i) = rng.uniform(-spec.ic_range, spec.ic_range);
    if (spec.order == 2) {
        d.v0 = Eigen::VectorXd::Zero(spec.n());
        for (int i = 0; i < spec.n(); ++i) d.v0(i) = rng.uniform(-spec.ic_range, spec.ic_range);
    }
    d.what0 = Eigen::VectorXd::Zero(spec.total_m);
    if (spec.on_manifold_init) {
        for (int i = 0; i < spec.n(); ++i) {
            const double s = spec.order == 2 ? d.v0(i) : d.p0(i);
            d.what0.segment(spec.offsets[i], spec.agents[i].regressor.m()) =
                d.w_true.segment(spec.offsets[i], spec.agents[i].regressor.m()) +
                eval_rho(spec.agents[i].regressor, s);
        }
    }
    return d;
}

std::string scenario_canonical_json(const ScenarioSpec& spec) {
    json j;
    j["order"] = spec.order;
    j["n"] = spec.n();
    json edges = json::array();
    for (int i = 0; i < spec.n(); ++i)
        for (int c = 0; c < spec.n(); ++c)
            if (spec.net.weights(i, c) != 0.0)
                edges.push_back({c + 1, i + 1, spec.net.weights(i, c)});
    j["edges"] = edges;
    json agents = json::array();
    for (const AgentParams& ap : spec.agents) {
        json a;
        a["alpha1"] = ap.alpha1;
        a["alpha2"] = ap.alpha2;
        a["terms"] = ap.regressor.exponents;
        a["lambda"] = ap.regressor.lambda;
        if (ap.w_true) {
            std::vector<double> w(ap.w_true->data(), ap.w_true->data() + ap.w_true->size());
            a["w_true"] = w;
        }
        agents.push_back(a);
    }
    j["agents"] = agents;
    if (spec.order == 2) {
        if (spec.gains_auto)
            j["gains"] = "auto";
        else
            j["gains"] = {{"gamma1", spec.cert.gamma1}, {"gamma2", spec.cert.gamma2}};
    }
    j["ic_range"] = spec.ic_range;
    j["w_hat_init"] = spec.on_manifold_init ? "on_manifold" : "zero";
    j["kappa"] = spec.kappa;
    j["k"] = spec.k_margin;
    return j.dump();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t scenario_hash(const ScenarioSpec& spec) {
    return fnv1a64(scenario_canonical_json(spec));
}

} // namespace dacs
