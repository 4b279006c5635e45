#include "dacs/logio.hpp"

#include "dacs/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace dacs {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_header(const ScenarioSpec& spec) {
    std::ostringstream h;
    h << "t";
    for (int i = 1; i <= spec.n(); ++i) h << ",p_" << i;
    for (int i = 1; i <= spec.n(); ++i) h << ",v_" << i;
    for (int i = 0; i < spec.n(); ++i)
        for (int j = 1; j <= spec.agents[i].regressor.m(); ++j)
            h << ",what_" << (i + 1) << "_" << j;
    h << ",dis_p,dis_v,V,U,znorm";
    return h.str();
}

void write_csv(const TrajectoryLog& log, const ScenarioSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open output file: " + path);
    out << csv_header(spec) << "\n";
    for (std::size_t r = 0; r < log.rows(); ++r) {
        out << format_g17(log.t[r]);
        for (int i = 0; i < log.n; ++i) out << "," << format_g17(log.p[r](i));
        for (int i = 0; i < log.n; ++i) out << "," << format_g17(log.v[r](i));
        for (int j = 0; j < log.total_m; ++j) out << "," << format_g17(log.w_hat[r](j));
        out << "," << format_g17(log.dis_p[r]) << "," << format_g17(log.dis_v[r]) << ","
            << format_g17(log.V[r]) << "," << format_g17(log.U[r]) << ","
            << format_g17(log.znorm[r]) << "\n";
    }
    if (!out) throw SchemaError("write failed: " + path);
}

std::string metadata_json(const TrajectoryLog& log, const ScenarioSpec& spec) {
    json j;
    j["name"] = log.scenario_name;
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(log.scenario_hash));
    j["scenario_hash"] = hex;
    j["seed"] = log.seed;
    j["scheme"] = scheme_name(log.scheme);
    j["order"] = log.order;
    j["n"] = log.n;
    j["step"] = log.step;
    j["horizon"] = log.horizon;
    j["sample_every"] = spec.sample_every;
    j["rows"] = log.rows();
    j["diverged"] = log.diverged;
    if (log.diverged) j["t_diverged"] = log.t_diverged;
    if (spec.order == 2) {
        json g;
        g["gamma1"] = spec.cert.gamma1;
        g["gamma2"] = spec.cert.gamma2;
        g["sigma"] = spec.cert.sigma;
        g["abscissa"] = spec.cert.abscissa;
        g["lyap_residual"] = spec.cert.lyap_residual;
        std::vector<double> P;
        P.reserve(static_cast<std::size_t>(spec.cert.P.size()));
        for (int r = 0; r < spec.cert.P.rows(); ++r)
            for (int c = 0; c < spec.cert.P.cols(); ++c) P.push_back(spec.cert.P(r, c));
        g["P_row_major"] = P;
        j["gains"] = g;
    }
    return j.dump(2) + "\n";
}

void write_metadata(const TrajectoryLog& log, const ScenarioSpec& spec,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open output file: " + path);
    out << metadata_json(log, spec);
    if (!out) throw SchemaError("write failed: " + path);
}

} // namespace dacs
