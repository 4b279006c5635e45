#pragma once

#include "dacs/scenario.hpp"
#include "dacs/simulator.hpp"

#include <string>

namespace dacs {

/// Shortest round-trip decimal form of a double ("%.17g"), used everywhere a
/// double is logged so that identical runs produce bitwise-identical files.
std::string format_g17(double x);

/// Header for a log with n agents and the given per-agent regressor sizes:
/// t,p_1..p_n,v_1..v_n,what_<agent>_<term>...,dis_p,dis_v,V,U,znorm
std::string csv_header(const ScenarioSpec& spec);

/// Write the sampled trajectory as CSV (header + one row per sample).
void write_csv(const TrajectoryLog& log, const ScenarioSpec& spec, const std::string& path);

/// Companion metadata: scenario hash (hex), seed, scheme, order, steps,
/// gain certificate (order 2), divergence flag.
std::string metadata_json(const TrajectoryLog& log, const ScenarioSpec& spec);
void write_metadata(const TrajectoryLog& log, const ScenarioSpec& spec, const std::string& path);

} // namespace dacs
