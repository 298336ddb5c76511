#pragma once
// Flat key = value configuration (one pair per line, # comments) and its
// canonical serialization; the manifest grammar is the same.

#include "axeuler/experiments.hpp"

#include <string>
#include <vector>

namespace axeuler {

struct SimConfig {
    std::string study = "run";  // run | sweep | decay | converge | verify
    ScenarioSpec scenario;
    bool epsilon_set = false;
    std::vector<double> epsilons;        // sweep
    std::vector<double> snapshot_times;  // run
    std::string out_dir = "out";
    double theta = 100.0;
    double dt_floor_factor = 1e-10;
    int K = 2;
    int jobs = 1;
    double window_lo = 20.0;
    double window_hi = 0.0;  // 0: 0.9 * t_end
    std::size_t n_base = 0;  // converge; 0: scenario.n
    double horizon_scale = 0.05;
    int max_retries = 3;
    bool quiet = false;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SimConfig parse_config(const std::string& text);
std::string serialize_config(const SimConfig& cfg);

// Completeness checks that depend on the study (epsilon present, snapshot
// times inside [0, t_end], ...). Throws ConfigError.
void validate_config(const SimConfig& cfg);

// FNV-1a hash of the canonical serialization, as the run id.
std::string config_run_id(const SimConfig& cfg);

} // namespace axeuler
