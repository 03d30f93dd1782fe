#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtool {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// flat key=value experiment description; CLI flags override file values
struct RunConfig {
    std::string experiment;
    int n_theta = 25;
    double theta = 0.0;  // ancilla colatitude; 0 means "use the experiment default"
    bool theta_set = false;
    double phi = 0.0;
    bool phi_set = false;
    double lambda = 0.0;
    double alpha = 0.0;
    bool alpha_set = false;
    std::vector<double> r_grid;
    int ensemble = 256;
    std::uint64_t seed = 1;
    int dim = 0; // 0 = automatic
    int max_iters = 2000;
    double tol = 1e-10;
    int threads = 1;
    std::string out_dir = ".";
};

// parses the key=value file ('#' comments, blank lines allowed); unknown keys
// are rejected so typos cannot silently fall back to defaults
RunConfig load_config(const std::string& path);

// overrides threads from the environment variable, when set
void apply_thread_env(RunConfig& cfg, const char* value);

// static checks; returns human-readable diagnostics, empty means runnable
std::vector<std::string> validate(const RunConfig& cfg);

// fills experiment-specific defaults (theta, phi, alpha) for fields not set
void finalize_defaults(RunConfig& cfg);

} // namespace qtool
